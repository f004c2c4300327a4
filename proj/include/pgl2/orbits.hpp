#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgl2/group.hpp"

namespace pgl2 {

/// All parameters of one finite-level computation: modulus p, congruence
/// level k (invariance under 1 + t^k O), valuation block n, working
/// relative precision, and integration truncation depth.
struct LevelParams {
  int p;
  int k;
  int n;
  int n_rel;
  int m_int;

  /// Validates p prime, k >= 1, n_rel >= k+3, m_int >= k+1; zero
  /// n_rel/m_int select the defaults max(8, k+3) and k+2.
  static LevelParams make(int p, int k, int n, int n_rel = 0, int m_int = 0);
};

/// Point of R_{n,k}: the matrix [[a_lead t^n, sum b_i t^i],[0,1]] with
/// window degrees n-k+1 .. n-1.  |R_{n,k}| = (p-1) p^{k-1}.
struct OrbitRep {
  int n = 0;
  int a_lead = 1;
  std::vector<int> window;  // length k-1, lowest degree first

  bool operator==(const OrbitRep& o) const {
    return n == o.n && a_lead == o.a_lead && window == o.window;
  }
  BorelForm lift(const LevelParams& level) const;
  std::string to_string() const;
};

/// Affine Weyl x torus point: diag(a t^n, 1) or [[0, a t^n],[1, 0]].
struct DoubleCosetPoint {
  enum class Shape { Diagonal, Antidiagonal };
  Shape shape = Shape::Diagonal;
  int n = 0;
  int a_lead = 1;

  GroupElem lift(int p, int rel_prec = Series::kDefaultRelPrec) const;
  std::string to_string() const;
  bool operator==(const DoubleCosetPoint& o) const {
    return shape == o.shape && n == o.n && a_lead == o.a_lead;
  }
};

struct BADecomposition {
  BorelForm borel;
  AElem a;
  int case_id = 0;  // 1: upper-triangular, 2: val(m21) > val(m22), 3: otherwise
};

/// G = B(K) . A: factors any invertible matrix as (Borel) * (element of A).
BADecomposition decompose_BA(const GroupElem& g);

struct Reduction {
  OrbitRep rep;
  AElem corrector;  // input * corrector = representative, corrector in I0
};

/// Right-multiplies a Borel element with val(A) = level.n by the unique
/// upper-triangular I0 corrector landing in R_{n,k}.  nullopt means the
/// orbit is irrelevant (a window coefficient below degree n-k+1 is
/// nonzero, i.e. val(B/A) <= -k).
std::optional<Reduction> reduce_to_representative(const BorelForm& b,
                                                  const LevelParams& level);

/// Closed-form relevance: B = 0 or val(B/A) >= -k+1.
bool relevance_closed_form(const BorelForm& b, int k);

/// Ground-truth relevance oracle: enumerates z = diag(1 + t^k x, 1) over
/// x in O/t^m_int and tests chi on every stabilizer element g^{-1}z^{-1}g
/// that lands in A.
bool relevance_bruteforce(const BorelForm& b, const LevelParams& level);

/// For h in I0 with g h g^{-1} in I0, the factor chi(g h g^{-1}) *
/// chi(h)^{-1} by which the stabilizer pair scales a twisted-equivariant
/// distribution at g; nullopt when the conjugate leaves I0.
std::optional<Cyc> double_coset_multiplier(const DoubleCosetPoint& point,
                                           const Iwahori0Params& h, int p,
                                           int rel_prec = Series::kDefaultRelPrec);

struct ScanPointResult {
  DoubleCosetPoint point;
  bool passes = false;        // all stabilizer multipliers equal 1
  std::int64_t stabilizer_size = 0;
  std::string witness;        // first failing stabilizer element, if any
  bool in_identity_coset = false;
};

struct ScanReport {
  int p = 0;
  int n_min = 0;
  int n_max = 0;
  int depth = 0;
  std::vector<ScanPointResult> results;      // lexicographic point order
  std::vector<DoubleCosetPoint> pass_set;
};

/// Exhaustive stabilizer-character scan over every DoubleCosetPoint in
/// range, with h enumerated over I0 parameters truncated mod t^depth.
/// Guard: refuses a scan whose per-point enumeration p^(4*depth) exceeds
/// 10^7 elementary group operations.
ScanReport double_coset_scan(int p, int n_min, int n_max, int depth);

/// True iff the point lies in A itself, i.e. in the double coset of the
/// identity.  (The order-2 generator of A is such a point.)
bool in_identity_double_coset(const DoubleCosetPoint& point, int p);

/// The stabilizer element i = g^{-1} [[1,u],[0,1]] g with u = A-entry of
/// g, used as a cuspidality witness: i lies in I0 and chi(i) != 1.
std::pair<GroupElem, Cyc> cuspidality_witness(const BorelForm& b);

}  // namespace pgl2
