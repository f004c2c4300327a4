#pragma once

#include <string>
#include <vector>

#include "pgl2/orbits.hpp"

namespace pgl2 {

/// Point of K_{n,k} = t^n O^x / (1 + t^k O): the class of
/// a_lead * t^n * (1 + c_1 t + ... + c_{k-1} t^{k-1}).
struct TorusClass {
  int n = 0;
  int a_lead = 1;
  std::vector<int> tail;  // c_1 .. c_{k-1}

  bool operator==(const TorusClass& o) const {
    return n == o.n && a_lead == o.a_lead && tail == o.tail;
  }
  /// The canonical lift as a Series at the level's working precision.
  Series lift(const LevelParams& level) const;
  std::string to_string() const;
};

/// Complete, duplicate-free, lexicographically ordered lists; both have
/// (p-1) p^{k-1} elements.
std::vector<OrbitRep> enumerate_representatives(const LevelParams& level);
std::vector<TorusClass> enumerate_torus_classes(const LevelParams& level);

/// Index of a representative in enumeration order.
std::size_t rep_index(const LevelParams& level, const OrbitRep& rep);

/// Finite-level vector of V at one (n, k) block: a total map from the
/// representatives of R_{n,k} to Q(zeta_p).
class SectionVector {
 public:
  static SectionVector zero(const LevelParams& level);
  static SectionVector delta(const LevelParams& level, const OrbitRep& rep);

  const LevelParams& level() const { return level_; }
  const Cyc& at(std::size_t index) const { return values_.at(index); }
  const Cyc& at(const OrbitRep& rep) const;
  void set(std::size_t index, Cyc value) { values_.at(index) = std::move(value); }
  std::size_t size() const { return values_.size(); }
  bool is_zero() const;

 private:
  SectionVector(LevelParams level, std::vector<Cyc> values)
      : level_(level), values_(std::move(values)) {}
  LevelParams level_;
  std::vector<Cyc> values_;
};

/// f(g) for the section determined by its values on representatives:
/// decomposes g = b * a1, reduces b to a representative M with corrector
/// a2, and returns f(M) chi(a2)^{-1} chi(a1).  Zero off the level block
/// and on irrelevant orbits.
Cyc evaluate_section(const SectionVector& f, const GroupElem& g, int chi_sigma = +1);

/// Whittaker functional: the average over u in O/t^m_int of
/// f([[1,u],[0,1]]) psi(-u_0), with vol(O) = 1.
Cyc whittaker_functional(const SectionVector& f, int chi_sigma = +1);

/// phi(f)(x): the U-average of f(x.u) psi(-u_0) with u running over
/// t^(1-k) O / t^m_int (the support of every level-k section) and the
/// measure normalized by vol(O) = 1.
Cyc phi_apply(const SectionVector& f, const TorusClass& x, int chi_sigma = +1);

/// Closed-form kernel: 0 unless x and M share (n, a_lead), otherwise
/// psi(-(b/x)_0) for the window polynomial b of M.
Cyc kernel_eval(const OrbitRep& rep, const TorusClass& x, const LevelParams& level);

/// Exact matrix of the transform: rows indexed by K_{n,k} classes,
/// columns by representatives, block-diagonal across a_lead.
struct TransformMatrix {
  LevelParams level;
  std::vector<TorusClass> rows;
  std::vector<OrbitRep> cols;
  std::vector<std::vector<Cyc>> entries;

  const Cyc& at(std::size_t r, std::size_t c) const { return entries[r][c]; }
  bool operator==(const TransformMatrix& o) const;
  /// One determinant per a_lead block, in a_lead order.
  std::vector<Cyc> block_determinants() const;
  std::string to_json() const;
  std::string to_csv() const;
};

TransformMatrix phi_matrix(const LevelParams& level, int chi_sigma = +1);
TransformMatrix kernel_matrix(const LevelParams& level);

/// Product in the torus tower: result lives at block x.n + y.n, tails
/// multiplied modulo 1 + t^k O.
TorusClass torus_mul(const TorusClass& x, const TorusClass& y, const LevelParams& level);

/// Translated section (y.f)(g) = f(y^{-1} g), living on the block
/// n + y.n of the same level k.
SectionVector torus_translate(const SectionVector& f, const TorusClass& y,
                              int chi_sigma = +1);

}  // namespace pgl2
