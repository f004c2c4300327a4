#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgl2/errors.hpp"

namespace pgl2 {

/// Residue in the prime field F_p, p a small prime (2 <= p <= 13).
class PrimeField {
 public:
  PrimeField(int p, long long value);

  int p() const { return p_; }
  int value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  PrimeField operator+(const PrimeField& o) const;
  PrimeField operator-(const PrimeField& o) const;
  PrimeField operator*(const PrimeField& o) const;
  PrimeField operator/(const PrimeField& o) const;
  PrimeField operator-() const;
  PrimeField inverse() const;

  bool operator==(const PrimeField& o) const;
  bool operator!=(const PrimeField& o) const { return !(*this == o); }

  static bool is_supported_prime(int p);
  static void check_prime(int p);  // throws DomainError

 private:
  int p_;
  int value_;
};

int fp_add(int a, int b, int p);
int fp_sub(int a, int b, int p);
int fp_mul(int a, int b, int p);
int fp_neg(int a, int p);
int fp_inv(int a, int p);
int fp_reduce(long long a, int p);

/// Element of F_p((t)) known modulo t^P for an explicit absolute
/// precision P.  Three states:
///
///   exact zero    -- the element 0, prec = +infinity
///   zero mod t^P  -- all coefficients below P vanish, tail unknown
///   nonzero       -- valuation v < P, unit coefficients c0..c_{m-1}
///                    with c0 != 0 and c_{m-1} != 0; coefficients in
///                    [v+m, P) are zero, coefficients >= P unknown
///
/// Every operation propagates precision honestly: addition with full
/// cancellation yields "zero mod t^Q", and coefficient queries beyond
/// the precision throw PrecisionError instead of returning 0.
class Series {
 public:
  static constexpr int kInfPrec = std::numeric_limits<int>::max() / 4;
  static constexpr int kDefaultRelPrec = 8;

  // --- construction ---------------------------------------------------
  static Series zero(int p);
  static Series zero_mod(int p, int prec);
  static Series one(int p, int rel_prec = kDefaultRelPrec);
  static Series monomial(const PrimeField& c, int exponent,
                         int rel_prec = kDefaultRelPrec);
  /// Value sum_i coeffs[i] * t^(base+i), coefficients reduced mod p;
  /// absolute precision abs_prec (kInfPrec for an exact polynomial).
  static Series from_coeff_window(int p, int base, const std::vector<int>& coeffs,
                                  int abs_prec);

  // --- inspection -----------------------------------------------------
  int p() const { return p_; }
  bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
  /// True when the element is congruent to 0 modulo its precision.
  bool is_zero_within_prec() const { return kind_ != Kind::Unit; }
  /// Valuation. Throws PrecisionError when only a lower bound is known
  /// ("zero mod t^P"), DomainError on the exact zero (valuation +inf).
  int val() const;
  int abs_prec() const { return prec_; }
  /// Relative precision of the unit part (abs_prec - val for nonzero).
  int rel_prec() const;
  /// Coefficient of t^i.  Requires i < abs_prec.
  PrimeField coeff(int i) const;
  int coeff_raw(int i) const;

  // --- arithmetic -----------------------------------------------------
  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator*(const Series& o) const;
  Series operator/(const Series& o) const;
  Series operator-() const;
  /// Multiplicative inverse; val(result) = -val(*this).
  Series inverse() const;
  /// Multiplication by t^e.
  Series shifted(int e) const;
  /// The same value viewed modulo t^q (precision can only decrease).
  Series truncated(int q) const;
  /// The polynomial formed by all (known) coefficients below degree n.
  /// Exact by construction; requires abs_prec >= n.
  Series part_below(int n) const;
  /// this - part_below(n): coefficients at degrees >= n only.
  Series part_from(int n) const;

  /// True iff the two elements agree coefficientwise modulo
  /// t^min(prec_a, prec_b).
  static bool eq_mod_prec(const Series& a, const Series& b);

  std::string to_string() const;

 private:
  enum class Kind { ExactZero, ZeroMod, Unit };

  Series(int p, Kind kind, int val, std::vector<int> coeffs, int prec);
  void normalize();
  static void check_same_p(const Series& a, const Series& b);

  int p_;
  Kind kind_;
  int val_;                  // meaningful for Unit only
  std::vector<int> coeffs_;  // unit part, little-endian from t^val_
  int prec_;                 // absolute precision
};

/// Parses the grammar
///   expr := term ('+' term)* ;
///   term := int | int '*' 't' | int '*' 't^' int | 't' | 't^' int
/// with decimal (possibly negative) integers and ignored whitespace.
/// The result carries relative precision rel_prec; a sum that reduces
/// to 0 mod p is the exact zero.
Series parse_series(std::string_view text, int p,
                    int rel_prec = Series::kDefaultRelPrec);

}  // namespace pgl2
