#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "pgl2/errors.hpp"
#include "pgl2/fqlaurent.hpp"

namespace pgl2 {

using BigInt = boost::multiprecision::cpp_int;

/// Exact element of Q(zeta_p), written in the basis {1, z, ..., z^(p-2)}
/// with z = zeta_p and the relation 1 + z + ... + z^(p-1) = 0 applied
/// eagerly.  Stored as an integer coordinate vector over a single
/// positive denominator, normalized so gcd(coords, den) = 1.
class Cyc {
 public:
  static Cyc zero(int p);
  static Cyc one(int p);
  static Cyc from_integer(int p, const BigInt& n);
  static Cyc rational(int p, const BigInt& num, const BigInt& den);
  /// zeta_p^e (any integer e).
  static Cyc zeta_pow(int p, long e);

  int p() const { return p_; }
  const std::vector<BigInt>& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc operator/(const Cyc& o) const;
  Cyc operator-() const;
  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  Cyc inverse() const;
  Cyc scaled(const BigInt& num, const BigInt& den) const;

  /// Galois conjugate zeta -> zeta^j, gcd(j, p) = 1.
  Cyc conjugate(int j) const;

  std::string to_string() const;
  /// "n0+n1*z+n2*z^2/d" rendering used by the CSV matrix dumps.
  std::string to_csv_string() const;

 private:
  Cyc(int p, std::vector<BigInt> num, BigInt den);
  void normalize();

  int p_;
  std::vector<BigInt> num_;  // size p-1
  BigInt den_;               // > 0
};

/// Additive character psi(x) = zeta_p^x of F_p; nontrivial, psi(0) = 1.
Cyc psi(const PrimeField& x);

/// Exact determinant by fraction-free (Bareiss) elimination over the
/// ring of integers Z[zeta_p]; denominators are scaled out per row
/// first.  No floating point anywhere.
Cyc exact_det(const std::vector<std::vector<Cyc>>& m);

}  // namespace pgl2
