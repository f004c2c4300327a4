#include "pgl2/cycnum.hpp"

#include <algorithm>
#include <sstream>

namespace pgl2 {

namespace {

BigInt big_gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

BigInt big_lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return a / big_gcd(a, b) * b;
}

}  // namespace

Cyc::Cyc(int p, std::vector<BigInt> num, BigInt den)
    : p_(p), num_(std::move(num)), den_(std::move(den)) {
  PrimeField::check_prime(p_);
  if (den_ == 0) throw DomainError("cyclotomic scalar with zero denominator");
  num_.resize(static_cast<std::size_t>(p_ - 1));
  normalize();
}

void Cyc::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& n : num_) n = -n;
  }
  BigInt g = den_;
  for (const auto& n : num_) g = big_gcd(g, boost::multiprecision::abs(n));
  if (g == 0) {
    den_ = 1;  // the zero scalar
    return;
  }
  if (g > 1) {
    den_ /= g;
    for (auto& n : num_) n /= g;
  }
}

Cyc Cyc::zero(int p) { return Cyc(p, {}, 1); }

Cyc Cyc::one(int p) { return from_integer(p, 1); }

Cyc Cyc::from_integer(int p, const BigInt& n) {
  std::vector<BigInt> v(static_cast<std::size_t>(p - 1));
  v[0] = n;
  return Cyc(p, std::move(v), 1);
}

Cyc Cyc::rational(int p, const BigInt& num, const BigInt& den) {
  std::vector<BigInt> v(static_cast<std::size_t>(p - 1));
  v[0] = num;
  return Cyc(p, std::move(v), den);
}

Cyc Cyc::zeta_pow(int p, long e) {
  long r = e % p;
  if (r < 0) r += p;
  std::vector<BigInt> v(static_cast<std::size_t>(p - 1));
  if (r == p - 1) {
    // zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
    for (auto& n : v) n = -1;
  } else {
    v[static_cast<std::size_t>(r)] = 1;
  }
  return Cyc(p, std::move(v), 1);
}

bool Cyc::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const BigInt& n) { return n == 0; });
}

bool Cyc::is_one() const { return *this == one(p_); }

bool Cyc::is_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i) {
    if (num_[i] != 0) return false;
  }
  return true;
}

Cyc Cyc::operator+(const Cyc& o) const {
  if (p_ != o.p_) throw DomainError("cyclotomic modulus mismatch");
  std::vector<BigInt> v(num_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = num_[i] * o.den_ + o.num_[i] * den_;
  }
  return Cyc(p_, std::move(v), den_ * o.den_);
}

Cyc Cyc::operator-() const {
  std::vector<BigInt> v(num_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -num_[i];
  return Cyc(p_, std::move(v), den_);
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
  if (p_ != o.p_) throw DomainError("cyclotomic modulus mismatch");
  // convolution in Z[x]/(x^p - 1), then fold the exponent p-1 through
  // the relation zeta^(p-1) = -(1 + ... + zeta^(p-2))
  std::vector<BigInt> acc(static_cast<std::size_t>(p_));
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < o.num_.size(); ++j) {
      if (o.num_[j] == 0) continue;
      acc[(i + j) % static_cast<std::size_t>(p_)] += num_[i] * o.num_[j];
    }
  }
  std::vector<BigInt> v(num_.size());
  const BigInt& top = acc[static_cast<std::size_t>(p_ - 1)];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = acc[i] - top;
  return Cyc(p_, std::move(v), den_ * o.den_);
}

Cyc Cyc::conjugate(int j) const {
  int jr = fp_reduce(j, p_);
  if (jr == 0) throw DomainError("Galois conjugate index divisible by p");
  std::vector<BigInt> acc(static_cast<std::size_t>(p_));
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    acc[(i * static_cast<std::size_t>(jr)) % static_cast<std::size_t>(p_)] += num_[i];
  }
  std::vector<BigInt> v(num_.size());
  const BigInt& top = acc[static_cast<std::size_t>(p_ - 1)];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = acc[i] - top;
  return Cyc(p_, std::move(v), den_);
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw DomainError("division by zero cyclotomic scalar");
  // 1/a = den * prod_{j=2..p-1} sigma_j(A) / N(A) for a = A/den,
  // where N(A) = A * prod sigma_j(A) is a rational integer.
  Cyc integral(p_, num_, 1);
  Cyc prod = one(p_);
  for (int j = 2; j <= p_ - 1; ++j) prod = prod * integral.conjugate(j);
  Cyc norm = integral * prod;
  if (!norm.is_rational() || norm.den() != 1) {
    throw DomainError("cyclotomic norm failed to be a rational integer");
  }
  return prod.scaled(den_, norm.num()[0]);
}

Cyc Cyc::scaled(const BigInt& num, const BigInt& den) const {
  std::vector<BigInt> v(num_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = num_[i] * num;
  return Cyc(p_, std::move(v), den_ * den);
}

Cyc Cyc::operator/(const Cyc& o) const { return *this * o.inverse(); }

bool Cyc::operator==(const Cyc& o) const {
  if (p_ != o.p_) throw DomainError("cyclotomic modulus mismatch");
  return den_ == o.den_ && num_ == o.num_;
}

std::string Cyc::to_string() const { return to_csv_string(); }

std::string Cyc::to_csv_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (i > 0) out << "+";
    out << num_[i];
    if (i == 1) out << "*z";
    if (i >= 2) out << "*z^" << i;
  }
  if (den_ != 1) out << "/" << den_;
  return out.str();
}

Cyc psi(const PrimeField& x) { return Cyc::zeta_pow(x.p(), x.value()); }

Cyc exact_det(const std::vector<std::vector<Cyc>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Cyc::one(2);
  int p = m[0][0].p();
  for (const auto& row : m) {
    if (row.size() != n) throw DomainError("exact_det: matrix is not square");
    for (const auto& e : row) {
      if (e.p() != p) throw DomainError("exact_det: mixed cyclotomic moduli");
    }
  }

  // scale each row to integral entries, remembering the scale
  std::vector<std::vector<Cyc>> a = m;
  BigInt scale = 1;
  for (auto& row : a) {
    BigInt l = 1;
    for (const auto& e : row) l = big_lcm(l, e.den());
    if (l != 1) {
      for (auto& e : row) e = e.scaled(l, 1);
      scale *= l;
    }
  }

  // Bareiss fraction-free elimination; every division is exact in
  // Z[zeta_p] (Sylvester identity), which we assert via the denominator
  Cyc prev = Cyc::one(p);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k].is_zero()) ++piv;
      if (piv == n) return Cyc::zero(p);
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Cyc t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = t / prev;
        if (a[i][j].den() != 1) {
          throw DomainError("exact_det: non-exact Bareiss division");
        }
      }
      a[i][k] = Cyc::zero(p);
    }
    prev = a[k][k];
  }
  Cyc det = a[n - 1][n - 1].scaled(sign, scale);
  return det;
}

}  // namespace pgl2
