#include "pgl2/fqlaurent.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace pgl2 {

namespace {
constexpr std::array<int, 6> kSupportedPrimes = {2, 3, 5, 7, 11, 13};
}

bool PrimeField::is_supported_prime(int p) {
  return std::find(kSupportedPrimes.begin(), kSupportedPrimes.end(), p) !=
         kSupportedPrimes.end();
}

void PrimeField::check_prime(int p) {
  if (!is_supported_prime(p)) {
    throw DomainError("modulus " + std::to_string(p) +
                      " is not a supported prime (need a prime in [2,13])");
  }
}

int fp_reduce(long long a, int p) {
  long long r = a % p;
  if (r < 0) r += p;
  return static_cast<int>(r);
}

int fp_add(int a, int b, int p) { int s = a + b; return s >= p ? s - p : s; }
int fp_sub(int a, int b, int p) { int s = a - b; return s < 0 ? s + p : s; }
int fp_mul(int a, int b, int p) { return (a * b) % p; }
int fp_neg(int a, int p) { return a == 0 ? 0 : p - a; }

int fp_inv(int a, int p) {
  if (a == 0) throw DomainError("division by zero in F_p");
  // p <= 13, a scan is as good as anything
  for (int x = 1; x < p; ++x) {
    if (fp_mul(a, x, p) == 1) return x;
  }
  throw DomainError("no inverse found (modulus not prime?)");
}

PrimeField::PrimeField(int p, long long value) : p_(p) {
  check_prime(p);
  value_ = fp_reduce(value, p);
}

PrimeField PrimeField::operator+(const PrimeField& o) const {
  if (p_ != o.p_) throw DomainError("PrimeField modulus mismatch");
  return PrimeField(p_, fp_add(value_, o.value_, p_));
}
PrimeField PrimeField::operator-(const PrimeField& o) const {
  if (p_ != o.p_) throw DomainError("PrimeField modulus mismatch");
  return PrimeField(p_, fp_sub(value_, o.value_, p_));
}
PrimeField PrimeField::operator*(const PrimeField& o) const {
  if (p_ != o.p_) throw DomainError("PrimeField modulus mismatch");
  return PrimeField(p_, fp_mul(value_, o.value_, p_));
}
PrimeField PrimeField::operator/(const PrimeField& o) const {
  return *this * o.inverse();
}
PrimeField PrimeField::operator-() const { return PrimeField(p_, fp_neg(value_, p_)); }
PrimeField PrimeField::inverse() const { return PrimeField(p_, fp_inv(value_, p_)); }
bool PrimeField::operator==(const PrimeField& o) const {
  if (p_ != o.p_) throw DomainError("PrimeField modulus mismatch");
  return value_ == o.value_;
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

Series::Series(int p, Kind kind, int val, std::vector<int> coeffs, int prec)
    : p_(p), kind_(kind), val_(val), coeffs_(std::move(coeffs)), prec_(prec) {
  normalize();
}

void Series::normalize() {
  PrimeField::check_prime(p_);
  if (kind_ != Kind::Unit) {
    coeffs_.clear();
    val_ = 0;
    if (kind_ == Kind::ExactZero) prec_ = kInfPrec;
    return;
  }
  // strip leading zeros (they move the valuation) and trailing zeros
  // (they are implied by the precision window)
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    val_ += static_cast<int>(lead);
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) {
    kind_ = prec_ >= kInfPrec ? Kind::ExactZero : Kind::ZeroMod;
    val_ = 0;
    if (kind_ == Kind::ExactZero) prec_ = kInfPrec;
    return;
  }
  if (val_ >= prec_) {
    // nothing about this element is actually known below its precision
    kind_ = Kind::ZeroMod;
    coeffs_.clear();
    val_ = 0;
    return;
  }
  // clip the window at the precision
  if (val_ + static_cast<int>(coeffs_.size()) > prec_) {
    coeffs_.resize(static_cast<std::size_t>(prec_ - val_));
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) {
      kind_ = Kind::ZeroMod;
      val_ = 0;
      return;
    }
  }
}

void Series::check_same_p(const Series& a, const Series& b) {
  if (a.p_ != b.p_) throw DomainError("Series modulus mismatch");
}

Series Series::zero(int p) { return Series(p, Kind::ExactZero, 0, {}, kInfPrec); }

Series Series::zero_mod(int p, int prec) {
  if (prec >= kInfPrec) return zero(p);
  return Series(p, Kind::ZeroMod, 0, {}, prec);
}

Series Series::one(int p, int rel_prec) {
  return monomial(PrimeField(p, 1), 0, rel_prec);
}

Series Series::monomial(const PrimeField& c, int exponent, int rel_prec) {
  if (c.is_zero()) return zero(c.p());
  return Series(c.p(), Kind::Unit, exponent, {c.value()}, exponent + rel_prec);
}

Series Series::from_coeff_window(int p, int base, const std::vector<int>& coeffs,
                                 int abs_prec) {
  std::vector<int> red(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) red[i] = fp_reduce(coeffs[i], p);
  bool all_zero = std::all_of(red.begin(), red.end(), [](int c) { return c == 0; });
  if (all_zero) return abs_prec >= kInfPrec ? zero(p) : zero_mod(p, abs_prec);
  return Series(p, Kind::Unit, base, std::move(red), abs_prec);
}

int Series::val() const {
  switch (kind_) {
    case Kind::Unit:
      return val_;
    case Kind::ZeroMod:
      throw PrecisionError("valuation indeterminate: element is 0 mod t^" +
                           std::to_string(prec_));
    default:
      throw DomainError("valuation of the exact zero is +infinity");
  }
}

int Series::rel_prec() const {
  if (kind_ == Kind::Unit) return prec_ - val_;
  return prec_;
}

PrimeField Series::coeff(int i) const { return PrimeField(p_, coeff_raw(i)); }

int Series::coeff_raw(int i) const {
  if (i >= prec_) {
    throw PrecisionError("coefficient of t^" + std::to_string(i) +
                         " requested beyond precision t^" + std::to_string(prec_));
  }
  if (kind_ != Kind::Unit) return 0;
  if (i < val_ || i >= val_ + static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i - val_)];
}

Series Series::operator+(const Series& o) const {
  check_same_p(*this, o);
  if (is_exact_zero()) return o;
  if (o.is_exact_zero()) return *this;
  int q = std::min(prec_, o.prec_);
  if (kind_ != Kind::Unit && o.kind_ != Kind::Unit) return zero_mod(p_, q);
  int lo = kInfPrec;
  int content_end = -kInfPrec;
  if (kind_ == Kind::Unit) {
    lo = std::min(lo, val_);
    content_end = std::max(content_end, val_ + static_cast<int>(coeffs_.size()));
  }
  if (o.kind_ == Kind::Unit) {
    lo = std::min(lo, o.val_);
    content_end = std::max(content_end, o.val_ + static_cast<int>(o.coeffs_.size()));
  }
  lo = std::min(lo, q);
  // coefficients past both stored windows are known zeros; never
  // materialize the (possibly unbounded) tail up to the precision
  int hi = std::min(q, content_end);
  std::vector<int> out(static_cast<std::size_t>(std::max(0, hi - lo)), 0);
  auto accumulate = [&](const Series& s) {
    if (s.kind_ != Kind::Unit) return;
    for (std::size_t i = 0; i < s.coeffs_.size(); ++i) {
      int deg = s.val_ + static_cast<int>(i);
      if (deg >= hi) break;
      std::size_t j = static_cast<std::size_t>(deg - lo);
      out[j] = fp_add(out[j], s.coeffs_[i], p_);
    }
  };
  accumulate(*this);
  accumulate(o);
  return Series(p_, Kind::Unit, lo, std::move(out), q);
}

Series Series::operator-() const {
  if (kind_ != Kind::Unit) return *this;
  std::vector<int> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = fp_neg(coeffs_[i], p_);
  return Series(p_, Kind::Unit, val_, std::move(out), prec_);
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
  check_same_p(*this, o);
  if (is_exact_zero() || o.is_exact_zero()) return zero(p_);
  if (kind_ == Kind::ZeroMod && o.kind_ == Kind::ZeroMod) {
    long q = static_cast<long>(prec_) + o.prec_;
    return zero_mod(p_, static_cast<int>(std::min<long>(q, kInfPrec)));
  }
  if (kind_ == Kind::ZeroMod) return o * (*this);
  if (o.kind_ == Kind::ZeroMod) {
    // t^v * unit * (0 mod t^P) = 0 mod t^(v+P)
    long q = static_cast<long>(val_) + o.prec_;
    return zero_mod(p_, static_cast<int>(std::min<long>(q, kInfPrec)));
  }
  int v = val_ + o.val_;
  bool exact = prec_ >= kInfPrec && o.prec_ >= kInfPrec;
  std::size_t full = coeffs_.size() + o.coeffs_.size() - 1;
  int r = exact ? static_cast<int>(full) : std::min(rel_prec(), o.rel_prec());
  std::size_t len = std::min<std::size_t>(full, static_cast<std::size_t>(r));
  std::vector<int> out(len, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0 || i >= len) continue;
    std::size_t jmax = std::min(o.coeffs_.size(), len - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      out[i + j] = fp_add(out[i + j], fp_mul(coeffs_[i], o.coeffs_[j], p_), p_);
    }
  }
  long q = exact ? kInfPrec : static_cast<long>(v) + r;
  return Series(p_, Kind::Unit, v, std::move(out),
                static_cast<int>(std::min<long>(q, kInfPrec)));
}

Series Series::inverse() const {
  if (is_exact_zero()) throw DomainError("inverting the exact zero");
  if (kind_ == Kind::ZeroMod) {
    throw PrecisionError("inverting an element that is 0 mod t^" +
                         std::to_string(prec_));
  }
  // the inverse of an exact polynomial has infinitely many terms; cap
  // the stored window (still honest, the claimed precision is computed)
  int r = std::min(rel_prec(), 64);
  std::vector<int> inv(static_cast<std::size_t>(r), 0);
  int c0_inv = fp_inv(coeffs_[0], p_);
  inv[0] = c0_inv;
  for (int n = 1; n < r; ++n) {
    int acc = 0;
    int imax = std::min<int>(n, static_cast<int>(coeffs_.size()) - 1);
    for (int i = 1; i <= imax; ++i) {
      acc = fp_add(acc, fp_mul(coeffs_[static_cast<std::size_t>(i)],
                               inv[static_cast<std::size_t>(n - i)], p_),
                   p_);
    }
    inv[static_cast<std::size_t>(n)] = fp_mul(fp_neg(acc, p_), c0_inv, p_);
  }
  return Series(p_, Kind::Unit, -val_, std::move(inv), -val_ + r);
}

Series Series::operator/(const Series& o) const { return *this * o.inverse(); }

Series Series::shifted(int e) const {
  Series out = *this;
  if (out.kind_ == Kind::Unit) out.val_ += e;
  if (out.prec_ < kInfPrec) out.prec_ += e;
  return out;
}

Series Series::truncated(int q) const {
  if (q >= prec_) return *this;
  if (kind_ != Kind::Unit || val_ >= q) return zero_mod(p_, q);
  std::vector<int> out(coeffs_.begin(),
                       coeffs_.begin() + std::min<long>(coeffs_.size(), q - val_));
  return Series(p_, Kind::Unit, val_, std::move(out), q);
}

Series Series::part_below(int n) const {
  if (prec_ < n) {
    throw PrecisionError("part below t^" + std::to_string(n) +
                         " not determined at precision t^" + std::to_string(prec_));
  }
  if (kind_ != Kind::Unit || val_ >= n) return zero(p_);
  std::vector<int> out(coeffs_.begin(),
                       coeffs_.begin() + std::min<long>(coeffs_.size(), n - val_));
  return Series(p_, Kind::Unit, val_, std::move(out), kInfPrec);
}

Series Series::part_from(int n) const {
  if (prec_ < n) {
    throw PrecisionError("split at t^" + std::to_string(n) +
                         " not determined at precision t^" + std::to_string(prec_));
  }
  if (kind_ != Kind::Unit) return *this;
  if (val_ >= n) return *this;
  if (val_ + static_cast<int>(coeffs_.size()) <= n) return zero_mod(p_, prec_);
  std::vector<int> out(coeffs_.begin() + (n - val_), coeffs_.end());
  return Series(p_, Kind::Unit, n, std::move(out), prec_);
}

bool Series::eq_mod_prec(const Series& a, const Series& b) {
  check_same_p(a, b);
  int q = std::min(a.prec_, b.prec_);
  if (q >= kInfPrec) {
    // two exact values: compare windows outright
    return a.kind_ == b.kind_ && a.val_ == b.val_ && a.coeffs_ == b.coeffs_;
  }
  int lo = q;
  if (a.kind_ == Kind::Unit) lo = std::min(lo, a.val_);
  if (b.kind_ == Kind::Unit) lo = std::min(lo, b.val_);
  for (int i = lo; i < q; ++i) {
    if (a.coeff_raw(i) != b.coeff_raw(i)) return false;
  }
  return true;
}

std::string Series::to_string() const {
  std::ostringstream out;
  if (kind_ == Kind::ExactZero) return "0";
  if (kind_ == Kind::ZeroMod) {
    out << "O(t^" << prec_ << ")";
    return out.str();
  }
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    int deg = val_ + static_cast<int>(i);
    if (!first) out << "+";
    first = false;
    if (deg == 0) {
      out << coeffs_[i];
    } else {
      if (coeffs_[i] != 1) out << coeffs_[i] << "*";
      out << "t";
      if (deg != 1) out << "^" << deg;
    }
  }
  out << " + O(t^" << prec_ << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  long long integer() {
    skip_ws();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw DomainError("series syntax error: integer expected at offset " +
                        std::to_string(pos));
    }
    long long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > (1LL << 60)) throw DomainError("series literal coefficient overflow");
      ++pos;
    }
    return neg ? -v : v;
  }
};

}  // namespace

Series parse_series(std::string_view text, int p, int rel_prec) {
  PrimeField::check_prime(p);
  if (rel_prec < 1) throw DomainError("relative precision must be positive");
  Cursor cur{text};
  if (cur.done()) throw DomainError("series syntax error: empty expression");

  // accumulate (degree, coefficient) pairs, then normalize once
  std::vector<std::pair<int, int>> terms;
  for (;;) {
    long long coeff = 1;
    int exponent = 0;
    bool saw_coeff = false;
    char c = cur.peek();
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      coeff = cur.integer();
      saw_coeff = true;
    }
    if (cur.eat('t')) {
      exponent = 1;
      if (cur.eat('^')) {
        long long e = cur.integer();
        if (e < -1000 || e > 1000) throw DomainError("series exponent out of range");
        exponent = static_cast<int>(e);
      }
    } else if (saw_coeff && cur.eat('*')) {
      if (!cur.eat('t')) throw DomainError("series syntax error: 't' expected");
      exponent = 1;
      if (cur.eat('^')) {
        long long e = cur.integer();
        if (e < -1000 || e > 1000) throw DomainError("series exponent out of range");
        exponent = static_cast<int>(e);
      }
    } else if (!saw_coeff) {
      throw DomainError("series syntax error: term expected at offset " +
                        std::to_string(cur.pos));
    }
    terms.emplace_back(exponent, fp_reduce(coeff, p));
    if (cur.done()) break;
    if (!cur.eat('+')) {
      throw DomainError("series syntax error: '+' expected at offset " +
                        std::to_string(cur.pos));
    }
  }

  int lo = terms.front().first, hi = terms.front().first;
  for (auto& [deg, c] : terms) {
    lo = std::min(lo, deg);
    hi = std::max(hi, deg);
  }
  std::vector<int> coeffs(static_cast<std::size_t>(hi - lo + 1), 0);
  for (auto& [deg, c] : terms) {
    std::size_t i = static_cast<std::size_t>(deg - lo);
    coeffs[i] = fp_add(coeffs[i], c, p);
  }
  Series exact = Series::from_coeff_window(p, lo, coeffs, Series::kInfPrec);
  if (exact.is_exact_zero()) return exact;
  return exact.truncated(exact.val() + rel_prec);
}

}  // namespace pgl2
