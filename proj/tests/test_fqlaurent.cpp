#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "pgl2/fqlaurent.hpp"

using namespace pgl2;

namespace {

// schoolbook convolution oracle, independent of Series internals
std::vector<int> conv_oracle(const std::vector<int>& a, const std::vector<int>& b,
                             int p) {
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
  }
  return out;
}

struct Rng {
  std::mt19937_64 eng{12345};
  int below(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }
};

Series random_unit(Rng& rng, int p, int rel = 8) {
  int val = rng.range(-3, 3);
  int len = rng.range(1, 5);
  std::vector<int> coeffs(static_cast<std::size_t>(len));
  coeffs[0] = rng.range(1, p - 1);
  for (int i = 1; i < len; ++i) coeffs[static_cast<std::size_t>(i)] = rng.below(p);
  return Series::from_coeff_window(p, val, coeffs, val + rel);
}

}  // namespace

TEST_CASE("parse: normalization and mod-p reduction") {
  Series s = parse_series("t^-1+2*t", 3);
  CHECK(s.val() == -1);
  CHECK(s.coeff_raw(-1) == 1);
  CHECK(s.coeff_raw(0) == 0);
  CHECK(s.coeff_raw(1) == 2);

  CHECK(parse_series("0", 2).is_exact_zero());
  CHECK(parse_series("3*t^2", 3).is_exact_zero());

  Series m = parse_series("2 + 4*t + t", 5);
  CHECK(m.val() == 0);
  CHECK(m.coeff_raw(0) == 2);
  CHECK(m.coeff_raw(1) == 0);  // 4t + t = 5t = 0
}

TEST_CASE("parse: errors") {
  CHECK_THROWS_AS(parse_series("t^", 3), DomainError);
  CHECK_THROWS_AS(parse_series("", 3), DomainError);
  CHECK_THROWS_AS(parse_series("1++t", 3), DomainError);
  CHECK_THROWS_AS(parse_series("x", 3), DomainError);
  CHECK_THROWS_AS(parse_series("1+t", 4), DomainError);   // not prime
  CHECK_THROWS_AS(parse_series("1+t", 17), DomainError);  // out of range
}

TEST_CASE("add: cancellation recomputes the valuation") {
  Series a = parse_series("1+t", 3);
  Series b = parse_series("1+2*t", 3);
  Series s = a + b;
  CHECK(s.val() == 0);
  CHECK(s.coeff_raw(0) == 2);
  CHECK(s.coeff_raw(1) == 0);

  Series c = parse_series("2", 3);
  Series t = a + c;  // (1+t) + 2 = t
  CHECK(t.val() == 1);
  CHECK(t.coeff_raw(1) == 1);

  CHECK(Series::eq_mod_prec(a + Series::zero(3), a));
}

TEST_CASE("add: total cancellation leaves an honest zero-mod") {
  Series a = parse_series("1+t", 3);
  Series d = a - a;
  CHECK(d.is_zero_within_prec());
  CHECK(!d.is_exact_zero());
  CHECK_THROWS_AS(d.val(), PrecisionError);
}

TEST_CASE("mul: spec instances and the convolution oracle") {
  Series x = parse_series("t+t^2", 3) * parse_series("t^-1", 3);
  CHECK(x.val() == 0);
  CHECK(x.coeff_raw(0) == 1);
  CHECK(x.coeff_raw(1) == 1);

  Series y = parse_series("1+t", 3) * parse_series("1+2*t", 3);
  CHECK(y.coeff_raw(0) == 1);
  CHECK(y.coeff_raw(1) == 0);
  CHECK(y.coeff_raw(2) == 2);  // (1+t)(1+2t) = 1+2t^2 mod 3

  Series a = parse_series("1+2*t", 3);
  CHECK(Series::eq_mod_prec(a * Series::one(3), a));
  CHECK((a * Series::zero(3)).is_exact_zero());

  Rng rng;
  for (int p : {2, 3, 5}) {
    for (int trial = 0; trial < 200; ++trial) {
      Series u = random_unit(rng, p);
      Series v = random_unit(rng, p);
      std::vector<int> ua, va;
      for (int i = 0; i < u.rel_prec(); ++i) ua.push_back(u.coeff_raw(u.val() + i));
      for (int i = 0; i < v.rel_prec(); ++i) va.push_back(v.coeff_raw(v.val() + i));
      auto expect = conv_oracle(ua, va, p);
      Series w = u * v;
      CHECK(w.val() == u.val() + v.val());
      for (int i = 0; i < w.rel_prec(); ++i) {
        CHECK(w.coeff_raw(w.val() + i) ==
              (i < static_cast<int>(expect.size()) ? expect[static_cast<std::size_t>(i)] : 0));
      }
    }
  }
}

TEST_CASE("inverse: spec instances") {
  Series i1 = parse_series("1+t", 2).inverse();  // 1+t+t^2+...
  for (int d = 0; d < i1.abs_prec(); ++d) CHECK(i1.coeff_raw(d) == 1);

  Series i2 = parse_series("t^2", 3).inverse();
  CHECK(i2.val() == -2);
  CHECK(i2.coeff_raw(-2) == 1);

  Series i3 = parse_series("2", 3).inverse();
  CHECK(i3.val() == 0);
  CHECK(i3.coeff_raw(0) == 2);  // 2*2 = 4 = 1 mod 3

  CHECK_THROWS_AS(Series::zero(3).inverse(), DomainError);
  Series z = parse_series("1+t", 3) - parse_series("1+t", 3);
  CHECK_THROWS_AS(z.inverse(), PrecisionError);
}

TEST_CASE("inverse: multiply-back is 1 for 1000 random units") {
  Rng rng;
  for (int trial = 0; trial < 1000; ++trial) {
    int p = std::vector<int>{2, 3, 5, 7}[static_cast<std::size_t>(rng.below(4))];
    Series u = random_unit(rng, p);
    Series prod = u * u.inverse();
    CHECK(prod.val() == 0);
    CHECK(prod.coeff_raw(0) == 1);
    for (int d = 1; d < prod.abs_prec(); ++d) CHECK(prod.coeff_raw(d) == 0);
  }
}

TEST_CASE("coeff: window queries and the precision wall") {
  Series x = parse_series("t^-1+2*t", 3);
  CHECK(x.coeff_raw(-1) == 1);
  CHECK(x.coeff_raw(0) == 0);
  CHECK(x.coeff_raw(1) == 2);
  CHECK(x.coeff_raw(-5) == 0);  // below the valuation
  CHECK_THROWS_AS(x.coeff(x.abs_prec()), PrecisionError);

  CHECK(Series::zero(3).coeff_raw(100000) == 0);

  Series g = parse_series("1+t", 3).inverse();
  CHECK(g.coeff_raw(1) == 2);  // geometric series: 1 - t + t^2 - ...
}

TEST_CASE("val: unit, exact zero, indeterminate") {
  CHECK(parse_series("t^2+t^3", 5).val() == 2);
  CHECK(Series::zero(5).is_exact_zero());
  CHECK_THROWS_AS(Series::zero(5).val(), DomainError);
  CHECK(parse_series("5*t^-3", 5).is_exact_zero());  // reduces to zero mod p
  CHECK_THROWS_AS(Series::zero_mod(5, 3).val(), PrecisionError);
}

TEST_CASE("ring axioms hold coefficientwise within precision") {
  Rng rng;
  for (int trial = 0; trial < 300; ++trial) {
    int p = std::vector<int>{2, 3, 5}[static_cast<std::size_t>(rng.below(3))];
    Series x = random_unit(rng, p);
    Series y = random_unit(rng, p);
    Series z = random_unit(rng, p);
    CHECK(Series::eq_mod_prec((x + y) + z, x + (y + z)));
    CHECK(Series::eq_mod_prec(x * (y + z), x * y + x * z));
    CHECK(Series::eq_mod_prec(x * y, y * x));
    CHECK(Series::eq_mod_prec(x + y, y + x));
    CHECK((x * y).val() == x.val() + y.val());
  }
}

TEST_CASE("modulus mismatch is rejected") {
  CHECK_THROWS_AS(parse_series("1", 2) + parse_series("1", 3), DomainError);
  CHECK_THROWS_AS(parse_series("1", 2) * parse_series("1", 3), DomainError);
}

TEST_CASE("monotone refinement: higher precision agrees on the window") {
  Rng rng;
  for (int trial = 0; trial < 100; ++trial) {
    int p = std::vector<int>{2, 3, 5}[static_cast<std::size_t>(rng.below(3))];
    // one pipeline, two precisions
    auto pipeline = [&](int rel) {
      Series a = parse_series("1+2*t+t^3", p, rel);
      Series b = parse_series("t^-1+1", p, rel);
      Series c = random_unit(rng, p, rel);
      return (a * b + c.inverse()) * b;
    };
    auto snap = rng.eng;  // same random draw at both precisions
    Series low = pipeline(8);
    rng.eng = snap;
    Series high = pipeline(10);
    CHECK(high.abs_prec() >= low.abs_prec());
    CHECK(Series::eq_mod_prec(low, high));
  }
}

TEST_CASE("split helpers used by the reduction") {
  Series x = parse_series("t^-2+2*t^-1+1+t+2*t^2", 3);
  Series below = x.part_below(0);
  Series from = x.part_from(0);
  CHECK(below.val() == -2);
  CHECK(below.abs_prec() == Series::kInfPrec);
  CHECK(from.val() == 0);
  CHECK(Series::eq_mod_prec(below + from, x));
  CHECK_THROWS_AS(x.part_below(x.abs_prec() + 1), PrecisionError);
}

TEST_CASE("PrimeField basics") {
  PrimeField a(5, 3), b(5, 4);
  CHECK((a + b).value() == 2);
  CHECK((a * b).value() == 2);
  CHECK((a / b).value() == 2);  // 3 * 4^{-1} = 3 * 4 = 12 = 2
  CHECK((-a).value() == 2);
  CHECK(a.inverse().value() == 2);
  CHECK_THROWS_AS(PrimeField(5, 0).inverse(), DomainError);
  CHECK_THROWS_AS(PrimeField(9, 1), DomainError);
  CHECK(PrimeField(7, -1).value() == 6);
}
