#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "pgl2/model.hpp"

using namespace pgl2;

namespace {

struct Rng {
  std::mt19937_64 eng{5150};
  int below(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }
};

Iwahori0Params random_iwahori(Rng& rng, int p, int rel = 10) {
  auto o_series = [&]() {
    int len = rng.range(1, 3);
    std::vector<int> coeffs(static_cast<std::size_t>(len));
    for (auto& c : coeffs) c = rng.below(p);
    return Series::from_coeff_window(p, 0, coeffs, Series::kInfPrec).truncated(rel);
  };
  return {o_series(), o_series(), o_series(), o_series()};
}

TorusClass random_class(Rng& rng, const LevelParams& level, int n) {
  TorusClass x;
  x.n = n;
  x.a_lead = rng.range(1, level.p - 1);
  x.tail.resize(static_cast<std::size_t>(level.k - 1));
  for (auto& c : x.tail) c = rng.below(level.p);
  return x;
}

}  // namespace

TEST_CASE("enumerations: count, order, no duplicates") {
  LevelParams l32 = LevelParams::make(3, 2, 0);
  auto reps = enumerate_representatives(l32);
  auto classes = enumerate_torus_classes(l32);
  CHECK(reps.size() == 6);
  CHECK(classes.size() == 6);

  LevelParams l21 = LevelParams::make(2, 1, 0);
  CHECK(enumerate_representatives(l21).size() == 1);
  CHECK(enumerate_torus_classes(l21).size() == 1);

  std::set<std::string> seen;
  for (const auto& r : reps) seen.insert(r.to_string());
  CHECK(seen.size() == reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    CHECK(rep_index(l32, reps[i]) == i);
  }
  // lexicographic: a_lead major, then window digits
  CHECK(reps[0].a_lead == 1);
  CHECK(reps[0].window == std::vector<int>{0});
  CHECK(reps[1].window == std::vector<int>{1});
  CHECK(reps[3].a_lead == 2);
}

TEST_CASE("evaluate_section: defining equivariance on the delta basis") {
  Rng rng;
  for (int p : {2, 3, 5}) {
    LevelParams level = LevelParams::make(p, 2, 0);
    auto reps = enumerate_representatives(level);
    const OrbitRep& m = reps[static_cast<std::size_t>(rng.below(static_cast<int>(reps.size())))];
    SectionVector f = SectionVector::delta(level, m);
    GroupElem m_mat = m.lift(level).assemble();

    CHECK(evaluate_section(f, m_mat).is_one());

    // right translation by sigma picks up chi(sigma)
    GroupElem m_sigma = mat_mul(m_mat, sigma_elem(p));
    CHECK(evaluate_section(f, m_sigma, +1).is_one());
    CHECK(evaluate_section(f, m_sigma, -1) == Cyc::from_integer(p, -1));

    // right translation by random i in I0 picks up chi(i)
    for (int trial = 0; trial < 50; ++trial) {
      Iwahori0Params i = random_iwahori(rng, p, level.n_rel);
      GroupElem shifted = mat_mul(m_mat, i.assemble(level.n_rel));
      CHECK(evaluate_section(f, shifted) == chi_iwahori(i));
    }

    // a different representative evaluates to zero
    const OrbitRep& other = reps[(rep_index(level, m) + 1) % reps.size()];
    CHECK(evaluate_section(f, other.lift(level).assemble()).is_zero());

    // off-block support vanishes
    GroupElem shifted_block = mat_mul(
        GroupElem{Series::monomial(PrimeField(p, 1), 1, level.n_rel), Series::zero(p),
                  Series::zero(p), Series::one(p, level.n_rel), false},
        m_mat);
    CHECK(evaluate_section(f, shifted_block).is_zero());
  }
}

TEST_CASE("whittaker functional: zero-window delta pairs to 1") {
  for (int p : {2, 3}) {
    LevelParams level = LevelParams::make(p, 2, 0);
    OrbitRep zero_window{0, 1, std::vector<int>(static_cast<std::size_t>(level.k - 1), 0)};
    CHECK(whittaker_functional(SectionVector::delta(level, zero_window)).is_one());

    OrbitRep bumped{0, 1, std::vector<int>{1}};
    CHECK(whittaker_functional(SectionVector::delta(level, bumped)).is_zero());

    CHECK(whittaker_functional(SectionVector::zero(level)).is_zero());
  }
}

TEST_CASE("phi: single-representative level gives phi(delta)(1) = 1") {
  LevelParams level = LevelParams::make(2, 1, 0);
  OrbitRep rep{0, 1, {}};
  TorusClass one_class{0, 1, {}};
  CHECK(phi_apply(SectionVector::delta(level, rep), one_class).is_one());
  CHECK(phi_apply(SectionVector::zero(level), one_class).is_zero());
}

TEST_CASE("kernel_eval: spec instances") {
  LevelParams level = LevelParams::make(5, 2, 0);
  OrbitRep zero_window{0, 2, {0}};
  TorusClass matching{0, 2, {3}};
  CHECK(kernel_eval(zero_window, matching, level).is_one());

  // M = (a=1, b_{-1}=beta), x = 1: (b/x)_0 = 0
  OrbitRep m_beta{0, 1, {3}};
  TorusClass x_one{0, 1, {0}};
  CHECK(kernel_eval(m_beta, x_one, level).is_one());

  // x = 1+t: 1/(1+t) = 1 - t + ..., so (b/x)_0 = -beta and the value is psi(beta)
  TorusClass x_unit{0, 1, {1}};
  CHECK(kernel_eval(m_beta, x_unit, level) == psi(PrimeField(5, 3)));

  // mismatched leading coefficient: off-block zero
  TorusClass off{0, 2, {0}};
  CHECK(kernel_eval(m_beta, off, level).is_zero());
}

TEST_CASE("phi matrix equals kernel matrix on a small grid") {
  for (int p : {2, 3}) {
    for (int k : {1, 2}) {
      for (int n : {-1, 0, 1}) {
        LevelParams level = LevelParams::make(p, k, n);
        CHECK(phi_matrix(level) == kernel_matrix(level));
      }
    }
  }
}

TEST_CASE("pinned p=2 k=2 block is [[1,1],[1,-1]] with det -2") {
  LevelParams level = LevelParams::make(2, 2, 0);
  TransformMatrix phi = phi_matrix(level);
  Cyc one = Cyc::one(2);
  CHECK(phi.at(0, 0) == one);
  CHECK(phi.at(0, 1) == one);
  CHECK(phi.at(1, 0) == one);
  CHECK(phi.at(1, 1) == -one);
  auto dets = phi.block_determinants();
  REQUIRE(dets.size() == 1);
  CHECK(dets[0] == Cyc::from_integer(2, -2));
}

TEST_CASE("phi matrix rows agree with the generic evaluation path") {
  for (int p : {2, 3}) {
    LevelParams level = LevelParams::make(p, 2, 0);
    TransformMatrix phi = phi_matrix(level);
    for (std::size_t r = 0; r < phi.rows.size(); ++r) {
      for (std::size_t c = 0; c < phi.cols.size(); ++c) {
        SectionVector f = SectionVector::delta(level, phi.cols[c]);
        CHECK(phi.at(r, c) == phi_apply(f, phi.rows[r]));
      }
    }
  }
}

namespace {

// the phi integral recomputed from an arbitrary lift of the class
Cyc phi_from_lift(const SectionVector& f, const Series& lift) {
  const LevelParams& level = f.level();
  const int p = level.p;
  Cyc total = Cyc::zero(p);
  std::vector<int> digits(static_cast<std::size_t>(level.m_int + level.k - 1), 0);
  for (;;) {
    Series u = Series::from_coeff_window(p, 1 - level.k, digits, Series::kInfPrec)
                   .truncated(level.m_int);
    GroupElem g{lift, lift * u, Series::zero(p), Series::one(p, level.n_rel), false};
    Cyc term = evaluate_section(f, g);
    if (!term.is_zero()) {
      total = total + term * psi(-PrimeField(p, digits[static_cast<std::size_t>(level.k - 1)]));
    }
    std::size_t i = digits.size();
    bool carry = true;
    while (i-- > 0) {
      if (++digits[i] < p) {
        carry = false;
        break;
      }
      digits[i] = 0;
    }
    if (carry) break;
  }
  BigInt den = 1;
  for (int i = 0; i < level.m_int; ++i) den *= p;
  return total.scaled(1, den);
}

}  // namespace

TEST_CASE("phi is independent of the chosen lift of x") {
  Rng rng;
  LevelParams level = LevelParams::make(3, 2, 0);
  auto reps = enumerate_representatives(level);
  for (int trial = 0; trial < 10; ++trial) {
    const OrbitRep& m = reps[static_cast<std::size_t>(rng.below(6))];
    SectionVector f = SectionVector::delta(level, m);
    TorusClass x = random_class(rng, level, 0);
    // any lift x * (1 + t^k z) represents the same class
    std::vector<int> z{rng.range(1, 2), rng.below(3)};
    Series twist = Series::one(3, level.n_rel) +
                   Series::from_coeff_window(3, level.k, z, Series::kInfPrec)
                       .truncated(level.n_rel);
    Series other_lift = x.lift(level) * twist;
    CHECK(phi_from_lift(f, other_lift) == phi_apply(f, x));
  }
}

TEST_CASE("phi values are stable under a deeper integration truncation") {
  for (int p : {2, 3}) {
    LevelParams base = LevelParams::make(p, 2, 0);
    LevelParams deeper = LevelParams::make(p, 2, 0, 0, base.m_int + 2);
    auto reps = enumerate_representatives(base);
    auto classes = enumerate_torus_classes(base);
    for (const auto& m : reps) {
      for (const auto& x : classes) {
        CHECK(phi_apply(SectionVector::delta(base, m), x) ==
              phi_apply(SectionVector::delta(deeper, m), x));
      }
    }
  }
}

TEST_CASE("transform matrix block structure") {
  LevelParams level = LevelParams::make(3, 2, 1);
  TransformMatrix phi = phi_matrix(level);
  for (std::size_t r = 0; r < phi.rows.size(); ++r) {
    for (std::size_t c = 0; c < phi.cols.size(); ++c) {
      if (phi.rows[r].a_lead != phi.cols[c].a_lead) {
        CHECK(phi.at(r, c).is_zero());
      }
    }
  }
  for (const auto& det : phi.block_determinants()) CHECK(!det.is_zero());
}

TEST_CASE("torus translation: unit class is the identity") {
  LevelParams level = LevelParams::make(3, 2, 0);
  TorusClass unit{0, 1, {0}};
  auto reps = enumerate_representatives(level);
  for (const auto& m : reps) {
    SectionVector f = SectionVector::delta(level, m);
    SectionVector g = torus_translate(f, unit);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.at(i) == f.at(i));
  }
}

TEST_CASE("torus translation by t relabels the block bijectively") {
  LevelParams level = LevelParams::make(3, 2, 0);
  TorusClass t_class{1, 1, {0}};
  auto reps = enumerate_representatives(level);
  LevelParams shifted = LevelParams::make(3, 2, 1);
  for (const auto& m : reps) {
    SectionVector f = SectionVector::delta(level, m);
    SectionVector g = torus_translate(f, t_class);
    CHECK(g.level().n == 1);
    // t * [[a, b],[0,1]] = [[a t, t b],[0,1]]: same window digits, one
    // degree higher, so the image is the delta at the shifted label
    OrbitRep expected{1, m.a_lead, m.window};
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(g.at(i) == (i == rep_index(shifted, expected) ? Cyc::one(3) : Cyc::zero(3)));
    }
  }
}

TEST_CASE("phi intertwines torus translation with multiplicative shift") {
  Rng rng;
  LevelParams level = LevelParams::make(3, 2, 0);
  auto reps = enumerate_representatives(level);
  auto classes = enumerate_torus_classes(level);
  for (int trial = 0; trial < 10; ++trial) {
    TorusClass y = random_class(rng, level, rng.range(-1, 1));
    const OrbitRep& m = reps[static_cast<std::size_t>(rng.below(6))];
    SectionVector f = SectionVector::delta(level, m);
    SectionVector yf = torus_translate(f, y);
    for (const auto& x : classes) {
      CHECK(phi_apply(yf, torus_mul(y, x, level)) == phi_apply(f, x));
    }
  }
}

TEST_CASE("matrix dumps are well-formed") {
  LevelParams level = LevelParams::make(2, 2, 0);
  TransformMatrix phi = phi_matrix(level);
  std::string json = phi.to_json();
  CHECK(json.find("\"matrix\":[[") != std::string::npos);
  CHECK(json.find("\"num\":[\"1\"]") != std::string::npos);
  std::string csv = phi.to_csv();
  CHECK(csv.find("x(n=0,a=1,u=[1])") != std::string::npos);
  CHECK(csv.find("-1") != std::string::npos);
}
