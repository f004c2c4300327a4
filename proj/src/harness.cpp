#include "pgl2/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pgl2 {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

// Deterministic across platforms: raw engine output reduced by modulus,
// never std::uniform_int_distribution.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  int below(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }
};

// Random inputs are drawn as exact coefficient windows first and only
// then materialized at a working precision.  Draws never depend on the
// precision, so the same seed visits the same elements in every
// stability configuration; precision shortfalls are handled by
// rematerializing the same element with a wider window.
struct SeriesDraw {
  bool zero = true;
  int val = 0;
  std::vector<int> coeffs;

  Series materialize(int p, int rel) const {
    if (zero) return Series::zero(p);
    return Series::from_coeff_window(p, val, coeffs, Series::kInfPrec)
        .truncated(val + rel);
  }
  Series materialize_exact(int p) const {
    if (zero) return Series::zero(p);
    return Series::from_coeff_window(p, val, coeffs, Series::kInfPrec);
  }
};

SeriesDraw random_unit_draw(Rng& rng, int p, int val) {
  SeriesDraw s;
  s.zero = false;
  s.val = val;
  s.coeffs.resize(static_cast<std::size_t>(rng.range(1, 4)));
  s.coeffs[0] = rng.range(1, p - 1);
  for (std::size_t i = 1; i < s.coeffs.size(); ++i) s.coeffs[i] = rng.below(p);
  return s;
}

SeriesDraw random_series_draw(Rng& rng, int p, int val_lo, int val_hi,
                              int zero_percent) {
  bool zero = rng.below(100) < zero_percent;
  int val = rng.range(val_lo, val_hi);
  if (zero) return SeriesDraw{};
  return random_unit_draw(rng, p, val);
}

struct ElemDraw {
  std::array<SeriesDraw, 4> entries;

  GroupElem materialize(int p, int rel) const {
    return {entries[0].materialize(p, rel), entries[1].materialize(p, rel),
            entries[2].materialize(p, rel), entries[3].materialize(p, rel), false};
  }
};

ElemDraw random_invertible_draw(Rng& rng, int p) {
  for (;;) {
    ElemDraw s;
    for (auto& e : s.entries) e = random_series_draw(rng, p, -2, 2, 12);
    GroupElem exact{s.entries[0].materialize_exact(p), s.entries[1].materialize_exact(p),
                    s.entries[2].materialize_exact(p), s.entries[3].materialize_exact(p),
                    false};
    if (!mat_det(exact).is_exact_zero()) return s;
  }
}

// Reruns fn at n_rel, n_rel+4, ... until it stops raising PrecisionError.
template <typename Fn>
auto with_precision_retry(int base_rel, Fn&& fn) {
  for (int rel = base_rel;; rel += 4) {
    try {
      return fn(rel);
    } catch (const PrecisionError&) {
      if (rel > base_rel + 24) throw;
    }
  }
}

// value-only digest of a transform matrix (independent of the working
// precision and integration depth used to compute it)
std::string values_digest(const TransformMatrix& m) {
  std::ostringstream out;
  for (const auto& row : m.entries) {
    for (const auto& e : row) out << e.to_csv_string() << ";";
  }
  return hex64(fnv1a(out.str()));
}

struct SuiteContext {
  VerifyConfig config;
  std::vector<std::string> witnesses;
  std::vector<std::string> failures;
  std::string notes;

  std::vector<int> ps(std::vector<int> defaults) const {
    return config.ps.empty() ? defaults : config.ps;
  }
  std::vector<int> ks(std::vector<int> defaults) const {
    return config.ks.empty() ? defaults : config.ks;
  }
  std::vector<int> ns(std::vector<int> defaults) const {
    return config.ns.empty() ? defaults : config.ns;
  }
  int trials(int fallback) const { return config.trials > 0 ? config.trials : fallback; }
  int rel_prec(int k) const {
    int base = config.n_rel == 0 ? std::max(8, k + 3) : config.n_rel;
    return base + config.n_rel_bump;
  }
  LevelParams level(int p, int k, int n) const {
    int base_int = config.m_int == 0 ? k + 2 : config.m_int;
    return LevelParams::make(p, k, n, rel_prec(k), base_int + config.m_int_bump);
  }
  Rng rng(const std::string& claim) const {
    return Rng(config.seed ^ fnv1a(claim));
  }
  void witness(const std::string& w) { witnesses.push_back(w); }
  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::vector<int> range_vec(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// ---------------------------------------------------------------------------
// individual suites
// ---------------------------------------------------------------------------

void suite_dimension_match(SuiteContext& ctx) {
  for (int p : ctx.ps({2, 3, 5})) {
    for (int k : ctx.ks({1, 2, 3})) {
      for (int n : ctx.ns(range_vec(-2, 2))) {
        LevelParams level = ctx.level(p, k, n);
        auto reps = enumerate_representatives(level);
        auto classes = enumerate_torus_classes(level);
        std::size_t expected = static_cast<std::size_t>(p - 1);
        for (int i = 1; i < k; ++i) expected *= static_cast<std::size_t>(p);
        ctx.check(reps.size() == expected, "rep count p=" + std::to_string(p));
        ctx.check(classes.size() == expected, "class count p=" + std::to_string(p));
        std::set<std::string> seen;
        for (const auto& r : reps) seen.insert(r.to_string());
        ctx.check(seen.size() == reps.size(), "duplicate representative");
      }
      std::size_t expected = static_cast<std::size_t>(p - 1);
      for (int i = 1; i < k; ++i) expected *= static_cast<std::size_t>(p);
      ctx.witness("p=" + std::to_string(p) + " k=" + std::to_string(k) +
                  " |R|=|K|=" + std::to_string(expected));
    }
  }
}

void suite_decomposition(SuiteContext& ctx) {
  int trials = ctx.trials(1000);
  for (int p : ctx.ps({2, 3, 5})) {
    Rng rng = ctx.rng("decomposition/" + std::to_string(p));
    int n_rel = ctx.rel_prec(1);
    std::array<int, 4> case_hits = {0, 0, 0, 0};

    auto unit_draw = [&](int val) { return random_unit_draw(rng, p, val); };
    auto mono_draw = [&](int c, int val) {
      return SeriesDraw{false, val, {c}};
    };
    SeriesDraw zero_draw;

    std::vector<ElemDraw> pool;
    // engineered hits for each case
    pool.push_back({{unit_draw(0), unit_draw(-1), zero_draw, mono_draw(1, 0)}});
    pool.push_back({{mono_draw(1, 1), mono_draw(1, 0), mono_draw(1, 1), zero_draw}});
    pool.push_back({{unit_draw(0), unit_draw(0), unit_draw(2), unit_draw(0)}});
    pool.push_back({{unit_draw(0), unit_draw(0), unit_draw(0), unit_draw(1)}});
    pool.push_back({{mono_draw(1, 0), zero_draw, zero_draw, mono_draw(1, 0)}});
    pool.push_back({{zero_draw, mono_draw(1, 0), mono_draw(1, 1), zero_draw}});
    while (static_cast<int>(pool.size()) < trials) {
      pool.push_back(random_invertible_draw(rng, p));
    }

    for (const auto& draw : pool) {
      int case_id = with_precision_retry(n_rel, [&](int rel) {
        GroupElem g = draw.materialize(p, rel);
        BADecomposition dec = decompose_BA(g);
        GroupElem back = mat_mul_raw(dec.borel.assemble(), dec.a.assemble());
        ctx.check(projectively_equal(back, g), "multiply-back p=" + std::to_string(p));
        auto member = a_factor(dec.a.assemble());
        ctx.check(member.has_value() && member->sigma_power == dec.a.sigma_power,
                  "A-membership p=" + std::to_string(p));
        return dec.case_id;
      });
      ++case_hits[static_cast<std::size_t>(case_id)];
    }
    ctx.check(case_hits[1] > 0 && case_hits[2] > 0 && case_hits[3] > 0,
              "case coverage p=" + std::to_string(p));
    ctx.witness("p=" + std::to_string(p) + " elements=" +
                std::to_string(pool.size()) + " case1=" + std::to_string(case_hits[1]) +
                " case2=" + std::to_string(case_hits[2]) +
                " case3=" + std::to_string(case_hits[3]) + " all multiply back");
  }
  ctx.notes =
      "the val(m21)>val(m22) factorization uses the corrected Borel factor "
      "(y = m12/m22, x = m11 - m12*m21/m22), fixed by multiply-back";
}

void suite_representatives(SuiteContext& ctx) {
  for (int p : ctx.ps({2, 3})) {
    for (int k : ctx.ks({1, 2})) {
      for (int n : ctx.ns({-1, 0, 1})) {
        LevelParams level = ctx.level(p, k, n);
        auto reps = enumerate_representatives(level);
        int trunc = k + 2;
        long connections = 0;
        long checked = 0;
        // z = 1 + t^k * (digits), a = M_i^{-1} z^{-1} M_j forced; the
        // pair connects two representatives iff that a lies in A
        std::vector<int> digits(static_cast<std::size_t>(trunc - k), 0);
        do {
          Series zu = Series::one(p, level.n_rel + k) +
                      Series::from_coeff_window(p, k, digits, Series::kInfPrec)
                          .truncated(level.n_rel + k);
          GroupElem z{zu, Series::zero(p), Series::zero(p),
                      Series::one(p, level.n_rel + k), false};
          GroupElem z_inv = mat_inv(z);
          for (std::size_t i = 0; i < reps.size(); ++i) {
            GroupElem mi_inv = mat_inv(reps[i].lift(level).assemble());
            for (std::size_t j = 0; j < reps.size(); ++j) {
              if (i == j) continue;
              GroupElem cand = mat_mul(
                  mat_mul(mi_inv, z_inv), reps[j].lift(level).assemble());
              ++checked;
              if (a_factor(cand)) ++connections;
            }
          }
          bool more = false;
          for (std::size_t d = digits.size(); d-- > 0;) {
            if (++digits[d] < p) {
              more = true;
              break;
            }
            digits[d] = 0;
          }
          if (!more) break;
        } while (true);
        ctx.check(connections == 0, "uniqueness p=" + std::to_string(p) +
                                        " k=" + std::to_string(k));
        ctx.witness("p=" + std::to_string(p) + " k=" + std::to_string(k) +
                    " n=" + std::to_string(n) + " pairs-checked=" +
                    std::to_string(checked) + " connections=" +
                    std::to_string(connections));
      }
    }
  }

  // random relevant Borel elements must reduce into the enumerated list
  int trials = ctx.trials(100);
  Rng rng = ctx.rng("representatives/random");
  std::vector<int> p_choices = ctx.ps({2, 3});
  std::vector<int> k_choices = ctx.ks({1, 2});
  int in_list = 0;
  for (int t = 0; t < trials; ++t) {
    int p = p_choices[static_cast<std::size_t>(rng.below(static_cast<int>(p_choices.size())))];
    int k = k_choices[static_cast<std::size_t>(rng.below(static_cast<int>(k_choices.size())))];
    int n = rng.range(-1, 1);
    LevelParams level = ctx.level(p, k, n);
    SeriesDraw a_draw = random_unit_draw(rng, p, n);
    // val(B) >= n-k+1 keeps the draw relevant by construction
    SeriesDraw b_draw = random_series_draw(rng, p, n - k + 1, n + 2, 20);
    bool found = with_precision_retry(level.n_rel, [&](int rel) {
      BorelForm b{a_draw.materialize(p, rel), b_draw.materialize(p, rel)};
      auto red = reduce_to_representative(b, level);
      ctx.check(red.has_value(), "relevant element reported irrelevant");
      if (!red) return false;
      auto reps = enumerate_representatives(level);
      bool in = std::find(reps.begin(), reps.end(), red->rep) != reps.end();
      ctx.check(in, "reduced representative not in enumeration");
      ctx.check(red->corrector.sigma_power == 0, "corrector left I0");
      GroupElem back = mat_mul(b.assemble(), red->corrector.assemble(rel));
      ctx.check(projectively_equal(back, red->rep.lift(level).assemble()),
                "reduction multiply-back");
      auto again = reduce_to_representative(red->rep.lift(level), level);
      ctx.check(again && again->rep == red->rep, "reduction not idempotent");
      return in;
    });
    if (found) ++in_list;
  }
  ctx.witness("random reductions in-list: " + std::to_string(in_list) + "/" +
              std::to_string(trials));
}

void suite_relevance_iff(SuiteContext& ctx) {
  long b_zero_cases = 0;
  for (int p : ctx.ps({2, 3})) {
    for (int k : ctx.ks({1, 2})) {
      for (int n : ctx.ns({-1, 0, 1})) {
        LevelParams level = ctx.level(p, k, n);
        long agreements = 0;
        for (int a = 1; a < p; ++a) {
          Series a_entry = Series::monomial(PrimeField(p, a), n, level.n_rel);
          // every B-window of length <= 3 ending just below val(A)
          std::vector<int> digits(3, 0);
          do {
            Series b_entry =
                Series::from_coeff_window(p, n - 3, digits, Series::kInfPrec)
                    .truncated(n + level.n_rel);
            BorelForm b{a_entry, b_entry};
            bool closed = relevance_closed_form(b, k);
            bool brute = relevance_bruteforce(b, level);
            ctx.check(closed == brute,
                      "relevance mismatch p=" + std::to_string(p) +
                          " k=" + std::to_string(k) + " B=" + b_entry.to_string());
            if (b_entry.is_exact_zero()) {
              ++b_zero_cases;
              ctx.check(closed, "B=0 must be relevant");
            }
            ++agreements;
            bool more = false;
            for (std::size_t d = digits.size(); d-- > 0;) {
              if (++digits[d] < p) {
                more = true;
                break;
              }
              digits[d] = 0;
            }
            if (!more) break;
          } while (true);
        }
        ctx.witness("p=" + std::to_string(p) + " k=" + std::to_string(k) +
                    " n=" + std::to_string(n) +
                    " windows-checked=" + std::to_string(agreements));
      }
    }
  }
  ctx.witness("B=0 orbits verified relevant: " + std::to_string(b_zero_cases));
  ctx.notes =
      "relevance includes the B=0 orbit: the valuation cut alone would drop "
      "it, but the stabilizer enumeration and the count |R|=(p-1)p^(k-1) "
      "both require it";
}

void suite_cuspidality(SuiteContext& ctx) {
  int trials = ctx.trials(100);
  for (int p : ctx.ps({2, 3, 5})) {
    Rng rng = ctx.rng("cuspidality/" + std::to_string(p));
    int n_rel = ctx.rel_prec(1);
    Cyc one = Cyc::one(p);
    for (int t = 0; t < trials; ++t) {
      SeriesDraw a_draw = random_unit_draw(rng, p, rng.range(-2, 2));
      SeriesDraw b_draw = random_series_draw(rng, p, -2, 2, 15);
      with_precision_retry(n_rel, [&](int rel) {
        BorelForm b{a_draw.materialize(p, rel), b_draw.materialize(p, rel)};
        auto [i, chi] = cuspidality_witness(b);
        ctx.check(iwahori0_params(i).has_value(), "witness left I0");
        ctx.check(chi != one, "witness chi-value is trivial");
        return 0;
      });
    }
    ctx.witness("p=" + std::to_string(p) + " witnesses=" + std::to_string(trials) +
                " all in I0 with chi != 1");
  }
}

void suite_hom_dim(SuiteContext& ctx) {
  int depth = ctx.config.scan_depth > 0 ? ctx.config.scan_depth : 3;
  for (int p : ctx.ps({2, 3})) {
    auto nvals = ctx.ns(range_vec(-3, 3));
    int n_min = *std::min_element(nvals.begin(), nvals.end());
    int n_max = *std::max_element(nvals.begin(), nvals.end());
    ScanReport report = double_coset_scan(p, n_min, n_max, depth);
    std::vector<DoubleCosetPoint> expected;
    for (const auto& r : report.results) {
      if (r.in_identity_coset) expected.push_back(r.point);
    }
    bool same = report.pass_set.size() == expected.size();
    if (same) {
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (!(report.pass_set[i] == expected[i])) same = false;
      }
    }
    ctx.check(same, "pass-set differs from the identity double coset, p=" +
                        std::to_string(p));
    std::ostringstream w;
    w << "p=" << p << " points=" << report.results.size() << " pass-set={";
    for (std::size_t i = 0; i < report.pass_set.size(); ++i) {
      if (i) w << ", ";
      w << report.pass_set[i].to_string();
    }
    w << "}";
    ctx.witness(w.str());
    long failing = 0;
    for (const auto& r : report.results) {
      if (!r.passes) ++failing;
    }
    ctx.witness("p=" + std::to_string(p) + " non-identity points rejected by " +
                "exact counterexample: " + std::to_string(failing));
  }
  ctx.notes =
      "multiplier convention chi(g h g^-1) * chi(h)^-1; under it the "
      "diagonal a=1, n=0 point passes (the opposite pairing would select "
      "a=-1).  The identity double coset contains two affine-Weyl points, "
      "diag(a=1,n=0) and antidiag(a=1,n=-1), because the order-2 generator "
      "of the induction subgroup is itself such a point";
}

void suite_kernel_formula(SuiteContext& ctx) {
  for (int p : ctx.ps({2, 3, 5})) {
    for (int k : ctx.ks({1, 2, 3})) {
      for (int n : ctx.ns(range_vec(-2, 2))) {
        LevelParams level = ctx.level(p, k, n);
        TransformMatrix phi = phi_matrix(level, ctx.config.chi_sigma);
        TransformMatrix ker = kernel_matrix(level);
        bool equal = phi == ker;
        ctx.check(equal, "phi != kernel at p=" + std::to_string(p) +
                             " k=" + std::to_string(k) + " n=" + std::to_string(n));
        ctx.witness("p=" + std::to_string(p) + " k=" + std::to_string(k) +
                    " n=" + std::to_string(n) + " entries=" +
                    std::to_string(phi.rows.size() * phi.cols.size()) +
                    (equal ? " match " : " MISMATCH ") + values_digest(phi));
      }
    }
  }
}

void suite_bijectivity(SuiteContext& ctx) {
  for (int p : ctx.ps({2, 3, 5})) {
    for (int k : ctx.ks({1, 2, 3})) {
      for (int n : ctx.ns(range_vec(-2, 2))) {
        LevelParams level = ctx.level(p, k, n);
        TransformMatrix phi = phi_matrix(level, ctx.config.chi_sigma);
        auto dets = phi.block_determinants();
        std::ostringstream w;
        w << "p=" << p << " k=" << k << " n=" << n << " block-dets=[";
        for (std::size_t i = 0; i < dets.size(); ++i) {
          if (i) w << ", ";
          w << dets[i].to_csv_string();
          ctx.check(!dets[i].is_zero(), "singular block at p=" + std::to_string(p) +
                                            " k=" + std::to_string(k) +
                                            " n=" + std::to_string(n));
        }
        w << "]";
        ctx.witness(w.str());
      }
    }
  }

  // pinned 2x2 block: p=2, k=2 must give [[1,1],[1,-1]] with det -2
  LevelParams pinned = ctx.level(2, 2, 0);
  TransformMatrix phi = phi_matrix(pinned, ctx.config.chi_sigma);
  Cyc plus = Cyc::one(2);
  Cyc minus = -plus;
  bool block_ok = phi.at(0, 0) == plus && phi.at(0, 1) == plus &&
                  phi.at(1, 0) == plus && phi.at(1, 1) == minus;
  ctx.check(block_ok, "p=2 k=2 block differs from [[1,1],[1,-1]]");
  Cyc det = phi.block_determinants().at(0);
  ctx.check(det == Cyc::from_integer(2, -2), "p=2 k=2 block det != -2");
  ctx.witness(std::string("p=2 k=2 n=0 block=[[1,1],[1,-1]] det=-2 ") +
              (block_ok ? "confirmed" : "VIOLATED"));
}

void suite_equivariance(SuiteContext& ctx) {
  int trials = ctx.trials(50);
  for (int p : ctx.ps({2, 3})) {
    for (int k : ctx.ks({1, 2})) {
      LevelParams level = ctx.level(p, k, 0);
      Rng rng = ctx.rng("equivariance/" + std::to_string(p) + "/" + std::to_string(k));
      auto reps = enumerate_representatives(level);
      auto classes = enumerate_torus_classes(level);
      long checked = 0;
      for (int t = 0; t < trials; ++t) {
        TorusClass y;
        y.n = rng.range(-1, 1);
        y.a_lead = rng.range(1, p - 1);
        y.tail.resize(static_cast<std::size_t>(k - 1));
        for (auto& c : y.tail) c = rng.below(p);
        for (const auto& rep : reps) {
          SectionVector f = SectionVector::delta(level, rep);
          SectionVector yf = torus_translate(f, y, ctx.config.chi_sigma);
          for (const auto& x : classes) {
            Cyc lhs = phi_apply(yf, torus_mul(y, x, level), ctx.config.chi_sigma);
            Cyc rhs = phi_apply(f, x, ctx.config.chi_sigma);
            ctx.check(lhs == rhs, "equivariance failed p=" + std::to_string(p) +
                                      " k=" + std::to_string(k) + " y=" +
                                      y.to_string() + " x=" + x.to_string());
            ++checked;
          }
        }
      }
      ctx.witness("p=" + std::to_string(p) + " k=" + std::to_string(k) +
                  " translations=" + std::to_string(trials) +
                  " identities-checked=" + std::to_string(checked));
    }
  }
}

// forward declaration: the stability suite reruns other suites
ClaimReport run_suite_internal(const std::string& claim, const VerifyConfig& config);

std::vector<std::string> stable_claims() {
  return {"dimension_match", "decomposition", "representatives", "relevance_iff",
          "cuspidality",     "hom_dim",       "kernel_formula",  "bijectivity",
          "equivariance"};
}

void sweep_one(SuiteContext& ctx, const std::string& claim) {
  VerifyConfig base = ctx.config;
  ClaimReport ref = run_suite_internal(claim, base);

  VerifyConfig bumped = base;
  bumped.n_rel_bump += 2;
  bumped.m_int_bump += 2;

  VerifyConfig flipped = base;
  flipped.chi_sigma = -base.chi_sigma;

  for (const auto& [label, cfg] :
       std::initializer_list<std::pair<std::string, VerifyConfig>>{
           {"precision+2", bumped}, {"chi_sigma flipped", flipped}}) {
    ClaimReport alt = run_suite_internal(claim, cfg);
    bool same = alt.status == ref.status && alt.witnesses == ref.witnesses;
    ctx.check(same, claim + " unstable under " + label);
    if (!same) {
      for (std::size_t i = 0;
           i < std::max(alt.witnesses.size(), ref.witnesses.size()); ++i) {
        std::string a = i < ref.witnesses.size() ? ref.witnesses[i] : "<none>";
        std::string b = i < alt.witnesses.size() ? alt.witnesses[i] : "<none>";
        if (a != b) ctx.witness("divergence[" + claim + "/" + label + "]: " + a +
                                " vs " + b);
      }
    }
  }
  ctx.witness(claim + ": verdict and values stable under (n_rel+2, m_int+2) " +
              "and chi(sigma) = -1");
}

void suite_stability(SuiteContext& ctx) {
  for (const auto& claim : stable_claims()) sweep_one(ctx, claim);
}

// ---------------------------------------------------------------------------
// dispatch, reporting
// ---------------------------------------------------------------------------

std::string params_json_for(const VerifyConfig& c) {
  OrderedJson j;
  j["p"] = c.ps;
  j["k"] = c.ks;
  j["n"] = c.ns;
  j["n_rel"] = c.n_rel;
  j["m_int"] = c.m_int;
  j["trials"] = c.trials;
  j["chi_sigma"] = c.chi_sigma;
  j["scan_depth"] = c.scan_depth;
  return j.dump();
}

const std::map<std::string, void (*)(SuiteContext&)>& suite_table() {
  static const std::map<std::string, void (*)(SuiteContext&)> table = {
      {"dimension_match", suite_dimension_match},
      {"decomposition", suite_decomposition},
      {"representatives", suite_representatives},
      {"relevance_iff", suite_relevance_iff},
      {"cuspidality", suite_cuspidality},
      {"hom_dim", suite_hom_dim},
      {"kernel_formula", suite_kernel_formula},
      {"bijectivity", suite_bijectivity},
      {"equivariance", suite_equivariance},
      {"stability", suite_stability},
  };
  return table;
}

ClaimReport run_suite_internal(const std::string& claim, const VerifyConfig& config) {
  auto it = suite_table().find(claim);
  if (it == suite_table().end()) throw DomainError("unknown claim: " + claim);

  SuiteContext ctx;
  ctx.config = config;
  auto start = std::chrono::steady_clock::now();
  it->second(ctx);
  auto stop = std::chrono::steady_clock::now();

  ClaimReport report;
  report.claim = claim;
  report.params_json = params_json_for(config);
  report.seed = config.seed;
  report.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  report.notes = ctx.notes;
  if (!ctx.failures.empty()) {
    report.status = "fail";
    report.witnesses = ctx.failures;
    for (const auto& w : ctx.witnesses) report.witnesses.push_back(w);
  } else {
    report.status = ctx.notes.empty() ? "pass" : "pass-with-deviation";
    report.witnesses = ctx.witnesses;
  }
  return report;
}

}  // namespace

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = {
      "dimension_match", "decomposition", "representatives", "relevance_iff",
      "cuspidality",     "hom_dim",       "kernel_formula",  "bijectivity",
      "equivariance",    "stability"};
  return ids;
}

ClaimReport run_claim_suite(const std::string& claim, const VerifyConfig& config) {
  return run_suite_internal(claim, config);
}

ClaimReport stability_sweep(const std::string& claim, const VerifyConfig& config) {
  if (suite_table().find(claim) == suite_table().end()) {
    throw DomainError("unknown claim: " + claim);
  }
  SuiteContext ctx;
  ctx.config = config;
  auto start = std::chrono::steady_clock::now();
  sweep_one(ctx, claim);
  auto stop = std::chrono::steady_clock::now();

  ClaimReport report;
  report.claim = claim + "/stability";
  report.params_json = params_json_for(config);
  report.seed = config.seed;
  report.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  if (!ctx.failures.empty()) {
    report.status = "fail";
    report.witnesses = ctx.failures;
  } else {
    report.status = "pass";
    report.witnesses = ctx.witnesses;
  }
  return report;
}

std::vector<ClaimReport> run_all(const VerifyConfig& config) {
  std::vector<ClaimReport> reports;
  for (const auto& claim : claim_ids()) {
    reports.push_back(run_claim_suite(claim, config));
  }
  return reports;
}

std::string emit_report(const std::vector<ClaimReport>& reports, ReportFormat format) {
  if (format == ReportFormat::Json) {
    OrderedJson all = OrderedJson::array();
    for (const auto& r : reports) {
      OrderedJson j;
      j["claim"] = r.claim;
      j["params"] = OrderedJson::parse(r.params_json);
      j["status"] = r.status;
      j["witnesses"] = r.witnesses;
      j["notes"] = r.notes;
      j["seed"] = r.seed;
      j["runtime_ms"] = r.runtime_ms;
      all.push_back(j);
    }
    return all.dump(2) + "\n";
  }
  std::ostringstream out;
  for (const auto& r : reports) {
    out << (r.status == "fail" ? "FAIL" : "PASS") << "  " << r.claim;
    if (r.status == "pass-with-deviation") out << " (with documented deviation)";
    out << "  [" << r.runtime_ms << " ms, " << r.witnesses.size() << " witnesses]\n";
    if (r.status == "fail") {
      for (const auto& w : r.witnesses) out << "      " << w << "\n";
    }
    if (!r.notes.empty()) out << "      note: " << r.notes << "\n";
  }
  return out.str();
}

bool all_passed(const std::vector<ClaimReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const ClaimReport& r) {
    return r.status != "fail";
  });
}

}  // namespace pgl2
