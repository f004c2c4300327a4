#include "pgl2/orbits.hpp"

#include <cmath>
#include <future>
#include <sstream>
#include <thread>

namespace pgl2 {

LevelParams LevelParams::make(int p, int k, int n, int n_rel, int m_int) {
  PrimeField::check_prime(p);
  if (k < 1) throw DomainError("congruence level k must be >= 1");
  if (n_rel == 0) n_rel = std::max(8, k + 3);
  if (m_int == 0) m_int = k + 2;
  if (n_rel < k + 3) {
    throw DomainError("relative precision " + std::to_string(n_rel) +
                      " too low for level k=" + std::to_string(k) +
                      " (need >= k+3)");
  }
  if (m_int < k + 1) {
    throw DomainError("integration depth " + std::to_string(m_int) +
                      " too low for level k=" + std::to_string(k) +
                      " (need >= k+1)");
  }
  return {p, k, n, n_rel, m_int};
}

BorelForm OrbitRep::lift(const LevelParams& level) const {
  Series a_part =
      Series::monomial(PrimeField(level.p, a_lead), n, level.n_rel);
  Series b_part = Series::from_coeff_window(level.p, n - level.k + 1, window,
                                            Series::kInfPrec)
                      .truncated(n + level.n_rel);
  return {a_part, b_part};
}

std::string OrbitRep::to_string() const {
  std::ostringstream out;
  out << "M(n=" << n << ",a=" << a_lead << ",b=[";
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (i) out << ",";
    out << window[i];
  }
  out << "])";
  return out.str();
}

GroupElem DoubleCosetPoint::lift(int p, int rel_prec) const {
  Series lead = Series::monomial(PrimeField(p, a_lead), n, rel_prec);
  Series one = Series::one(p, rel_prec);
  Series zero = Series::zero(p);
  if (shape == Shape::Diagonal) return {lead, zero, zero, one, false};
  return {zero, lead, one, zero, false};
}

std::string DoubleCosetPoint::to_string() const {
  std::ostringstream out;
  out << (shape == Shape::Diagonal ? "diag" : "antidiag") << "(a=" << a_lead
      << ",n=" << n << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// decomposition G = B(K) . A
// ---------------------------------------------------------------------------

BADecomposition decompose_BA(const GroupElem& g) {
  const int p = g.p();
  if (g.m21.is_zero_within_prec()) {
    return {to_borel_form(g), AElem::identity(p), 1};
  }
  // m21 has a definite valuation from here on
  const int v21 = g.m21.val();
  bool case2;
  if (g.m22.is_exact_zero()) {
    case2 = false;
  } else if (g.m22.is_zero_within_prec()) {
    if (v21 >= g.m22.abs_prec()) {
      throw PrecisionError("decompose_BA: cannot compare val(m21), val(m22)");
    }
    case2 = false;  // val(m22) >= prec > val(m21)
  } else {
    case2 = v21 > g.m22.val();
  }

  if (case2) {
    // scale so the lower row is (m21/m22, 1) with m21/m22 in tO, then
    // peel off the I0 factor [[1,0],[m21', 1]]
    Series inv = g.m22.inverse();
    Series e11 = g.m11 * inv;
    Series e12 = g.m12 * inv;
    Series e21 = g.m21 * inv;
    Series e22 = g.m22 * inv;
    BorelForm borel{e11 - e12 * e21, e12};
    GroupElem a_mat{Series::one(p, e21.rel_prec()), Series::zero(p), e21, e22, false};
    auto a = a_factor(a_mat);
    if (!a || a->sigma_power != 0) {
      throw DomainError("decompose_BA: case-2 factor left I0 unexpectedly");
    }
    return {std::move(borel), *a, 2};
  }

  // val(m21) <= val(m22): scale so m21 = t, giving the A-side factor
  // [[0,1],[t, m22']] = sigma * [[1, m22'/t],[0,1]]
  Series scale_inv = g.m21.shifted(-1).inverse();
  Series e11 = g.m11 * scale_inv;
  Series e12 = g.m12 * scale_inv;
  Series e21 = g.m21 * scale_inv;  // = t within precision
  Series e22 = g.m22 * scale_inv;
  BorelForm borel{e12 - (e11 * e22).shifted(-1), e11.shifted(-1)};
  GroupElem a_mat{Series::zero(p), Series::one(p, e21.rel_prec()), e21, e22, false};
  auto a = a_factor(a_mat);
  if (!a || a->sigma_power != 1) {
    throw DomainError("decompose_BA: case-3 factor left sigma*I0 unexpectedly");
  }
  return {std::move(borel), *a, 3};
}

// ---------------------------------------------------------------------------
// reduction to R_{n,k}
// ---------------------------------------------------------------------------

std::optional<Reduction> reduce_to_representative(const BorelForm& b,
                                                  const LevelParams& level) {
  const int p = level.p;
  const int n = level.n;
  if (b.A.is_zero_within_prec()) throw DomainError("reduce: Borel A-entry is zero");
  if (b.A.val() != n) {
    throw DomainError("reduce: val(A) = " + std::to_string(b.A.val()) +
                      " does not match the level block n = " + std::to_string(n));
  }
  // relevance cut: any B-coefficient below degree n-k+1 kills the orbit
  if (!b.B.is_zero_within_prec() && b.B.val() <= n - level.k) return std::nullopt;

  PrimeField a_n = b.A.coeff(n);
  std::vector<int> window(static_cast<std::size_t>(level.k - 1));
  for (int i = 0; i < level.k - 1; ++i) {
    window[static_cast<std::size_t>(i)] = b.B.coeff_raw(n - level.k + 1 + i);
  }

  Series lead = Series::monomial(a_n, n, b.A.rel_prec());
  Series m11 = (lead - b.A) / b.A.shifted(1);
  Series m12 = -(b.B.part_from(n)) / b.A;
  AElem corrector{0, Iwahori0Params{m11, m12, Series::zero(p), Series::zero(p)}};
  return Reduction{OrbitRep{n, a_n.value(), std::move(window)}, std::move(corrector)};
}

bool relevance_closed_form(const BorelForm& b, int k) {
  if (b.A.is_zero_within_prec()) throw DomainError("relevance: A-entry is zero");
  if (b.B.is_exact_zero()) return true;
  if (b.B.is_zero_within_prec()) {
    // val(B) >= prec; enough to decide when the bound clears the cut
    if (b.B.abs_prec() - b.A.val() >= -k + 1) return true;
    throw PrecisionError("relevance indeterminate at current precision");
  }
  return b.B.val() - b.A.val() >= -k + 1;
}

bool relevance_bruteforce(const BorelForm& b, const LevelParams& level) {
  const int p = level.p;
  GroupElem g = b.assemble();
  GroupElem g_inv = mat_inv(g);
  Cyc one = Cyc::one(p);
  // z = diag(1 + t^k x, 1), x over O / t^m_int
  std::vector<int> digits(static_cast<std::size_t>(level.m_int), 0);
  for (;;) {
    Series x = Series::from_coeff_window(p, 0, digits, Series::kInfPrec)
                   .truncated(level.n_rel + level.k);
    Series zu = Series::one(p, level.n_rel + level.k) + x.shifted(level.k);
    GroupElem z{zu, Series::zero(p), Series::zero(p),
                Series::one(p, level.n_rel + level.k), false};
    GroupElem cand = mat_mul(mat_mul(g_inv, mat_inv(z)), g);
    if (auto a = a_factor(cand)) {
      if (chi_eval(*a) != one) return false;
    }
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return true;
}

// ---------------------------------------------------------------------------
// double coset scan
// ---------------------------------------------------------------------------

std::optional<Cyc> double_coset_multiplier(const DoubleCosetPoint& point,
                                           const Iwahori0Params& h, int p,
                                           int rel_prec) {
  GroupElem g = point.lift(p, rel_prec);
  GroupElem g_inv = mat_inv(g);
  GroupElem conj = mat_mul_raw(mat_mul_raw(g, h.assemble(rel_prec)), g_inv);
  auto member = iwahori0_params(conj);
  if (!member) return std::nullopt;
  return chi_iwahori(*member) / chi_iwahori(h);
}

bool in_identity_double_coset(const DoubleCosetPoint& point, int p) {
  return a_factor(point.lift(p)).has_value();
}

namespace {

ScanPointResult scan_one_point(const DoubleCosetPoint& point, int p, int depth) {
  ScanPointResult res;
  res.point = point;
  res.in_identity_coset = in_identity_double_coset(point, p);
  const int rel = depth + std::abs(point.n) + 6;
  GroupElem g = point.lift(p, rel);
  GroupElem g_inv = mat_inv(g);
  Cyc one = Cyc::one(p);

  const std::size_t m = static_cast<std::size_t>(depth);
  std::vector<int> digits(4 * m, 0);  // (a | b | c | d) coefficient blocks
  bool all_trivial = true;
  for (;;) {
    auto block = [&](std::size_t i) {
      return Series::from_coeff_window(
          p, 0,
          std::vector<int>(digits.begin() + static_cast<long>(i * m),
                           digits.begin() + static_cast<long>((i + 1) * m)),
          Series::kInfPrec)
          .truncated(rel);
    };
    Iwahori0Params h{block(0), block(1), block(2), block(3)};
    GroupElem conj = mat_mul_raw(mat_mul_raw(g, h.assemble(rel)), g_inv);
    if (auto member = iwahori0_params(conj)) {
      ++res.stabilizer_size;
      Cyc mult = chi_iwahori(*member) / chi_iwahori(h);
      if (mult != one) {
        all_trivial = false;
        std::ostringstream w;
        w << point.to_string() << " h=(a=" << h.a.to_string()
          << ";b=" << h.b.to_string() << ";c=" << h.c.to_string()
          << ";d=" << h.d.to_string() << ") multiplier=" << mult.to_string();
        res.witness = w.str();
        break;  // one exact counterexample settles the point
      }
    }
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  res.passes = all_trivial;
  return res;
}

}  // namespace

ScanReport double_coset_scan(int p, int n_min, int n_max, int depth) {
  PrimeField::check_prime(p);
  if (depth < 1) throw DomainError("scan depth must be >= 1");
  double per_point = std::pow(static_cast<double>(p), 4.0 * depth);
  if (per_point > 1e7) {
    throw DomainError("double coset scan refused: p^(4*depth) = " +
                      std::to_string(static_cast<long long>(per_point)) +
                      " exceeds the 10^7 elementary-operation guard");
  }
  ScanReport report;
  report.p = p;
  report.n_min = n_min;
  report.n_max = n_max;
  report.depth = depth;
  if (n_min > n_max) return report;

  std::vector<DoubleCosetPoint> points;
  for (auto shape :
       {DoubleCosetPoint::Shape::Diagonal, DoubleCosetPoint::Shape::Antidiagonal}) {
    for (int n = n_min; n <= n_max; ++n) {
      for (int a = 1; a < p; ++a) points.push_back({shape, n, a});
    }
  }

  // points are independent; compute in parallel, aggregate in order
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<ScanPointResult>> futures;
  futures.reserve(points.size());
  for (const auto& pt : points) {
    futures.push_back(std::async(workers > 1 ? std::launch::async
                                             : std::launch::deferred,
                                 scan_one_point, pt, p, depth));
  }
  for (auto& f : futures) report.results.push_back(f.get());
  for (const auto& r : report.results) {
    if (r.passes) report.pass_set.push_back(r.point);
  }
  return report;
}

std::pair<GroupElem, Cyc> cuspidality_witness(const BorelForm& b) {
  const int p = b.A.p();
  GroupElem g = b.assemble();
  GroupElem ubar{Series::one(p, b.A.rel_prec()), b.A, Series::zero(p),
                 Series::one(p, b.A.rel_prec()), false};
  GroupElem i = mat_mul(mat_mul(mat_inv(g), ubar), g);
  auto params = iwahori0_params(i);
  if (!params) throw DomainError("cuspidality witness left I0 unexpectedly");
  return {i, chi_iwahori(*params)};
}

}  // namespace pgl2
