#include "pgl2/model.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace pgl2 {

namespace {

BigInt big_pow(int base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// digits are most significant at index 0, matching lexicographic order
bool next_digits(std::vector<int>& digits, int p) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < p) return true;
    digits[i] = 0;
  }
  return false;
}

std::size_t digits_to_index(const std::vector<int>& digits, int p) {
  std::size_t idx = 0;
  for (int d : digits) idx = idx * static_cast<std::size_t>(p) + static_cast<std::size_t>(d);
  return idx;
}

std::size_t pow_sz(int p, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(p);
  return r;
}

}  // namespace

Series TorusClass::lift(const LevelParams& level) const {
  std::vector<int> unit(static_cast<std::size_t>(tail.size() + 1));
  unit[0] = 1;
  std::copy(tail.begin(), tail.end(), unit.begin() + 1);
  Series u = Series::from_coeff_window(level.p, 0, unit, Series::kInfPrec);
  return Series::monomial(PrimeField(level.p, a_lead), n, level.n_rel) * u;
}

std::string TorusClass::to_string() const {
  std::ostringstream out;
  out << "x(n=" << n << ",a=" << a_lead << ",u=[";
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (i) out << ",";
    out << tail[i];
  }
  out << "])";
  return out.str();
}

std::vector<OrbitRep> enumerate_representatives(const LevelParams& level) {
  std::vector<OrbitRep> out;
  out.reserve(static_cast<std::size_t>(level.p - 1) * pow_sz(level.p, level.k - 1));
  for (int a = 1; a < level.p; ++a) {
    std::vector<int> window(static_cast<std::size_t>(level.k - 1), 0);
    do {
      out.push_back(OrbitRep{level.n, a, window});
    } while (next_digits(window, level.p));
  }
  return out;
}

std::vector<TorusClass> enumerate_torus_classes(const LevelParams& level) {
  std::vector<TorusClass> out;
  out.reserve(static_cast<std::size_t>(level.p - 1) * pow_sz(level.p, level.k - 1));
  for (int a = 1; a < level.p; ++a) {
    std::vector<int> tail(static_cast<std::size_t>(level.k - 1), 0);
    do {
      out.push_back(TorusClass{level.n, a, tail});
    } while (next_digits(tail, level.p));
  }
  return out;
}

std::size_t rep_index(const LevelParams& level, const OrbitRep& rep) {
  if (rep.n != level.n || rep.a_lead < 1 || rep.a_lead >= level.p ||
      rep.window.size() != static_cast<std::size_t>(level.k - 1)) {
    throw DomainError("representative does not belong to this level");
  }
  return static_cast<std::size_t>(rep.a_lead - 1) * pow_sz(level.p, level.k - 1) +
         digits_to_index(rep.window, level.p);
}

SectionVector SectionVector::zero(const LevelParams& level) {
  std::size_t size = static_cast<std::size_t>(level.p - 1) * pow_sz(level.p, level.k - 1);
  return SectionVector(level, std::vector<Cyc>(size, Cyc::zero(level.p)));
}

SectionVector SectionVector::delta(const LevelParams& level, const OrbitRep& rep) {
  SectionVector f = zero(level);
  f.values_[rep_index(level, rep)] = Cyc::one(level.p);
  return f;
}

const Cyc& SectionVector::at(const OrbitRep& rep) const {
  return values_.at(rep_index(level_, rep));
}

bool SectionVector::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Cyc& v) { return v.is_zero(); });
}

Cyc evaluate_section(const SectionVector& f, const GroupElem& g, int chi_sigma) {
  const int p = g.p();
  BADecomposition dec = decompose_BA(g);
  if (dec.borel.A.is_exact_zero()) throw DomainError("evaluate_section: singular input");
  if (dec.borel.A.is_zero_within_prec() &&
      dec.borel.A.abs_prec() <= f.level().n) {
    throw PrecisionError("evaluate_section: block valuation indeterminate");
  }
  if (dec.borel.A.is_zero_within_prec() || dec.borel.A.val() != f.level().n) {
    return Cyc::zero(p);  // supported on a different valuation block
  }
  auto red = reduce_to_representative(dec.borel, f.level());
  if (!red) return Cyc::zero(p);
  const Cyc& base = f.at(red->rep);
  if (base.is_zero()) return base;
  return base * chi_eval(red->corrector, chi_sigma).inverse() *
         chi_eval(dec.a, chi_sigma);
}

Cyc whittaker_functional(const SectionVector& f, int chi_sigma) {
  const LevelParams& level = f.level();
  const int p = level.p;
  Cyc total = Cyc::zero(p);
  std::vector<int> digits(static_cast<std::size_t>(level.m_int), 0);
  Series one = Series::one(p, level.n_rel);
  do {
    Series u = Series::from_coeff_window(p, 0, digits, Series::kInfPrec)
                   .truncated(level.m_int);
    GroupElem g{one, u, Series::zero(p), one, false};
    Cyc term = evaluate_section(f, g, chi_sigma);
    if (!term.is_zero()) total = total + term * psi(-PrimeField(p, digits[0]));
  } while (next_digits(digits, p));
  return total.scaled(1, big_pow(p, level.m_int));
}

Cyc phi_apply(const SectionVector& f, const TorusClass& x, int chi_sigma) {
  const LevelParams& level = f.level();
  const int p = level.p;
  Series x_lift = x.lift(level);
  Cyc total = Cyc::zero(p);
  // u runs over t^(1-k) O / t^m_int, the union of the supports of the
  // integrands at level k; each point carries measure p^(-m_int)
  std::vector<int> digits(static_cast<std::size_t>(level.m_int + level.k - 1), 0);
  do {
    Series u = Series::from_coeff_window(p, 1 - level.k, digits, Series::kInfPrec)
                   .truncated(level.m_int);
    GroupElem g{x_lift, x_lift * u, Series::zero(p),
                Series::one(p, level.n_rel), false};
    Cyc term = evaluate_section(f, g, chi_sigma);
    if (!term.is_zero()) {
      int u0 = digits[static_cast<std::size_t>(level.k - 1)];
      total = total + term * psi(-PrimeField(p, u0));
    }
  } while (next_digits(digits, p));
  return total.scaled(1, big_pow(p, level.m_int));
}

Cyc kernel_eval(const OrbitRep& rep, const TorusClass& x, const LevelParams& level) {
  const int p = level.p;
  if (rep.n != x.n || rep.a_lead != x.a_lead) return Cyc::zero(p);
  Series b = Series::from_coeff_window(p, level.n - level.k + 1, rep.window,
                                       Series::kInfPrec);
  Series q = b * x.lift(level).inverse();
  if (q.is_exact_zero()) return Cyc::one(p);
  return psi(-q.coeff(0));
}

// ---------------------------------------------------------------------------
// transform matrices
// ---------------------------------------------------------------------------

bool TransformMatrix::operator==(const TransformMatrix& o) const {
  if (level.p != o.level.p || level.k != o.level.k || level.n != o.level.n)
    return false;
  if (rows.size() != o.rows.size() || cols.size() != o.cols.size()) return false;
  for (std::size_t r = 0; r < entries.size(); ++r) {
    for (std::size_t c = 0; c < entries[r].size(); ++c) {
      if (entries[r][c] != o.entries[r][c]) return false;
    }
  }
  return true;
}

std::vector<Cyc> TransformMatrix::block_determinants() const {
  std::vector<Cyc> dets;
  for (int a = 1; a < level.p; ++a) {
    std::vector<std::size_t> ridx, cidx;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].a_lead == a) ridx.push_back(r);
    }
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].a_lead == a) cidx.push_back(c);
    }
    std::vector<std::vector<Cyc>> block;
    block.reserve(ridx.size());
    for (std::size_t r : ridx) {
      std::vector<Cyc> row;
      row.reserve(cidx.size());
      for (std::size_t c : cidx) row.push_back(entries[r][c]);
      block.push_back(std::move(row));
    }
    dets.push_back(exact_det(block));
  }
  return dets;
}

namespace {

// One row of the phi matrix, assembled by reducing x.u over every u in
// t^(1-k) O / t^m_int.  Series inversion of the row's lift is done once
// with the real machinery; the inner loop then only convolves integer
// coefficient windows, which keeps the full-grid sweeps fast.
struct RowSweep {
  const LevelParams& level;
  std::vector<int> ux;   // unit coefficients of the lift, ux[0] = a_lead
  int inv_lead;          // constant unit coefficient of lift^{-1}

  explicit RowSweep(const LevelParams& lv, const TorusClass& x) : level(lv) {
    Series lift = x.lift(lv);
    ux.resize(static_cast<std::size_t>(lv.k));
    for (int i = 0; i < lv.k; ++i) ux[static_cast<std::size_t>(i)] = lift.coeff_raw(x.n + i);
    Series inv = lift.inverse();
    inv_lead = inv.coeff_raw(-x.n);
  }

  // counts[col * p + j] accumulates psi-exponent classes j for column col
  void run(std::vector<std::int64_t>& counts) const {
    const int p = level.p;
    const int k = level.k;
    const std::size_t ulen = static_cast<std::size_t>(level.m_int + k - 1);
    std::vector<int> cu(ulen, 0);  // u coefficients from degree 1-k, ascending
    std::vector<int> w(static_cast<std::size_t>(k), 0);
    for (;;) {
      // w[j] = coefficient of t^(n+1-k+j) in lift*u, j = 0..k-1
      for (int j = 0; j < k; ++j) {
        int acc = 0;
        for (int i = 0; i <= j && i < k; ++i) {
          acc += ux[static_cast<std::size_t>(i)] * cu[static_cast<std::size_t>(j - i)];
        }
        w[static_cast<std::size_t>(j)] = acc % p;
      }
      // column: the reduction target keeps the window coefficients of
      // lift*u below degree n; the corrector's chi-value is
      // psi((w_n / lift)_0) since val(lift^{-1}) = -n exactly
      std::size_t col = 0;
      for (int j = 0; j < k - 1; ++j) {
        col = col * static_cast<std::size_t>(p) +
              static_cast<std::size_t>(w[static_cast<std::size_t>(j)]);
      }
      int chi0 = (w[static_cast<std::size_t>(k - 1)] * inv_lead) % p;
      int u0 = cu[static_cast<std::size_t>(k - 1)];  // degree-0 coefficient
      int cls = fp_sub(chi0, u0, p);
      ++counts[col * static_cast<std::size_t>(p) + static_cast<std::size_t>(cls)];

      std::size_t i = ulen;
      bool carry = true;
      while (i-- > 0) {
        if (++cu[i] < p) {
          carry = false;
          break;
        }
        cu[i] = 0;
      }
      if (carry) break;
    }
  }
};

TransformMatrix phi_matrix_uncached(const LevelParams& level, int /*chi_sigma*/) {
  const int p = level.p;
  TransformMatrix out;
  out.level = level;
  out.rows = enumerate_torus_classes(level);
  out.cols = enumerate_representatives(level);
  out.entries.assign(out.rows.size(),
                     std::vector<Cyc>(out.cols.size(), Cyc::zero(p)));

  const std::size_t block = pow_sz(p, level.k - 1);
  const BigInt measure_den = big_pow(p, level.m_int);

  auto compute_row = [&](std::size_t r) {
    const TorusClass& x = out.rows[r];
    RowSweep sweep(level, x);
    std::vector<std::int64_t> counts(block * static_cast<std::size_t>(p), 0);
    sweep.run(counts);
    std::size_t col_base = static_cast<std::size_t>(x.a_lead - 1) * block;
    for (std::size_t b = 0; b < block; ++b) {
      Cyc entry = Cyc::zero(p);
      for (int j = 0; j < p; ++j) {
        std::int64_t c = counts[b * static_cast<std::size_t>(p) +
                                static_cast<std::size_t>(j)];
        if (c != 0) entry = entry + Cyc::zeta_pow(p, j).scaled(c, 1);
      }
      out.entries[r][col_base + b] = entry.scaled(1, measure_den);
    }
  };

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers > 1 && out.rows.size() > 1) {
    std::vector<std::future<void>> futures;
    std::size_t chunk = (out.rows.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      std::size_t lo = w * chunk;
      std::size_t hi = std::min(out.rows.size(), lo + chunk);
      if (lo >= hi) break;
      futures.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (std::size_t r = lo; r < hi; ++r) compute_row(r);
      }));
    }
    for (auto& f : futures) f.get();
  } else {
    for (std::size_t r = 0; r < out.rows.size(); ++r) compute_row(r);
  }
  return out;
}

}  // namespace

TransformMatrix phi_matrix(const LevelParams& level, int chi_sigma) {
  using Key = std::tuple<int, int, int, int, int, int>;
  static std::mutex cache_mutex;
  static std::map<Key, TransformMatrix> cache;
  Key key{level.p, level.k, level.n, level.n_rel, level.m_int, chi_sigma};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  TransformMatrix m = phi_matrix_uncached(level, chi_sigma);
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(key, std::move(m)).first->second;
}

TransformMatrix kernel_matrix(const LevelParams& level) {
  TransformMatrix out;
  out.level = level;
  out.rows = enumerate_torus_classes(level);
  out.cols = enumerate_representatives(level);
  out.entries.assign(out.rows.size(),
                     std::vector<Cyc>(out.cols.size(), Cyc::zero(level.p)));
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    for (std::size_t c = 0; c < out.cols.size(); ++c) {
      out.entries[r][c] = kernel_eval(out.cols[c], out.rows[r], level);
    }
  }
  return out;
}

std::string TransformMatrix::to_json() const {
  std::ostringstream out;
  out << "{\"p\":" << level.p << ",\"k\":" << level.k << ",\"n\":" << level.n
      << ",\"m_int\":" << level.m_int << ",\"rows\":[";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) out << ",";
    out << "\"" << rows[r].to_string() << "\"";
  }
  out << "],\"cols\":[";
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) out << ",";
    out << "\"" << cols[c].to_string() << "\"";
  }
  out << "],\"matrix\":[";
  for (std::size_t r = 0; r < entries.size(); ++r) {
    if (r) out << ",";
    out << "[";
    for (std::size_t c = 0; c < entries[r].size(); ++c) {
      if (c) out << ",";
      const Cyc& e = entries[r][c];
      out << "{\"num\":[";
      for (std::size_t i = 0; i < e.num().size(); ++i) {
        if (i) out << ",";
        out << "\"" << e.num()[i] << "\"";
      }
      out << "],\"den\":\"" << e.den() << "\"}";
    }
    out << "]";
  }
  out << "]}";
  return out.str();
}

std::string TransformMatrix::to_csv() const {
  std::ostringstream out;
  out << "x\\M";
  for (const auto& c : cols) out << "," << c.to_string();
  out << "\n";
  for (std::size_t r = 0; r < entries.size(); ++r) {
    out << rows[r].to_string();
    for (std::size_t c = 0; c < entries[r].size(); ++c) {
      out << "," << entries[r][c].to_csv_string();
    }
    out << "\n";
  }
  return out.str();
}

TorusClass torus_mul(const TorusClass& x, const TorusClass& y,
                     const LevelParams& level) {
  Series z = x.lift(level) * y.lift(level);
  int n = x.n + y.n;
  PrimeField lead = z.coeff(n);
  PrimeField lead_inv = lead.inverse();
  std::vector<int> tail(static_cast<std::size_t>(level.k - 1));
  for (int i = 1; i < level.k; ++i) {
    tail[static_cast<std::size_t>(i - 1)] = (z.coeff(n + i) * lead_inv).value();
  }
  return TorusClass{n, lead.value(), std::move(tail)};
}

SectionVector torus_translate(const SectionVector& f, const TorusClass& y,
                              int chi_sigma) {
  const LevelParams& in = f.level();
  LevelParams out_level =
      LevelParams::make(in.p, in.k, in.n + y.n, in.n_rel, in.m_int);
  Series y_lift = y.lift(in);
  GroupElem y_mat{y_lift, Series::zero(in.p), Series::zero(in.p),
                  Series::one(in.p, in.n_rel), false};
  GroupElem y_inv = mat_inv(y_mat);
  SectionVector out = SectionVector::zero(out_level);
  auto reps = enumerate_representatives(out_level);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    GroupElem shifted = mat_mul(y_inv, reps[i].lift(out_level).assemble());
    out.set(i, evaluate_section(f, shifted, chi_sigma));
  }
  return out;
}

}  // namespace pgl2
