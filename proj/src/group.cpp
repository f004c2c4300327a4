#include "pgl2/group.hpp"

#include <array>
#include <sstream>

namespace pgl2 {

std::string GroupElem::to_string() const {
  std::ostringstream out;
  out << "[[" << m11.to_string() << ", " << m12.to_string() << "], ["
      << m21.to_string() << ", " << m22.to_string() << "]]";
  return out.str();
}

GroupElem identity_elem(int p, int rel_prec) {
  return {Series::one(p, rel_prec), Series::zero(p), Series::zero(p),
          Series::one(p, rel_prec), true};
}

GroupElem sigma_elem(int p, int rel_prec) {
  return {Series::zero(p), Series::one(p, rel_prec),
          Series::monomial(PrimeField(p, 1), 1, rel_prec), Series::zero(p), true};
}

Series mat_det(const GroupElem& g) { return g.m11 * g.m22 - g.m12 * g.m21; }

namespace {

void require_invertible(const GroupElem& g) {
  Series d = mat_det(g);
  if (d.is_exact_zero()) throw DomainError("matrix is singular");
  if (d.is_zero_within_prec()) {
    throw PrecisionError("matrix determinant indeterminate at current precision");
  }
}

}  // namespace

GroupElem canonicalize(const GroupElem& g) {
  if (g.canonical) return g;
  require_invertible(g);
  std::array<const Series*, 4> entries = {&g.m11, &g.m12, &g.m21, &g.m22};
  int min_val = Series::kInfPrec;
  for (const Series* e : entries) {
    if (!e->is_zero_within_prec()) min_val = std::min(min_val, e->val());
  }
  if (min_val >= Series::kInfPrec) throw DomainError("cannot canonicalize zero matrix");
  const Series* pivot = nullptr;
  for (const Series* e : entries) {
    if (e->is_exact_zero()) continue;
    if (e->is_zero_within_prec()) {
      // an entry known only as 0 mod t^P could still undercut the pivot
      if (e->abs_prec() <= min_val) {
        throw PrecisionError("pivot valuation indeterminate at current precision");
      }
      continue;
    }
    if (pivot == nullptr && e->val() == min_val) pivot = e;
  }
  Series inv = pivot->inverse();
  GroupElem out{g.m11 * inv, g.m12 * inv, g.m21 * inv, g.m22 * inv, true};
  return out;
}

GroupElem mat_mul_raw(const GroupElem& a, const GroupElem& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22, false};
}

GroupElem mat_mul(const GroupElem& a, const GroupElem& b) {
  return canonicalize(mat_mul_raw(a, b));
}

GroupElem mat_inv(const GroupElem& g) {
  require_invertible(g);
  return canonicalize({g.m22, -g.m12, -g.m21, g.m11, false});
}

bool projectively_equal(const GroupElem& a, const GroupElem& b) {
  GroupElem ca = canonicalize(a);
  GroupElem cb = canonicalize(b);
  return Series::eq_mod_prec(ca.m11, cb.m11) && Series::eq_mod_prec(ca.m12, cb.m12) &&
         Series::eq_mod_prec(ca.m21, cb.m21) && Series::eq_mod_prec(ca.m22, cb.m22);
}

Iwahori0Params Iwahori0Params::zeros(int p) {
  return {Series::zero(p), Series::zero(p), Series::zero(p), Series::zero(p)};
}

GroupElem Iwahori0Params::assemble(int rel_prec) const {
  int p = a.p();
  Series one = Series::one(p, rel_prec);
  return {one + a.shifted(1), b, c.shifted(1), one + d.shifted(1), false};
}

AElem AElem::identity(int p) { return {0, Iwahori0Params::zeros(p)}; }

GroupElem AElem::assemble(int rel_prec) const {
  GroupElem m = iw.assemble(rel_prec);
  if (sigma_power % 2 == 0) return m;
  return mat_mul(sigma_elem(iw.a.p(), rel_prec), m);
}

GroupElem BorelForm::assemble() const {
  int p = A.p();
  int rel = A.is_zero_within_prec() ? Series::kDefaultRelPrec : A.rel_prec();
  return {A, B, Series::zero(p), Series::one(p, rel), false};
}

BorelForm to_borel_form(const GroupElem& g) {
  if (!g.m21.is_zero_within_prec()) {
    throw DomainError("to_borel_form: matrix is not upper-triangular");
  }
  if (g.m22.is_exact_zero()) throw DomainError("to_borel_form: lower-right entry is zero");
  if (g.m22.is_zero_within_prec()) {
    throw PrecisionError("to_borel_form: lower-right entry indeterminate");
  }
  Series inv = g.m22.inverse();
  return {g.m11 * inv, g.m12 * inv};
}

std::optional<Iwahori0Params> iwahori0_params(const GroupElem& g) {
  GroupElem c = canonicalize(g);
  // canonical form has all entries in O; membership needs the mod-t
  // reduction upper-triangular with equal nonzero diagonal
  if (c.m21.coeff_raw(0) != 0) return std::nullopt;
  int d11 = c.m11.coeff_raw(0);
  int d22 = c.m22.coeff_raw(0);
  if (d11 == 0 || d11 != d22) return std::nullopt;
  Series inv = c.m22.inverse();
  Series n11 = c.m11 * inv;
  Series n12 = c.m12 * inv;
  Series n21 = c.m21 * inv;
  Series n22 = c.m22 * inv;
  return Iwahori0Params{(n11 - Series::one(c.p(), n11.rel_prec())).shifted(-1), n12,
                        n21.shifted(-1),
                        (n22 - Series::one(c.p(), n22.rel_prec())).shifted(-1)};
}

std::optional<AElem> a_factor(const GroupElem& g) {
  if (auto iw = iwahori0_params(g)) return AElem{0, *iw};
  // sigma^{-1} = sigma up to the scalar t
  GroupElem shifted = mat_mul(sigma_elem(g.p()), g);
  if (auto iw = iwahori0_params(shifted)) return AElem{1, *iw};
  return std::nullopt;
}

Cyc chi_iwahori(const Iwahori0Params& params) {
  PrimeField b0 = params.b.coeff(0);
  PrimeField c0 = params.c.coeff(0);
  return psi(b0 + c0);
}

Cyc chi_eval(const AElem& a, int chi_sigma) {
  if (chi_sigma != 1 && chi_sigma != -1) {
    throw DomainError("chi(sigma) must be +1 or -1");
  }
  Cyc value = chi_iwahori(a.iw);
  if (chi_sigma == -1 && a.sigma_power % 2 != 0) value = -value;
  return value;
}

}  // namespace pgl2
