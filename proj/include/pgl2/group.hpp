#pragma once

#include <optional>
#include <string>

#include "pgl2/cycnum.hpp"
#include "pgl2/fqlaurent.hpp"

namespace pgl2 {

/// Element of PGL_2(F_p((t))) as a matrix of Series, up to a common
/// scalar.  In canonical form the first entry (row-major) of minimal
/// valuation is exactly 1 and all entries lie in O = F_p[[t]].
struct GroupElem {
  Series m11, m12, m21, m22;
  bool canonical = false;

  int p() const { return m11.p(); }
  std::string to_string() const;
};

GroupElem identity_elem(int p, int rel_prec = Series::kDefaultRelPrec);
/// sigma = [[0,1],[t,0]]; order two in PGL_2.
GroupElem sigma_elem(int p, int rel_prec = Series::kDefaultRelPrec);

Series mat_det(const GroupElem& g);
GroupElem canonicalize(const GroupElem& g);
GroupElem mat_mul(const GroupElem& a, const GroupElem& b);
GroupElem mat_mul_raw(const GroupElem& a, const GroupElem& b);  // no canonical form
/// Projective inverse (the adjugate), canonicalized.
GroupElem mat_inv(const GroupElem& g);
bool projectively_equal(const GroupElem& a, const GroupElem& b);

/// Parameters (a,b,c,d) of [[1+ta, b],[tc, 1+td]], all in O.
struct Iwahori0Params {
  Series a, b, c, d;

  static Iwahori0Params zeros(int p);
  GroupElem assemble(int rel_prec = Series::kDefaultRelPrec) const;
};

/// Element sigma^s * i of A = I0 x| <sigma> in factored form.
struct AElem {
  int sigma_power = 0;  // 0 or 1
  Iwahori0Params iw;

  static AElem identity(int p);
  GroupElem assemble(int rel_prec = Series::kDefaultRelPrec) const;
};

/// Borel element [[A, B],[0, 1]]; elements of U(O) are A = 1, B in O.
struct BorelForm {
  Series A, B;

  GroupElem assemble() const;
};

/// Normalizes an upper-triangular element to lower row (0, 1).
BorelForm to_borel_form(const GroupElem& g);

/// If a scalar multiple of g lies in I0, its parameters (with d
/// normalized away); NotMember is the nullopt value, precision
/// shortfalls throw instead of guessing.
std::optional<Iwahori0Params> iwahori0_params(const GroupElem& g);

/// Factors g over A = I0 union sigma*I0 if possible.
std::optional<AElem> a_factor(const GroupElem& g);

/// chi on I0: psi(b0 + c0).
Cyc chi_iwahori(const Iwahori0Params& params);
/// chi on A; chi(sigma) is +1 or -1 (configurable, default +1).
Cyc chi_eval(const AElem& a, int chi_sigma = +1);

}  // namespace pgl2
