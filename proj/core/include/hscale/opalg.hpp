#ifndef HSCALE_OPALG_HPP
#define HSCALE_OPALG_HPP

#include <map>
#include <optional>
#include <utility>

#include "hscale/jtl.hpp"
#include "hscale/system.hpp"

namespace hscale {

/// An inductive-limit operator X in L(D, D^x): a base index plus the
/// component matrix there; components above the base are derived as
/// X_beta = U_{beta,base} X_base V_{base,beta}.
///
/// The metric adjoint of the base matrix is carried alongside, so the
/// involution is an exact swap and X'' == X bit for bit.
struct LimOperator {
  Label base;
  Matrix mat;
  Matrix madj;  // adjoint of mat in the H_base metric
};

/// Phi_alpha: embeds a matrix on H_alpha as the inductive-limit operator
/// that reduces to it at alpha.
LimOperator lift(const ContractiveSystem& s, const Label& alpha, Matrix m);

/// X_beta for beta >= base. Throws NotComparable otherwise.
Matrix component_at(const ContractiveSystem& s, const LimOperator& x, const Label& beta);

/// X(d) as a class in D^x: theta(beta, X_beta pi(beta, d)); independent of
/// the evaluation index beta >= base.
DxElement apply(const ContractiveSystem& s, const LimOperator& x, const DElement& d);

/// Recovers the component at gamma from the sesquilinear form
/// F(xi, eta) = B(X(d_eta), d_xi) on H_gamma (through the bijective
/// projection), for any gamma. Coincides with component_at for gamma >= base.
Matrix component_from_form(const ContractiveSystem& s, const LimOperator& x, const Label& gamma);

/// The constant of the defining bound at gamma: the H_gamma operator norm
/// of the form component.
double bound_constant(const ContractiveSystem& s, const LimOperator& x, const Label& gamma);

/// Per-index bound constants. In a finite system every index carries a
/// finite constant, so the support is the whole index set.
std::map<Label, double> support_set(const ContractiveSystem& s, const LimOperator& x);

/// X -> X† (metric adjoint of the base component; equals the inductive
/// limit of the componentwise adjoints). Involutive exactly.
LimOperator involution(const ContractiveSystem& s, const LimOperator& x);

/// a X + b Y at the common upper bound of the bases.
LimOperator combine(const ContractiveSystem& s, const LimOperator& x, const LimOperator& y,
                    Complex a, Complex b);

struct ProductResult {
  std::optional<LimOperator> product;  // empty when the product is undefined
  double residual = 0.0;               // worst coherence residual (op norm)
  std::pair<Label, Label> witness;     // pair attaining it

  bool defined() const { return product.has_value(); }
};

/// Partial multiplication: defined iff {X_beta Y_beta} is itself an
/// inductive-limit family above gamma0 = upper_bound(bases), i.e. the
/// coherence residual X_a (V_ab U_ba - I) Y_a vanishes for all
/// gamma0 <= a <= b. Returns the product at gamma0, or the worst residual.
ProductResult partial_product(const ContractiveSystem& s, const LimOperator& x,
                              const LimOperator& y, double tol = 1e-9);

/// Class equality of operators: component equality at every index above
/// the common base, relative to the component magnitudes.
bool op_equal(const ContractiveSystem& s, const LimOperator& x, const LimOperator& y,
              double tol = 1e-9);

}  // namespace hscale

#endif
