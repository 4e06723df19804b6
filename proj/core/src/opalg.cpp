#include "hscale/opalg.hpp"

#include <Eigen/LU>

namespace hscale {

namespace {

Matrix metric_adjoint(const MetricSpace& sp, const Matrix& m) {
  return sp.gram_inv() * m.adjoint() * sp.gram();
}

}  // namespace

LimOperator lift(const ContractiveSystem& s, const Label& alpha, Matrix m) {
  const MetricSpace& sp = s.space(alpha);
  if (m.rows() != sp.dim() || m.cols() != sp.dim())
    throw DimMismatch("lift: matrix must be square on H_" + alpha);
  Matrix adj = metric_adjoint(sp, m);
  return LimOperator{alpha, std::move(m), std::move(adj)};
}

Matrix component_at(const ContractiveSystem& s, const LimOperator& x, const Label& beta) {
  if (beta == x.base) return x.mat;
  if (!s.poset().leq(x.base, beta))
    throw NotComparable("component_at: '" + beta + "' is not above the base '" + x.base + "'");
  return s.u_map(x.base, beta).mat * x.mat * s.v_map(x.base, beta).mat;
}

DxElement apply(const ContractiveSystem& s, const LimOperator& x, const DElement& d) {
  if (!s.poset().leq(x.base, d.anchor))
    throw NotComparable("apply: operator base is not below the anchor");
  return theta(s, x.base, x.mat * pi(s, x.base, d));
}

Matrix component_from_form(const ContractiveSystem& s, const LimOperator& x,
                           const Label& gamma) {
  const Label anchor = s.poset().greatest();
  const Label delta = s.poset().upper_bound(gamma, x.base);
  const Eigen::Index n = s.space(anchor).dim();
  // M: H_gamma -> H_delta through the bijective projection Pi_gamma.
  const Matrix proj_gamma =
      gamma == anchor ? Matrix(Matrix::Identity(n, n)) : s.v_map(gamma, anchor).mat;
  const Matrix proj_delta =
      delta == anchor ? Matrix(Matrix::Identity(n, n)) : s.v_map(delta, anchor).mat;
  const Matrix m = proj_delta * proj_gamma.partialPivLu().solve(
                                    Matrix::Identity(proj_gamma.rows(), proj_gamma.cols()));
  const Matrix x_delta = component_at(s, x, delta);
  // Form matrix Phi with F(xi, eta) = eta^H Phi xi; its Riesz component is
  // X_gamma = G_gamma^{-1} Phi^H.
  const Matrix phi = (x_delta * m).adjoint() * s.space(delta).gram() * m;
  return s.space(gamma).gram_inv() * phi.adjoint();
}

double bound_constant(const ContractiveSystem& s, const LimOperator& x, const Label& gamma) {
  Matrix component = s.poset().leq(x.base, gamma) ? component_at(s, x, gamma)
                                                  : component_from_form(s, x, gamma);
  return op_norm(LinMap(s.space(gamma), s.space(gamma), std::move(component)));
}

std::map<Label, double> support_set(const ContractiveSystem& s, const LimOperator& x) {
  std::map<Label, double> out;
  for (const Label& gamma : s.poset().elements()) out[gamma] = bound_constant(s, x, gamma);
  return out;
}

LimOperator involution(const ContractiveSystem&, const LimOperator& x) {
  return LimOperator{x.base, x.madj, x.mat};
}

LimOperator combine(const ContractiveSystem& s, const LimOperator& x, const LimOperator& y,
                    Complex a, Complex b) {
  const Label top = s.poset().upper_bound(x.base, y.base);
  return lift(s, top, a * component_at(s, x, top) + b * component_at(s, y, top));
}

ProductResult partial_product(const ContractiveSystem& s, const LimOperator& x,
                              const LimOperator& y, double tol) {
  ProductResult res;
  const Label gamma0 = s.poset().upper_bound(x.base, y.base);
  bool coherent = true;
  for (const auto& [a, b] : s.poset().comparable_pairs()) {
    if (a == b || !s.poset().leq(gamma0, a)) continue;
    const Matrix x_a = component_at(s, x, a);
    const Matrix y_a = component_at(s, y, a);
    const Matrix vu = s.v_map(a, b).mat * s.u_map(a, b).mat;
    const Matrix residual = x_a * (vu - Matrix::Identity(vu.rows(), vu.cols())) * y_a;
    const double norm = op_norm(LinMap(s.space(a), s.space(a), residual));
    const double scale = 1.0 + op_norm(LinMap(s.space(a), s.space(a), x_a)) *
                                   op_norm(LinMap(s.space(a), s.space(a), y_a));
    if (norm > tol * scale) coherent = false;
    if (norm > res.residual) {
      res.residual = norm;
      res.witness = {a, b};
    }
  }
  if (coherent)
    res.product = lift(s, gamma0, component_at(s, x, gamma0) * component_at(s, y, gamma0));
  return res;
}

bool op_equal(const ContractiveSystem& s, const LimOperator& x, const LimOperator& y,
              double tol) {
  const Label base = s.poset().upper_bound(x.base, y.base);
  for (const Label& gamma : s.poset().elements()) {
    if (!s.poset().leq(base, gamma)) continue;
    const Matrix cx = component_at(s, x, gamma);
    const Matrix cy = component_at(s, y, gamma);
    const double scale = 1.0 + std::max(spectral_norm(cx), spectral_norm(cy));
    if (spectral_norm(cx - cy) > tol * scale) return false;
  }
  return true;
}

}  // namespace hscale
