#include "hscale/jtl.hpp"

#include <Eigen/SVD>

namespace hscale {

DElement make_delement(const ContractiveSystem& s, const Label& anchor, Vector vec) {
  if (vec.size() != s.space(anchor).dim())
    throw DimMismatch("DElement: vector length does not match anchor space");
  return DElement{anchor, std::move(vec)};
}

DElement make_delement(const ContractiveSystem& s, Vector vec) {
  return make_delement(s, s.poset().greatest(), std::move(vec));
}

DElement d_add(const ContractiveSystem&, const DElement& a, const DElement& b) {
  if (a.anchor != b.anchor) throw NotComparable("d_add: elements have different anchors");
  return DElement{a.anchor, a.vec + b.vec};
}

DElement d_scale(const DElement& a, Complex c) { return DElement{a.anchor, c * a.vec}; }

DxElement theta(const ContractiveSystem& s, const Label& alpha, Vector xi) {
  if (xi.size() != s.space(alpha).dim())
    throw DimMismatch("theta: vector length does not match space dimension");
  return DxElement{alpha, std::move(xi)};
}

namespace {

struct Lifted {
  Label top;
  Vector x;
  Vector y;
};

Lifted lift_pair(const ContractiveSystem& s, const DxElement& x, const DxElement& y) {
  const Label top = s.poset().upper_bound(x.base, y.base);
  return Lifted{top, s.u_map(x.base, top).mat * x.vec, s.u_map(y.base, top).mat * y.vec};
}

}  // namespace

double dx_defect(const ContractiveSystem& s, const DxElement& x, const DxElement& y) {
  const Lifted l = lift_pair(s, x, y);
  const MetricSpace& sp = s.space(l.top);
  const double scale = 1.0 + std::max(sp.norm(l.x), sp.norm(l.y));
  return sp.norm(l.x - l.y) / scale;
}

bool dx_equal(const ContractiveSystem& s, const DxElement& x, const DxElement& y, double tol) {
  return dx_defect(s, x, y) <= tol;
}

DxElement dx_combine(const ContractiveSystem& s, const DxElement& x, const DxElement& y,
                     Complex a, Complex b) {
  const Lifted l = lift_pair(s, x, y);
  return DxElement{l.top, a * l.x + b * l.y};
}

Vector pi(const ContractiveSystem& s, const Label& alpha, const DElement& d) {
  if (!s.poset().leq(alpha, d.anchor))
    throw NotComparable("pi: '" + alpha + "' is not below the anchor '" + d.anchor + "'");
  if (alpha == d.anchor) return d.vec;
  return s.v_map(alpha, d.anchor).mat * d.vec;
}

Complex pairing(const ContractiveSystem& s, const DxElement& x, const DElement& d) {
  if (!s.poset().leq(x.base, d.anchor))
    throw NotComparable("pairing: representative base is not below the anchor");
  return inner(s.space(x.base), pi(s, x.base, d), x.vec);
}

DxElement lambda_embed(const ContractiveSystem& s, const Label& alpha, const DElement& d) {
  return theta(s, alpha, pi(s, alpha, d));
}

IsometryReport check_isometry_equiv(const ContractiveSystem& s, double tol) {
  IsometryReport rep;
  const auto& poset = s.poset();
  const Label anchor = poset.greatest();
  const Eigen::Index n = s.space(anchor).dim();
  for (const auto& [a, b] : poset.comparable_pairs()) {
    IsometryPairVerdict v;
    v.alpha = a;
    v.beta = b;
    const LinMap vmap = s.v_map(a, b);
    v.isometry = op_norm(vmap) <= 1.0 + tol && min_singular(vmap) >= 1.0 - tol;
    v.lambda_equal = true;
    for (Eigen::Index k = 0; k < n && v.lambda_equal; ++k) {
      const DElement d = make_delement(s, anchor, Vector::Unit(n, k));
      v.lambda_equal = dx_equal(s, lambda_embed(s, a, d), lambda_embed(s, b, d), tol);
    }
    v.biconditional = v.isometry == v.lambda_equal;
    if (!v.biconditional) rep.pass = false;
    rep.pairs.push_back(std::move(v));
  }
  return rep;
}

SeparatingReport separating_check(const ContractiveSystem& s, double rel_tol) {
  SeparatingReport rep;
  const Label anchor = s.poset().greatest();
  const Eigen::Index n = s.space(anchor).dim();
  bool first = true;
  for (const Label& alpha : s.poset().elements()) {
    const Eigen::Index m = s.space(alpha).dim();
    Matrix p(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
      const DElement d = make_delement(s, anchor, Vector::Unit(n, i));
      for (Eigen::Index j = 0; j < m; ++j)
        p(i, j) = pairing(s, theta(s, alpha, Vector::Unit(m, j)), d);
    }
    const auto sv = p.jacobiSvd().singularValues();
    SeparatingReport::Entry e;
    e.alpha = alpha;
    e.norm = sv.size() ? sv(0) : 0.0;
    e.min_singular = sv.size() ? sv(sv.size() - 1) : 0.0;
    const double ratio = e.norm > 0.0 ? e.min_singular / e.norm : 0.0;
    if (first || ratio < rep.worst_ratio) rep.worst_ratio = ratio;
    first = false;
    if (p.rows() != p.cols() || e.min_singular <= rel_tol * e.norm) rep.pass = false;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

DxElement riesz_dual(const ContractiveSystem& s, const Label& beta, const Vector& coeffs) {
  const MetricSpace& sp = s.space(beta);
  if (coeffs.size() != sp.dim())
    throw DimMismatch("riesz_dual: one coefficient required per basis vector");
  // Solve inner(xi, eta) = F(xi) for eta: eta^H G = c^T, so eta = G^{-1} conj(c).
  Vector eta = sp.gram_inv() * coeffs.conjugate();
  return theta(s, beta, std::move(eta));
}

}  // namespace hscale
