#include "hscale/ofamily.hpp"

#include <Eigen/Eigenvalues>

namespace hscale {

namespace {

double min_eig_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint().eval()));
  return es.eigenvalues().minCoeff();
}

// q_a <= q_b as forms, up to tol * scale.
bool psd_leq(const Matrix& q_a, const Matrix& q_b, double tol) {
  const Matrix diff = q_b - q_a;
  const double scale = 1.0 + std::max(spectral_norm(q_a), spectral_norm(q_b));
  return min_eig_hermitian(diff) >= -tol * scale;
}

}  // namespace

Matrix graph_gram(const MetricSpace& base, const Matrix& a) {
  if (a.rows() != base.dim() || a.cols() != base.dim())
    throw DimMismatch("graph_gram: operator shape does not match base space");
  return base.gram() + a.adjoint() * base.gram() * a;
}

Matrix metric_sqrt(const MetricSpace& base, const Matrix& gram) {
  const Matrix w = base.gram_sqrt_inv() * gram * base.gram_sqrt_inv();
  return base.gram_sqrt_inv() * psd_sqrt(w) * base.gram_sqrt();
}

OFamilyReport validate_ofamily(const OFamily& f, double tol) {
  OFamilyReport rep;
  const std::size_t n = f.ops.size();
  std::vector<Matrix> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep.op_names.push_back(f.ops[i].first);
    q[i] = f.ops[i].second.adjoint() * f.base.gram() * f.ops[i].second;
  }
  rep.order.assign(n, std::vector<char>(n, 'x'));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool le = psd_leq(q[i], q[j], tol);
      const bool ge = psd_leq(q[j], q[i], tol);
      rep.order[i][j] = le && ge ? '=' : le ? '<' : ge ? '>' : 'x';
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool bounded = false;
      for (std::size_t k = 0; k < n && !bounded; ++k)
        bounded = (rep.order[i][k] == '<' || rep.order[i][k] == '=') &&
                  (rep.order[j][k] == '<' || rep.order[j][k] == '=');
      if (!bounded) {
        rep.directed = false;
        rep.unbounded_pairs.emplace_back(f.ops[i].first, f.ops[j].first);
      }
    }
  }
  return rep;
}

ContractiveSystem build_system_from_ofamily(const OFamily& f, double tol) {
  const std::size_t n = f.ops.size();
  if (n == 0) throw DimMismatch("ofamily: empty operator family");
  std::vector<Matrix> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = f.ops[i].second.adjoint() * f.base.gram() * f.ops[i].second;

  // Merge ties (the preorder may identify distinct operators).
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    bool tied = false;
    for (std::size_t r : reps)
      if (psd_leq(q[i], q[r], tol) && psd_leq(q[r], q[i], tol)) {
        tied = true;
        break;
      }
    if (!tied) reps.push_back(i);
  }

  std::vector<Label> labels;
  std::vector<std::pair<Label, Label>> relations;
  for (std::size_t a = 0; a < reps.size(); ++a) labels.push_back(f.ops[reps[a]].first);
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b)
      if (a != b && psd_leq(q[reps[a]], q[reps[b]], tol) && !psd_leq(q[reps[b]], q[reps[a]], tol))
        relations.emplace_back(labels[a], labels[b]);
  IndexPoset poset = IndexPoset::build(labels, relations);

  std::vector<MetricSpace> spaces;
  std::vector<Matrix> grams;
  for (std::size_t a = 0; a < reps.size(); ++a) {
    grams.push_back(f.base.gram() + q[reps[a]]);
    spaces.emplace_back(grams.back(), KernelTolerances{});
  }

  // Covering maps by the closed form U_BA = S_B^{-1/2} (S_A^{1/2} S_B^{-1/2})^* S_A^{1/2},
  // with all roots and adjoints taken in the base metric.
  std::map<std::pair<Label, Label>, Matrix> umaps;
  for (const auto& [la, lb] : poset.hasse_edges()) {
    const Matrix& s_a = grams[poset.index_of(la)];
    const Matrix& s_b = grams[poset.index_of(lb)];
    if (!psd_leq(s_a, s_b, tol))
      throw OrderViolation("ofamily: S_" + la + " <= S_" + lb + " fails on a declared relation");
    const Matrix ra = metric_sqrt(f.base, s_a);
    const Matrix wb = f.base.gram_sqrt_inv() * s_b * f.base.gram_sqrt_inv();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (wb + wb.adjoint().eval()));
    const Matrix rb_inv = f.base.gram_sqrt_inv() *
                          (es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                           es.eigenvectors().adjoint()) *
                          f.base.gram_sqrt();
    const Matrix m = ra * rb_inv;
    const Matrix m_adj = f.base.gram_inv() * m.adjoint() * f.base.gram();
    Matrix u_formula = rb_inv * m_adj * ra;

    const Matrix u_simpl = spaces[poset.index_of(lb)].gram_inv() * s_a;
    const double defect = spectral_norm(u_formula - u_simpl);
    if (defect > tol * (1.0 + spectral_norm(u_simpl)))
      throw Error("ofamily: closed-form linking map disagrees with S_B^{-1} S_A (defect " +
                  std::to_string(defect) + ")");
    const LinMap u(spaces[poset.index_of(la)], spaces[poset.index_of(lb)], u_formula);
    const Matrix v = adjoint(u).mat;
    const double vdefect = (v - Matrix::Identity(v.rows(), v.cols())).cwiseAbs().maxCoeff();
    if (vdefect > 10 * tol)
      throw Error("ofamily: adjoint of linking map is not the identity (defect " +
                  std::to_string(vdefect) + ")");
    umaps[{la, lb}] = std::move(u_formula);
  }

  return ContractiveSystem(std::move(poset), std::move(spaces), std::move(umaps),
                           SystemTolerances{}, Provenance::Explicit);
}

DxElement theta_ofamily(const OFamily& f, const ContractiveSystem& s, const std::string& a,
                        Vector xi, double tol) {
  DxElement x = theta(s, a, std::move(xi));
  const Matrix s_a = s.space(a).gram();
  const Matrix root = metric_sqrt(f.base, s_a);
  const Label anchor = s.poset().greatest();
  const Eigen::Index n = s.space(anchor).dim();
  for (Eigen::Index k = 0; k < n; ++k) {
    const DElement d = make_delement(s, anchor, Vector::Unit(n, k));
    const Complex lhs = pairing(s, x, d);
    const Complex rhs = inner(f.base, root * pi(s, a, d), root * x.vec);
    if (std::abs(lhs - rhs) > tol * (1.0 + std::abs(lhs)))
      throw Error("theta_ofamily: factorization through S_A^{1/2} failed");
  }
  return x;
}

}  // namespace hscale
