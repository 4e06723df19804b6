#include "hscale/hspace.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hscale {

struct MetricSpace::Data {
  Matrix gram;
  Matrix sqrt;
  Matrix sqrt_inv;
  Matrix inv;
};

double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

MetricSpace::MetricSpace(Matrix gram, KernelTolerances tol) {
  if (gram.rows() != gram.cols() || gram.rows() == 0)
    throw DimMismatch("Gram matrix must be square and non-empty");
  const double scale = spectral_norm(gram);
  if ((gram - gram.adjoint()).cwiseAbs().maxCoeff() > tol.herm * scale)
    throw NotHermitian("Gram matrix is not Hermitian");
  Matrix g = 0.5 * (gram + gram.adjoint().eval());

  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() <= tol.pd * scale)
    throw NotPSD("Gram matrix is not positive definite (min eigenvalue " +
                 std::to_string(ev.minCoeff()) + ")");

  auto d = std::make_shared<Data>();
  d->gram = std::move(g);
  Eigen::VectorXd r = ev.cwiseSqrt();
  d->sqrt = es.eigenvectors() * r.asDiagonal() * es.eigenvectors().adjoint();
  d->sqrt_inv = es.eigenvectors() * r.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
  d->inv = es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
  data_ = std::move(d);
}

Eigen::Index MetricSpace::dim() const { return data_->gram.rows(); }
const Matrix& MetricSpace::gram() const { return data_->gram; }
const Matrix& MetricSpace::gram_sqrt() const { return data_->sqrt; }
const Matrix& MetricSpace::gram_sqrt_inv() const { return data_->sqrt_inv; }
const Matrix& MetricSpace::gram_inv() const { return data_->inv; }

Complex MetricSpace::inner(const Vector& xi, const Vector& eta) const {
  if (xi.size() != dim() || eta.size() != dim())
    throw DimMismatch("inner: vector length does not match space dimension");
  return (eta.adjoint() * data_->gram * xi)(0);
}

double MetricSpace::norm(const Vector& xi) const {
  return std::sqrt(std::max(0.0, inner(xi, xi).real()));
}

MetricSpace MetricSpace::euclidean(Eigen::Index dim) {
  return MetricSpace(Matrix::Identity(dim, dim));
}

LinMap::LinMap(MetricSpace src_, MetricSpace dst_, Matrix mat_)
    : src(std::move(src_)), dst(std::move(dst_)), mat(std::move(mat_)) {
  if (mat.rows() != dst.dim() || mat.cols() != src.dim())
    throw DimMismatch("LinMap: matrix shape does not match src/dst dimensions");
}

Complex inner(const MetricSpace& sp, const Vector& xi, const Vector& eta) {
  return sp.inner(xi, eta);
}

LinMap adjoint(const LinMap& m) {
  Matrix a = m.src.gram_inv() * m.mat.adjoint() * m.dst.gram();
  return LinMap(m.dst, m.src, std::move(a));
}

Matrix whitened(const LinMap& m) {
  return m.dst.gram_sqrt() * m.mat * m.src.gram_sqrt_inv();
}

double op_norm(const LinMap& m) { return spectral_norm(whitened(m)); }

double min_singular(const LinMap& m) {
  const Matrix w = whitened(m);
  const auto sv = w.jacobiSvd().singularValues();
  if (sv.size() == 0) return 0.0;
  return sv(sv.size() - 1);
}

Matrix psd_sqrt(const Matrix& h, KernelTolerances tol) {
  if (h.rows() != h.cols()) throw DimMismatch("psd_sqrt: matrix must be square");
  const double scale = spectral_norm(h);
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > tol.herm * scale)
    throw NotHermitian("psd_sqrt: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint().eval()));
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  Eigen::VectorXd ev = es.eigenvalues();
  const double cutoff = tol.pd * scale;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -cutoff)
      throw NotPSD("psd_sqrt: eigenvalue " + std::to_string(ev(i)) + " below -tol_pd");
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace hscale
