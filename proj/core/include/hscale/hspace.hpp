#ifndef HSCALE_HSPACE_HPP
#define HSCALE_HSPACE_HPP

#include <memory>

#include "hscale/types.hpp"

namespace hscale {

/// Relative tolerance defaults used throughout the kernel. Hermiticity and
/// positivity checks scale with the spectral norm of the matrix at hand.
struct KernelTolerances {
  double herm = 1e-10;  // relative: tol_herm = herm * ||G||
  double pd = 1e-10;    // relative: tol_pd = pd * ||G||
};

/// A finite-dimensional Hilbert space: dimension plus a Hermitian
/// positive-definite Gram matrix G. The inner product is linear in the
/// FIRST argument: inner(xi, eta) = eta^H G xi.
///
/// Construction validates G = G^H within tol_herm and min eig(G) > tol_pd,
/// and precomputes G^{1/2}, G^{-1/2} and G^{-1} for the whitening-based
/// operations. Value type with shared immutable internals; cheap to copy
/// and safe for concurrent reads.
class MetricSpace {
 public:
  MetricSpace(Matrix gram, KernelTolerances tol = {});

  Eigen::Index dim() const;
  const Matrix& gram() const;
  const Matrix& gram_sqrt() const;      // G^{1/2}
  const Matrix& gram_sqrt_inv() const;  // G^{-1/2}
  const Matrix& gram_inv() const;       // G^{-1}

  Complex inner(const Vector& xi, const Vector& eta) const;
  double norm(const Vector& xi) const;

  static MetricSpace euclidean(Eigen::Index dim);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// A linear map between metrized spaces, stored as a dst.dim x src.dim
/// matrix in the given coordinates.
struct LinMap {
  MetricSpace src;
  MetricSpace dst;
  Matrix mat;

  LinMap(MetricSpace src_, MetricSpace dst_, Matrix mat_);
};

Complex inner(const MetricSpace& sp, const Vector& xi, const Vector& eta);

/// Metric adjoint M* = G_src^{-1} M^H G_dst, the unique map dst -> src with
/// inner_dst(M xi, eta) = inner_src(xi, M* eta).
LinMap adjoint(const LinMap& m);

/// G_dst^{1/2} M G_src^{-1/2}: the coordinates in which both metrics are
/// Euclidean. Singular values of this matrix are the metric singular values
/// of the map.
Matrix whitened(const LinMap& m);

/// Largest metric singular value.
double op_norm(const LinMap& m);

/// Smallest metric singular value (injectivity margin).
double min_singular(const LinMap& m);

/// Hermitian PSD square root by eigendecomposition. Eigenvalues in
/// [-tol_pd, 0] are clamped to zero; anything below -tol_pd throws NotPSD.
/// Non-Hermitian input (beyond tol_herm) throws NotHermitian.
Matrix psd_sqrt(const Matrix& h, KernelTolerances tol = {});

double spectral_norm(const Matrix& m);

}  // namespace hscale

#endif
