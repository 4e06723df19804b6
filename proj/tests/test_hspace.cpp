#include <doctest.h>

#include <complex>

#include "hscale/hspace.hpp"
#include "hscale/random.hpp"

using namespace hscale;
using doctest::Approx;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Vector vec2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_SUITE("hspace") {

TEST_CASE("inner product follows the Gram metric, linear in the first slot") {
  const MetricSpace euclid = MetricSpace::euclidean(2);
  CHECK(euclid.inner(vec2(1, 0), vec2(0, 1)) == Complex(0, 0));

  const MetricSpace weighted(diag2(2, 5));
  // eta^H G xi with xi = eta = (1,1): 2 + 5
  CHECK(weighted.inner(vec2(1, 1), vec2(1, 1)).real() == Approx(7.0).epsilon(1e-14));
  // conjugation sits in the second slot: inner((1,0), (i,0)) = -2i
  const Complex v = weighted.inner(vec2(1, 0), vec2(Complex(0, 1), 0));
  CHECK(v.real() == Approx(0.0));
  CHECK(v.imag() == Approx(-2.0).epsilon(1e-14));

  CHECK_THROWS_AS(weighted.inner(Vector::Zero(3), vec2(0, 0)), DimMismatch);
}

TEST_CASE("gram validation rejects non-hermitian and non-PD input") {
  Matrix bad(2, 2);
  bad << 1.0, 2.0, 3.0, 1.0;
  CHECK_THROWS_AS(MetricSpace{bad}, NotHermitian);
  CHECK_THROWS_AS(MetricSpace{diag2(1, -1)}, NotPSD);
  CHECK_THROWS_AS(MetricSpace{diag2(1, 0)}, NotPSD);
}

TEST_CASE("metric adjoint against explicit formula") {
  SUBCASE("identity metrics reduce to the conjugate transpose") {
    Rng rng(7);
    const MetricSpace e3 = MetricSpace::euclidean(3);
    const Matrix m = rng.cgauss_matrix(3, 3);
    const LinMap map(e3, e3, m);
    CHECK(spectral_norm(adjoint(map).mat - m.adjoint()) < 1e-14);
  }
  SUBCASE("weighted metrics: diag(0.4, 0.5) has adjoint identity") {
    const MetricSpace src(diag2(2, 5));
    const MetricSpace dst(diag2(5, 10));
    const LinMap u(src, dst, diag2(0.4, 0.5));
    const Matrix a = adjoint(u).mat;
    CHECK(spectral_norm(a - Matrix::Identity(2, 2)) < 1e-14);
  }
  SUBCASE("involutivity") {
    Rng rng(8);
    const MetricSpace src(Matrix(Matrix::Identity(3, 3) * 2.0));
    Matrix g = rng.cgauss_matrix(3, 3);
    const MetricSpace dst(Matrix(Matrix::Identity(3, 3) + g * g.adjoint()));
    const LinMap m(src, dst, rng.cgauss_matrix(3, 3));
    CHECK(spectral_norm(adjoint(adjoint(m)).mat - m.mat) < 1e-12);
  }
}

TEST_CASE("adjoint identity holds for random vectors") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g1 = rng.cgauss_matrix(3, 3);
    Matrix g2 = rng.cgauss_matrix(4, 4);
    const MetricSpace src(Matrix(Matrix::Identity(3, 3) + g1 * g1.adjoint()));
    const MetricSpace dst(Matrix(Matrix::Identity(4, 4) + g2 * g2.adjoint()));
    const LinMap m(src, dst, rng.cgauss_matrix(4, 3));
    const LinMap ma = adjoint(m);
    const Vector xi = rng.cgauss_vector(3);
    const Vector eta = rng.cgauss_vector(4);
    const Complex lhs = dst.inner(m.mat * xi, eta);
    const Complex rhs = src.inner(xi, ma.mat * eta);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + src.norm(xi) * dst.norm(eta)));
    CHECK(op_norm(m) == Approx(op_norm(ma)).epsilon(1e-10));
  }
}

TEST_CASE("operator norm in weighted metrics") {
  const MetricSpace src(diag2(2, 5));
  const MetricSpace dst(diag2(5, 10));
  SUBCASE("identity map, equal metrics") {
    CHECK(op_norm(LinMap(src, src, Matrix::Identity(2, 2))) == Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("frozen singular values {0.4 sqrt(5/2), 0.5 sqrt(2)}") {
    const LinMap u(src, dst, diag2(0.4, 0.5));
    CHECK(op_norm(u) == Approx(0.7071067811865476).epsilon(1e-12));
    CHECK(min_singular(u) == Approx(0.4 * std::sqrt(2.5)).epsilon(1e-12));
  }
  SUBCASE("zero map") {
    CHECK(op_norm(LinMap(src, dst, Matrix::Zero(2, 2))) == 0.0);
  }
}

TEST_CASE("psd_sqrt") {
  CHECK(spectral_norm(psd_sqrt(diag2(4, 9)) - diag2(2, 3)) < 1e-14);
  CHECK(spectral_norm(psd_sqrt(Matrix(Matrix::Identity(3, 3))) - Matrix::Identity(3, 3)) <
        1e-14);

  Matrix h(2, 2);
  h << 2.0, 1.0, 1.0, 2.0;
  const Matrix r = psd_sqrt(h);
  CHECK(spectral_norm(r * r - h) <= 1e-12);
  CHECK(spectral_norm(r - r.adjoint()) < 1e-13);

  CHECK_THROWS_AS(psd_sqrt(diag2(1, -1)), NotPSD);
  Matrix nh(2, 2);
  nh << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(psd_sqrt(nh), NotHermitian);
}

TEST_CASE("psd_sqrt squares back on random PSD matrices up to dim 32") {
  Rng rng(13);
  for (const Eigen::Index n : {2, 5, 12, 32}) {
    const Matrix r = rng.cgauss_matrix(n, n);
    Matrix h = r * r.adjoint();
    h = 0.5 * (h + h.adjoint().eval());
    const Matrix root = psd_sqrt(h);
    CHECK(spectral_norm(root * root - h) <= 1e-11 * spectral_norm(h));
  }
}

}  // TEST_SUITE
