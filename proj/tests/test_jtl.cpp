#include <doctest.h>

#include <complex>

#include "hscale/generators.hpp"
#include "hscale/jtl.hpp"
#include "hscale/random.hpp"

using namespace hscale;
using doctest::Approx;

namespace {

Vector vec2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_SUITE("jtl") {

TEST_CASE("theta tags representatives; zero maps to the zero class") {
  const ContractiveSystem s = example_system();
  const DxElement zero = theta(s, "1", Vector::Zero(2));
  CHECK(dx_equal(s, zero, theta(s, "2", Vector::Zero(2))));
  CHECK_FALSE(dx_equal(s, theta(s, "1", vec2(1, 0)), zero));
  CHECK_THROWS_AS(theta(s, "1", Vector::Zero(3)), DimMismatch);
}

TEST_CASE("class equality under lifting (coherence i2)") {
  const ContractiveSystem s = example_system();
  const Vector e1 = vec2(1, 0);
  // (1, e1) and (2, U_21 e1) are the same class; (2, e1) is not.
  const Vector lifted = s.u_map("1", "2").mat * e1;
  CHECK(dx_equal(s, theta(s, "1", e1), theta(s, "2", lifted)));
  CHECK_FALSE(dx_equal(s, theta(s, "1", e1), theta(s, "2", e1)));
  CHECK(dx_equal(s, theta(s, "1", e1), theta(s, "1", e1)));
}

TEST_CASE("theta is injective on nonzero vectors (i1)") {
  const ContractiveSystem s = example_system();
  const DxElement x = theta(s, "1", vec2(0, 1));
  CHECK(dx_defect(s, x, theta(s, "1", Vector::Zero(2))) > 1e-3);
}

TEST_CASE("pi projects coherent families; anchor component is the vector itself") {
  const ContractiveSystem s = example_system();
  const DElement d = make_delement(s, vec2(1, 1));
  CHECK(d.anchor == "2");
  CHECK((pi(s, "2", d) - vec2(1, 1)).norm() == 0.0);
  // V maps are the identity here, so every component equals the anchor vector.
  CHECK((pi(s, "1", d) - vec2(1, 1)).norm() <= 1e-12);
  CHECK_THROWS_AS(pi(s, "x", d), UnknownLabel);
}

TEST_CASE("pi intertwines with V (I1)") {
  const ContractiveSystem s = gen_shift_chain(4, 3);
  Rng rng(3);
  const DElement d = make_delement(s, rng.cgauss_vector(4));
  const Vector direct = pi(s, "0", d);
  const Vector via1 = s.v_map("0", "1").mat * pi(s, "1", d);
  CHECK((direct - via1).norm() < 1e-13);
}

TEST_CASE("pairing reproduces the frozen example value 2") {
  const ContractiveSystem s = example_system();
  const DElement d = make_delement(s, vec2(1, 1));
  const DxElement x = theta(s, "1", vec2(1, 0));
  const Complex b = pairing(s, x, d);
  CHECK(b.real() == Approx(2.0).epsilon(1e-14));
  CHECK(b.imag() == Approx(0.0));

  // Stabilization (D2): the re-based representative pairs identically.
  const DxElement x2 = theta(s, "2", s.u_map("1", "2").mat * vec2(1, 0));
  CHECK(std::abs(pairing(s, x2, d) - b) <= 1e-12 * (1.0 + std::abs(b)));

  CHECK(pairing(s, theta(s, "1", Vector::Zero(2)), d) == Complex(0, 0));
}

TEST_CASE("pairing is sesquilinear: conjugate-linear in x, linear in d") {
  const ContractiveSystem s = example_system();
  Rng rng(17);
  const DxElement x = theta(s, "1", rng.cgauss_vector(2));
  const DxElement y = theta(s, "2", rng.cgauss_vector(2));
  const DElement d = make_delement(s, rng.cgauss_vector(2));
  const DElement e = make_delement(s, rng.cgauss_vector(2));
  const Complex a = rng.cgauss();
  const Complex b = rng.cgauss();

  const Complex lhs = pairing(s, dx_combine(s, x, y, a, b), d);
  const Complex rhs = std::conj(a) * pairing(s, x, d) + std::conj(b) * pairing(s, y, d);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));

  const Complex lhs2 = pairing(s, x, d_add(s, d, d_scale(e, b)));
  const Complex rhs2 = pairing(s, x, d) + b * pairing(s, x, e);
  CHECK(std::abs(lhs2 - rhs2) <= 1e-12 * (1.0 + std::abs(rhs2)));
}

TEST_CASE("lambda embeddings collapse exactly for unitary chains") {
  const ContractiveSystem s = gen_shift_chain(3, 4);
  Rng rng(29);
  const DElement d = make_delement(s, rng.cgauss_vector(3));
  for (const auto& a : s.poset().elements())
    CHECK(dx_equal(s, lambda_embed(s, a, d), lambda_embed(s, "3", d)));
}

TEST_CASE("lambda embeddings differ between metrically distinct levels") {
  const ContractiveSystem s = example_system();
  const DElement d = make_delement(s, vec2(1, 0));
  CHECK_FALSE(dx_equal(s, lambda_embed(s, "1", d), lambda_embed(s, "2", d)));
}

TEST_CASE("isometry biconditional: shift chain all-isometric, example chain none") {
  const IsometryReport shift = check_isometry_equiv(gen_shift_chain(3, 4));
  CHECK(shift.pass);
  for (const auto& p : shift.pairs) {
    CHECK(p.isometry);
    CHECK(p.lambda_equal);
  }
  const IsometryReport e1 = check_isometry_equiv(example_system());
  CHECK(e1.pass);
  for (const auto& p : e1.pairs) {
    if (p.alpha == p.beta) continue;
    CHECK_FALSE(p.isometry);
    CHECK_FALSE(p.lambda_equal);
  }
}

TEST_CASE("single-space system: isometry check passes vacuously") {
  IndexPoset p = IndexPoset::build({"0"}, {});
  ContractiveSystem s(std::move(p), {MetricSpace::euclidean(2)}, {});
  CHECK(check_isometry_equiv(s).pass);
  const SeparatingReport sep = separating_check(s);
  CHECK(sep.pass);
}

TEST_CASE("separating duality holds on valid systems and fails on broken ones") {
  CHECK(separating_check(example_system()).pass);

  // Zero out a column of the linking map: the resulting map is not
  // injective and the pairing matrix at the lower index drops rank.
  IndexPoset p = IndexPoset::build({"1", "2"}, {{"1", "2"}});
  std::vector<MetricSpace> spaces{MetricSpace::euclidean(2), MetricSpace::euclidean(2)};
  Matrix broken = Matrix::Zero(2, 2);
  broken(0, 0) = 0.5;  // second column zero
  std::map<std::pair<Label, Label>, Matrix> umaps;
  umaps[{"1", "2"}] = broken;
  const ContractiveSystem bad(std::move(p), std::move(spaces), std::move(umaps));
  CHECK_FALSE(bad.validate().pass);  // the validator catches it first
  CHECK_FALSE(separating_check(bad).pass);
}

TEST_CASE("riesz_dual solves the representation problem") {
  const ContractiveSystem s = example_system();
  SUBCASE("F(xi) = 2 xi_1 against G_1 = diag(2,5) gives e_1") {
    const DxElement x = riesz_dual(s, "1", vec2(2, 0));
    CHECK(dx_equal(s, x, theta(s, "1", vec2(1, 0))));
  }
  SUBCASE("zero functional gives the zero class") {
    const DxElement x = riesz_dual(s, "2", Vector::Zero(2));
    CHECK(dx_equal(s, x, theta(s, "2", Vector::Zero(2))));
  }
  SUBCASE("riesz identity: F = inner(., eta0) returns eta0") {
    Rng rng(31);
    const Vector eta0 = rng.cgauss_vector(2);
    // F(e_k) = inner(e_k, eta0) = eta0^H G e_k
    const Vector coeffs = (eta0.adjoint() * s.space("1").gram()).transpose();
    const DxElement x = riesz_dual(s, "1", coeffs);
    CHECK((x.vec - eta0).norm() <= 1e-12 * (1.0 + eta0.norm()));
  }
  SUBCASE("round trip: pairing(result, d) = F(pi(beta, d))") {
    Rng rng(37);
    const Vector coeffs = rng.cgauss_vector(2);
    const DxElement x = riesz_dual(s, "2", coeffs);
    for (int k = 0; k < 5; ++k) {
      const DElement d = make_delement(s, rng.cgauss_vector(2));
      const Complex expected = (coeffs.transpose() * pi(s, "2", d))(0);
      CHECK(std::abs(pairing(s, x, d) - expected) <= 1e-10 * (1.0 + std::abs(expected)));
    }
  }
}

TEST_CASE("theta coherence holds across all comparable pairs of a weighted grid") {
  const ContractiveSystem s = gen_weighted_grid(-1, 1, 7, {0, 0.5, 1.5});
  for (const auto& [a, b] : s.poset().comparable_pairs()) {
    const Matrix u = s.u_map(a, b).mat;
    for (Eigen::Index k = 0; k < s.space(a).dim(); ++k) {
      const Vector e = Vector::Unit(s.space(a).dim(), k);
      CHECK(dx_equal(s, theta(s, a, e), theta(s, b, u * e)));
    }
  }
}

}  // TEST_SUITE
