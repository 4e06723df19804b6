#include <doctest.h>

#include <cmath>

#include "hscale/generators.hpp"
#include "hscale/ofamily.hpp"
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

}  // namespace

TEST_SUITE("ofamily") {

TEST_CASE("the diagonal example family is a directed chain") {
  const OFamilyReport rep = validate_ofamily(example_family());
  CHECK(rep.directed);
  CHECK(rep.order[0][1] == '<');
  CHECK(rep.order[1][0] == '>');
}

TEST_CASE("incomparable pair without an upper bound fails directedness") {
  OFamily f{MetricSpace::euclidean(2), {}};
  f.ops.emplace_back("a", diag2(2, 1));
  f.ops.emplace_back("b", diag2(1, 2));
  const OFamilyReport rep = validate_ofamily(f);
  CHECK_FALSE(rep.directed);
  REQUIRE(rep.unbounded_pairs.size() == 1);
  CHECK(rep.order[0][1] == 'x');
}

TEST_CASE("a single zero operator is trivially directed") {
  OFamily f{MetricSpace::euclidean(2), {}};
  f.ops.emplace_back("0", Matrix::Zero(2, 2));
  CHECK(validate_ofamily(f).directed);
  const ContractiveSystem s = build_system_from_ofamily(f);
  CHECK(s.poset().size() == 1);
  CHECK(spectral_norm(s.space("0").gram() - Matrix::Identity(2, 2)) <= 1e-14);
}

TEST_CASE("building the example chain gives the frozen Grams and linking map") {
  const ContractiveSystem s = example_system();
  CHECK(spectral_norm(s.space("1").gram() - diag2(2, 5)) <= 1e-12);
  CHECK(spectral_norm(s.space("2").gram() - diag2(5, 10)) <= 1e-12);
  CHECK(spectral_norm(s.u_map("1", "2").mat - diag2(0.4, 0.5)) <= 1e-10);
  CHECK(s.validate().pass);
}

TEST_CASE("closed form agrees with the Gram quotient on random non-commuting pairs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const OFamily f = gen_ofamily_chain(seed, 3, 2);
    // Non-commuting sanity: the two operators genuinely differ in order.
    const Matrix& a = f.ops[0].second;
    const Matrix& b = f.ops[1].second;
    CHECK(spectral_norm(a * b - b * a) > 1e-8);

    const ContractiveSystem s = build_system_from_ofamily(f);
    const Matrix u = s.u_map("1", "2").mat;
    const Matrix simplified = s.space("2").gram_inv() * s.space("1").gram();
    CHECK(spectral_norm(u - simplified) <= 1e-10);
    const Matrix v = s.v_map("1", "2").mat;
    CHECK((v - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(op_norm(s.u_map("1", "2")) <= 1.0 + 1e-10);
  }
}

TEST_CASE("cocycle through the closed form on a three-level chain") {
  const OFamily f = gen_ofamily_chain(5, 4, 3);
  const ContractiveSystem s = build_system_from_ofamily(f);
  const Matrix direct = s.space("3").gram_inv() * s.space("1").gram();
  const Matrix composed = s.u_map("2", "3").mat * s.u_map("1", "2").mat;
  CHECK(spectral_norm(direct - composed) <= 1e-10);
}

TEST_CASE("tied operators are merged under the first name") {
  OFamily f{MetricSpace::euclidean(2), {}};
  f.ops.emplace_back("p", diag2(1, 1));
  f.ops.emplace_back("q", diag2(-1, 1));  // same graph norm as p
  f.ops.emplace_back("r", diag2(2, 2));
  const ContractiveSystem s = build_system_from_ofamily(f);
  CHECK(s.poset().size() == 2);
  CHECK(s.poset().elements()[0] == "p");
  CHECK_THROWS_AS(s.space("q"), UnknownLabel);
}

TEST_CASE("theta_ofamily matches theta and verifies the factorization") {
  const OFamily f = example_family();
  const ContractiveSystem s = build_system_from_ofamily(f);
  Vector e1(2);
  e1 << 1, 0;
  const DxElement x = theta_ofamily(f, s, "1", e1);
  Vector d_vec(2);
  d_vec << 1, 1;
  const DElement d = make_delement(s, d_vec);
  CHECK(pairing(s, x, d).real() == Approx(2.0).epsilon(1e-12));

  // Coherence with the lifted representative.
  const DxElement lifted = theta_ofamily(f, s, "2", s.u_map("1", "2").mat * e1);
  CHECK(dx_equal(s, x, lifted));

  const DxElement zero = theta_ofamily(f, s, "1", Vector::Zero(2));
  CHECK(dx_equal(s, zero, theta(s, "2", Vector::Zero(2))));
}

TEST_CASE("psd order certificates: contraction iff S_A <= S_B") {
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const OFamily f = gen_ofamily_chain(100 + trial, 4, 2);
    const ContractiveSystem s = build_system_from_ofamily(f);
    for (const auto& [a, b] : s.cover_edges())
      CHECK(op_norm(s.u_map(a, b)) <= 1.0 + 1e-10);
  }
}

}  // TEST_SUITE
