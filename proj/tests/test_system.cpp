#include <doctest.h>

#include "hscale/generators.hpp"
#include "hscale/random.hpp"
#include "hscale/system.hpp"

using namespace hscale;
using doctest::Approx;

TEST_SUITE("system") {

TEST_CASE("single space with identity map passes with margins (1, 1, 0)") {
  IndexPoset p = IndexPoset::build({"0"}, {});
  std::vector<MetricSpace> spaces{MetricSpace::euclidean(2)};
  ContractiveSystem s(std::move(p), std::move(spaces), {});
  const ValidationReport rep = s.validate();
  CHECK(rep.pass);
  CHECK(rep.min_singular == Approx(1.0));
  CHECK(rep.max_norm == Approx(1.0));
  CHECK(rep.max_path_defect == 0.0);
}

TEST_CASE("the example chain validates with contraction margin 0.70711") {
  const ContractiveSystem s = example_system();
  const ValidationReport rep = s.validate();
  CHECK(rep.pass);
  CHECK(rep.max_norm == Approx(0.7071067811865476).epsilon(1e-9));
}

TEST_CASE("scaling a linking map by 1.5 fails contraction with margin 1.0607") {
  const ContractiveSystem bad = with_scaled_edge(example_system(), 0, 1.5);
  const ValidationReport rep = bad.validate();
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_norm == Approx(1.5 * 0.7071067811865476).epsilon(1e-9));
  bool contraction_failed = false;
  for (const auto& e : rep.entries)
    if (e.axiom == "contraction" && !e.pass) contraction_failed = true;
  CHECK(contraction_failed);
}

TEST_CASE("u_map composes along chains and v_map is its adjoint") {
  const ContractiveSystem s = gen_shift_chain(3, 3);
  const Matrix direct = s.u_map("0", "2").mat;
  const Matrix composed = s.u_map("1", "2").mat * s.u_map("0", "1").mat;
  CHECK(spectral_norm(direct - composed) < 1e-14);

  CHECK(spectral_norm(s.u_map("1", "1").mat - Matrix::Identity(3, 3)) == 0.0);
  CHECK(spectral_norm(s.v_map("1", "1").mat - Matrix::Identity(3, 3)) < 1e-14);

  CHECK_THROWS_AS(s.u_map("2", "0"), NotComparable);
}

TEST_CASE("the example chain has identity v_map") {
  const ContractiveSystem s = example_system();
  CHECK(spectral_norm(s.v_map("1", "2").mat - Matrix::Identity(2, 2)) <= 1e-10);
}

TEST_CASE("duality defect of U and V = U* on random systems") {
  Rng outer(21);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const IndexPoset p = gen_random_poset(seed, 5);
    std::map<Label, Eigen::Index> dims;
    for (const auto& l : p.elements()) dims[l] = 3;
    const ContractiveSystem s = gen_random_system(seed, dims, p);
    for (const auto& [a, b] : s.cover_edges()) {
      const LinMap u = s.u_map(a, b);
      const LinMap v = s.v_map(a, b);
      for (int k = 0; k < 5; ++k) {
        const Vector xi = outer.cgauss_vector(u.src.dim());
        const Vector eta = outer.cgauss_vector(u.dst.dim());
        CHECK(std::abs(u.dst.inner(u.mat * xi, eta) - u.src.inner(xi, v.mat * eta)) <=
              1e-10 * (1 + u.src.norm(xi) * u.dst.norm(eta)));
      }
      CHECK(op_norm(v) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("v composition law V_{ac} = V_{ab} V_{bc}") {
  const ContractiveSystem s = gen_weighted_grid(-1, 1, 5, {0, 1, 2});
  const Matrix direct = s.v_map("0", "2").mat;
  const Matrix composed = s.v_map("0", "1").mat * s.v_map("1", "2").mat;
  CHECK(spectral_norm(direct - composed) <= 1e-9);
}

TEST_CASE("path independence is validated on multipath posets") {
  // Diamond a < {b, c} < d with consistent maps on one path and a broken
  // map on the other.
  IndexPoset p = IndexPoset::build({"a", "b", "c", "d"},
                                   {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
  std::vector<MetricSpace> spaces(4, MetricSpace::euclidean(2));
  std::map<std::pair<Label, Label>, Matrix> umaps;
  const Matrix half = 0.5 * Matrix::Identity(2, 2);
  umaps[{"a", "b"}] = half;
  umaps[{"a", "c"}] = half;
  umaps[{"b", "d"}] = half;
  umaps[{"c", "d"}] = half;
  {
    const ContractiveSystem good(p, spaces, umaps);
    CHECK(good.validate().pass);
  }
  Matrix skew(2, 2);
  skew << 0.5, 0.1, 0.0, 0.5;
  umaps[{"c", "d"}] = skew;
  const ContractiveSystem bad(p, spaces, umaps);
  const ValidationReport rep = bad.validate();
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_path_defect > 1e-3);
}

TEST_CASE("coherent norms are monotone along the order") {
  const ContractiveSystem s = example_system();
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    const Vector top = rng.cgauss_vector(2);
    const Vector low = s.v_map("1", "2").mat * top;
    CHECK(s.space("1").norm(low) <= s.space("2").norm(top) + 1e-10);
  }
}

TEST_CASE("missing covering maps are rejected") {
  IndexPoset p = IndexPoset::build({"0", "1"}, {{"0", "1"}});
  std::vector<MetricSpace> spaces(2, MetricSpace::euclidean(2));
  CHECK_THROWS_AS(ContractiveSystem(p, spaces, {}), DimMismatch);
}

}  // TEST_SUITE
