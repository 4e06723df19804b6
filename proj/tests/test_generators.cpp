#include <doctest.h>

#include <cmath>

#include "hscale/generators.hpp"
#include "hscale/jtl.hpp"
#include "hscale/rhs.hpp"

using namespace hscale;
using doctest::Approx;

TEST_SUITE("generators") {

TEST_CASE("shift chain: unitary links, common norm, all-isometric verdicts") {
  CHECK(gen_shift_chain(1, 1).poset().size() == 1);

  const ContractiveSystem s = gen_shift_chain(3, 4);
  const ValidationReport rep = s.validate();
  CHECK(rep.pass);
  CHECK(rep.max_norm == Approx(1.0).epsilon(1e-12));
  CHECK(rep.min_singular == Approx(1.0).epsilon(1e-12));

  const IsometryReport iso = check_isometry_equiv(s);
  CHECK(iso.pass);
  for (const auto& p : iso.pairs) CHECK(p.isometry);

  // norm0 equals the common Euclidean norm.
  Vector v(3);
  v << 1, 2, 2;
  CHECK(norm0(s, make_delement(s, v)) == Approx(3.0).epsilon(1e-12));
}

TEST_CASE("weighted grid: frozen linking map on {-1,0,1} with alphas (0,1)") {
  const ContractiveSystem s = gen_weighted_grid(-1, 1, 3, {0, 1});
  const Matrix u = s.u_map("0", "1").mat;
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 0) = 0.5;
  expected(1, 1) = 1.0;
  expected(2, 2) = 0.5;
  CHECK(spectral_norm(u - expected) <= 1e-14);
  CHECK(s.validate().pass);

  // V maps are identities, so coherent families are constant vectors.
  CHECK(spectral_norm(s.v_map("0", "1").mat - Matrix::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("weighted grid: single exponent collapses to one space") {
  CHECK(gen_weighted_grid(-1, 1, 4, {0}).poset().size() == 1);
}

TEST_CASE("paper-literal weight on |x| < 1 grids breaks the contraction axiom") {
  const ContractiveSystem s =
      gen_weighted_grid(0.5, 0.5, 1, {0, 2}, WeightForm::PaperLiteral);
  const ValidationReport rep = s.validate();
  CHECK_FALSE(rep.pass);
  // ratio w_0 / w_2 = 2 / 1.25 = 1.6 on the only grid point
  CHECK(spectral_norm(s.u_map("0", "2").mat) == Approx(1.6).epsilon(1e-12));
  CHECK(rep.max_norm == Approx(std::sqrt(1.6)).epsilon(1e-12));

  // The monotone default form on the same grid is fine.
  CHECK(gen_weighted_grid(0.5, 0.5, 1, {0, 2}).validate().pass);
}

TEST_CASE("weighted grid rejects bad exponent lists") {
  CHECK_THROWS_AS(gen_weighted_grid(-1, 1, 3, {}), Error);
  CHECK_THROWS_AS(gen_weighted_grid(-1, 1, 3, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(gen_weighted_grid(-1, 1, 3, {-1.0, 1.0}), Error);
}

TEST_CASE("random systems validate by construction and are reproducible") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const IndexPoset p = gen_random_poset(seed, 6);
    std::map<Label, Eigen::Index> dims;
    for (const auto& l : p.elements()) dims[l] = 2 + static_cast<Eigen::Index>(seed % 3);
    const ContractiveSystem s = gen_random_system(seed, dims, p);
    CHECK(s.validate().pass);

    const ContractiveSystem again = gen_random_system(seed, dims, p);
    for (const auto& e : s.cover_edges())
      CHECK((s.cover_umap(e.first, e.second) - again.cover_umap(e.first, e.second))
                .cwiseAbs()
                .maxCoeff() == 0.0);
  }
}

TEST_CASE("different seeds give different linking maps") {
  const IndexPoset p = gen_random_poset(1, 4);
  std::map<Label, Eigen::Index> dims;
  for (const auto& l : p.elements()) dims[l] = 3;
  const ContractiveSystem a = gen_random_system(1, dims, p);
  const ContractiveSystem b = gen_random_system(2, dims, p);
  if (!a.cover_edges().empty()) {
    const auto& e = a.cover_edges().front();
    CHECK(spectral_norm(a.cover_umap(e.first, e.second) - b.cover_umap(e.first, e.second)) >
          1e-8);
  }
}

TEST_CASE("random systems reject decreasing dimensions along the order") {
  const IndexPoset p = IndexPoset::build({"lo", "hi"}, {{"lo", "hi"}});
  std::map<Label, Eigen::Index> dims{{"lo", 3}, {"hi", 2}};
  CHECK_THROWS_AS(gen_random_system(1, dims, p), DimOrderViolation);
}

TEST_CASE("random multipath posets get exactly cocyclic maps") {
  const IndexPoset p = IndexPoset::build({"a", "b", "c", "d"},
                                         {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
  std::map<Label, Eigen::Index> dims;
  for (const auto& l : p.elements()) dims[l] = 3;
  const ContractiveSystem s = gen_random_system(7, dims, p);
  const ValidationReport rep = s.validate();
  CHECK(rep.pass);
  CHECK(rep.max_path_defect <= 1e-12);
}

TEST_CASE("ofamily chains are strictly ordered and reproducible") {
  const OFamily f = gen_ofamily_chain(11, 4, 3);
  CHECK(validate_ofamily(f).directed);
  const OFamily g = gen_ofamily_chain(11, 4, 3);
  CHECK((f.ops[2].second - g.ops[2].second).cwiseAbs().maxCoeff() == 0.0);
  const ContractiveSystem s = build_system_from_ofamily(f);
  CHECK(s.poset().size() == 3);
  CHECK(s.validate().pass);
  CHECK(s.poset().minimum().has_value());
}

TEST_CASE("the first covering edge of a random system has whitened norm 1") {
  const IndexPoset p = gen_random_poset(3, 5);
  std::map<Label, Eigen::Index> dims;
  for (const auto& l : p.elements()) dims[l] = 4;
  const ContractiveSystem s = gen_random_system(3, dims, p);
  if (!s.cover_edges().empty()) {
    const auto& [a, b] = s.cover_edges().front();
    CHECK(op_norm(s.u_map(a, b)) == Approx(1.0).epsilon(1e-12));
  }
}

}  // TEST_SUITE
