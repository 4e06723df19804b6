#include "hscale/generators.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "hscale/random.hpp"

namespace hscale {

namespace {

Label number_label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<Label> chain_labels(int levels) {
  std::vector<Label> out;
  for (int i = 0; i < levels; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<std::pair<Label, Label>> chain_covers(const std::vector<Label>& labels) {
  std::vector<std::pair<Label, Label>> covers;
  for (std::size_t i = 0; i + 1 < labels.size(); ++i)
    covers.emplace_back(labels[i], labels[i + 1]);
  return covers;
}

}  // namespace

ContractiveSystem gen_shift_chain(Eigen::Index dim, int levels) {
  if (dim < 1 || levels < 1) throw Error("gen_shift_chain: dim and levels must be >= 1");
  const auto labels = chain_labels(levels);
  IndexPoset poset = IndexPoset::build(labels, chain_covers(labels));
  Matrix shift = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) shift((i + 1) % dim, i) = 1.0;
  std::vector<MetricSpace> spaces(static_cast<std::size_t>(levels), MetricSpace::euclidean(dim));
  std::map<std::pair<Label, Label>, Matrix> umaps;
  for (const auto& e : poset.hasse_edges()) umaps[e] = shift;
  return ContractiveSystem(std::move(poset), std::move(spaces), std::move(umaps),
                           SystemTolerances{}, Provenance::GeneratedPrefix);
}

ContractiveSystem gen_weighted_grid(double xmin, double xmax, int points,
                                    const std::vector<double>& alphas, WeightForm weight_form) {
  if (points < 1) throw Error("gen_weighted_grid: points must be >= 1");
  if (alphas.empty()) throw Error("gen_weighted_grid: need at least one exponent");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] < 0.0) throw Error("gen_weighted_grid: exponents must be >= 0");
    if (i > 0 && alphas[i] <= alphas[i - 1])
      throw Error("gen_weighted_grid: exponents must be strictly increasing");
  }
  std::vector<double> grid(points);
  for (int j = 0; j < points; ++j)
    grid[j] = points == 1 ? xmin : xmin + j * (xmax - xmin) / (points - 1);

  // |x|^alpha with 0^alpha = 0 throughout, so the weight depends continuously
  // on the exponent at x = 0.
  auto weight = [&](double x, double alpha) {
    const double ax = std::abs(x);
    switch (weight_form) {
      case WeightForm::OnePlusAbsPow:
        return std::pow(1.0 + ax, alpha);
      case WeightForm::PaperLiteral:
        return 1.0 + (ax == 0.0 ? 0.0 : std::pow(ax, alpha));
    }
    return 1.0;
  };

  std::vector<Label> labels;
  for (double a : alphas) labels.push_back(number_label(a));
  IndexPoset poset = IndexPoset::build(labels, chain_covers(labels));

  std::vector<MetricSpace> spaces;
  for (double a : alphas) {
    Matrix g = Matrix::Zero(points, points);
    for (int j = 0; j < points; ++j) g(j, j) = weight(grid[j], a);
    spaces.emplace_back(std::move(g));
  }
  std::map<std::pair<Label, Label>, Matrix> umaps;
  for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
    Matrix u = Matrix::Zero(points, points);
    for (int j = 0; j < points; ++j)
      u(j, j) = weight(grid[j], alphas[i]) / weight(grid[j], alphas[i + 1]);
    umaps[{labels[i], labels[i + 1]}] = std::move(u);
  }
  return ContractiveSystem(std::move(poset), std::move(spaces), std::move(umaps),
                           SystemTolerances{}, Provenance::GeneratedPrefix);
}

namespace {

Matrix random_gram(Rng& rng, Eigen::Index n) {
  const Matrix r = rng.cgauss_matrix(n, n) / std::sqrt(2.0 * static_cast<double>(n));
  Matrix g = Matrix::Identity(n, n) + r * r.adjoint();
  g /= spectral_norm(g);
  return 0.5 * (g + g.adjoint().eval());
}

Matrix random_unitary(Rng& rng, Eigen::Index n) {
  const Matrix a = rng.cgauss_matrix(n, n);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  return q;
}

// Whitened covering map with singular values affinely placed in [0.1, rho].
Matrix random_whitened_edge(Rng& rng, Eigen::Index rows, Eigen::Index cols, double rho) {
  Matrix raw = rng.cgauss_matrix(rows, cols);
  Eigen::JacobiSVD<Matrix> svd(raw, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd sv = svd.singularValues();
  const double lo = 0.1;
  const double smin = sv.minCoeff();
  const double smax = sv.maxCoeff();
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    sv(k) = smax > smin ? lo + (rho - lo) * (sv(k) - smin) / (smax - smin) : rho;
  return svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
}

}  // namespace

ContractiveSystem gen_random_system(std::uint64_t seed,
                                    const std::map<Label, Eigen::Index>& dims,
                                    const IndexPoset& poset) {
  if (const auto witness = poset.directedness_witness())
    throw NotDirected("gen_random_system: poset is not directed ({" + witness->first + ", " +
                      witness->second + "})");
  std::vector<Eigen::Index> dim_of(poset.size());
  for (std::size_t i = 0; i < poset.size(); ++i) {
    const auto it = dims.find(poset.label_of(i));
    if (it == dims.end() || it->second < 1)
      throw DimMismatch("gen_random_system: missing or invalid dimension for '" +
                        poset.label_of(i) + "'");
    dim_of[i] = it->second;
  }
  for (std::size_t i = 0; i < poset.size(); ++i)
    for (std::size_t j = 0; j < poset.size(); ++j)
      if (poset.leq_idx(i, j) && dim_of[i] > dim_of[j])
        throw DimOrderViolation("gen_random_system: dim('" + poset.label_of(i) +
                                "') > dim('" + poset.label_of(j) + "') along the order");

  Rng rng(seed);
  std::vector<MetricSpace> spaces;
  for (std::size_t i = 0; i < poset.size(); ++i) spaces.emplace_back(random_gram(rng, dim_of[i]));

  const auto edges = poset.hasse_edges();

  // A node with two covering parents admits two edge paths to a common
  // upper index, so independently drawn edges would break the cocycle law.
  bool multipath = false;
  for (std::size_t i = 0; i < poset.size() && !multipath; ++i) {
    int parents = 0;
    for (const auto& [a, b] : edges)
      if (poset.index_of(a) == i) ++parents;
    multipath = parents > 1;
  }

  std::map<std::pair<Label, Label>, Matrix> umaps;
  if (!multipath) {
    bool first = true;
    for (const auto& [a, b] : edges) {
      const std::size_t i = poset.index_of(a);
      const std::size_t j = poset.index_of(b);
      const double rho = first ? 1.0 : rng.uniform(0.5, 1.0);
      first = false;
      const Matrix w = random_whitened_edge(rng, dim_of[j], dim_of[i], rho);
      umaps[{a, b}] = spaces[j].gram_sqrt_inv() * w * spaces[i].gram_sqrt();
    }
  } else {
    // Scalar-times-unitary whitened potentials: exact cocycle on any poset.
    const Eigen::Index n = dim_of[0];
    for (Eigen::Index d : dim_of)
      if (d != n)
        throw DimOrderViolation(
            "gen_random_system: multipath posets require equal dimensions");
    std::vector<int> height(poset.size(), 0);
    // longest chain up to the greatest element
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [a, b] : edges) {
        const std::size_t i = poset.index_of(a);
        const std::size_t j = poset.index_of(b);
        if (height[i] < height[j] + 1) {
          height[i] = height[j] + 1;
          changed = true;
        }
      }
    }
    const double rho = rng.uniform(0.9, 0.98);
    std::vector<Matrix> potential(poset.size());
    for (std::size_t i = 0; i < poset.size(); ++i)
      potential[i] = std::pow(rho, height[i]) * random_unitary(rng, n);
    for (const auto& [a, b] : edges) {
      const std::size_t i = poset.index_of(a);
      const std::size_t j = poset.index_of(b);
      const Matrix w = potential[j].inverse() * potential[i];
      umaps[{a, b}] = spaces[j].gram_sqrt_inv() * w * spaces[i].gram_sqrt();
    }
  }
  return ContractiveSystem(poset, std::move(spaces), std::move(umaps), SystemTolerances{},
                           Provenance::Explicit);
}

IndexPoset gen_random_poset(std::uint64_t seed, int max_nodes) {
  if (max_nodes < 1) throw Error("gen_random_poset: need at least one node");
  Rng rng(seed);
  const int n = 1 + static_cast<int>(rng.integer() % static_cast<std::uint64_t>(max_nodes));
  std::vector<Label> labels = chain_labels(n);
  std::vector<std::pair<Label, Label>> covers;
  for (int k = 1; k < n; ++k) {
    const int parent = static_cast<int>(rng.integer() % static_cast<std::uint64_t>(k));
    covers.emplace_back(labels[k], labels[parent]);  // node k sits below its parent
  }
  return IndexPoset::build(std::move(labels), covers);
}

OFamily gen_ofamily_chain(std::uint64_t seed, Eigen::Index dim, int levels) {
  if (dim < 1 || levels < 1) throw Error("gen_ofamily_chain: dim and levels must be >= 1");
  Rng rng(seed);
  OFamily f{MetricSpace::euclidean(dim), {}};
  Matrix q = Matrix::Zero(dim, dim);
  for (int k = 0; k < levels; ++k) {
    const Matrix p = rng.cgauss_matrix(dim, dim) / std::sqrt(2.0 * static_cast<double>(dim));
    q += p * p.adjoint() + 0.02 * Matrix::Identity(dim, dim);
    q = 0.5 * (q + q.adjoint().eval());
    const Matrix a = random_unitary(rng, dim) * psd_sqrt(q);
    f.ops.emplace_back(std::to_string(k + 1), a);
  }
  return f;
}

OFamily example_family() {
  OFamily f{MetricSpace::euclidean(2), {}};
  Matrix a1 = Matrix::Zero(2, 2);
  a1(0, 0) = 1.0;
  a1(1, 1) = 2.0;
  Matrix a2 = Matrix::Zero(2, 2);
  a2(0, 0) = 2.0;
  a2(1, 1) = 3.0;
  f.ops.emplace_back("1", std::move(a1));
  f.ops.emplace_back("2", std::move(a2));
  return f;
}

ContractiveSystem example_system() { return build_system_from_ofamily(example_family()); }

ContractiveSystem example_diamond() {
  IndexPoset poset = IndexPoset::build({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
  auto diag = [](double x, double y) {
    Matrix g = Matrix::Zero(2, 2);
    g(0, 0) = x;
    g(1, 1) = y;
    return g;
  };
  const Matrix ga = diag(1.0, 4.0);
  const Matrix gb = diag(4.0, 1.0);
  const Matrix gc = diag(4.0, 4.0);
  std::map<std::pair<Label, Label>, Matrix> umaps;
  umaps[{"a", "c"}] = gc.inverse() * ga;
  umaps[{"b", "c"}] = gc.inverse() * gb;
  std::vector<MetricSpace> spaces;
  IndexPoset p = std::move(poset);
  for (const Label& l : p.elements())
    spaces.emplace_back(l == "a" ? ga : l == "b" ? gb : gc);
  return ContractiveSystem(std::move(p), std::move(spaces), std::move(umaps));
}

ContractiveSystem build_generator(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::ShiftChain:
      return gen_shift_chain(spec.dim, spec.levels);
    case GeneratorSpec::Kind::WeightedGrid:
      return gen_weighted_grid(spec.xmin, spec.xmax, spec.points, spec.alphas, spec.weight_form);
    case GeneratorSpec::Kind::OFamilySeed:
      return build_system_from_ofamily(gen_ofamily_chain(spec.seed, spec.dim, spec.levels));
    case GeneratorSpec::Kind::Random:
      return gen_random_system(spec.seed, spec.dims,
                               IndexPoset::build(spec.elements, spec.covers));
  }
  throw Error("build_generator: unknown generator kind");
}

}  // namespace hscale
