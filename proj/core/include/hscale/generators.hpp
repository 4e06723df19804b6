#ifndef HSCALE_GENERATORS_HPP
#define HSCALE_GENERATORS_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "hscale/ofamily.hpp"
#include "hscale/system.hpp"

namespace hscale {

enum class WeightForm {
  OnePlusAbsPow,  // (1 + |x|)^alpha, monotone in alpha
  PaperLiteral,   // 1 + |x|^alpha, not a contraction near x = 0
};

/// Chain of `levels` copies of C^dim with Euclidean metrics, linked by the
/// cyclic-shift permutation (a unitary discretization of translation).
ContractiveSystem gen_shift_chain(Eigen::Index dim, int levels);

/// Spaces C^points with diagonal Grams w_alpha(x_j) on an equispaced grid,
/// linked by U = diag(w_lo / w_hi) along increasing exponents. The default
/// weight form yields contractions; the literal form 1 + |x|^alpha fails
/// the contraction axiom on grids with points 0 < |x| < 1 (the validator
/// exhibits the witness).
ContractiveSystem gen_weighted_grid(double xmin, double xmax, int points,
                                    const std::vector<double>& alphas,
                                    WeightForm weight_form = WeightForm::OnePlusAbsPow);

/// Seeded random system on the given directed poset: random normalized
/// Grams, covering maps drawn in whitened coordinates with singular values
/// in [0.1, rho], rho in [0.5, 1] (the first covering edge gets rho = 1).
/// Requires dim_alpha <= dim_beta along alpha <= beta (DimOrderViolation
/// otherwise). Always passes validate_system.
ContractiveSystem gen_random_system(std::uint64_t seed,
                                    const std::map<Label, Eigen::Index>& dims,
                                    const IndexPoset& poset);

/// Seeded chain of `levels` operators on C^dim whose graph norms are
/// strictly PSD-ordered (non-commuting in general).
OFamily gen_ofamily_chain(std::uint64_t seed, Eigen::Index dim, int levels);

/// Random in-tree poset on up to `max_nodes` nodes (root "0" greatest).
IndexPoset gen_random_poset(std::uint64_t seed, int max_nodes);

/// The two-operator diagonal family {diag(1,2), diag(2,3)} on Euclidean
/// C^2, whose graph-norm chain has Grams diag(2,5), diag(5,10) and linking
/// map diag(0.4, 0.5).
OFamily example_family();
ContractiveSystem example_system();

/// Two-dimensional diamond poset {a, b} < c with Grams diag(1,4),
/// diag(4,1), diag(4,4): a valid contractive system whose limit norm
/// violates the parallelogram law (defect 6 on the canonical basis pair).
ContractiveSystem example_diamond();

struct GeneratorSpec {
  enum class Kind { ShiftChain, WeightedGrid, OFamilySeed, Random };
  Kind kind = Kind::ShiftChain;

  Eigen::Index dim = 2;  // shift-chain, ofamily-seed
  int levels = 2;        // shift-chain, ofamily-seed

  double xmin = -1.0;  // weighted-grid
  double xmax = 1.0;
  int points = 3;
  std::vector<double> alphas;
  WeightForm weight_form = WeightForm::OnePlusAbsPow;

  std::uint64_t seed = 1;  // ofamily-seed, random
  std::vector<Label> elements;
  std::vector<std::pair<Label, Label>> covers;
  std::map<Label, Eigen::Index> dims;
};

ContractiveSystem build_generator(const GeneratorSpec& spec);

}  // namespace hscale

#endif
