#ifndef HSCALE_OFAMILY_HPP
#define HSCALE_OFAMILY_HPP

#include <string>
#include <utility>
#include <vector>

#include "hscale/jtl.hpp"
#include "hscale/system.hpp"

namespace hscale {

/// A family of named operators on a common base space, preordered by
/// A <= B  <=>  ||A xi|| <= ||B xi|| for all xi, i.e. A^H G0 A <= B^H G0 B
/// as forms.
struct OFamily {
  MetricSpace base;
  std::vector<std::pair<std::string, Matrix>> ops;
};

struct OFamilyReport {
  // comparisons[i][j]: -1 if op_i < op_j fails... encoded as chars:
  // '<', '>', '=', 'x' (incomparable).
  std::vector<std::string> op_names;
  std::vector<std::vector<char>> order;
  std::vector<std::pair<std::string, std::string>> unbounded_pairs;  // no upper bound
  bool directed = true;
};

/// PSD-order comparability matrix and directedness of the preorder.
OFamilyReport validate_ofamily(const OFamily& f, double tol = 1e-10);

/// Builds the directed contractive system of graph-norm spaces:
/// H_A = base space with Gram S_A = G0 + A^H G0 A, linked by
/// U_BA = S_B^{-1/2} (S_A^{1/2} S_B^{-1/2})^* S_A^{1/2}.
/// The closed form is checked against its simplification S_B^{-1} S_A and
/// against adjoint(U_BA) = identity; disagreement beyond tolerance is a
/// build error. Tied operators (equal graph norms) are merged under the
/// first name. Throws OrderViolation if a declared A <= B fails S_A <= S_B.
ContractiveSystem build_system_from_ofamily(const OFamily& f, double tol = 1e-9);

/// Theta_A of the built system, additionally checking the factorization
/// pairing(theta(A, xi), d) = inner_base(S_A^{1/2} pi(A,d), S_A^{1/2} xi)
/// on a basis of D.
DxElement theta_ofamily(const OFamily& f, const ContractiveSystem& s, const std::string& a,
                        Vector xi, double tol = 1e-10);

/// The Gram S_A = G0 + A^H G0 A of the graph norm of a single operator.
Matrix graph_gram(const MetricSpace& base, const Matrix& a);

/// G0-self-adjoint PSD square root of the operator with Gram matrix `gram`,
/// i.e. the matrix R with R = R^{*G0} and R^H G0 R = gram.
Matrix metric_sqrt(const MetricSpace& base, const Matrix& gram);

}  // namespace hscale

#endif
