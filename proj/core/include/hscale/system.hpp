#ifndef HSCALE_SYSTEM_HPP
#define HSCALE_SYSTEM_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hscale/hspace.hpp"
#include "hscale/poset.hpp"

namespace hscale {

struct SystemTolerances {
  KernelTolerances kernel = {};
  double inj = 1e-8;    // absolute, on whitened singular values
  double contr = 1e-9;  // op_norm(U) <= 1 + contr
  double path = 1e-9;   // max discrepancy between edge-path composites
};

/// Where a system came from. Generator-backed chains are finite prefixes of
/// an infinite family, which changes how conditions (A)/(C) are reported.
enum class Provenance { Explicit, GeneratedPrefix };

struct AxiomEntry {
  std::string axiom;  // "injective", "contraction", "identity", "path-independence"
  bool pass = true;
  double margin = 0.0;
  std::string witness;  // empty when pass without remark
};

struct ValidationReport {
  std::vector<AxiomEntry> entries;
  double min_singular = 1.0;      // axiom (i) worst margin over covering edges
  double max_norm = 1.0;          // axiom (ii) worst margin
  double max_path_defect = 0.0;   // axiom (iv) worst margin
  std::vector<std::string> marginal_edges;  // op_norm in (1, 1+tol_contr]
  bool pass = true;
};

/// The directed contractive system {H_alpha, U_beta_alpha}. Linking maps are
/// stored on covering edges only; maps for arbitrary comparable pairs are
/// composed on demand and memoized (write-once cache behind a mutex, so
/// concurrent reads are safe after construction).
class ContractiveSystem {
 public:
  ContractiveSystem(IndexPoset poset, std::vector<MetricSpace> spaces,
                    std::map<std::pair<Label, Label>, Matrix> cover_umaps,
                    SystemTolerances tol = {}, Provenance provenance = Provenance::Explicit);

  const IndexPoset& poset() const { return poset_; }
  const MetricSpace& space(const Label& a) const;
  const MetricSpace& space_idx(std::size_t i) const { return spaces_.at(i); }
  const SystemTolerances& tolerances() const { return tol_; }
  Provenance provenance() const { return provenance_; }

  /// The stored covering-edge maps, in deterministic (hasse_edges) order.
  const std::vector<std::pair<Label, Label>>& cover_edges() const { return edge_order_; }
  const Matrix& cover_umap(const Label& a, const Label& b) const;

  /// U_{beta alpha}: H_alpha -> H_beta for alpha <= beta. Throws NotComparable.
  LinMap u_map(const Label& alpha, const Label& beta) const;
  /// V_{alpha beta} = U_{beta alpha}^*: H_beta -> H_alpha for alpha <= beta.
  LinMap v_map(const Label& alpha, const Label& beta) const;

  ValidationReport validate() const;

 private:
  Matrix composed_u(std::size_t i, std::size_t j) const;  // i <= j
  std::vector<Matrix> edge_paths(std::size_t i, std::size_t j) const;

  IndexPoset poset_;
  std::vector<MetricSpace> spaces_;
  std::map<std::pair<std::size_t, std::size_t>, Matrix> cover_;
  std::vector<std::pair<Label, Label>> edge_order_;
  SystemTolerances tol_;
  Provenance provenance_;

  struct ComposeCache {
    std::mutex mutex;
    std::map<std::pair<std::size_t, std::size_t>, Matrix> entries;
  };
  std::shared_ptr<ComposeCache> cache_ = std::make_shared<ComposeCache>();

  friend ContractiveSystem with_scaled_edge(const ContractiveSystem&, std::size_t, double);
};

ValidationReport validate_system(const ContractiveSystem& s);

/// Copy of the system with the matrix of covering edge `edge_index` scaled
/// by `factor` (validation/fuzzing helper).
ContractiveSystem with_scaled_edge(const ContractiveSystem& s, std::size_t edge_index,
                                   double factor);

}  // namespace hscale

#endif
