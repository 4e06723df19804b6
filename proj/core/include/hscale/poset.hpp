#ifndef HSCALE_POSET_HPP
#define HSCALE_POSET_HPP

#include <optional>
#include <utility>
#include <vector>

#include "hscale/types.hpp"

namespace hscale {

/// Finite directed-upward index set with its partial order.
///
/// The order is stored as the reflexive-transitive closure of the relation
/// pairs given at construction, so leq() is a single bit lookup. Instances
/// are immutable after build() and safe for concurrent reads.
class IndexPoset {
 public:
  /// Builds the poset from labels and relation pairs (a, b) meaning a <= b.
  /// Throws UnknownLabel for pairs naming missing labels and CycleError if
  /// the closure violates antisymmetry.
  static IndexPoset build(std::vector<Label> elements,
                          const std::vector<std::pair<Label, Label>>& covers);

  std::size_t size() const { return elements_.size(); }
  const std::vector<Label>& elements() const { return elements_; }

  /// Index of a label in element-list order. Throws UnknownLabel.
  std::size_t index_of(const Label& a) const;
  const Label& label_of(std::size_t i) const { return elements_.at(i); }

  bool leq(const Label& a, const Label& b) const;
  bool leq_idx(std::size_t i, std::size_t j) const { return rel_[i * elements_.size() + j]; }

  /// First pair (in element-list order) without a common upper bound, or
  /// nullopt when the poset is directed.
  std::optional<std::pair<Label, Label>> directedness_witness() const;
  bool is_directed() const { return !directedness_witness().has_value(); }

  /// Deterministic upper bound: the least upper bound when unique, otherwise
  /// the minimal upper bound earliest in element-list order. Throws
  /// NotDirected when a and b have no common upper bound.
  Label upper_bound(const Label& a, const Label& b) const;

  /// Covering relation a <. b (a < b with nothing strictly between).
  std::vector<std::pair<Label, Label>> hasse_edges() const;

  std::vector<Label> minimal_elements() const;
  std::vector<Label> maximal_elements() const;

  /// The minimum element, if one exists.
  std::optional<Label> minimum() const;

  /// The greatest element. A finite directed poset always has one; throws
  /// NotDirected otherwise.
  Label greatest() const;

  /// All pairs (a, b) with a <= b, in element-list order.
  std::vector<std::pair<Label, Label>> comparable_pairs() const;

 private:
  IndexPoset() = default;
  std::vector<Label> elements_;
  std::vector<bool> rel_;  // row-major closure, rel_[i*n+j] <=> i <= j
};

}  // namespace hscale

#endif
