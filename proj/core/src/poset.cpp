#include "hscale/poset.hpp"

#include <algorithm>

namespace hscale {

IndexPoset IndexPoset::build(std::vector<Label> elements,
                             const std::vector<std::pair<Label, Label>>& covers) {
  IndexPoset p;
  p.elements_ = std::move(elements);
  const std::size_t n = p.elements_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p.elements_[i] == p.elements_[j])
        throw UnknownLabel("duplicate label '" + p.elements_[i] + "'");
    }
  }
  p.rel_.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i) p.rel_[i * n + i] = true;
  for (const auto& [a, b] : covers) {
    const std::size_t i = p.index_of(a);
    const std::size_t j = p.index_of(b);
    p.rel_[i * n + j] = true;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (p.rel_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (p.rel_[k * n + j]) p.rel_[i * n + j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (p.rel_[i * n + j] && p.rel_[j * n + i])
        throw CycleError("antisymmetry violated between '" + p.elements_[i] + "' and '" +
                         p.elements_[j] + "'");
  return p;
}

std::size_t IndexPoset::index_of(const Label& a) const {
  const auto it = std::find(elements_.begin(), elements_.end(), a);
  if (it == elements_.end()) throw UnknownLabel("unknown label '" + a + "'");
  return static_cast<std::size_t>(it - elements_.begin());
}

bool IndexPoset::leq(const Label& a, const Label& b) const {
  return leq_idx(index_of(a), index_of(b));
}

std::optional<std::pair<Label, Label>> IndexPoset::directedness_witness() const {
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      bool bounded = false;
      for (std::size_t k = 0; k < n && !bounded; ++k)
        bounded = leq_idx(i, k) && leq_idx(j, k);
      if (!bounded) return std::make_pair(elements_[i], elements_[j]);
    }
  }
  return std::nullopt;
}

Label IndexPoset::upper_bound(const Label& a, const Label& b) const {
  const std::size_t i = index_of(a);
  const std::size_t j = index_of(b);
  const std::size_t n = elements_.size();
  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < n; ++k)
    if (leq_idx(i, k) && leq_idx(j, k)) candidates.push_back(k);
  if (candidates.empty())
    throw NotDirected("no common upper bound for '" + a + "' and '" + b + "'");
  // First candidate (element-list order) that is minimal among candidates.
  for (std::size_t c : candidates) {
    bool minimal = true;
    for (std::size_t d : candidates)
      if (d != c && leq_idx(d, c)) {
        minimal = false;
        break;
      }
    if (minimal) return elements_[c];
  }
  return elements_[candidates.front()];  // unreachable for a finite poset
}

std::vector<std::pair<Label, Label>> IndexPoset::hasse_edges() const {
  const std::size_t n = elements_.size();
  std::vector<std::pair<Label, Label>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq_idx(i, j)) continue;
      bool covering = true;
      for (std::size_t k = 0; k < n && covering; ++k)
        if (k != i && k != j && leq_idx(i, k) && leq_idx(k, j)) covering = false;
      if (covering) edges.emplace_back(elements_[i], elements_[j]);
    }
  }
  return edges;
}

std::vector<Label> IndexPoset::minimal_elements() const {
  const std::size_t n = elements_.size();
  std::vector<Label> out;
  for (std::size_t i = 0; i < n; ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < n && minimal; ++j)
      if (j != i && leq_idx(j, i)) minimal = false;
    if (minimal) out.push_back(elements_[i]);
  }
  return out;
}

std::vector<Label> IndexPoset::maximal_elements() const {
  const std::size_t n = elements_.size();
  std::vector<Label> out;
  for (std::size_t i = 0; i < n; ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < n && maximal; ++j)
      if (j != i && leq_idx(i, j)) maximal = false;
    if (maximal) out.push_back(elements_[i]);
  }
  return out;
}

std::optional<Label> IndexPoset::minimum() const {
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool below_all = true;
    for (std::size_t j = 0; j < n && below_all; ++j) below_all = leq_idx(i, j);
    if (below_all) return elements_[i];
  }
  return std::nullopt;
}

Label IndexPoset::greatest() const {
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool above_all = true;
    for (std::size_t j = 0; j < n && above_all; ++j) above_all = leq_idx(j, i);
    if (above_all) return elements_[i];
  }
  throw NotDirected("poset has no greatest element");
}

std::vector<std::pair<Label, Label>> IndexPoset::comparable_pairs() const {
  const std::size_t n = elements_.size();
  std::vector<std::pair<Label, Label>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq_idx(i, j)) out.emplace_back(elements_[i], elements_[j]);
  return out;
}

}  // namespace hscale
