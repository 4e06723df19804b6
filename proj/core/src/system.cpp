#include "hscale/system.hpp"

#include <algorithm>
#include <sstream>

namespace hscale {

ContractiveSystem::ContractiveSystem(IndexPoset poset, std::vector<MetricSpace> spaces,
                                     std::map<std::pair<Label, Label>, Matrix> cover_umaps,
                                     SystemTolerances tol, Provenance provenance)
    : poset_(std::move(poset)), spaces_(std::move(spaces)), tol_(tol), provenance_(provenance) {
  if (spaces_.size() != poset_.size())
    throw DimMismatch("system: one space required per poset element");
  edge_order_ = poset_.hasse_edges();
  for (const auto& [a, b] : edge_order_) {
    const auto it = cover_umaps.find({a, b});
    if (it == cover_umaps.end())
      throw DimMismatch("system: missing linking map for covering edge " + a + " -> " + b);
    const Matrix& m = it->second;
    const std::size_t i = poset_.index_of(a);
    const std::size_t j = poset_.index_of(b);
    if (m.rows() != spaces_[j].dim() || m.cols() != spaces_[i].dim())
      throw DimMismatch("system: linking map shape mismatch on edge " + a + " -> " + b);
    cover_[{i, j}] = m;
  }
}

const MetricSpace& ContractiveSystem::space(const Label& a) const {
  return spaces_.at(poset_.index_of(a));
}

const Matrix& ContractiveSystem::cover_umap(const Label& a, const Label& b) const {
  const auto it = cover_.find({poset_.index_of(a), poset_.index_of(b)});
  if (it == cover_.end()) throw NotComparable("no covering edge " + a + " -> " + b);
  return it->second;
}

Matrix ContractiveSystem::composed_u(std::size_t i, std::size_t j) const {
  if (i == j) return Matrix::Identity(spaces_[i].dim(), spaces_[i].dim());
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    const auto it = cache_->entries.find({i, j});
    if (it != cache_->entries.end()) return it->second;
  }
  // Walk one covering step down from j and recurse.
  Matrix result;
  bool found = false;
  for (const auto& [edge, mat] : cover_) {
    if (edge.second != j || !poset_.leq_idx(i, edge.first)) continue;
    result = mat * composed_u(i, edge.first);
    found = true;
    break;
  }
  if (!found) throw NotComparable("no path between comparable indices");  // cannot happen
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->entries.emplace(std::make_pair(i, j), std::move(result)).first->second;
}

LinMap ContractiveSystem::u_map(const Label& alpha, const Label& beta) const {
  const std::size_t i = poset_.index_of(alpha);
  const std::size_t j = poset_.index_of(beta);
  if (!poset_.leq_idx(i, j))
    throw NotComparable("u_map: '" + alpha + "' is not <= '" + beta + "'");
  return LinMap(spaces_[i], spaces_[j], composed_u(i, j));
}

LinMap ContractiveSystem::v_map(const Label& alpha, const Label& beta) const {
  return adjoint(u_map(alpha, beta));
}

std::vector<Matrix> ContractiveSystem::edge_paths(std::size_t i, std::size_t j) const {
  // All covering-edge paths i -> j, as composed matrices. Posets are small.
  std::vector<Matrix> composites;
  if (i == j) {
    composites.push_back(Matrix::Identity(spaces_[i].dim(), spaces_[i].dim()));
    return composites;
  }
  for (const auto& [edge, mat] : cover_) {
    if (edge.second != j || !poset_.leq_idx(i, edge.first)) continue;
    for (const auto& sub : edge_paths(i, edge.first)) composites.push_back(mat * sub);
  }
  return composites;
}

ValidationReport ContractiveSystem::validate() const {
  ValidationReport rep;
  double worst_sigma = 1.0;
  double worst_norm = 1.0;
  std::string inj_witness, contr_witness;
  for (const auto& [a, b] : edge_order_) {
    const LinMap u(spaces_[poset_.index_of(a)], spaces_[poset_.index_of(b)],
                   cover_.at({poset_.index_of(a), poset_.index_of(b)}));
    const double sigma = min_singular(u);
    const double norm = op_norm(u);
    if (sigma < worst_sigma) {
      worst_sigma = sigma;
      inj_witness = a + " -> " + b;
    }
    if (norm > worst_norm) {
      worst_norm = norm;
      contr_witness = a + " -> " + b;
    }
    if (norm > 1.0 && norm <= 1.0 + tol_.contr) rep.marginal_edges.push_back(a + " -> " + b);
    if (norm > 1.0 + tol_.contr) {
      // Identify the worst-stretched component for diagnostics: the largest
      // entry (by modulus) of the top right-singular vector, in unwhitened
      // source coordinates.
      Eigen::JacobiSVD<Matrix> svd(whitened(u), Eigen::ComputeThinV);
      Vector v = u.src.gram_sqrt_inv() * svd.matrixV().col(0);
      Eigen::Index worst_component = 0;
      v.cwiseAbs().maxCoeff(&worst_component);
      std::ostringstream w;
      w << a << " -> " << b << ", op_norm " << norm << ", component " << worst_component;
      contr_witness = w.str();
    }
  }

  const bool inj_pass = worst_sigma > tol_.inj;
  rep.entries.push_back({"injective", inj_pass, worst_sigma, inj_pass ? "" : inj_witness});
  const bool contr_pass = worst_norm <= 1.0 + tol_.contr;
  rep.entries.push_back({"contraction", contr_pass, worst_norm, contr_pass ? "" : contr_witness});
  rep.entries.push_back({"identity", true, 0.0, ""});  // U_{aa} = I by construction

  double worst_path = 0.0;
  std::string path_witness;
  for (std::size_t i = 0; i < poset_.size(); ++i) {
    for (std::size_t j = 0; j < poset_.size(); ++j) {
      if (i == j || !poset_.leq_idx(i, j)) continue;
      const auto paths = edge_paths(i, j);
      for (std::size_t p = 0; p + 1 < paths.size(); ++p) {
        for (std::size_t q = p + 1; q < paths.size(); ++q) {
          const double defect = spectral_norm(paths[p] - paths[q]);
          if (defect > worst_path) {
            worst_path = defect;
            path_witness = poset_.label_of(i) + " -> " + poset_.label_of(j);
          }
        }
      }
    }
  }
  const bool path_pass = worst_path <= tol_.path;
  rep.entries.push_back({"path-independence", path_pass, worst_path, path_pass ? "" : path_witness});

  rep.min_singular = worst_sigma;
  rep.max_norm = worst_norm;
  rep.max_path_defect = worst_path;
  rep.pass = inj_pass && contr_pass && path_pass;
  return rep;
}

ValidationReport validate_system(const ContractiveSystem& s) { return s.validate(); }

ContractiveSystem with_scaled_edge(const ContractiveSystem& s, std::size_t edge_index,
                                   double factor) {
  if (edge_index >= s.edge_order_.size()) throw DimMismatch("edge index out of range");
  std::map<std::pair<Label, Label>, Matrix> umaps;
  for (std::size_t k = 0; k < s.edge_order_.size(); ++k) {
    const auto& [a, b] = s.edge_order_[k];
    Matrix m = s.cover_.at({s.poset_.index_of(a), s.poset_.index_of(b)});
    if (k == edge_index) m *= factor;
    umaps[{a, b}] = std::move(m);
  }
  return ContractiveSystem(s.poset_, s.spaces_, std::move(umaps), s.tol_, s.provenance_);
}

}  // namespace hscale
