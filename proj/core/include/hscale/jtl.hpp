#ifndef HSCALE_JTL_HPP
#define HSCALE_JTL_HPP

#include <vector>

#include "hscale/system.hpp"

namespace hscale {

/// A coherent family in D, stored by its component at a single anchor index
/// (a maximal element dominating every index of interest; finite directed
/// posets always have one). component(alpha) = V_{alpha,anchor} vec.
struct DElement {
  Label anchor;
  Vector vec;
};

/// A representative (base, vec) of an equivalence class in D^x; two
/// representatives are identified when they agree after lifting by U to a
/// common upper index.
struct DxElement {
  Label base;
  Vector vec;
};

DElement make_delement(const ContractiveSystem& s, const Label& anchor, Vector vec);
/// Anchored at the greatest element of the poset.
DElement make_delement(const ContractiveSystem& s, Vector vec);

DElement d_add(const ContractiveSystem& s, const DElement& a, const DElement& b);
DElement d_scale(const DElement& a, Complex c);

/// Theta_alpha: tags a vector of H_alpha as a representative of its class
/// in D^x. Injective on nonzero vectors.
DxElement theta(const ContractiveSystem& s, const Label& alpha, Vector xi);

/// Class equality: lifts both representatives to the common upper bound of
/// their bases and compares there, relative to the lifted magnitudes.
bool dx_equal(const ContractiveSystem& s, const DxElement& x, const DxElement& y,
              double tol = 1e-9);

/// Residual of the dx_equal comparison: ||lift(x) - lift(y)|| / (1 + max norms).
double dx_defect(const ContractiveSystem& s, const DxElement& x, const DxElement& y);

DxElement dx_combine(const ContractiveSystem& s, const DxElement& x, const DxElement& y,
                     Complex a, Complex b);

/// Pi_alpha: the alpha component of a coherent family, alpha <= anchor.
Vector pi(const ContractiveSystem& s, const Label& alpha, const DElement& d);

/// The duality form B(x, d) = inner_{x.base}(pi(x.base, d), x.vec):
/// linear in d, conjugate-linear in x. Independent of the representative.
Complex pairing(const ContractiveSystem& s, const DxElement& x, const DElement& d);

/// Lambda_alpha = Theta_alpha o Pi_alpha: D -> D^x.
DxElement lambda_embed(const ContractiveSystem& s, const Label& alpha, const DElement& d);

struct IsometryPairVerdict {
  Label alpha;
  Label beta;
  bool isometry = false;        // all whitened singular values of V in [1 +- tol]
  bool lambda_equal = false;    // Lambda_alpha == Lambda_beta on a spanning set
  bool biconditional = false;   // isometry <=> lambda_equal
};

struct IsometryReport {
  std::vector<IsometryPairVerdict> pairs;
  bool pass = true;  // biconditional holds for every pair
};

/// Per-pair check that V_{alpha beta} is an isometry iff the embeddings
/// Lambda_alpha and Lambda_beta coincide.
IsometryReport check_isometry_equiv(const ContractiveSystem& s, double tol = 1e-9);

struct SeparatingReport {
  struct Entry {
    Label alpha;
    double min_singular = 0.0;
    double norm = 0.0;
  };
  std::vector<Entry> entries;
  double worst_ratio = 0.0;  // min over alpha of min_singular / norm
  bool pass = true;
};

/// Separation of the duality: for every index alpha, the pairing matrix
/// P[i][j] = pairing(theta(alpha, f_j), d_i) over a basis {d_i} of D and a
/// basis {f_j} of H_alpha must have full rank (min singular > 1e-8 * ||P||).
SeparatingReport separating_check(const ContractiveSystem& s, double rel_tol = 1e-8);

/// Riesz representative of the functional F on Pi_beta(D) = H_beta given by
/// its values on the canonical basis: the class x with
/// pairing(x, d) = F(pi(beta, d)).
DxElement riesz_dual(const ContractiveSystem& s, const Label& beta, const Vector& coeffs);

}  // namespace hscale

#endif
