#ifndef HSCALE_RANDOM_HPP
#define HSCALE_RANDOM_HPP

#include <cstdint>
#include <random>

#include "hscale/types.hpp"

namespace hscale {

/// Seeded deterministic source for the sampling-based checks and the
/// generators. Same seed, same stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double gaussian() { return normal_(gen_); }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01_(gen_);
  }
  std::uint64_t integer() { return gen_(); }

  Complex cgauss() { return Complex(gaussian(), gaussian()); }

  Vector cgauss_vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cgauss();
    return v;
  }

  Vector unit_vector(Eigen::Index n) {
    Vector v = cgauss_vector(n);
    const double norm = v.norm();
    return norm > 0 ? Vector(v / norm) : Vector(Vector::Unit(n, 0));
  }

  Matrix cgauss_matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cgauss();
    return m;
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform01_{0.0, 1.0};
};

}  // namespace hscale

#endif
