#ifndef HSCALE_TYPES_HPP
#define HSCALE_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hscale {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

using Label = std::string;

// Base class for every error raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct CycleError : Error {
  using Error::Error;
};
struct UnknownLabel : Error {
  using Error::Error;
};
struct NotDirected : Error {
  using Error::Error;
};
struct NotComparable : Error {
  using Error::Error;
};
struct DimMismatch : Error {
  using Error::Error;
};
struct NotHermitian : Error {
  using Error::Error;
};
struct NotPSD : Error {
  using Error::Error;
};
struct SingularGram : Error {
  using Error::Error;
};
struct DimOrderViolation : Error {
  using Error::Error;
};
struct OrderViolation : Error {
  using Error::Error;
};
struct IndexMismatch : Error {
  using Error::Error;
};
struct SchemaError : Error {
  using Error::Error;
};

// Raised by build_h0 when the candidate norm fails the parallelogram law.
// Carries the worst defect and the witness pair that produced it.
struct ParallelogramViolation : Error {
  ParallelogramViolation(double violation_, Vector d_, Vector e_)
      : Error("parallelogram law violated, defect " + std::to_string(violation_)),
        violation(violation_),
        d(std::move(d_)),
        e(std::move(e_)) {}
  double violation;
  Vector d;
  Vector e;
};

}  // namespace hscale

#endif
