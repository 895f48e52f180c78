#ifndef MINENT_COMMON_HPP
#define MINENT_COMMON_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace minent {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Failure categories, mirrored one-to-one by the C API status codes.
enum class Errc {
  invalid_argument = 1,  // parameter outside its documented domain
  dimension = 2,         // truncation dimension missing or oversized
  tail_mass = 3,         // truncation lost more probability than allowed
  convergence = 4,       // quadrature/series/optimizer failed to converge
  domain = 5,            // value outside the mathematically attainable range
  identity_check = 6,    // a cross-check identity failed beyond tolerance
  bound_order = 7,       // a lower bound exceeded the upper bound
  internal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

// Hard ceiling for tensor-product dimensions (dense desk-scale matrices only).
inline constexpr int kMaxProductDim = 4096;

// Truncation policy: constructed states must hold all but kTailTarget of their
// mass; deficits above kTailError are an error rather than a silent renormalize.
inline constexpr double kTailTarget = 1e-8;
inline constexpr double kTailError = 1e-4;

/// Worker cap: BOSONIC_MINENT_THREADS if set, else hardware concurrency.
int max_threads();

/// Runs fn(i) for i in [0, count) on up to max_threads() workers.
/// The caller owns making the combination of results deterministic.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace minent

#endif
