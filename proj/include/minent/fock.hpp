#ifndef MINENT_FOCK_HPP
#define MINENT_FOCK_HPP

#include <cstdint>
#include <random>
#include <utility>

#include "minent/common.hpp"

namespace minent {

/// Pure state on the truncated Fock space {|0>, ..., |dim-1>}.
/// Invariant: unit norm within 1e-12. tail_mass records the probability the
/// producing operation lost to truncation before renormalizing.
struct PureState {
  int dim = 0;
  Vector amplitudes;
  double tail_mass = 0.0;
};

/// Density operator on the truncated Fock space.
/// Invariants (see validate_density): Hermitian within 1e-10, unit trace
/// within 1e-10, eigenvalues >= -1e-9.
struct DensityOperator {
  int dim = 0;
  Matrix matrix;
  double tail_mass = 0.0;
};

/// General operator on the truncated Fock space. Displacement matrices are
/// unitary only up to truncation error.
struct FockOperator {
  int dim = 0;
  Matrix matrix;
};

/// Smallest dim holding a coherent state |alpha> with tail mass < tail_tol.
int coherent_dim_for(Complex alpha, double tail_tol = kTailTarget);

/// Smallest dim holding a thermal state with tail mass < tail_tol.
int thermal_dim_for(double nbar, double tail_tol = kTailTarget);

/// Coherent state |alpha> truncated to dim levels and renormalized.
/// Throws Errc::tail_mass if the truncation deficit exceeds kTailError.
PureState coherent_state(Complex alpha, int dim);

/// Number state |m>.
PureState fock_state(int m, int dim);

/// Thermal state with mean photon number nbar, diagonal entries
/// (nbar/(nbar+1))^m / (nbar+1), renormalized with the deficit recorded.
DensityOperator thermal_state(double nbar, int dim);

/// Raw truncated coherent amplitudes exp(-|alpha|^2/2) alpha^m / sqrt(m!),
/// not renormalized and never an error. Used for Husimi evaluation where the
/// un-renormalized overlap is the correct quantity.
Vector coherent_amplitudes(Complex alpha, int dim);

/// Matrix elements <m|exp(mu a^dag - mu^* a)|n> from the associated-Laguerre
/// closed form with log-factorial prefactors. Exact per element; the truncated
/// matrix is unitary up to tail error.
FockOperator displacement_matrix(Complex mu, int dim);

/// |psi><psi| as a DensityOperator (inherits the state's tail record).
DensityOperator density_from_pure(const PureState& psi);

/// Wraps a matrix after checking Hermiticity and trace at the stated
/// tolerances (positivity is the caller's concern; see validate_density).
DensityOperator density_from_matrix(Matrix m, double tail_mass = 0.0);

/// Kronecker product; trace multiplicative. Throws Errc::dimension when the
/// product dimension exceeds kMaxProductDim.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Partial trace of an operator on dims.first (x) dims.second, keeping mode
/// `keep` (0 = first factor, 1 = second).
DensityOperator partial_trace(const DensityOperator& ab, int keep, std::pair<int, int> dims);

/// Full invariant check: Hermitian within herm_tol, trace 1 within trace_tol,
/// eigenvalues >= -eig_tol. Throws on violation.
void validate_density(const DensityOperator& rho, double herm_tol = 1e-10,
                      double trace_tol = 1e-10, double eig_tol = 1e-9);

/// Zero-pads a state to a larger truncation dimension.
PureState embed(const PureState& psi, int dim);
DensityOperator embed(const DensityOperator& rho, int dim);

/// Largest occupied level + 1 (amplitude or diagonal mass above atol).
int effective_support(const PureState& psi, double atol = 1e-14);
int effective_support(const DensityOperator& rho, double atol = 1e-14);

/// Annihilation operator a on the truncated space.
FockOperator annihilation_matrix(int dim);

/// Tr[rho a] and Tr[rho a^dag a].
Complex mean_field(const DensityOperator& rho);
double mean_photon(const DensityOperator& rho);

/// Haar-like random state supported on levels 0..support_dim-1 of `dim`.
PureState random_pure_state(int support_dim, int dim, std::mt19937_64& rng);

}  // namespace minent

#endif
