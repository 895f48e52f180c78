#ifndef MINENT_CHANNELS_HPP
#define MINENT_CHANNELS_HPP

#include <vector>

#include "minent/fock.hpp"

namespace minent {

/// Classical-noise channel: random displacement with isotropic Gaussian
/// kernel exp(-|mu|^2/n)/(pi n) of mean photon number n.
struct ClassicalNoiseSpec {
  double n = 0.0;
};

/// Thermal-noise channel: beam-splitter coupling of transmissivity eta to an
/// environment in a thermal state with mean photon number N.
struct ThermalNoiseSpec {
  double eta = 1.0;
  double N = 0.0;
};

/// Single-mode Gaussian state: mean <a> and 2x2 covariance in the (Re, Im)
/// quadrature basis, vacuum = I/2.
struct GaussianState {
  Complex mean = 0.0;
  Eigen::Matrix2d cov = 0.5 * Eigen::Matrix2d::Identity();
};

/// Gauss-Laguerre nodes/weights for weight e^{-t} on [0, inf). Nodes come
/// from the Golub-Welsch tridiagonal eigenproblem; weights from the closed
/// form t / ((N+1) L_{N+1}(t))^2, whose log (log_weights) stays meaningful
/// even where the weight itself underflows. The eigenvector route would give
/// only absolute ~1e-33 accuracy on the far weights, which the e^{+t}
/// compensation in Husimi grids would amplify catastrophically.
struct GaussLaguerre {
  RealVector nodes;
  RealVector weights;
  RealVector log_weights;
};
GaussLaguerre gauss_laguerre(int order);

/// Polar discretization of the Gaussian kernel integral: node mu_ij =
/// sqrt(n t_i) e^{i theta_j} with weight w_i / angular_count, so that
/// sum(weights) = integral of P_n = 1 exactly to rounding.
struct QuadratureRule {
  int radial_order = 0;
  int angular_count = 0;
  double noise = 0.0;
  std::vector<Complex> nodes;
  std::vector<double> weights;
};
QuadratureRule gaussian_kernel_rule(double n, int radial_order = 40, int angular_count = 64);

/// Fock headroom the classical-noise channel needs above the input support.
int classical_noise_headroom(double n);

/// Environment truncation for the thermal channel: covers the thermal tail at
/// kTailTarget and leaves room for every photon the signal can leak.
int thermal_env_dim(double N, int signal_support);

/// rho' = sum_nodes w D(mu) rho D(mu)^dag. Trace renormalized with the
/// deficit recorded; n = 0 returns rho unchanged.
DensityOperator apply_classical_noise(const DensityOperator& rho, ClassicalNoiseSpec spec,
                                      const QuadratureRule& quad);
DensityOperator apply_classical_noise(const DensityOperator& rho, ClassicalNoiseSpec spec);

/// Doubles both quadrature orders and fails with Errc::convergence when any
/// matrix entry moves by more than tol. Returns the refined-rule output and
/// stores the drift if requested.
DensityOperator apply_classical_noise_checked(const DensityOperator& rho, ClassicalNoiseSpec spec,
                                              const QuadratureRule& quad, double tol = 1e-8,
                                              double* drift = nullptr);

/// Precomputed classical-noise application for one (n, dim, rule): per-radius
/// displacement matrices plus angular phase conjugation. apply_pure avoids the
/// d^3 cost entirely and is the workhorse for optimizer loops.
class ClassicalChannelOperator {
 public:
  ClassicalChannelOperator(double n, int dim, const QuadratureRule& quad);

  DensityOperator apply(const DensityOperator& rho) const;
  /// amplitudes may be shorter than dim (support prefix).
  DensityOperator apply_pure(const Vector& amplitudes) const;
  /// Plain quadrature sum, no renormalization and no tail error. The unital
  /// and trace-preservation diagnostics want the uncorrected operator.
  Matrix apply_raw(const Matrix& op) const;

  int dim() const { return dim_; }
  const QuadratureRule& rule() const { return quad_; }

 private:
  double n_;
  int dim_;
  QuadratureRule quad_;
  std::vector<Matrix> radial_displacements_;  // D(sqrt(n t_i)), one per radial node
};

/// exp(theta (a^dag b - a b^dag)) with cos^2 theta = eta on dim_a x dim_b,
/// exponentiated per total-photon-number sector (the generator conserves it).
Matrix beam_splitter_unitary(double eta, int dim_a, int dim_b);

/// Builds rho (x) thermal(N), conjugates by the beam splitter, traces out the
/// environment. env_dim must satisfy the thermal tail policy.
DensityOperator apply_thermal_noise(const DensityOperator& rho, ThermalNoiseSpec spec, int env_dim);

/// Kraus form of the same dilation, precomputed for repeated application.
class ThermalChannelOperator {
 public:
  ThermalChannelOperator(double eta, double N, int dim, int env_dim);

  DensityOperator apply(const DensityOperator& rho) const;
  DensityOperator apply_pure(const Vector& amplitudes) const;

  int dim() const { return dim_; }

 private:
  int dim_;
  std::vector<Matrix> kraus_;  // sqrt(lambda_e) <f|U|e>, all (f, e) pairs
};

/// max elementwise |E_eta^N(rho) - N_{(1-eta)N}(E_eta^0(rho))|.
double verify_composition(const DensityOperator& rho, ThermalNoiseSpec spec);

GaussianState propagate_gaussian(const GaussianState& g, ClassicalNoiseSpec spec);
GaussianState propagate_gaussian(const GaussianState& g, ThermalNoiseSpec spec);

/// n' = sqrt(det cov) - 1/2; throws Errc::domain below the uncertainty limit.
double effective_thermal_photon(const GaussianState& g);

}  // namespace minent

#endif
