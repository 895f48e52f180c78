#ifndef MINENT_ENTROPIES_HPP
#define MINENT_ENTROPIES_HPP

#include <vector>

#include "minent/channels.hpp"
#include "minent/fock.hpp"

namespace minent {

/// Polar Husimi grid: radial Gauss-Laguerre (weight e^{-t}, t = r^2 in units
/// of scale^2), uniform angles, centered on the state's mean field.
struct HusimiRule {
  int radial = 80;
  int angular = 128;
  Complex center = 0.0;
  double scale = 1.0;
};

/// Husimi Q sampled on the rule's nodes. weights are the d^2mu quadrature
/// weights, so sum(weights * values) approximates the total Q mass (= 1).
struct HusimiField {
  HusimiRule rule;
  std::vector<Complex> nodes;
  std::vector<double> weights;
  RealVector values;
  double norm = 0.0;
};

/// Eigenvalues of a density operator, ascending, with truncation noise
/// clipped: values in [-1e-9, 0) go to 0, anything lower throws Errc::domain.
RealVector density_eigenvalues(const DensityOperator& rho);

/// Tr[rho^z] from the spectrum; z > 0.
double z_purity(const DensityOperator& rho, double z);

/// Tr[rho^k] by repeated matrix products, k >= 2 integer. Cross-check path
/// for the spectral route.
double z_purity_matrix_power(const DensityOperator& rho, int k);

/// -ln Tr[rho^z] / (z - 1), computed in log space so z as large as 1e6 is
/// fine. Within 1e-6 of z = 1 delegates to von_neumann.
double renyi_entropy(const DensityOperator& rho, double z);

/// -Tr[rho ln rho] with 0 ln 0 = 0.
double von_neumann(const DensityOperator& rho);

/// Grid centered on <a> with scale sqrt(<Delta a Delta a^dag>).
HusimiRule husimi_rule_for(const DensityOperator& rho, int radial = 80, int angular = 128);

/// Q(mu) = <mu|rho|mu> / pi on the rule's nodes. Throws Errc::convergence if
/// the grid captures less than 1 - 1e-6 of the Q mass.
HusimiField husimi(const DensityOperator& rho, const HusimiRule& rule);

/// Wehrl entropy -int Q ln(pi Q).
double wehrl(const HusimiField& field);

/// m_z = int (pi Q)^z d^2mu / pi.
double husimi_moment(const HusimiField& field, double z);

/// Renyi-Wehrl entropy -ln(m_z)/(z-1) for z >= 1; near z = 1 delegates to
/// wehrl.
double renyi_wehrl(const HusimiField& field, double z);

/// Conveniences that build the adapted grid internally.
double wehrl_of(const DensityOperator& rho, int radial = 80, int angular = 128);
double renyi_wehrl_of(const DensityOperator& rho, double z, int radial = 80, int angular = 128);

/// Grid-doubling error estimate; throws Errc::convergence above tol.
double wehrl_checked(const DensityOperator& rho, int radial = 80, int angular = 128,
                     double tol = 1e-4, double* drift = nullptr);

}  // namespace minent

#endif
