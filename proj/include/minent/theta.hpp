#ifndef MINENT_THETA_HPP
#define MINENT_THETA_HPP

#include "minent/channels.hpp"
#include "minent/fock.hpp"

namespace minent {

/// Eigen-data of the circulant matrices behind the integer-order output
/// purity: A (antisymmetric, +-1 off the diagonal and in the corners) and
/// G (-1 diagonal, +1 superdiagonal and corner) on k modes, diagonalized by
/// the DFT unitary Y_{jm} = e^{2 pi i j m / k} / sqrt(k).
///
/// c_eigs[j] = 1/noise + a_eigs[j]/2 all share real part 1/noise; index 0 is
/// the common (1,...,1) eigenvector with e = 0.
struct CirculantSystem {
  int k = 0;
  double noise = 0.0;
  Vector a_eigs;  // -2i sin(2 pi j / k)
  Vector g_eigs;  // e^{2 pi i j / k} - 1
  Vector c_eigs;  // d_j
  Matrix dft;     // Y
};

/// One factor of the DFT-decoupled operator: a thermal-like operator with
/// weight prefactor * ratio^(b^dag b). e_j = 0 marks the identity factor.
struct ThetaFactor {
  Complex prefactor = 1.0;
  Complex ratio = 0.0;
  bool identity = false;
};

/// Builds the eigen-data for order k and noise n, verifying the closed-form
/// spectra against a dense eigensolver (multiset comparison within 1e-10) and
/// that Y actually diagonalizes both matrices.
CirculantSystem build_circulant_system(int k, double n);

/// prefactor (2/n)/(2 d_j + |e_j|^2), ratio (2 d_j - |e_j|^2)/(2 d_j + |e_j|^2).
ThetaFactor theta_factor(const CirculantSystem& sys, int j);

/// Symmetric characteristic function exp(-d_j |nu|^2 / |e_j|^2) / (n |e_j|^2).
Complex theta_char_closed(const CirculantSystem& sys, int j, Complex nu);

/// Same quantity from the Laguerre series prefactor * sum_m ratio^m
/// e^{-|nu|^2/2} L_m(|nu|^2), truncated at `terms`.
Complex theta_char_laguerre(const ThetaFactor& factor, Complex nu, int terms);

/// Term count that brings the series within tol of its limit for this ratio.
/// Throws Errc::convergence when |ratio| is too close to 1.
int laguerre_terms_for(const ThetaFactor& factor, double tol = 1e-8);

/// Residual of prod_j n (2 d_j + |e_j|^2) / 2 = (n+1)^k - n^k, relative.
double determinant_identity_residual(const CirculantSystem& sys);

/// The proven maximum output k-purity 1/((n+1)^k - n^k). Also re-derives the
/// value through the determinant identity and throws Errc::identity_check if
/// the two disagree beyond relative 1e-10.
double croma_bound(int k, double n);

/// Tr[(N_n(|psi><psi|))^k] by applying the channel and taking matrix powers.
/// psi is embedded with the headroom policy before application.
double k_purity_direct(const PureState& psi, double n, int k, const QuadratureRule& quad);
double k_purity_direct(const PureState& psi, double n, int k);

/// Same purity from the k-fold Gaussian integral of the cyclic product of
/// displacement expectations, evaluated by tensor quadrature (k in {2, 3}).
/// Each pair expectation uses the single-displacement Weyl composition.
double k_purity_via_expectation(const PureState& psi, double n, int k,
                                const QuadratureRule& quad);

}  // namespace minent

#endif
