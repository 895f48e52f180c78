#include "minent/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "minent/entropies.hpp"

namespace minent {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd circulant_a(int k) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    a(i, (i + 1) % k) = -1.0;
    a((i + 1) % k, i) = 1.0;
  }
  if (k == 2) a.setZero();  // +1 and -1 land on the same entries
  return a;
}

Eigen::MatrixXd circulant_g(int k) {
  Eigen::MatrixXd g = -Eigen::MatrixXd::Identity(k, k);
  for (int i = 0; i < k; ++i) g(i, (i + 1) % k) = 1.0;
  return g;
}

// Multiset comparison by greedy nearest matching (sorting complex values by
// components misparses ties broken by solver noise).
void require_same_spectrum(const Vector& closed, const Vector& dense, double tol,
                           const char* what) {
  std::vector<bool> used(dense.size(), false);
  for (int i = 0; i < closed.size(); ++i) {
    bool matched = false;
    for (int j = 0; j < dense.size(); ++j) {
      if (!used[j] && std::abs(closed[i] - dense[j]) <= tol) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched)
      raise(Errc::identity_check,
            std::string(what) + ": closed-form and dense spectra disagree as multisets");
  }
}

}  // namespace

CirculantSystem build_circulant_system(int k, double n) {
  if (k < 2) raise(Errc::invalid_argument, "circulant system needs k >= 2");
  if (n <= 0) raise(Errc::invalid_argument, "circulant system needs n > 0");
  CirculantSystem sys;
  sys.k = k;
  sys.noise = n;
  sys.a_eigs.resize(k);
  sys.g_eigs.resize(k);
  sys.c_eigs.resize(k);
  sys.dft.resize(k, k);
  for (int j = 0; j < k; ++j) {
    const double phi = 2.0 * kPi * j / k;
    sys.a_eigs[j] = Complex(0.0, -2.0 * std::sin(phi));
    sys.g_eigs[j] = std::polar(1.0, phi) - 1.0;
    sys.c_eigs[j] = 1.0 / n + 0.5 * sys.a_eigs[j];
    for (int m = 0; m < k; ++m)
      sys.dft(m, j) = std::polar(1.0 / std::sqrt(static_cast<double>(k)), phi * m);
  }

  // Cross-check the closed forms against a dense solver and the DFT unitary.
  const Eigen::MatrixXd a = circulant_a(k);
  const Eigen::MatrixXd g = circulant_g(k);
  Eigen::ComplexEigenSolver<Matrix> es_a(a.cast<Complex>(), false);
  Eigen::ComplexEigenSolver<Matrix> es_g(g.cast<Complex>(), false);
  require_same_spectrum(sys.a_eigs, es_a.eigenvalues(), 1e-10, "A");
  require_same_spectrum(sys.g_eigs, es_g.eigenvalues(), 1e-10, "G");
  if ((sys.dft.adjoint() * sys.dft - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-12)
    raise(Errc::identity_check, "DFT matrix is not unitary");
  Matrix da = sys.dft.adjoint() * a * sys.dft;
  Matrix dg = sys.dft.adjoint() * g * sys.dft;
  for (int j = 0; j < k; ++j) {
    da(j, j) -= sys.a_eigs[j];
    dg(j, j) -= sys.g_eigs[j];
  }
  if (da.cwiseAbs().maxCoeff() > 1e-10 || dg.cwiseAbs().maxCoeff() > 1e-10)
    raise(Errc::identity_check, "DFT does not diagonalize the circulant pair");
  return sys;
}

ThetaFactor theta_factor(const CirculantSystem& sys, int j) {
  if (j < 0 || j >= sys.k) raise(Errc::invalid_argument, "factor index out of range");
  const Complex d = sys.c_eigs[j];
  const double e2 = std::norm(sys.g_eigs[j]);
  if (e2 < 1e-14) return ThetaFactor{1.0, 0.0, true};
  ThetaFactor f;
  f.prefactor = (2.0 / sys.noise) / (2.0 * d + e2);
  f.ratio = (2.0 * d - e2) / (2.0 * d + e2);
  f.identity = false;
  return f;
}

Complex theta_char_closed(const CirculantSystem& sys, int j, Complex nu) {
  if (j < 0 || j >= sys.k) raise(Errc::invalid_argument, "factor index out of range");
  const double e2 = std::norm(sys.g_eigs[j]);
  if (e2 < 1e-14) raise(Errc::domain, "characteristic function undefined for e_j = 0");
  const Complex d = sys.c_eigs[j];
  return std::exp(-d * std::norm(nu) / e2) / (sys.noise * e2);
}

Complex theta_char_laguerre(const ThetaFactor& factor, Complex nu, int terms) {
  if (factor.identity) raise(Errc::domain, "identity factor has no Laguerre expansion");
  if (std::abs(factor.ratio) >= 1.0)
    raise(Errc::convergence, "Laguerre series requires |ratio| < 1");
  if (terms < 1) raise(Errc::invalid_argument, "need at least one series term");
  const double x = std::norm(nu);
  const double damp = std::exp(-0.5 * x);
  Complex sum = 0.0;
  Complex rpow = 1.0;
  double lag_prev = 0.0;
  double lag = 1.0;  // L_0
  for (int m = 0; m < terms; ++m) {
    sum += rpow * damp * lag;
    rpow *= factor.ratio;
    const double lag_next = ((2.0 * m + 1.0 - x) * lag - m * lag_prev) / (m + 1.0);
    lag_prev = lag;
    lag = lag_next;
  }
  return factor.prefactor * sum;
}

int laguerre_terms_for(const ThetaFactor& factor, double tol) {
  if (factor.identity) raise(Errc::domain, "identity factor has no Laguerre expansion");
  const double r = std::abs(factor.ratio);
  if (r >= 1.0 - 1e-9)
    raise(Errc::convergence, "Laguerre series does not converge for |ratio| ~ 1");
  if (r < 1e-300) return 1;
  // Geometric envelope: |tail after M terms| <= r^M / (1 - r).
  const int m = static_cast<int>(std::ceil(std::log(tol * (1.0 - r)) / std::log(r)));
  return std::clamp(m, 64, 2000000);
}

double determinant_identity_residual(const CirculantSystem& sys) {
  Complex prod = 1.0;
  for (int j = 0; j < sys.k; ++j)
    prod *= sys.noise * (2.0 * sys.c_eigs[j] + std::norm(sys.g_eigs[j])) / 2.0;
  const double target = std::pow(sys.noise + 1.0, sys.k) - std::pow(sys.noise, sys.k);
  return std::abs(prod - target) / target;
}

double croma_bound(int k, double n) {
  const CirculantSystem sys = build_circulant_system(k, n);
  const double residual = determinant_identity_residual(sys);
  if (residual > 1e-10)
    raise(Errc::identity_check,
          "determinant identity violated: relative residual " + std::to_string(residual));
  return 1.0 / (std::pow(n + 1.0, k) - std::pow(n, k));
}

double k_purity_direct(const PureState& psi, double n, int k, const QuadratureRule& quad) {
  if (k < 2) raise(Errc::invalid_argument, "k-purity needs k >= 2");
  if (n <= 0) raise(Errc::invalid_argument, "k-purity needs n > 0");
  const int support = effective_support(psi);
  const int work_dim = support + classical_noise_headroom(n);
  const ClassicalChannelOperator channel(n, work_dim, quad);
  const DensityOperator out = channel.apply_pure(psi.amplitudes.head(support));
  const RealVector vals = density_eigenvalues(out);
  double sum = 0.0;
  for (int i = 0; i < vals.size(); ++i) sum += std::pow(vals[i], k);
  return sum;
}

double k_purity_direct(const PureState& psi, double n, int k) {
  return k_purity_direct(psi, n, k, gaussian_kernel_rule(n));
}

double k_purity_via_expectation(const PureState& psi, double n, int k,
                                const QuadratureRule& quad) {
  if (k != 2 && k != 3) raise(Errc::invalid_argument, "expectation route supports k in {2, 3}");
  if (n <= 0) raise(Errc::invalid_argument, "k-purity needs n > 0");
  const int support = effective_support(psi);
  const Vector amps = psi.amplitudes.head(support);
  const int count = static_cast<int>(quad.nodes.size());

  // F[i][j] = <psi|D^dag(mu_i) D(mu_j)|psi>
  //         = e^{-i Im(mu_i conj(mu_j))} <psi|D(mu_j - mu_i)|psi>,
  // exact on the support block because the displacement elements are exact.
  Matrix f(count, count);
  parallel_for(count, [&](int i) {
    f(i, i) = 1.0;
    for (int j = i + 1; j < count; ++j) {
      const Complex mu = quad.nodes[i];
      const Complex nu = quad.nodes[j];
      const Matrix d = displacement_matrix(nu - mu, support).matrix;
      const Complex phase = std::polar(1.0, -std::imag(mu * std::conj(nu)));
      const Complex val = phase * (amps.dot(d * amps));
      f(i, j) = val;
      f(j, i) = std::conj(val);
    }
  });

  if (k == 2) {
    // Tr[(WF)^2] = sum_ij w_i w_j |F_ij|^2
    double sum = 0.0;
    for (int i = 0; i < count; ++i) {
      double row = 0.0;
      for (int j = 0; j < count; ++j) row += quad.weights[j] * std::norm(f(i, j));
      sum += quad.weights[i] * row;
    }
    return sum;
  }
  Eigen::Map<const RealVector> w(quad.weights.data(), count);
  Matrix m = w.cast<Complex>().asDiagonal() * f;
  const Matrix m2 = m * m;
  return (m2.transpose().cwiseProduct(m)).sum().real();
}

}  // namespace minent
