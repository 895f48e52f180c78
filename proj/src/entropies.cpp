#include "minent/entropies.hpp"

#include <cmath>
#include <numbers>

namespace minent {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEigClip = 1e-9;
}  // namespace

RealVector density_eigenvalues(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix, Eigen::EigenvaluesOnly);
  RealVector vals = es.eigenvalues();
  // Anything below 1e-13 of the top eigenvalue is solver noise; left in place
  // it would pollute fractional powers (noise^0.5 ~ 1e-8 per eigenvalue).
  const double floor = 1e-13 * vals.maxCoeff();
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] < -kEigClip)
      raise(Errc::domain, "density eigenvalue " + std::to_string(vals[i]) +
                              " below truncation-noise tolerance");
    if (vals[i] < floor) vals[i] = 0.0;
  }
  return vals;
}

double z_purity(const DensityOperator& rho, double z) {
  if (z <= 0.0) raise(Errc::invalid_argument, "z-purity needs z > 0");
  const RealVector vals = density_eigenvalues(rho);
  double sum = 0.0;
  for (int i = 0; i < vals.size(); ++i)
    if (vals[i] > 0.0) sum += std::pow(vals[i], z);
  return sum;
}

double z_purity_matrix_power(const DensityOperator& rho, int k) {
  if (k < 2) raise(Errc::invalid_argument, "matrix-power purity needs integer k >= 2");
  Matrix acc = rho.matrix;
  for (int i = 1; i < k - 1; ++i) acc = acc * rho.matrix;
  // Tr[acc * rho] without forming the last product.
  return (acc.transpose().cwiseProduct(rho.matrix)).sum().real();
}

double renyi_entropy(const DensityOperator& rho, double z) {
  if (z <= 0.0) raise(Errc::invalid_argument, "Renyi order must be > 0");
  if (std::abs(z - 1.0) < 1e-6) return von_neumann(rho);
  const RealVector vals = density_eigenvalues(rho);
  const double lmax = vals.maxCoeff();
  // ln sum lambda^z = z ln lmax + ln sum (lambda/lmax)^z, safe for huge z.
  double rel = 0.0;
  for (int i = 0; i < vals.size(); ++i)
    if (vals[i] > 0.0) rel += std::exp(z * (std::log(vals[i]) - std::log(lmax)));
  return -(z * std::log(lmax) + std::log(rel)) / (z - 1.0);
}

double von_neumann(const DensityOperator& rho) {
  const RealVector vals = density_eigenvalues(rho);
  double s = 0.0;
  for (int i = 0; i < vals.size(); ++i)
    if (vals[i] > 0.0) s -= vals[i] * std::log(vals[i]);
  return s;
}

HusimiRule husimi_rule_for(const DensityOperator& rho, int radial, int angular) {
  HusimiRule rule;
  rule.radial = radial;
  rule.angular = angular;
  rule.center = mean_field(rho);
  const double spread = mean_photon(rho) + 1.0 - std::norm(rule.center);
  rule.scale = std::sqrt(std::max(spread, 1.0));
  return rule;
}

HusimiField husimi(const DensityOperator& rho, const HusimiRule& rule) {
  if (rule.radial < 1 || rule.angular < 1) raise(Errc::invalid_argument, "bad Husimi grid orders");
  const GaussLaguerre gl = gauss_laguerre(rule.radial);
  const int M = rule.angular;
  const int count = rule.radial * M;
  HusimiField field;
  field.rule = rule;
  field.nodes.resize(count);
  field.weights.resize(count);
  field.values.resize(count);

  // d^2mu weight: scale^2 * (pi/M) * w_i e^{t_i}; assembled in log space.
  for (int i = 0; i < rule.radial; ++i) {
    const double w = rule.scale * rule.scale * (kPi / M) * std::exp(gl.log_weights[i] + gl.nodes[i]);
    const double r = rule.scale * std::sqrt(gl.nodes[i]);
    for (int j = 0; j < M; ++j) {
      const double theta = 2.0 * kPi * j / M;
      const int idx = i * M + j;
      field.nodes[idx] = rule.center + r * Complex(std::cos(theta), std::sin(theta));
      field.weights[idx] = w;
    }
  }

  Matrix coh(rho.dim, count);
  parallel_for(rule.radial, [&](int i) {
    for (int j = 0; j < M; ++j) {
      const int idx = i * M + j;
      coh.col(idx) = coherent_amplitudes(field.nodes[idx], rho.dim);
    }
  });
  const Matrix applied = rho.matrix * coh;
  double norm = 0.0;
  for (int idx = 0; idx < count; ++idx) {
    double q = (coh.col(idx).dot(applied.col(idx))).real() / kPi;
    if (q < -1e-10) raise(Errc::domain, "Husimi value below zero beyond tolerance");
    if (q < 0.0) q = 0.0;
    field.values[idx] = q;
    norm += field.weights[idx] * q;
  }
  field.norm = norm;
  if (std::abs(norm - 1.0) > 1e-6)
    raise(Errc::convergence, "Husimi grid too small: captured mass " + std::to_string(norm));
  return field;
}

double wehrl(const HusimiField& field) {
  double s = 0.0;
  for (int idx = 0; idx < field.values.size(); ++idx) {
    const double q = field.values[idx];
    if (q > 0.0) s -= field.weights[idx] * q * std::log(kPi * q);
  }
  return s;
}

double husimi_moment(const HusimiField& field, double z) {
  if (z <= 0.0) raise(Errc::invalid_argument, "moment order must be > 0");
  double m = 0.0;
  for (int idx = 0; idx < field.values.size(); ++idx) {
    const double q = field.values[idx];
    if (q > 0.0) m += field.weights[idx] * std::pow(kPi * q, z);
  }
  return m / kPi;
}

double renyi_wehrl(const HusimiField& field, double z) {
  if (z < 1.0 - 1e-9) raise(Errc::invalid_argument, "Renyi-Wehrl entropy needs z >= 1");
  if (std::abs(z - 1.0) < 1e-6) return wehrl(field);
  return -std::log(husimi_moment(field, z)) / (z - 1.0);
}

double wehrl_of(const DensityOperator& rho, int radial, int angular) {
  return wehrl(husimi(rho, husimi_rule_for(rho, radial, angular)));
}

double renyi_wehrl_of(const DensityOperator& rho, double z, int radial, int angular) {
  if (std::abs(z - 1.0) < 1e-6) return wehrl_of(rho, radial, angular);
  return renyi_wehrl(husimi(rho, husimi_rule_for(rho, radial, angular)), z);
}

double wehrl_checked(const DensityOperator& rho, int radial, int angular, double tol,
                     double* drift) {
  const double coarse = wehrl_of(rho, radial, angular);
  const double fine = wehrl_of(rho, 2 * radial, 2 * angular);
  const double dev = std::abs(fine - coarse);
  if (drift) *drift = dev;
  if (dev > tol)
    raise(Errc::convergence,
          "Wehrl quadrature not converged: drift " + std::to_string(dev) + " on grid doubling");
  return fine;
}

}  // namespace minent
