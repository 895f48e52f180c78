#include "minent/channels.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace minent {

namespace {
constexpr double kPi = std::numbers::pi;
}

GaussLaguerre gauss_laguerre(int order) {
  if (order < 1) raise(Errc::invalid_argument, "quadrature order must be >= 1");
  // Golub-Welsch: Jacobi matrix of the Laguerre recurrence, weight e^{-t}.
  RealVector diag(order), sub(order > 1 ? order - 1 : 1);
  for (int k = 0; k < order; ++k) diag[k] = 2.0 * k + 1.0;
  for (int k = 1; k < order; ++k) sub[k - 1] = static_cast<double>(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(std::max(order - 1, 0)),
                            Eigen::EigenvaluesOnly);
  GaussLaguerre rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(order);
  rule.log_weights.resize(order);

  // L_{order-1}, L_order at t, both scaled by e^{-logscale}.
  auto laguerre_pair = [order](double t, double& lm, double& l, double& logscale) {
    lm = 1.0;
    l = 1.0 - t;
    logscale = 0.0;
    for (int k = 1; k < order; ++k) {
      const double next = ((2.0 * k + 1.0 - t) * l - k * lm) / (k + 1.0);
      lm = l;
      l = next;
      const double mag = std::abs(l);
      if (mag > 1e100) {
        lm /= mag;
        l /= mag;
        logscale += std::log(mag);
      }
    }
  };

  for (int i = 0; i < order; ++i) {
    double t = rule.nodes[i];
    double lm, l, logscale;
    // Newton-polish the eigenvalue to a true root of L_order, using
    // t L'_n = n (L_n - L_{n-1}); the eigenproblem alone leaves ~1e-13
    // absolute error that the weight formula would square.
    for (int it = 0; it < 8; ++it) {
      laguerre_pair(t, lm, l, logscale);
      const double step = l * t / (order * (l - lm));
      t -= step;
      if (std::abs(step) < 1e-15 * t) break;
    }
    rule.nodes[i] = t;
    laguerre_pair(t, lm, l, logscale);
    // L_{order+1}(root) = ((2 order + 1 - t) L_order - order L_{order-1})/(order+1)
    const double lnext = ((2.0 * order + 1.0 - t) * l - order * lm) / (order + 1.0);
    const double log_l = std::log(std::abs(lnext)) + logscale;
    rule.log_weights[i] = std::log(t) - 2.0 * (std::log(order + 1.0) + log_l);
    rule.weights[i] = std::exp(rule.log_weights[i]);
  }
  return rule;
}

QuadratureRule gaussian_kernel_rule(double n, int radial_order, int angular_count) {
  if (n <= 0) raise(Errc::invalid_argument, "kernel rule needs n > 0");
  if (radial_order < 1 || angular_count < 1) raise(Errc::invalid_argument, "bad quadrature orders");
  const GaussLaguerre gl = gauss_laguerre(radial_order);
  QuadratureRule rule;
  rule.radial_order = radial_order;
  rule.angular_count = angular_count;
  rule.noise = n;
  rule.nodes.reserve(static_cast<size_t>(radial_order) * angular_count);
  rule.weights.reserve(rule.nodes.capacity());
  for (int i = 0; i < radial_order; ++i) {
    const double r = std::sqrt(n * gl.nodes[i]);
    const double w = gl.weights[i] / angular_count;
    for (int j = 0; j < angular_count; ++j) {
      const double theta = 2.0 * kPi * j / angular_count;
      rule.nodes.push_back(r * Complex(std::cos(theta), std::sin(theta)));
      rule.weights.push_back(w);
    }
  }
  return rule;
}

int classical_noise_headroom(double n) {
  return static_cast<int>(std::ceil(10.0 * (n + 1.0)));
}

int thermal_env_dim(double N, int signal_support) {
  return thermal_dim_for(N, kTailTarget) + std::max(signal_support, 1);
}

// ---------------------------------------------------------------------------
// classical-noise channel

ClassicalChannelOperator::ClassicalChannelOperator(double n, int dim, const QuadratureRule& quad)
    : n_(n), dim_(dim), quad_(quad) {
  if (n <= 0) raise(Errc::invalid_argument, "channel operator needs n > 0");
  if (std::abs(quad.noise - n) > 1e-12 * (1.0 + n))
    raise(Errc::invalid_argument, "quadrature rule was built for a different n");
  radial_displacements_.reserve(quad.radial_order);
  const int M = quad.angular_count;
  for (int i = 0; i < quad.radial_order; ++i) {
    const Complex mu = quad.nodes[static_cast<size_t>(i) * M];  // theta = 0 node
    radial_displacements_.push_back(displacement_matrix(mu, dim).matrix);
  }
}

namespace {

DensityOperator finalize_density(Matrix m, double extra_tail) {
  m = 0.5 * (m + m.adjoint().eval());  // exact result is Hermitian
  const double trace = m.trace().real();
  const double tail = 1.0 - trace;
  if (tail > kTailError)
    raise(Errc::tail_mass, "channel output lost " + std::to_string(tail) +
                               " probability; increase working dim");
  m /= trace;
  return DensityOperator{static_cast<int>(m.rows()), std::move(m),
                         std::max(tail, 0.0) + extra_tail};
}

}  // namespace

Matrix ClassicalChannelOperator::apply_raw(const Matrix& op) const {
  if (op.rows() != dim_ || op.cols() != dim_)
    raise(Errc::dimension, "operator dim does not match channel operator");
  const int R = quad_.radial_order;
  const int M = quad_.angular_count;
  std::vector<Matrix> partials(R);
  parallel_for(R, [&](int i) {
    Matrix acc = Matrix::Zero(dim_, dim_);
    Vector phase(dim_);
    Matrix rotated(dim_, dim_), conjugated(dim_, dim_);
    for (int j = 0; j < M; ++j) {
      const double w = quad_.weights[static_cast<size_t>(i) * M + j];
      const double theta = 2.0 * kPi * j / M;
      for (int m = 0; m < dim_; ++m) phase[m] = std::polar(1.0, m * theta);
      // D(r e^{i theta}) = Phi D(r) Phi^dag with Phi = diag(e^{i m theta})
      rotated = phase.conjugate().asDiagonal() * op * phase.asDiagonal();
      conjugated = radial_displacements_[i] * rotated * radial_displacements_[i].adjoint();
      acc += w * (phase.asDiagonal() * conjugated * phase.conjugate().asDiagonal());
    }
    partials[i] = std::move(acc);
  });
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < R; ++i) sum += partials[i];  // fixed order: deterministic
  return sum;
}

DensityOperator ClassicalChannelOperator::apply(const DensityOperator& rho) const {
  return finalize_density(apply_raw(rho.matrix), rho.tail_mass);
}

DensityOperator ClassicalChannelOperator::apply_pure(const Vector& amplitudes) const {
  const int s = static_cast<int>(amplitudes.size());
  if (s > dim_) raise(Errc::dimension, "amplitude vector longer than channel dim");
  const int R = quad_.radial_order;
  const int M = quad_.angular_count;
  Matrix cols(dim_, static_cast<Eigen::Index>(R) * M);
  parallel_for(R, [&](int i) {
    const auto slice = radial_displacements_[i].leftCols(s);
    Vector rotated(s), out(dim_);
    for (int j = 0; j < M; ++j) {
      const double theta = 2.0 * kPi * j / M;
      const double w = quad_.weights[static_cast<size_t>(i) * M + j];
      for (int m = 0; m < s; ++m) rotated[m] = std::polar(1.0, -m * theta) * amplitudes[m];
      out.noalias() = slice * rotated;
      for (int m = 0; m < dim_; ++m) out[m] *= std::polar(1.0, m * theta);
      cols.col(static_cast<Eigen::Index>(i) * M + j) = std::sqrt(w) * out;
    }
  });
  Matrix sum = cols * cols.adjoint();
  return finalize_density(std::move(sum), 0.0);
}

DensityOperator apply_classical_noise(const DensityOperator& rho, ClassicalNoiseSpec spec,
                                      const QuadratureRule& quad) {
  if (spec.n < 0) raise(Errc::invalid_argument, "classical noise n must be >= 0");
  if (spec.n == 0.0) return rho;
  return ClassicalChannelOperator(spec.n, rho.dim, quad).apply(rho);
}

DensityOperator apply_classical_noise(const DensityOperator& rho, ClassicalNoiseSpec spec) {
  if (spec.n < 0) raise(Errc::invalid_argument, "classical noise n must be >= 0");
  if (spec.n == 0.0) return rho;
  return apply_classical_noise(rho, spec, gaussian_kernel_rule(spec.n));
}

DensityOperator apply_classical_noise_checked(const DensityOperator& rho, ClassicalNoiseSpec spec,
                                              const QuadratureRule& quad, double tol,
                                              double* drift) {
  if (spec.n == 0.0) {
    if (drift) *drift = 0.0;
    return rho;
  }
  const DensityOperator coarse = apply_classical_noise(rho, spec, quad);
  const QuadratureRule fine =
      gaussian_kernel_rule(spec.n, 2 * quad.radial_order, 2 * quad.angular_count);
  DensityOperator refined = apply_classical_noise(rho, spec, fine);
  const double dev = (refined.matrix - coarse.matrix).cwiseAbs().maxCoeff();
  if (drift) *drift = dev;
  if (dev > tol)
    raise(Errc::convergence, "classical-noise quadrature not converged: drift " +
                                 std::to_string(dev) + " when orders doubled");
  return refined;
}

// ---------------------------------------------------------------------------
// thermal-noise channel

Matrix beam_splitter_unitary(double eta, int dim_a, int dim_b) {
  if (eta < 0.0 || eta > 1.0) raise(Errc::invalid_argument, "eta must lie in [0, 1]");
  if (dim_a < 1 || dim_b < 1) raise(Errc::dimension, "beam splitter dims must be >= 1");
  const double theta = std::acos(std::clamp(std::sqrt(eta), 0.0, 1.0));
  const long total = static_cast<long>(dim_a) * dim_b;
  Matrix u = Matrix::Zero(total, total);
  // theta (a^dag b - a b^dag) conserves total photon number, so the truncated
  // generator is block diagonal over sectors T = m + j; exponentiate each
  // dense block by scaling-and-squaring.
  for (int T = 0; T <= dim_a + dim_b - 2; ++T) {
    const int lo = std::max(0, T - dim_b + 1);
    const int hi = std::min(T, dim_a - 1);
    const int len = hi - lo + 1;
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(len, len);
    for (int m = lo; m < hi; ++m) {
      const double g = theta * std::sqrt(static_cast<double>(m + 1) * (T - m));
      gen(m + 1 - lo, m - lo) = g;   // a^dag b
      gen(m - lo, m + 1 - lo) = -g;  // -a b^dag
    }
    const Eigen::MatrixXd block = gen.exp();
    for (int r = 0; r < len; ++r)
      for (int c = 0; c < len; ++c) {
        const long row = static_cast<long>(lo + r) * dim_b + (T - lo - r);
        const long col = static_cast<long>(lo + c) * dim_b + (T - lo - c);
        u(row, col) = block(r, c);
      }
  }
  return u;
}

namespace {

void check_thermal_spec(ThermalNoiseSpec spec, int env_dim) {
  if (spec.eta < 0.0 || spec.eta > 1.0) raise(Errc::invalid_argument, "eta must lie in [0, 1]");
  if (spec.N < 0.0) raise(Errc::invalid_argument, "environment photon number must be >= 0");
  if (env_dim < 1) raise(Errc::dimension, "env_dim must be >= 1");
  if (spec.N > 0.0) {
    const double tail = std::pow(spec.N / (spec.N + 1.0), env_dim);
    if (tail >= kTailTarget)
      raise(Errc::tail_mass, "env_dim leaves thermal tail " + std::to_string(tail) +
                                 " >= 1e-8; increase env_dim");
  }
}

}  // namespace

DensityOperator apply_thermal_noise(const DensityOperator& rho, ThermalNoiseSpec spec,
                                    int env_dim) {
  check_thermal_spec(spec, env_dim);
  if (spec.eta == 1.0) return rho;  // identity channel
  const DensityOperator env = thermal_state(spec.N, env_dim);
  const DensityOperator joint = tensor(rho, env);
  const Matrix u = beam_splitter_unitary(spec.eta, rho.dim, env_dim);
  Matrix evolved = u * joint.matrix * u.adjoint();
  DensityOperator out = partial_trace(
      DensityOperator{joint.dim, std::move(evolved), 0.0}, 0, {rho.dim, env_dim});
  return finalize_density(std::move(out.matrix), rho.tail_mass);
}

ThermalChannelOperator::ThermalChannelOperator(double eta, double N, int dim, int env_dim)
    : dim_(dim) {
  check_thermal_spec({eta, N}, env_dim);
  const DensityOperator env = thermal_state(N, env_dim);
  const Matrix u = beam_splitter_unitary(eta, dim, env_dim);
  kraus_.reserve(static_cast<size_t>(env_dim) * env_dim);
  for (int e = 0; e < env_dim; ++e) {
    const double lambda = env.matrix(e, e).real();
    for (int f = 0; f < env_dim; ++f) {
      Matrix k(dim, dim);
      for (int mp = 0; mp < dim; ++mp)
        for (int m = 0; m < dim; ++m)
          k(mp, m) = u(static_cast<long>(mp) * env_dim + f, static_cast<long>(m) * env_dim + e);
      kraus_.push_back(std::sqrt(lambda) * k);
    }
  }
}

DensityOperator ThermalChannelOperator::apply(const DensityOperator& rho) const {
  if (rho.dim != dim_) raise(Errc::dimension, "state dim does not match channel operator");
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (const Matrix& k : kraus_) sum += k * rho.matrix * k.adjoint();
  return finalize_density(std::move(sum), rho.tail_mass);
}

DensityOperator ThermalChannelOperator::apply_pure(const Vector& amplitudes) const {
  const int s = static_cast<int>(amplitudes.size());
  if (s > dim_) raise(Errc::dimension, "amplitude vector longer than channel dim");
  Matrix cols(dim_, static_cast<Eigen::Index>(kraus_.size()));
  for (size_t i = 0; i < kraus_.size(); ++i)
    cols.col(static_cast<Eigen::Index>(i)).noalias() = kraus_[i].leftCols(s) * amplitudes;
  Matrix sum = cols * cols.adjoint();
  return finalize_density(std::move(sum), 0.0);
}

double verify_composition(const DensityOperator& rho, ThermalNoiseSpec spec) {
  const int support = effective_support(rho);
  const DensityOperator lhs =
      apply_thermal_noise(rho, spec, thermal_env_dim(spec.N, support));
  DensityOperator rhs = apply_thermal_noise(rho, {spec.eta, 0.0}, thermal_env_dim(0.0, support));
  const double n_eff = (1.0 - spec.eta) * spec.N;
  if (n_eff > 0.0) rhs = apply_classical_noise(rhs, {n_eff});
  return (lhs.matrix - rhs.matrix).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Gaussian covariance propagation

GaussianState propagate_gaussian(const GaussianState& g, ClassicalNoiseSpec spec) {
  if (spec.n < 0) raise(Errc::invalid_argument, "classical noise n must be >= 0");
  GaussianState out = g;
  out.cov += spec.n * Eigen::Matrix2d::Identity();
  return out;
}

GaussianState propagate_gaussian(const GaussianState& g, ThermalNoiseSpec spec) {
  if (spec.eta < 0.0 || spec.eta > 1.0) raise(Errc::invalid_argument, "eta must lie in [0, 1]");
  if (spec.N < 0.0) raise(Errc::invalid_argument, "environment photon number must be >= 0");
  GaussianState out;
  out.mean = std::sqrt(spec.eta) * g.mean;
  out.cov = spec.eta * g.cov + (1.0 - spec.eta) * (spec.N + 0.5) * Eigen::Matrix2d::Identity();
  return out;
}

double effective_thermal_photon(const GaussianState& g) {
  const double det = g.cov.determinant();
  if (det < 0.25 - 1e-12) raise(Errc::domain, "covariance violates the uncertainty principle");
  return std::max(std::sqrt(det) - 0.5, 0.0);
}

}  // namespace minent
