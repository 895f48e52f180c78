#include "minent/fock.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

namespace minent {

int max_threads() {
  static const int cap = [] {
    if (const char* env = std::getenv("BOSONIC_MINENT_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }();
  return cap;
}

namespace {
thread_local bool inside_parallel_region = false;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = inside_parallel_region ? 1 : std::min(max_threads(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      inside_parallel_region = true;
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

void require_dim(int dim) {
  if (dim < 1) raise(Errc::dimension, "truncation dimension must be >= 1");
  if (dim > kMaxProductDim) raise(Errc::dimension, "truncation dimension exceeds configured limit");
}

// Cumulative log-factorials ln(m!) for m = 0..dim-1.
std::vector<double> log_factorials(int dim) {
  std::vector<double> lf(dim, 0.0);
  for (int m = 1; m < dim; ++m) lf[m] = lf[m - 1] + std::log(static_cast<double>(m));
  return lf;
}

}  // namespace

int coherent_dim_for(Complex alpha, double tail_tol) {
  const double x = std::norm(alpha);
  if (x == 0.0) return 1;
  // Poissonian tail: accumulate until 1 - sum < tail_tol.
  double term = std::exp(-x);
  double sum = term;
  int m = 0;
  while (1.0 - sum >= tail_tol && m < kMaxProductDim) {
    ++m;
    term *= x / m;
    sum += term;
  }
  if (1.0 - sum >= tail_tol) raise(Errc::dimension, "coherent state does not fit the dimension limit");
  return m + 1;
}

int thermal_dim_for(double nbar, double tail_tol) {
  if (nbar < 0) raise(Errc::invalid_argument, "thermal mean photon number must be >= 0");
  if (nbar == 0.0) return 1;
  // Geometric tail beyond m levels is (nbar/(nbar+1))^m.
  const double r = nbar / (nbar + 1.0);
  const int m = static_cast<int>(std::ceil(std::log(tail_tol) / std::log(r)));
  return std::clamp(m, 1, kMaxProductDim);
}

PureState coherent_state(Complex alpha, int dim) {
  require_dim(dim);
  Vector amps = coherent_amplitudes(alpha, dim);
  const double kept = amps.squaredNorm();
  const double tail = 1.0 - kept;
  if (tail > kTailError)
    raise(Errc::tail_mass, "coherent state truncation lost " + std::to_string(tail) +
                               " probability; increase dim");
  amps /= std::sqrt(kept);
  return PureState{dim, std::move(amps), std::max(tail, 0.0)};
}

PureState fock_state(int m, int dim) {
  require_dim(dim);
  if (m < 0 || m >= dim) raise(Errc::invalid_argument, "fock level outside truncation");
  Vector amps = Vector::Zero(dim);
  amps[m] = 1.0;
  return PureState{dim, std::move(amps), 0.0};
}

DensityOperator thermal_state(double nbar, int dim) {
  require_dim(dim);
  if (nbar < 0) raise(Errc::invalid_argument, "thermal mean photon number must be >= 0");
  Matrix m = Matrix::Zero(dim, dim);
  double sum = 0.0;
  const double r = nbar / (nbar + 1.0);
  double p = 1.0 / (nbar + 1.0);
  for (int k = 0; k < dim; ++k) {
    m(k, k) = p;
    sum += p;
    p *= r;
  }
  const double tail = 1.0 - sum;
  if (tail > kTailError)
    raise(Errc::tail_mass, "thermal state truncation lost " + std::to_string(tail) + " probability");
  m /= sum;
  return DensityOperator{dim, std::move(m), std::max(tail, 0.0)};
}

Vector coherent_amplitudes(Complex alpha, int dim) {
  require_dim(dim);
  Vector amps(dim);
  amps[0] = std::exp(-0.5 * std::norm(alpha));
  for (int m = 1; m < dim; ++m) amps[m] = amps[m - 1] * alpha / std::sqrt(static_cast<double>(m));
  return amps;
}

FockOperator displacement_matrix(Complex mu, int dim) {
  require_dim(dim);
  Matrix d = Matrix::Zero(dim, dim);
  if (mu == Complex(0.0, 0.0)) {
    d.setIdentity();
    return FockOperator{dim, std::move(d)};
  }
  const double x = std::norm(mu);
  const double lx = std::log(std::abs(mu));
  const Complex upper_phase = mu / std::abs(mu);          // phase of mu^(m-n), m >= n
  const Complex lower_phase = -std::conj(upper_phase);    // phase of (-conj(mu))^(n-m)
  const auto lf = log_factorials(dim);

  // One diagonal offset at a time: for fixed a = |m-n|, the associated
  // Laguerre values L_q^(a)(x) for q = 0,1,... come from the upward three-term
  // recurrence, and the prefactor sqrt(q!/(q+a)!) |mu|^a e^{-x/2} is assembled
  // in log space so neither factor over- or underflows on its own.
  for (int a = 0; a < dim; ++a) {
    const Complex up = std::pow(upper_phase, a);
    const Complex down = std::pow(lower_phase, a);
    double lag_prev = 0.0;
    double lag = 1.0;  // L_0^(a)
    for (int q = 0; q + a < dim; ++q) {
      const double scale = std::exp(0.5 * (lf[q] - lf[q + a]) + a * lx - 0.5 * x);
      d(q + a, q) = scale * lag * up;  // <q+a|D|q>
      if (a > 0) d(q, q + a) = scale * lag * down;
      const double lag_next = ((2.0 * q + 1.0 + a - x) * lag - (q + a) * lag_prev) / (q + 1.0);
      lag_prev = lag;
      lag = lag_next;
    }
  }
  return FockOperator{dim, std::move(d)};
}

DensityOperator density_from_pure(const PureState& psi) {
  Matrix m = psi.amplitudes * psi.amplitudes.adjoint();
  return DensityOperator{psi.dim, std::move(m), psi.tail_mass};
}

DensityOperator density_from_matrix(Matrix m, double tail_mass) {
  if (m.rows() != m.cols() || m.rows() < 1) raise(Errc::dimension, "density matrix must be square");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) raise(Errc::domain, "density matrix is not Hermitian within 1e-10");
  const double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr_err > 1e-10) raise(Errc::domain, "density matrix trace deviates from 1 by more than 1e-10");
  return DensityOperator{static_cast<int>(m.rows()), std::move(m), tail_mass};
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  const long prod = static_cast<long>(a.dim) * b.dim;
  if (prod > kMaxProductDim) raise(Errc::dimension, "tensor product dimension exceeds configured limit");
  Matrix m(prod, prod);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      m.block(i * b.dim, j * b.dim, b.dim, b.dim) = a.matrix(i, j) * b.matrix;
  return DensityOperator{static_cast<int>(prod), std::move(m),
                         a.tail_mass + b.tail_mass};
}

DensityOperator partial_trace(const DensityOperator& ab, int keep, std::pair<int, int> dims) {
  const auto [da, db] = dims;
  if (da < 1 || db < 1 || da * db != ab.dim)
    raise(Errc::dimension, "partial trace dims inconsistent with operator");
  if (keep != 0 && keep != 1) raise(Errc::invalid_argument, "keep must be 0 or 1");
  if (keep == 0) {
    Matrix m = Matrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int e = 0; e < db; ++e) m(i, j) += ab.matrix(i * db + e, j * db + e);
    return DensityOperator{da, std::move(m), ab.tail_mass};
  }
  Matrix m = Matrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int e = 0; e < da; ++e) m(i, j) += ab.matrix(e * db + i, e * db + j);
  return DensityOperator{db, std::move(m), ab.tail_mass};
}

void validate_density(const DensityOperator& rho, double herm_tol, double trace_tol,
                      double eig_tol) {
  if (rho.dim != rho.matrix.rows() || rho.dim != rho.matrix.cols())
    raise(Errc::dimension, "density dim field disagrees with matrix shape");
  const double herm = (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > herm_tol) raise(Errc::domain, "density operator not Hermitian within tolerance");
  if (std::abs(rho.matrix.trace() - Complex(1.0, 0.0)) > trace_tol)
    raise(Errc::domain, "density operator trace deviates from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -eig_tol)
    raise(Errc::domain, "density operator has an eigenvalue below -tolerance");
}

PureState embed(const PureState& psi, int dim) {
  if (dim < psi.dim) raise(Errc::dimension, "embed target smaller than state");
  Vector amps = Vector::Zero(dim);
  amps.head(psi.dim) = psi.amplitudes;
  return PureState{dim, std::move(amps), psi.tail_mass};
}

DensityOperator embed(const DensityOperator& rho, int dim) {
  if (dim < rho.dim) raise(Errc::dimension, "embed target smaller than state");
  Matrix m = Matrix::Zero(dim, dim);
  m.topLeftCorner(rho.dim, rho.dim) = rho.matrix;
  return DensityOperator{dim, std::move(m), rho.tail_mass};
}

int effective_support(const PureState& psi, double atol) {
  for (int m = psi.dim - 1; m >= 0; --m)
    if (std::abs(psi.amplitudes[m]) > atol) return m + 1;
  return 1;
}

int effective_support(const DensityOperator& rho, double atol) {
  for (int m = rho.dim - 1; m >= 0; --m)
    if (std::abs(rho.matrix(m, m)) > atol) return m + 1;
  return 1;
}

FockOperator annihilation_matrix(int dim) {
  require_dim(dim);
  Matrix a = Matrix::Zero(dim, dim);
  for (int m = 1; m < dim; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  return FockOperator{dim, std::move(a)};
}

Complex mean_field(const DensityOperator& rho) {
  Complex s = 0.0;
  for (int m = 1; m < rho.dim; ++m) s += std::sqrt(static_cast<double>(m)) * rho.matrix(m, m - 1);
  return s;  // Tr[rho a] = sum_m sqrt(m) <m|rho|m-1>
}

double mean_photon(const DensityOperator& rho) {
  double s = 0.0;
  for (int m = 1; m < rho.dim; ++m) s += m * std::real(rho.matrix(m, m));
  return s;
}

PureState random_pure_state(int support_dim, int dim, std::mt19937_64& rng) {
  if (support_dim < 1 || support_dim > dim) raise(Errc::invalid_argument, "bad support_dim");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector amps = Vector::Zero(dim);
  for (int m = 0; m < support_dim; ++m) amps[m] = Complex(gauss(rng), gauss(rng));
  amps /= amps.norm();
  return PureState{dim, std::move(amps), 0.0};
}

}  // namespace minent
