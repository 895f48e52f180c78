#include <cmath>
#include <random>

#include "doctest.h"
#include "minent/channels.hpp"

using namespace minent;

namespace {

// Tr[rho a^2], for reconstructing the covariance from a density matrix.
Complex mean_asq(const DensityOperator& rho) {
  Complex s = 0.0;
  for (int m = 2; m < rho.dim; ++m)
    s += std::sqrt(m * (m - 1.0)) * rho.matrix(m, m - 2);
  return s;
}

Eigen::Matrix2d covariance_of(const DensityOperator& rho) {
  const Complex a = mean_field(rho);
  const double sym = mean_photon(rho) + 0.5 - std::norm(a);  // <{da, da^dag}>/2
  const Complex c = mean_asq(rho) - a * a;                   // <(da)^2>
  Eigen::Matrix2d v;
  v << sym + c.real(), c.imag(), c.imag(), sym - c.real();
  return v;
}

}  // namespace

TEST_CASE("gauss-laguerre rule integrates e^{-t} polynomials exactly") {
  const GaussLaguerre gl = gauss_laguerre(12);
  CHECK(gl.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
  double first = 0.0, fifth = 0.0;
  for (int i = 0; i < 12; ++i) {
    first += gl.weights[i] * gl.nodes[i];
    fifth += gl.weights[i] * std::pow(gl.nodes[i], 5);
  }
  CHECK(first == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fifth == doctest::Approx(120.0).epsilon(1e-12));  // 5!
}

TEST_CASE("kernel rule is normalized") {
  const QuadratureRule rule = gaussian_kernel_rule(0.8);
  double sum = 0.0;
  for (double w : rule.weights) {
    CHECK(w > 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("classical noise on vacuum gives the thermal state") {
  const DensityOperator vac = density_from_pure(fock_state(0, 60));
  const DensityOperator out = apply_classical_noise(vac, {1.0});
  const DensityOperator ref = thermal_state(1.0, 60);
  CHECK(out.tail_mass < 1e-8);
  CHECK((out.matrix - ref.matrix).cwiseAbs().maxCoeff() < 1e-7);
  validate_density(out);
}

TEST_CASE("n = 0 is the identity channel") {
  const DensityOperator rho = thermal_state(0.7, 30);
  const DensityOperator out = apply_classical_noise(rho, {0.0});
  CHECK((out.matrix - rho.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("covariance under displacement: coherent input gives displaced thermal") {
  const double n = 0.5;
  const Complex alpha(0.6, -0.3);
  const int dim = 40;
  const DensityOperator out =
      apply_classical_noise(density_from_pure(coherent_state(alpha, dim)), {n});
  const Matrix d = displacement_matrix(alpha, dim).matrix;
  const Matrix ref = d * thermal_state(n, dim).matrix * d.adjoint();
  CHECK((out.matrix - ref).topLeftCorner(25, 25).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("pure-state fast path matches the general path") {
  std::mt19937_64 rng(7);
  const PureState psi = random_pure_state(5, 30, rng);
  const QuadratureRule rule = gaussian_kernel_rule(0.5);
  const ClassicalChannelOperator channel(0.5, 30, rule);
  const DensityOperator via_pure = channel.apply_pure(psi.amplitudes);
  const DensityOperator via_general = channel.apply(density_from_pure(psi));
  CHECK((via_pure.matrix - via_general.matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trace preservation across random inputs") {
  std::mt19937_64 rng(11);
  const int dim = 6 + classical_noise_headroom(1.0) + 24;
  const ClassicalChannelOperator channel(1.0, dim, gaussian_kernel_rule(1.0));
  for (int trial = 0; trial < 4; ++trial) {
    const PureState psi = embed(random_pure_state(6, 6, rng), dim);
    const Matrix raw = channel.apply_raw((psi.amplitudes * psi.amplitudes.adjoint()).eval());
    CHECK(std::abs(raw.trace().real() - 1.0) < 1e-8);
  }
}

TEST_CASE("unital away from the cutoff boundary") {
  const int dim = 60;
  const DensityOperator mixed{dim, Matrix::Identity(dim, dim) / double(dim), 0.0};
  const ClassicalChannelOperator channel(0.5, dim, gaussian_kernel_rule(0.5));
  const Matrix raw = channel.apply_raw(mixed.matrix);
  const Matrix diff = raw - mixed.matrix;
  CHECK(diff.topLeftCorner(20, 20).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("quadrature convergence under doubling") {
  const DensityOperator rho = density_from_pure(coherent_state(0.8, 45));
  double drift = 0.0;
  apply_classical_noise_checked(rho, {1.5}, gaussian_kernel_rule(1.5), 1e-8, &drift);
  CHECK(drift < 1e-8);
  SUBCASE("an under-resolved rule is flagged") {
    CHECK_THROWS_AS(
        apply_classical_noise_checked(rho, {1.5}, gaussian_kernel_rule(1.5, 3, 4), 1e-8),
        Error);
  }
}

TEST_CASE("thermal channel basics") {
  SUBCASE("vacuum in, thermal((1-eta)N) out") {
    const double eta = 0.4, N = 1.0;
    const int dim = 40;
    const DensityOperator vac = density_from_pure(fock_state(0, dim));
    const DensityOperator out = apply_thermal_noise(vac, {eta, N}, thermal_env_dim(N, 1));
    const DensityOperator ref = thermal_state((1 - eta) * N, dim);
    CHECK((out.matrix - ref.matrix).cwiseAbs().maxCoeff() < 1e-8);
  }
  SUBCASE("eta = 1 is the identity") {
    const DensityOperator rho = thermal_state(0.5, 20);
    const DensityOperator out = apply_thermal_noise(rho, {1.0, 3.0}, thermal_env_dim(3.0, 1));
    CHECK((out.matrix - rho.matrix).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("eta = 0 swaps in the environment") {
    const int dim = 48;
    const DensityOperator rho = density_from_pure(fock_state(1, dim));
    const DensityOperator out = apply_thermal_noise(rho, {0.0, 2.0}, thermal_env_dim(2.0, 2));
    const DensityOperator ref = thermal_state(2.0, dim);
    CHECK((out.matrix - ref.matrix).cwiseAbs().maxCoeff() < 1e-7);
  }
  SUBCASE("env tail policy enforced") {
    const DensityOperator rho = density_from_pure(fock_state(0, 10));
    CHECK_THROWS_AS(apply_thermal_noise(rho, {0.5, 2.0}, 3), Error);
  }
}

TEST_CASE("thermal kraus operator matches the dilation") {
  const double eta = 0.6, N = 0.8;
  const int dim = 18, env = thermal_env_dim(N, 4);
  std::mt19937_64 rng(3);
  const PureState psi = random_pure_state(4, dim, rng);
  const ThermalChannelOperator channel(eta, N, dim, env);
  const DensityOperator fast = channel.apply_pure(psi.amplitudes.head(4));
  const DensityOperator slow = apply_thermal_noise(density_from_pure(psi), {eta, N}, env);
  CHECK((fast.matrix - slow.matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("composition rule") {
  SUBCASE("vacuum input") {
    const int dim = 40;
    const DensityOperator vac = density_from_pure(fock_state(0, dim));
    CHECK(verify_composition(vac, {0.5, 1.0}) < 1e-7);
  }
  SUBCASE("coherent input") {
    const int dim = 45;
    const DensityOperator coh = density_from_pure(coherent_state(1.0, dim));
    CHECK(verify_composition(coh, {0.7, 0.5}) < 1e-6);
  }
  SUBCASE("eta = 1 trivial") {
    const DensityOperator rho = thermal_state(0.3, 25);
    CHECK(verify_composition(rho, {1.0, 2.0}) < 1e-12);
  }
}

TEST_CASE("gaussian propagation") {
  SUBCASE("classical noise adds n to the covariance") {
    GaussianState g;  // coherent
    const GaussianState out = propagate_gaussian(g, ClassicalNoiseSpec{0.9});
    CHECK((out.cov - (0.9 + 0.5) * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(effective_thermal_photon(out) == doctest::Approx(0.9).epsilon(1e-12));
  }
  SUBCASE("n = 0 is the identity on the covariance") {
    GaussianState g;
    g.cov << 1.0, 0.2, 0.2, 0.7;
    const GaussianState out = propagate_gaussian(g, ClassicalNoiseSpec{0.0});
    CHECK((out.cov - g.cov).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("thermal channel formula") {
    GaussianState g;  // coherent
    const double eta = 0.3, N = 1.2;
    const GaussianState out = propagate_gaussian(g, ThermalNoiseSpec{eta, N});
    const double expected = eta * 0.5 + (1 - eta) * (N + 0.5);
    CHECK(out.cov(0, 0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(effective_thermal_photon(out) == doctest::Approx((1 - eta) * N).epsilon(1e-12));
  }
  SUBCASE("squeezed input through classical noise, frozen determinant") {
    GaussianState g;
    g.cov << 2.0, 0.0, 0.0, 0.125;  // s = 4
    const GaussianState out = propagate_gaussian(g, ClassicalNoiseSpec{1.0});
    // det Gamma' = 3 * 1.125 = 3.375
    CHECK(effective_thermal_photon(out) ==
          doctest::Approx(std::sqrt(3.375) - 0.5).epsilon(1e-14));
  }
  SUBCASE("uncertainty violation rejected") {
    GaussianState g;
    g.cov << 0.1, 0.0, 0.0, 0.1;
    CHECK_THROWS_AS(effective_thermal_photon(g), Error);
  }
}

TEST_CASE("fock-space moments agree with gaussian propagation") {
  SUBCASE("coherent input") {
    const Complex alpha(0.8, 0.0);
    const int dim = 45;
    const double n = 0.7;
    const DensityOperator out =
        apply_classical_noise(density_from_pure(coherent_state(alpha, dim)), {n});
    CHECK(std::abs(mean_field(out) - alpha) < 1e-6);
    const GaussianState g = propagate_gaussian(GaussianState{alpha}, ClassicalNoiseSpec{n});
    CHECK((covariance_of(out) - g.cov).cwiseAbs().maxCoeff() < 1e-6);
  }
  SUBCASE("thermal input through the thermal channel") {
    const double eta = 0.6, N = 0.5, nbar = 0.4;
    const int dim = 40;
    const DensityOperator in = thermal_state(nbar, dim);
    const DensityOperator out = apply_thermal_noise(in, {eta, N}, thermal_env_dim(N, 20));
    GaussianState g;
    g.cov = (nbar + 0.5) * Eigen::Matrix2d::Identity();
    const GaussianState ref = propagate_gaussian(g, ThermalNoiseSpec{eta, N});
    CHECK((covariance_of(out) - ref.cov).cwiseAbs().maxCoeff() < 1e-6);
  }
}
