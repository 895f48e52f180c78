#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "minent/entropies.hpp"

using namespace minent;

namespace {
constexpr double kPi = std::numbers::pi;

DensityOperator random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator{dim, std::move(m), 0.0};
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  return Eigen::HouseholderQR<Matrix>(g).householderQ();
}

}  // namespace

TEST_CASE("z-purity") {
  SUBCASE("pure state gives 1 for any z") {
    const DensityOperator rho = density_from_pure(coherent_state(Complex(0.4, 0.3), 20));
    for (double z : {0.5, 1.7, 2.0, 5.0})
      CHECK(z_purity(rho, z) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("thermal(1) at z = 2 gives 1/3") {
    CHECK(z_purity(thermal_state(1.0, 60), 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }
  SUBCASE("thermal(n) at integer k gives the closed form") {
    const double n = 0.7;
    const DensityOperator rho = thermal_state(n, 80);
    for (int k : {2, 3, 4}) {
      const double expected = 1.0 / (std::pow(n + 1, k) - std::pow(n, k));
      CHECK(z_purity(rho, k) == doctest::Approx(expected).epsilon(1e-9));
      CHECK(z_purity_matrix_power(rho, k) == doctest::Approx(z_purity(rho, k)).epsilon(1e-10));
    }
  }
}

TEST_CASE("renyi entropy") {
  SUBCASE("pure state gives 0") {
    const DensityOperator rho = density_from_pure(fock_state(2, 8));
    CHECK(renyi_entropy(rho, 2.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(renyi_entropy(rho, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("thermal(1) at z = 2 gives ln 3") {
    CHECK(renyi_entropy(thermal_state(1.0, 60), 2.0) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-9));
  }
  SUBCASE("huge z approaches ln(n+1)") {
    const double n = 1.0;
    CHECK(renyi_entropy(thermal_state(n, 80), 1e6) ==
          doctest::Approx(std::log(n + 1)).epsilon(1e-5));
  }
  SUBCASE("z near 1 brackets the von Neumann value") {
    const DensityOperator rho = thermal_state(0.8, 70);
    const double vn = von_neumann(rho);
    const double lo = renyi_entropy(rho, 1.0 + 1e-4);  // decreasing in z
    const double hi = renyi_entropy(rho, 1.0 - 1e-4);
    CHECK(lo <= vn);
    CHECK(vn <= hi);
    CHECK(hi - lo < 1e-3);
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann(density_from_pure(fock_state(0, 5))) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann(thermal_state(1.0, 60)) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("monotonicity of the renyi family") {
  std::mt19937_64 rng(5);
  const DensityOperator rho = random_density(12, rng);
  const std::vector<double> grid{0.5, 1.5, 2.0, 3.0, 5.0, 10.0};
  double prev = renyi_entropy(rho, grid[0]);
  double prev_scaled = (grid[0] - 1.0) / grid[0] * prev;
  for (size_t i = 1; i < grid.size(); ++i) {
    const double s = renyi_entropy(rho, grid[i]);
    CHECK(s <= prev + 1e-12);
    const double scaled = (grid[i] - 1.0) / grid[i] * s;
    CHECK(scaled >= prev_scaled - 1e-12);
    prev = s;
    prev_scaled = scaled;
  }
}

TEST_CASE("unitary invariance of spectral entropies") {
  std::mt19937_64 rng(17);
  const DensityOperator rho = random_density(10, rng);
  const Matrix u = random_unitary(10, rng);
  const DensityOperator rotated{10, u * rho.matrix * u.adjoint(), 0.0};
  for (double z : {0.5, 2.0, 3.7})
    CHECK(renyi_entropy(rotated, z) == doctest::Approx(renyi_entropy(rho, z)).epsilon(1e-9));
}

TEST_CASE("husimi field") {
  SUBCASE("vacuum Q matches e^{-|mu|^2}/pi") {
    const DensityOperator vac = density_from_pure(fock_state(0, 12));
    const HusimiField field = husimi(vac, husimi_rule_for(vac));
    for (int idx = 0; idx < 40; ++idx) {
      const double expected = std::exp(-std::norm(field.nodes[idx])) / kPi;
      CHECK(field.values[idx] == doctest::Approx(expected).epsilon(1e-10));
    }
    CHECK(field.norm == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("pi Q never exceeds 1") {
    std::mt19937_64 rng(23);
    const DensityOperator rho = random_density(10, rng);
    const HusimiField field = husimi(rho, husimi_rule_for(rho));
    CHECK(field.values.maxCoeff() * kPi <= 1.0 + 1e-9);
  }
  SUBCASE("off-center state still normalizes") {
    const DensityOperator coh = density_from_pure(coherent_state(Complex(1.2, -0.7), 30));
    const HusimiField field = husimi(coh, husimi_rule_for(coh));
    CHECK(field.norm == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("a grid too small to hold the mass is an error") {
    const DensityOperator wide = thermal_state(4.0, 80);
    HusimiRule rule = husimi_rule_for(wide, 4, 16);  // radial order 4 cannot cover it
    rule.scale = 1.0;
    CHECK_THROWS_AS(husimi(wide, rule), Error);
  }
}

TEST_CASE("wehrl entropy") {
  SUBCASE("vacuum saturates the Lieb bound") {
    const DensityOperator vac = density_from_pure(fock_state(0, 12));
    CHECK(wehrl_of(vac) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("gaussian kernel as a distribution has entropy 1 + ln n") {
    // Treat P_n as a Husimi-like field on its own matched grid.
    const double n = 0.6;
    HusimiRule rule;
    rule.scale = std::sqrt(n);
    HusimiField field;
    field.rule = rule;
    const GaussLaguerre gl = gauss_laguerre(rule.radial);
    const int M = rule.angular;
    field.nodes.resize(rule.radial * M);
    field.weights.resize(rule.radial * M);
    field.values.resize(rule.radial * M);
    for (int i = 0; i < rule.radial; ++i) {
      const double w = n * (kPi / M) * gl.weights[i] * std::exp(gl.nodes[i]);
      for (int j = 0; j < M; ++j) {
        const int idx = i * M + j;
        const double r2 = n * gl.nodes[i];
        field.nodes[idx] = std::sqrt(r2) * std::polar(1.0, 2 * kPi * j / M);
        field.weights[idx] = w;
        field.values[idx] = std::exp(-r2 / n) / (kPi * n);
      }
    }
    CHECK(wehrl(field) == doctest::Approx(1.0 + std::log(n)).epsilon(1e-10));
  }
  SUBCASE("lieb bound over random states") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 5; ++t) {
      const DensityOperator rho = random_density(8, rng);
      CHECK(wehrl_of(rho) >= 1.0 - 1e-6);
    }
  }
  SUBCASE("grid-doubling check") {
    const DensityOperator rho = thermal_state(0.9, 40);
    double drift = 0.0;
    wehrl_checked(rho, 80, 128, 1e-4, &drift);
    CHECK(drift < 1e-6);
  }
}

TEST_CASE("renyi-wehrl entropy") {
  SUBCASE("coherent state moment is 1/z") {
    const DensityOperator coh = density_from_pure(coherent_state(Complex(0.3, 0.5), 20));
    const HusimiField field = husimi(coh, husimi_rule_for(coh));
    for (double z : {1.5, 2.0, 3.0}) {
      CHECK(husimi_moment(field, z) == doctest::Approx(1.0 / z).epsilon(1e-8));
      CHECK(renyi_wehrl(field, z) ==
            doctest::Approx(std::log(z) / (z - 1.0)).epsilon(1e-7));
    }
  }
  SUBCASE("moment cap 1/z for arbitrary states") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 5; ++t) {
      const DensityOperator rho = random_density(9, rng);
      const HusimiField field = husimi(rho, husimi_rule_for(rho));
      for (double z : {1.5, 2.0, 3.0}) CHECK(husimi_moment(field, z) <= 1.0 / z + 1e-6);
    }
  }
  SUBCASE("z to 1 limit recovers wehrl") {
    const DensityOperator rho = thermal_state(0.5, 40);
    CHECK(renyi_wehrl_of(rho, 1.0 + 1e-3) == doctest::Approx(wehrl_of(rho)).epsilon(1e-2));
  }
}

TEST_CASE("thermal-channel outputs inherit the coherent minima") {
  const double eta = 0.7, N = 1.0;
  const double n_eff = (1 - eta) * N;
  const int dim = 12 + classical_noise_headroom(n_eff) + 16;
  const DensityOperator in = density_from_pure(coherent_state(0.5, dim));
  const DensityOperator out =
      apply_thermal_noise(in, {eta, N}, thermal_env_dim(N, effective_support(in)));
  CHECK(wehrl_of(out) == doctest::Approx(1.0 + std::log(n_eff + 1.0)).epsilon(1e-4));
  CHECK(renyi_wehrl_of(out, 2.0) ==
        doctest::Approx(std::log(2.0) + std::log(n_eff + 1.0)).epsilon(1e-4));
  CHECK(renyi_entropy(out, 2.0) == doctest::Approx(std::log(2 * n_eff + 1.0)).epsilon(1e-6));
}
