#include "minent/bounds.hpp"

#include <cmath>

namespace minent {

namespace {

// ln((n+1)^z - n^z) without overflow: z ln(n+1) + log1p(-(n/(n+1))^z).
double log_purity_gap(double n, double z) {
  if (n == 0.0) return 0.0;
  const double ratio_log = z * (std::log(n) - std::log(n + 1.0));
  return z * std::log(n + 1.0) + std::log1p(-std::exp(ratio_log));
}

bool near_one(double z) { return std::abs(z - 1.0) < 1e-6; }

// Limit z -> 1 of ln((n+1)^z - n^z)/(z-1).
double von_neumann_thermal(double n) {
  if (n == 0.0) return 0.0;
  return (n + 1.0) * std::log(n + 1.0) - n * std::log(n);
}

double staircase_step(double n, int k) { return log_purity_gap(n, k) / (k - 1.0); }

}  // namespace

double min_renyi_coherent(double n, double z) {
  if (n < 0.0) raise(Errc::invalid_argument, "noise n must be >= 0");
  if (z <= 0.0) raise(Errc::invalid_argument, "Renyi order must be > 0");
  if (n == 0.0) return 0.0;
  if (near_one(z)) return von_neumann_thermal(n);
  return log_purity_gap(n, z) / (z - 1.0);
}

double lower_bound_1(double n, double z, std::optional<double> vn_bound) {
  if (z <= 0.0) raise(Errc::invalid_argument, "Renyi order must be > 0");
  if (n == 0.0) return 0.0;
  if (z <= 1.0) {
    if (vn_bound) return *vn_bound;
    return staircase_step(n, 2);
  }
  const int k = std::max(2, static_cast<int>(std::ceil(z)));
  return staircase_step(n, k);
}

double lower_bound_2(double n, double z) {
  if (z <= 1.0) raise(Errc::invalid_argument, "lower bound 2 needs z > 1");
  if (n == 0.0) return 0.0;
  const int k_top = static_cast<int>(std::floor(z));
  double best = 0.0;
  for (int k = 2; k <= k_top; ++k)
    best = std::max(best, (z / (z - 1.0)) * log_purity_gap(n, k) / k);
  return best;
}

double h_fun(double x, double z) {
  if (x <= 0.0 || x > 1.0) raise(Errc::invalid_argument, "h_z argument must lie in (0, 1]");
  const double q = std::floor(1.0 / x);
  const double lam0 = std::max(1.0 - q * x, 0.0);
  const double head = lam0 > 0.0 ? std::pow(lam0, z) : 0.0;
  return head + q * std::pow(x, z);
}

namespace {

// Bisection for a monotone f on [1e-15, 1]; increasing selects the branch.
double bisect_inverse(const std::function<double(double)>& f, double target, bool increasing) {
  double lo = 1e-15, hi = 1.0;
  const double f_lo = f(lo), f_hi = f(hi);
  const double fmin = increasing ? f_lo : f_hi;
  const double fmax = increasing ? f_hi : f_lo;
  if (target < fmin - 1e-12 || target > fmax + 1e-12)
    raise(Errc::domain, "inverse target outside the attained range");
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool go_right = increasing ? (f(mid) < target) : (f(mid) > target);
    (go_right ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double h_inv(double c, double z) {
  if (std::abs(z - 1.0) < 1e-9) raise(Errc::invalid_argument, "h_1 is constant; no inverse");
  return bisect_inverse([z](double x) { return h_fun(x, z); }, c, /*increasing=*/z > 1.0);
}

double v_fun(double x) {
  if (x <= 0.0 || x > 1.0) raise(Errc::invalid_argument, "v argument must lie in (0, 1]");
  const double q = std::floor(1.0 / x);
  const double lam0 = std::max(1.0 - q * x, 0.0);
  double s = -q * x * std::log(x);
  if (lam0 > 0.0) s -= lam0 * std::log(lam0);
  return s;
}

double v_inv(double y) {
  if (y < 0.0) raise(Errc::invalid_argument, "entropy must be >= 0");
  return bisect_inverse(v_fun, y, /*increasing=*/false);
}

namespace {

// -ln h_z(x) / (z-1), with the z -> 1 limit equal to the two-level spectral
// entropy v(x).
double spectral_bound_value(double x, double z) {
  if (near_one(z)) return v_fun(x);
  return -std::log(h_fun(x, z)) / (z - 1.0);
}

}  // namespace

double lower_bound_3(double n, double z, int k_max, std::optional<double> vn_bound) {
  if (z <= 0.0) raise(Errc::invalid_argument, "Renyi order must be > 0");
  if (k_max < 2) raise(Errc::invalid_argument, "k_max must be >= 2");
  if (n == 0.0) return 0.0;
  double best = 0.0;
  const int k_lo = z > 1.0 ? std::max(2, static_cast<int>(std::ceil(z))) : 2;
  for (int k = k_lo; k <= k_max; ++k) {
    const double c = 1.0 / (std::pow(n + 1.0, k) - std::pow(n, k));
    const double lam = h_inv(c, k);
    best = std::max(best, spectral_bound_value(lam, z));
  }
  if (z <= 1.0 && vn_bound)
    best = std::max(best, spectral_bound_value(v_inv(*vn_bound), z));
  return best;
}

double lower_bound_4(double n, double z) {
  if (n <= 0.0) raise(Errc::invalid_argument, "lower bound 4 needs n > 0");
  if (z <= 0.0) raise(Errc::invalid_argument, "Renyi order must be > 0");
  if (near_one(z)) return 1.0 + std::log(n);
  return std::log(z) / (z - 1.0) + std::log(n);
}

double wehrl_min(double n) {
  if (n < 0.0) raise(Errc::invalid_argument, "noise n must be >= 0");
  return 1.0 + std::log(n + 1.0);
}

double renyi_wehrl_min(double n, double z) {
  if (n < 0.0) raise(Errc::invalid_argument, "noise n must be >= 0");
  if (z < 1.0 - 1e-9) raise(Errc::invalid_argument, "Renyi-Wehrl order must be >= 1");
  if (near_one(z)) return wehrl_min(n);
  return std::log(z) / (z - 1.0) + std::log(n + 1.0);
}

double renyi_wehrl_purity_cap(double n, double z) {
  if (n < 0.0) raise(Errc::invalid_argument, "noise n must be >= 0");
  if (z < 1.0 - 1e-9) raise(Errc::invalid_argument, "Renyi-Wehrl order must be >= 1");
  return 1.0 / (z * std::pow(n + 1.0, z - 1.0));
}

double young_constant(double x) {
  if (x < 1.0) raise(Errc::invalid_argument, "Young constant defined for x >= 1");
  if (std::abs(x - 1.0) < 1e-12) return 1.0;
  const double xp = x / (x - 1.0);
  return std::sqrt(std::pow(x, 1.0 / x) / std::pow(xp, 1.0 / xp));
}

double thermal_transfer(ThermalNoiseSpec spec, BoundId which, double z, int k_max,
                        std::optional<double> vn_bound) {
  if (spec.eta < 0.0 || spec.eta > 1.0) raise(Errc::invalid_argument, "eta must lie in [0, 1]");
  if (spec.N < 0.0) raise(Errc::invalid_argument, "environment photon number must be >= 0");
  const double n = (1.0 - spec.eta) * spec.N;
  switch (which) {
    case BoundId::upper: return min_renyi_coherent(n, z);
    case BoundId::lb1: return lower_bound_1(n, z, vn_bound);
    case BoundId::lb2: return lower_bound_2(n, z);
    case BoundId::lb3: return lower_bound_3(n, z, k_max, vn_bound);
    case BoundId::lb4: return lower_bound_4(n, z);
    case BoundId::wehrl: return wehrl_min(n);
    case BoundId::renyi_wehrl: return renyi_wehrl_min(n, z);
  }
  raise(Errc::invalid_argument, "unknown bound id");
}

BoundCurve figure_data(double n, const std::vector<double>& z_grid,
                       std::optional<double> vn_bound, int k_max) {
  if (n <= 0.0) raise(Errc::invalid_argument, "figure data needs n > 0");
  if (z_grid.empty()) raise(Errc::invalid_argument, "empty z grid");
  BoundCurve curve;
  curve.n = n;
  curve.z_grid = z_grid;
  curve.s_infinity = std::log(n + 1.0);
  curve.vn_bound_used = vn_bound;
  const size_t count = z_grid.size();
  curve.upper.resize(count);
  curve.lb1.resize(count);
  curve.lb2.resize(count);
  curve.lb3.resize(count);
  curve.lb4.resize(count);
  for (size_t i = 0; i < count; ++i) {
    const double z = z_grid[i];
    curve.upper[i] = min_renyi_coherent(n, z);
    curve.lb1[i] = lower_bound_1(n, z, vn_bound);
    curve.lb2[i] = z > 1.0 ? lower_bound_2(n, z) : 0.0;
    curve.lb3[i] = lower_bound_3(n, z, k_max, vn_bound);
    curve.lb4[i] = lower_bound_4(n, z);
    const double lb_max = std::max({curve.lb1[i], curve.lb2[i], curve.lb3[i], curve.lb4[i]});
    if (lb_max > curve.upper[i] + 1e-9)
      raise(Errc::bound_order, "lower bound exceeds upper bound at z = " + std::to_string(z));
  }
  return curve;
}

}  // namespace minent
