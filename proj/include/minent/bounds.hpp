#ifndef MINENT_BOUNDS_HPP
#define MINENT_BOUNDS_HPP

#include <optional>
#include <vector>

#include "minent/channels.hpp"

namespace minent {

/// ln((n+1)^z - n^z) / (z-1): the Renyi output entropy of a coherent-state
/// input, i.e. the proven/conjectured channel minimum. Stable up to z ~ 1e6;
/// within 1e-6 of z = 1 returns the von Neumann value (n+1)ln(n+1) - n ln(n).
double min_renyi_coherent(double n, double z);

/// Staircase bound from monotonicity of S_z in z: value at k = max(2, ceil(z))
/// for z > 1. For z <= 1 returns vn_bound when supplied, else the k = 2 step.
double lower_bound_1(double n, double z, std::optional<double> vn_bound = std::nullopt);

/// (z/(z-1)) max_{2 <= k <= floor(z)} ln((n+1)^k - n^k)/k; zero when z < 2.
double lower_bound_2(double n, double z);

/// h_z(x) = (1 - floor(1/x) x)^z + floor(1/x) x^z on (0, 1].
double h_fun(double x, double z);

/// Inverse of h_z on its monotone branch, bisection to 1e-12.
double h_inv(double c, double z);

/// v(x) = -(1 - floor(1/x) x) ln(1 - floor(1/x) x) - floor(1/x) x ln x.
double v_fun(double x);

/// Inverse of the decreasing v on (0, 1], bisection to 1e-12.
double v_inv(double y);

/// Spectral-majorization bound: max over k in {2..k_max} with z <= k of
/// -ln h_z(h_inv(1/((n+1)^k - n^k), k))/(z-1), plus for z <= 1 the
/// -ln h_z(v_inv(vn_bound))/(z-1) route when vn_bound is given. Zero when no
/// route applies.
double lower_bound_3(double n, double z, int k_max,
                     std::optional<double> vn_bound = std::nullopt);

/// ln(z)/(z-1) + ln(n) from convexity/concavity of x^z; needs n > 0.
double lower_bound_4(double n, double z);

/// Minimum output Wehrl entropy 1 + ln(n+1).
double wehrl_min(double n);

/// Minimum output Renyi-Wehrl entropy ln(z)/(z-1) + ln(n+1), z >= 1.
double renyi_wehrl_min(double n, double z);

/// Proven cap on the output Husimi moment: m_z <= 1/(z (n+1)^(z-1)).
double renyi_wehrl_purity_cap(double n, double z);

/// Sharp Young's inequality constant (x^{1/x} / x'^{1/x'})^{1/2}, x' = x/(x-1).
double young_constant(double x);

enum class BoundId { upper, lb1, lb2, lb3, lb4, wehrl, renyi_wehrl };

/// Every classical-noise formula evaluated at n = (1 - eta) N. Integer-order
/// and Wehrl minima transfer as equalities, the lower bounds stay bounds.
double thermal_transfer(ThermalNoiseSpec spec, BoundId which, double z, int k_max = 12,
                        std::optional<double> vn_bound = std::nullopt);

/// Upper bound and lower bounds 1-4 tabulated over a z grid.
struct BoundCurve {
  double n = 0.0;
  std::vector<double> z_grid;
  std::vector<double> upper;
  std::vector<double> lb1, lb2, lb3, lb4;
  double s_infinity = 0.0;  // ln(n+1) asymptote
  std::optional<double> vn_bound_used;
};

/// Tabulates the curve and enforces max(lb) <= upper + 1e-9 at every grid
/// point (Errc::bound_order otherwise).
BoundCurve figure_data(double n, const std::vector<double>& z_grid,
                       std::optional<double> vn_bound = std::nullopt, int k_max = 12);

}  // namespace minent

#endif
