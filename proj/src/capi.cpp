#include "minent.h"

#include <cmath>
#include <cstring>
#include <string>

#include "minent/bounds.hpp"
#include "minent/channels.hpp"
#include "minent/entropies.hpp"
#include "minent/fock.hpp"
#include "minent/minimizer.hpp"
#include "minent/theta.hpp"

using namespace minent;

struct minent_state {
  DensityOperator rho;
};

struct minent_theta {
  CirculantSystem sys;
};

struct minent_search {
  SearchReport report;
};

namespace {

thread_local std::string g_last_error;

minent_status to_status(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return MINENT_ERROR_INVALID_ARGUMENT;
    case Errc::dimension: return MINENT_ERROR_DIMENSION;
    case Errc::tail_mass: return MINENT_ERROR_TAIL_MASS;
    case Errc::convergence: return MINENT_ERROR_CONVERGENCE;
    case Errc::domain: return MINENT_ERROR_DOMAIN;
    case Errc::identity_check: return MINENT_ERROR_IDENTITY_CHECK;
    case Errc::bound_order: return MINENT_ERROR_BOUND_ORDER;
    case Errc::internal: return MINENT_ERROR_INTERNAL;
  }
  return MINENT_ERROR_INTERNAL;
}

template <typename Fn>
minent_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MINENT_OK;
  } catch (const Error& err) {
    g_last_error = err.what();
    return to_status(err.code());
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return MINENT_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return MINENT_ERROR_INTERNAL;
  }
}

minent_status require(bool ok, const char* what) {
  if (ok) return MINENT_OK;
  g_last_error = what;
  return MINENT_ERROR_INVALID_ARGUMENT;
}

ChannelSpec to_spec(minent_channel c) {
  ChannelSpec spec;
  if (c.kind == MINENT_CHANNEL_CLASSICAL) {
    spec.kind = ChannelSpec::Kind::classical;
    spec.n = c.n;
  } else if (c.kind == MINENT_CHANNEL_THERMAL) {
    spec.kind = ChannelSpec::Kind::thermal;
    spec.eta = c.eta;
    spec.N = c.N;
  } else {
    raise(Errc::invalid_argument, "unknown channel kind");
  }
  return spec;
}

}  // namespace

extern "C" {

const char* minent_status_name(minent_status status) {
  switch (status) {
    case MINENT_OK: return "ok";
    case MINENT_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case MINENT_ERROR_DIMENSION: return "dimension";
    case MINENT_ERROR_TAIL_MASS: return "tail_mass";
    case MINENT_ERROR_CONVERGENCE: return "convergence";
    case MINENT_ERROR_DOMAIN: return "domain";
    case MINENT_ERROR_IDENTITY_CHECK: return "identity_check";
    case MINENT_ERROR_BOUND_ORDER: return "bound_order";
    case MINENT_ERROR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* minent_last_error(void) { return g_last_error.c_str(); }

const char* minent_version(void) { return "0.1.0"; }

/* ------------------------------------------------------------------ */
/* states                                                               */

minent_status minent_state_vacuum(int dim, minent_state** out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] {
    const int d = dim > 0 ? dim : 1;
    *out = new minent_state{density_from_pure(fock_state(0, d))};
  });
}

minent_status minent_state_coherent(double re, double im, int dim, minent_state** out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] {
    const Complex alpha(re, im);
    const int d = dim > 0 ? dim : coherent_dim_for(alpha);
    *out = new minent_state{density_from_pure(coherent_state(alpha, d))};
  });
}

minent_status minent_state_fock(int level, int dim, minent_state** out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] {
    const int d = dim > 0 ? dim : level + 1;
    *out = new minent_state{density_from_pure(fock_state(level, d))};
  });
}

minent_status minent_state_thermal(double nbar, int dim, minent_state** out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] {
    const int d = dim > 0 ? dim : thermal_dim_for(nbar);
    *out = new minent_state{thermal_state(nbar, d)};
  });
}

minent_status minent_state_from_amplitudes(const double* re, const double* im, int len, int dim,
                                           minent_state** out) {
  if (auto s = require(out && re && im, "null pointer argument")) return s;
  if (auto s = require(len >= 1, "need at least one amplitude")) return s;
  return guarded([&] {
    const int d = dim > 0 ? dim : len;
    if (d < len) raise(Errc::dimension, "dim smaller than amplitude count");
    Vector amps = Vector::Zero(d);
    for (int i = 0; i < len; ++i) amps[i] = Complex(re[i], im[i]);
    const double norm = amps.norm();
    if (norm < 1e-12) raise(Errc::invalid_argument, "amplitude vector has zero norm");
    amps /= norm;
    *out = new minent_state{density_from_pure(PureState{d, std::move(amps), 0.0})};
  });
}

void minent_state_free(minent_state* state) { delete state; }

int minent_state_dim(const minent_state* state) { return state ? state->rho.dim : 0; }

double minent_state_tail_mass(const minent_state* state) {
  return state ? state->rho.tail_mass : 0.0;
}

minent_status minent_state_mean_photon(const minent_state* state, double* out) {
  if (auto s = require(state && out, "null pointer argument")) return s;
  return guarded([&] { *out = mean_photon(state->rho); });
}

/* ------------------------------------------------------------------ */
/* channels                                                             */

minent_status minent_channel_headroom(minent_channel channel, int* out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] { *out = classical_noise_headroom(to_spec(channel).effective_noise()); });
}

minent_status minent_channel_apply(const minent_state* state, minent_channel channel, int radial,
                                   int angular, int env_dim, int check, minent_state** out) {
  if (auto s = require(state && out, "null pointer argument")) return s;
  return guarded([&] {
    const ChannelSpec spec = to_spec(channel);
    const int r = radial > 0 ? radial : 40;
    const int a = angular > 0 ? angular : 64;
    if (spec.kind == ChannelSpec::Kind::classical) {
      if (spec.n == 0.0) {
        *out = new minent_state{state->rho};
        return;
      }
      const QuadratureRule rule = gaussian_kernel_rule(spec.n, r, a);
      DensityOperator result =
          check ? apply_classical_noise_checked(state->rho, {spec.n}, rule)
                : apply_classical_noise(state->rho, {spec.n}, rule);
      *out = new minent_state{std::move(result)};
      return;
    }
    const int env =
        env_dim > 0 ? env_dim : thermal_env_dim(spec.N, effective_support(state->rho));
    *out = new minent_state{apply_thermal_noise(state->rho, {spec.eta, spec.N}, env)};
  });
}

minent_status minent_composition_deviation(const minent_state* state, double eta, double N,
                                           double* out) {
  if (auto s = require(state && out, "null pointer argument")) return s;
  return guarded([&] { *out = verify_composition(state->rho, {eta, N}); });
}

/* ------------------------------------------------------------------ */
/* entropies                                                            */

minent_status minent_z_purity(const minent_state* state, double z, double* out) {
  if (auto s = require(state && out, "null pointer argument")) return s;
  return guarded([&] { *out = z_purity(state->rho, z); });
}

minent_status minent_renyi_entropy(const minent_state* state, double z, double* out) {
  if (auto s = require(state && out, "null pointer argument")) return s;
  return guarded([&] { *out = renyi_entropy(state->rho, z); });
}

minent_status minent_von_neumann(const minent_state* state, double* out) {
  if (auto s = require(state && out, "null pointer argument")) return s;
  return guarded([&] { *out = von_neumann(state->rho); });
}

minent_status minent_wehrl(const minent_state* state, int radial, int angular, int check,
                           double* out) {
  if (auto s = require(state && out, "null pointer argument")) return s;
  return guarded([&] {
    const int r = radial > 0 ? radial : 80;
    const int a = angular > 0 ? angular : 128;
    *out = check ? wehrl_checked(state->rho, r, a) : wehrl_of(state->rho, r, a);
  });
}

minent_status minent_renyi_wehrl(const minent_state* state, double z, int radial, int angular,
                                 double* out) {
  if (auto s = require(state && out, "null pointer argument")) return s;
  return guarded([&] {
    const int r = radial > 0 ? radial : 80;
    const int a = angular > 0 ? angular : 128;
    *out = renyi_wehrl_of(state->rho, z, r, a);
  });
}

/* ------------------------------------------------------------------ */
/* theta verification                                                   */

minent_status minent_theta_create(int k, double n, minent_theta** out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] { *out = new minent_theta{build_circulant_system(k, n)}; });
}

void minent_theta_free(minent_theta* theta) { delete theta; }

int minent_theta_order(const minent_theta* theta) { return theta ? theta->sys.k : 0; }

minent_status minent_theta_eigs(const minent_theta* theta, double* d_re, double* d_im,
                                double* e_re, double* e_im) {
  if (auto s = require(theta && d_re && d_im && e_re && e_im, "null pointer argument")) return s;
  return guarded([&] {
    for (int j = 0; j < theta->sys.k; ++j) {
      d_re[j] = theta->sys.c_eigs[j].real();
      d_im[j] = theta->sys.c_eigs[j].imag();
      e_re[j] = theta->sys.g_eigs[j].real();
      e_im[j] = theta->sys.g_eigs[j].imag();
    }
  });
}

minent_status minent_theta_factor(const minent_theta* theta, int j, double* pre_re,
                                  double* pre_im, double* ratio_re, double* ratio_im,
                                  int* is_identity) {
  if (auto s = require(theta && pre_re && pre_im && ratio_re && ratio_im && is_identity,
                       "null pointer argument"))
    return s;
  return guarded([&] {
    const ThetaFactor f = theta_factor(theta->sys, j);
    *pre_re = f.prefactor.real();
    *pre_im = f.prefactor.imag();
    *ratio_re = f.ratio.real();
    *ratio_im = f.ratio.imag();
    *is_identity = f.identity ? 1 : 0;
  });
}

minent_status minent_theta_det_residual(const minent_theta* theta, double* out) {
  if (auto s = require(theta && out, "null pointer argument")) return s;
  return guarded([&] { *out = determinant_identity_residual(theta->sys); });
}

minent_status minent_theta_char_deviation(const minent_theta* theta, int grid, double extent,
                                          double* out) {
  if (auto s = require(theta && out, "null pointer argument")) return s;
  if (auto s = require(grid >= 1 && extent > 0, "grid must be >= 1 and extent > 0")) return s;
  return guarded([&] {
    double worst = 0.0;
    for (int j = 0; j < theta->sys.k; ++j) {
      const ThetaFactor f = theta_factor(theta->sys, j);
      if (f.identity) continue;
      const int terms = laguerre_terms_for(f);
      for (int ix = 0; ix < grid; ++ix) {
        for (int iy = 0; iy < grid; ++iy) {
          const double x = grid == 1 ? 0.0 : -extent + 2.0 * extent * ix / (grid - 1);
          const double y = grid == 1 ? 0.0 : -extent + 2.0 * extent * iy / (grid - 1);
          const Complex nu(x, y);
          const Complex closed = theta_char_closed(theta->sys, j, nu);
          const Complex series = theta_char_laguerre(f, nu, terms);
          worst = std::max(worst, std::abs(closed - series));
        }
      }
    }
    *out = worst;
  });
}

minent_status minent_croma_bound(int k, double n, double* out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] { *out = croma_bound(k, n); });
}

/* ------------------------------------------------------------------ */
/* bounds                                                               */

minent_status minent_min_renyi_coherent(double n, double z, double* out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] { *out = min_renyi_coherent(n, z); });
}

minent_status minent_wehrl_min(double n, double* out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] { *out = wehrl_min(n); });
}

minent_status minent_renyi_wehrl_min(double n, double z, double* out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] { *out = renyi_wehrl_min(n, z); });
}

minent_status minent_renyi_wehrl_cap(double n, double z, double* out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] { *out = renyi_wehrl_purity_cap(n, z); });
}

minent_status minent_bound_curve(double n, const double* z, int count, double vn_bound,
                                 int k_max, double* upper, double* lb1, double* lb2, double* lb3,
                                 double* lb4, double* s_inf) {
  if (auto s = require(z && upper && lb1 && lb2 && lb3 && lb4, "null pointer argument")) return s;
  if (auto s = require(count >= 1, "need at least one grid point")) return s;
  return guarded([&] {
    std::optional<double> vn;
    if (!std::isnan(vn_bound)) vn = vn_bound;
    const BoundCurve curve = figure_data(n, std::vector<double>(z, z + count), vn, k_max);
    for (int i = 0; i < count; ++i) {
      upper[i] = curve.upper[i];
      lb1[i] = curve.lb1[i];
      lb2[i] = curve.lb2[i];
      lb3[i] = curve.lb3[i];
      lb4[i] = curve.lb4[i];
      if (s_inf) s_inf[i] = curve.s_infinity;
    }
  });
}

/* ------------------------------------------------------------------ */
/* searches                                                             */

minent_status minent_search_run(minent_channel channel, int objective, double z, int support_dim,
                                int starts, uint64_t seed, minent_search** out) {
  if (auto s = require(out != nullptr, "null out pointer")) return s;
  return guarded([&] {
    const ChannelSpec spec = to_spec(channel);
    SearchOptions opts;
    opts.support_dim = support_dim;
    opts.starts = starts;
    opts.seed = seed;
    SearchReport report;
    if (objective == MINENT_OBJECTIVE_RENYI)
      report = minimize_output_renyi(spec, z, opts);
    else if (objective == MINENT_OBJECTIVE_WEHRL)
      report = minimize_output_wehrl(spec, opts);
    else
      raise(Errc::invalid_argument, "unknown objective");
    *out = new minent_search{std::move(report)};
  });
}

void minent_search_free(minent_search* search) { delete search; }

double minent_search_best_value(const minent_search* s) { return s ? s->report.best_value : 0; }
double minent_search_coherent_value(const minent_search* s) {
  return s ? s->report.coherent_value : 0;
}
double minent_search_gap(const minent_search* s) { return s ? s->report.gap : 0; }
double minent_search_refine_drift(const minent_search* s) {
  return s ? s->report.refine_drift : 0;
}
int minent_search_converged(const minent_search* s) {
  return s && s->report.converged ? 1 : 0;
}
int minent_search_violation(const minent_search* s) {
  return s && s->report.violation ? 1 : 0;
}
int minent_search_state_len(const minent_search* s) {
  return s ? static_cast<int>(s->report.best_state.size()) : 0;
}

minent_status minent_search_best_state(const minent_search* search, double* re, double* im,
                                       int len) {
  if (auto s = require(search && re && im, "null pointer argument")) return s;
  if (auto s = require(len >= static_cast<int>(search->report.best_state.size()),
                       "output buffer too short"))
    return s;
  return guarded([&] {
    for (int i = 0; i < search->report.best_state.size(); ++i) {
      re[i] = search->report.best_state[i].real();
      im[i] = search->report.best_state[i].imag();
    }
  });
}

minent_status minent_gaussian_minimum(minent_channel channel, double z, double* value,
                                      double* argmin_s) {
  if (auto s = require(value != nullptr, "null out pointer")) return s;
  return guarded([&] {
    const auto [v, g] = minimize_gaussian(to_spec(channel), z);
    *value = v;
    if (argmin_s) *argmin_s = 1.0;
    (void)g;
  });
}

} /* extern "C" */
