/* minent: Renyi/Wehrl output-entropy toolkit for the classical-noise and
 * thermal-noise bosonic channels on a truncated Fock space.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed here; every fallible call returns a minent_status and writes
 * results through out pointers. Handles are immutable after creation and safe
 * to share across threads.
 */
#ifndef MINENT_H
#define MINENT_H

#include <stdint.h>

#if defined(_WIN32)
#  if defined(MINENT_BUILD_SHARED)
#    define MINENT_API __declspec(dllexport)
#  else
#    define MINENT_API __declspec(dllimport)
#  endif
#else
#  define MINENT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum minent_status {
  MINENT_OK = 0,
  MINENT_ERROR_INVALID_ARGUMENT = 1,
  MINENT_ERROR_DIMENSION = 2,
  MINENT_ERROR_TAIL_MASS = 3,
  MINENT_ERROR_CONVERGENCE = 4,
  MINENT_ERROR_DOMAIN = 5,
  MINENT_ERROR_IDENTITY_CHECK = 6,
  MINENT_ERROR_BOUND_ORDER = 7,
  MINENT_ERROR_INTERNAL = 8
} minent_status;

MINENT_API const char* minent_status_name(minent_status status);
/* Message of the most recent failure on this thread ("" if none). */
MINENT_API const char* minent_last_error(void);
MINENT_API const char* minent_version(void);

/* ------------------------------------------------------------------ */
/* channel description                                                  */

typedef enum minent_channel_kind {
  MINENT_CHANNEL_CLASSICAL = 0, /* random Gaussian displacement, parameter n */
  MINENT_CHANNEL_THERMAL = 1    /* beam splitter eta against thermal N */
} minent_channel_kind;

typedef struct minent_channel {
  int kind; /* minent_channel_kind */
  double n;
  double eta;
  double N;
} minent_channel;

/* ------------------------------------------------------------------ */
/* states (density operators on a truncated Fock space)                 */

typedef struct minent_state minent_state;

/* dim <= 0 selects the smallest dimension meeting the tail-mass policy.  */
MINENT_API minent_status minent_state_vacuum(int dim, minent_state** out);
MINENT_API minent_status minent_state_coherent(double re, double im, int dim,
                                               minent_state** out);
MINENT_API minent_status minent_state_fock(int level, int dim, minent_state** out);
MINENT_API minent_status minent_state_thermal(double nbar, int dim, minent_state** out);
/* amplitudes re[i] + i im[i], i < len, normalized on construction */
MINENT_API minent_status minent_state_from_amplitudes(const double* re, const double* im,
                                                      int len, int dim, minent_state** out);
MINENT_API void minent_state_free(minent_state* state);

MINENT_API int minent_state_dim(const minent_state* state);
MINENT_API double minent_state_tail_mass(const minent_state* state);
MINENT_API minent_status minent_state_mean_photon(const minent_state* state, double* out);

/* Fock headroom the channel needs above this state's support; useful for
 * sizing dim before construction. */
MINENT_API minent_status minent_channel_headroom(minent_channel channel, int* out);

/* Applies the channel. radial/angular <= 0 pick the defaults (40/64);
 * env_dim <= 0 sizes the thermal environment automatically. When check is
 * nonzero the quadrature orders are doubled and MINENT_ERROR_CONVERGENCE is
 * returned if any matrix entry drifts by more than 1e-8. */
MINENT_API minent_status minent_channel_apply(const minent_state* state, minent_channel channel,
                                              int radial, int angular, int env_dim, int check,
                                              minent_state** out);

/* max elementwise |E_eta^N(rho) - N_{(1-eta)N}(E_eta^0(rho))| */
MINENT_API minent_status minent_composition_deviation(const minent_state* state, double eta,
                                                      double N, double* out);

/* ------------------------------------------------------------------ */
/* entropies                                                            */

MINENT_API minent_status minent_z_purity(const minent_state* state, double z, double* out);
MINENT_API minent_status minent_renyi_entropy(const minent_state* state, double z, double* out);
MINENT_API minent_status minent_von_neumann(const minent_state* state, double* out);
/* radial/angular <= 0 pick the defaults (80/128). */
MINENT_API minent_status minent_wehrl(const minent_state* state, int radial, int angular,
                                      int check, double* out);
MINENT_API minent_status minent_renyi_wehrl(const minent_state* state, double z, int radial,
                                            int angular, double* out);

/* ------------------------------------------------------------------ */
/* circulant / Theta-factor verification                                */

typedef struct minent_theta minent_theta;

MINENT_API minent_status minent_theta_create(int k, double n, minent_theta** out);
MINENT_API void minent_theta_free(minent_theta* theta);
MINENT_API int minent_theta_order(const minent_theta* theta);
/* arrays of length k: eigenvalues d_j of C and e_j of G in DFT index order */
MINENT_API minent_status minent_theta_eigs(const minent_theta* theta, double* d_re, double* d_im,
                                           double* e_re, double* e_im);
MINENT_API minent_status minent_theta_factor(const minent_theta* theta, int j, double* pre_re,
                                             double* pre_im, double* ratio_re, double* ratio_im,
                                             int* is_identity);
/* relative residual of prod_j n(2 d_j + |e_j|^2)/2 = (n+1)^k - n^k */
MINENT_API minent_status minent_theta_det_residual(const minent_theta* theta, double* out);
/* max |closed form - Laguerre series| over a grid x grid square of nu values
 * with |Re nu|, |Im nu| <= extent, over all non-identity factors */
MINENT_API minent_status minent_theta_char_deviation(const minent_theta* theta, int grid,
                                                     double extent, double* out);
MINENT_API minent_status minent_croma_bound(int k, double n, double* out);

/* ------------------------------------------------------------------ */
/* closed-form minima and lower bounds                                  */

MINENT_API minent_status minent_min_renyi_coherent(double n, double z, double* out);
MINENT_API minent_status minent_wehrl_min(double n, double* out);
MINENT_API minent_status minent_renyi_wehrl_min(double n, double z, double* out);
MINENT_API minent_status minent_renyi_wehrl_cap(double n, double z, double* out);

/* Tabulates upper bound and lower bounds 1-4 plus the ln(n+1) asymptote over
 * the z grid. vn_bound may be NaN when no von Neumann bound is supplied.
 * Fails with MINENT_ERROR_BOUND_ORDER if any lower bound exceeds the upper. */
MINENT_API minent_status minent_bound_curve(double n, const double* z, int count,
                                            double vn_bound, int k_max, double* upper,
                                            double* lb1, double* lb2, double* lb3, double* lb4,
                                            double* s_inf);

/* ------------------------------------------------------------------ */
/* conjecture searches                                                  */

typedef struct minent_search minent_search;

typedef enum minent_objective {
  MINENT_OBJECTIVE_RENYI = 0,
  MINENT_OBJECTIVE_WEHRL = 1
} minent_objective;

MINENT_API minent_status minent_search_run(minent_channel channel, int objective, double z,
                                           int support_dim, int starts, uint64_t seed,
                                           minent_search** out);
MINENT_API void minent_search_free(minent_search* search);

MINENT_API double minent_search_best_value(const minent_search* search);
MINENT_API double minent_search_coherent_value(const minent_search* search);
MINENT_API double minent_search_gap(const minent_search* search);
MINENT_API double minent_search_refine_drift(const minent_search* search);
MINENT_API int minent_search_converged(const minent_search* search);
MINENT_API int minent_search_violation(const minent_search* search);
MINENT_API int minent_search_state_len(const minent_search* search);
MINENT_API minent_status minent_search_best_state(const minent_search* search, double* re,
                                                  double* im, int len);

/* Gaussian-restricted minimum (analytic): value and the argmin squeeze s. */
MINENT_API minent_status minent_gaussian_minimum(minent_channel channel, double z, double* value,
                                                 double* argmin_s);

#ifdef __cplusplus
}
#endif

#endif /* MINENT_H */
