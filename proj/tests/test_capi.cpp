// Exercises the shared-library C surface end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "minent.h"

namespace {
minent_channel classical(double n) {
  minent_channel c{};
  c.kind = MINENT_CHANNEL_CLASSICAL;
  c.n = n;
  return c;
}
minent_channel thermal(double eta, double N) {
  minent_channel c{};
  c.kind = MINENT_CHANNEL_THERMAL;
  c.eta = eta;
  c.N = N;
  return c;
}
}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(minent_status_name(MINENT_OK)) == "ok");
  CHECK(std::string(minent_status_name(MINENT_ERROR_TAIL_MASS)) == "tail_mass");
  CHECK(std::string(minent_version()).size() > 0);
}

TEST_CASE("state lifecycle and validation errors") {
  minent_state* s = nullptr;
  REQUIRE(minent_state_vacuum(10, &s) == MINENT_OK);
  CHECK(minent_state_dim(s) == 10);
  CHECK(minent_state_tail_mass(s) == 0.0);
  double np = -1.0;
  CHECK(minent_state_mean_photon(s, &np) == MINENT_OK);
  CHECK(np == doctest::Approx(0.0));
  minent_state_free(s);

  // coherent state too large for its cutoff
  minent_state* bad = nullptr;
  CHECK(minent_state_coherent(1.0, 0.0, 2, &bad) == MINENT_ERROR_TAIL_MASS);
  CHECK(std::string(minent_last_error()).size() > 0);

  // automatic dim policy
  minent_state* coh = nullptr;
  REQUIRE(minent_state_coherent(1.0, 0.0, 0, &coh) == MINENT_OK);
  CHECK(minent_state_dim(coh) >= 10);
  minent_state_free(coh);

  minent_state* from_amp = nullptr;
  const double re[2] = {1.0, 1.0};
  const double im[2] = {0.0, 0.0};
  REQUIRE(minent_state_from_amplitudes(re, im, 2, 4, &from_amp) == MINENT_OK);
  CHECK(minent_state_dim(from_amp) == 4);
  minent_state_free(from_amp);
}

TEST_CASE("channel application and entropies through the C surface") {
  minent_state* vac = nullptr;
  REQUIRE(minent_state_vacuum(60, &vac) == MINENT_OK);
  minent_state* out = nullptr;
  REQUIRE(minent_channel_apply(vac, classical(1.0), 0, 0, 0, 0, &out) == MINENT_OK);

  double s2 = 0.0, purity = 0.0, vn = 0.0, w = 0.0, rw = 0.0;
  CHECK(minent_renyi_entropy(out, 2.0, &s2) == MINENT_OK);
  CHECK(s2 == doctest::Approx(std::log(3.0)).epsilon(1e-6));
  CHECK(minent_z_purity(out, 2.0, &purity) == MINENT_OK);
  CHECK(purity == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(minent_von_neumann(out, &vn) == MINENT_OK);
  CHECK(vn == doctest::Approx(2 * std::log(2.0)).epsilon(1e-6));
  CHECK(minent_wehrl(out, 0, 0, 0, &w) == MINENT_OK);
  CHECK(w == doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-4));
  CHECK(minent_renyi_wehrl(out, 2.0, 0, 0, &rw) == MINENT_OK);
  CHECK(rw == doctest::Approx(std::log(2.0) / 1.0 + std::log(2.0)).epsilon(1e-4));
  minent_state_free(out);
  minent_state_free(vac);
}

TEST_CASE("thermal channel and composition deviation") {
  minent_state* vac = nullptr;
  REQUIRE(minent_state_vacuum(40, &vac) == MINENT_OK);
  minent_state* out = nullptr;
  REQUIRE(minent_channel_apply(vac, thermal(0.5, 2.0), 0, 0, 0, 0, &out) == MINENT_OK);
  double s2 = 0.0;
  CHECK(minent_renyi_entropy(out, 2.0, &s2) == MINENT_OK);
  CHECK(s2 == doctest::Approx(std::log(3.0)).epsilon(1e-6));  // (1-eta)N = 1
  minent_state_free(out);

  double dev = -1.0;
  CHECK(minent_composition_deviation(vac, 0.5, 1.0, &dev) == MINENT_OK);
  CHECK(dev < 1e-7);
  minent_state_free(vac);
}

TEST_CASE("theta handle surface") {
  minent_theta* theta = nullptr;
  REQUIRE(minent_theta_create(3, 1.0, &theta) == MINENT_OK);
  CHECK(minent_theta_order(theta) == 3);
  std::vector<double> dre(3), dim_(3), ere(3), eim(3);
  CHECK(minent_theta_eigs(theta, dre.data(), dim_.data(), ere.data(), eim.data()) == MINENT_OK);
  CHECK(dre[0] == doctest::Approx(1.0));
  CHECK(ere[0] == doctest::Approx(0.0));
  double residual = 1.0;
  CHECK(minent_theta_det_residual(theta, &residual) == MINENT_OK);
  CHECK(residual < 1e-10);
  double dev = 1.0;
  CHECK(minent_theta_char_deviation(theta, 5, 1.0, &dev) == MINENT_OK);
  CHECK(dev < 1e-8);
  double pre_re, pre_im, ratio_re, ratio_im;
  int is_id = 0;
  CHECK(minent_theta_factor(theta, 0, &pre_re, &pre_im, &ratio_re, &ratio_im, &is_id) ==
        MINENT_OK);
  CHECK(is_id == 1);
  minent_theta_free(theta);

  double bound = 0.0;
  CHECK(minent_croma_bound(3, 1.0, &bound) == MINENT_OK);
  CHECK(bound == doctest::Approx(1.0 / 7.0));
  CHECK(minent_theta_create(1, 1.0, &theta) == MINENT_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("bound scalars and curve") {
  double v = 0.0;
  CHECK(minent_min_renyi_coherent(1.0, 2.0, &v) == MINENT_OK);
  CHECK(v == doctest::Approx(std::log(3.0)));
  CHECK(minent_wehrl_min(1.0, &v) == MINENT_OK);
  CHECK(v == doctest::Approx(1.0 + std::log(2.0)));
  CHECK(minent_renyi_wehrl_min(1.0, 2.0, &v) == MINENT_OK);
  CHECK(v == doctest::Approx(2 * std::log(2.0)));
  CHECK(minent_renyi_wehrl_cap(1.0, 2.0, &v) == MINENT_OK);
  CHECK(v == doctest::Approx(0.25));

  const int count = 40;
  std::vector<double> z(count), upper(count), lb1(count), lb2(count), lb3(count), lb4(count),
      s_inf(count);
  for (int i = 0; i < count; ++i) z[i] = 0.2 + i * (12.0 - 0.2) / (count - 1);
  REQUIRE(minent_bound_curve(1.0, z.data(), count, std::nan(""), 12, upper.data(), lb1.data(),
                             lb2.data(), lb3.data(), lb4.data(),
                             s_inf.data()) == MINENT_OK);
  for (int i = 0; i < count; ++i) {
    CHECK(std::max({lb1[i], lb2[i], lb3[i], lb4[i]}) <= upper[i] + 1e-9);
    CHECK(s_inf[i] == doctest::Approx(std::log(2.0)));
  }
}

TEST_CASE("search surface") {
  minent_search* search = nullptr;
  REQUIRE(minent_search_run(classical(1.0), MINENT_OBJECTIVE_RENYI, 2.0, 3, 4, 99, &search) ==
          MINENT_OK);
  CHECK(minent_search_best_value(search) == doctest::Approx(std::log(3.0)).epsilon(1e-3));
  CHECK(minent_search_violation(search) == 0);
  CHECK(minent_search_gap(search) >= -1e-5);
  const int len = minent_search_state_len(search);
  REQUIRE(len == 3);
  std::vector<double> re(len), im(len);
  CHECK(minent_search_best_state(search, re.data(), im.data(), len) == MINENT_OK);
  double norm = 0.0;
  for (int i = 0; i < len; ++i) norm += re[i] * re[i] + im[i] * im[i];
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  minent_search_free(search);

  double value = 0.0, argmin = 0.0;
  CHECK(minent_gaussian_minimum(classical(0.9), 2.0, &value, &argmin) == MINENT_OK);
  CHECK(argmin == 1.0);
  CHECK(value == doctest::Approx(std::log(2 * 0.9 + 1.0)));
}
