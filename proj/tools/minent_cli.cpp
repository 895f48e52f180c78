// Command-line surface over the minent shared library. Talks to the library
// exclusively through the C API in minent.h.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "minent.h"

using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitViolation = 4;

int exit_code_for(minent_status status) {
  switch (status) {
    case MINENT_OK:
      return 0;
    case MINENT_ERROR_CONVERGENCE:
    case MINENT_ERROR_IDENTITY_CHECK:
    case MINENT_ERROR_BOUND_ORDER:
      return kExitConvergence;
    case MINENT_ERROR_INTERNAL:
      return 1;
    default:
      return kExitValidation;
  }
}

[[noreturn]] void fail(minent_status status, const std::string& context) {
  std::cerr << "error: " << context << ": " << minent_status_name(status) << " ("
            << minent_last_error() << ")\n";
  std::exit(exit_code_for(status));
}

void check(minent_status status, const std::string& context) {
  if (status != MINENT_OK) fail(status, context);
}

std::string fmt(double v, int sig = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return buf;
}

struct StateOwner {
  minent_state* handle = nullptr;
  ~StateOwner() { minent_state_free(handle); }
};

struct ChannelFlags {
  std::string channel = "none";
  double n = 0.0;
  double eta = 1.0;
  double N = 0.0;

  void attach(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--channel", channel, "Channel kind: classical | thermal | none")
                    ->check(CLI::IsMember({"classical", "thermal", "none"}));
    if (required) opt->required();
    cmd->add_option("--n", n, "Classical-noise mean photon number n >= 0");
    cmd->add_option("--eta", eta, "Thermal-channel transmissivity in [0, 1]");
    cmd->add_option("--N", N, "Thermal environment mean photon number >= 0");
  }

  bool has_channel() const { return channel != "none"; }

  minent_channel to_channel() const {
    minent_channel c{};
    if (channel == "thermal") {
      c.kind = MINENT_CHANNEL_THERMAL;
      c.eta = eta;
      c.N = N;
    } else {
      c.kind = MINENT_CHANNEL_CLASSICAL;
      c.n = channel == "none" ? 0.0 : n;
    }
    return c;
  }

  json to_json() const {
    json j;
    j["channel"] = channel;
    if (channel == "classical") j["n"] = n;
    if (channel == "thermal") {
      j["eta"] = eta;
      j["N"] = N;
    }
    return j;
  }
};

struct StateFlags {
  std::string input = "vacuum";
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  int fock_level = 0;
  double nbar = 0.0;
  std::string state_file;
  int dim = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input, "Input state: vacuum | coherent | fock | thermal | file")
        ->check(CLI::IsMember({"vacuum", "coherent", "fock", "thermal", "file"}));
    cmd->add_option("--alpha", alpha_re, "Coherent amplitude, real part");
    cmd->add_option("--alpha-im", alpha_im, "Coherent amplitude, imaginary part");
    cmd->add_option("--m", fock_level, "Fock level for --input fock");
    cmd->add_option("--nbar", nbar, "Mean photon number for --input thermal");
    cmd->add_option("--state-file", state_file,
                    "Amplitude file for --input file (one 're im' pair per line)");
    cmd->add_option("--dim", dim, "Fock cutoff (0 = automatic tail policy + channel headroom)");
  }

  minent_state* build(int at_dim) const {
    minent_state* state = nullptr;
    if (input == "vacuum") {
      check(minent_state_vacuum(at_dim, &state), "building vacuum state");
    } else if (input == "coherent") {
      check(minent_state_coherent(alpha_re, alpha_im, at_dim, &state), "building coherent state");
    } else if (input == "fock") {
      check(minent_state_fock(fock_level, at_dim, &state), "building fock state");
    } else if (input == "thermal") {
      check(minent_state_thermal(nbar, at_dim, &state), "building thermal state");
    } else {
      std::ifstream in(state_file);
      if (!in) {
        std::cerr << "error: cannot open state file '" << state_file << "'\n";
        std::exit(kExitValidation);
      }
      std::vector<double> re, im;
      double a, b;
      while (in >> a >> b) {
        re.push_back(a);
        im.push_back(b);
      }
      if (re.empty()) {
        std::cerr << "error: state file '" << state_file << "' holds no amplitudes\n";
        std::exit(kExitValidation);
      }
      check(minent_state_from_amplitudes(re.data(), im.data(), static_cast<int>(re.size()),
                                         at_dim, &state),
            "building state from file");
    }
    return state;
  }

  json to_json() const {
    json j;
    j["input"] = input;
    if (input == "coherent") j["alpha"] = {alpha_re, alpha_im};
    if (input == "fock") j["m"] = fock_level;
    if (input == "thermal") j["nbar"] = nbar;
    if (input == "file") j["state_file"] = state_file;
    return j;
  }
};

// ---------------------------------------------------------------------------
// entropy

int cmd_entropy(const StateFlags& state_flags, const ChannelFlags& channel_flags,
                std::vector<double> z_list, int radial, int angular, int env_dim, bool no_check,
                bool as_json, bool quiet) {
  if (z_list.empty()) z_list = {2.0};

  // Natural dim of the input, then headroom for the channel spread.
  StateOwner probe;
  probe.handle = state_flags.build(state_flags.dim);
  int work_dim = minent_state_dim(probe.handle);
  if (state_flags.dim <= 0 && channel_flags.has_channel()) {
    int headroom = 0;
    check(minent_channel_headroom(channel_flags.to_channel(), &headroom), "sizing working dim");
    work_dim += headroom + 16;  // headroom floor plus margin for 1e-6 display accuracy
  }

  StateOwner input;
  input.handle = work_dim == minent_state_dim(probe.handle) ? probe.handle
                                                            : state_flags.build(work_dim);
  if (input.handle != probe.handle) {
    minent_state_free(probe.handle);
  }
  probe.handle = nullptr;

  StateOwner output;
  if (channel_flags.has_channel()) {
    check(minent_channel_apply(input.handle, channel_flags.to_channel(), radial, angular, env_dim,
                               no_check ? 0 : 1, &output.handle),
          "applying channel");
  } else {
    output.handle = input.handle;
    input.handle = nullptr;
  }

  double vn = 0.0;
  check(minent_von_neumann(output.handle, &vn), "von Neumann entropy");
  double w = 0.0;
  check(minent_wehrl(output.handle, 0, 0, no_check ? 0 : 1, &w), "Wehrl entropy");

  std::vector<double> renyi(z_list.size()), rwehrl(z_list.size());
  std::vector<bool> has_rw(z_list.size(), false);
  for (size_t i = 0; i < z_list.size(); ++i) {
    check(minent_renyi_entropy(output.handle, z_list[i], &renyi[i]), "Renyi entropy");
    if (z_list[i] >= 1.0) {
      check(minent_renyi_wehrl(output.handle, z_list[i], 0, 0, &rwehrl[i]), "Renyi-Wehrl entropy");
      has_rw[i] = true;
    }
  }

  if (as_json) {
    json j;
    j["config"] = {{"state", state_flags.to_json()},
                   {"channel", channel_flags.to_json()},
                   {"z", z_list},
                   {"dim", minent_state_dim(output.handle)},
                   {"radial", radial > 0 ? radial : 40},
                   {"angular", angular > 0 ? angular : 64}};
    j["von_neumann"] = vn;
    j["wehrl"] = w;
    j["tail_mass"] = minent_state_tail_mass(output.handle);
    json rows = json::array();
    for (size_t i = 0; i < z_list.size(); ++i) {
      json row;
      row["z"] = z_list[i];
      row["renyi"] = renyi[i];
      if (has_rw[i])
        row["renyi_wehrl"] = rwehrl[i];
      else
        row["renyi_wehrl"] = nullptr;
      rows.push_back(row);
    }
    j["entropies"] = rows;
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (!quiet) {
    std::cout << "dim " << minent_state_dim(output.handle) << ", tail mass "
              << fmt(minent_state_tail_mass(output.handle), 3) << "\n";
    std::cout << "von Neumann  " << fmt(vn, 7) << "\n";
    std::cout << "Wehrl        " << fmt(w, 7) << "\n";
    for (size_t i = 0; i < z_list.size(); ++i) {
      std::cout << "S_" << fmt(z_list[i], 6) << "      " << fmt(renyi[i], 7);
      if (has_rw[i]) std::cout << "   (Renyi-Wehrl " << fmt(rwehrl[i], 7) << ")";
      std::cout << "\n";
    }
  } else {
    for (size_t i = 0; i < z_list.size(); ++i) std::cout << fmt(renyi[i], 7) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bounds

int cmd_bounds(double n, double z_min, double z_max, int z_count, double vn_bound, int k_max,
               const std::string& out_path, bool as_json, bool quiet) {
  std::vector<double> z(z_count);
  for (int i = 0; i < z_count; ++i)
    z[i] = z_count == 1 ? z_min : z_min + (z_max - z_min) * i / (z_count - 1);
  std::vector<double> upper(z_count), lb1(z_count), lb2(z_count), lb3(z_count), lb4(z_count),
      s_inf(z_count);
  check(minent_bound_curve(n, z.data(), z_count, vn_bound, k_max, upper.data(), lb1.data(),
                           lb2.data(), lb3.data(), lb4.data(), s_inf.data()),
        "tabulating bound curve");

  std::ostringstream body;
  if (as_json) {
    json j;
    j["config"] = {{"n", n},    {"z_min", z_min},        {"z_max", z_max}, {"z_count", z_count},
                   {"k_max", k_max}};
    if (!std::isnan(vn_bound)) j["config"]["vn_bound"] = vn_bound;
    j["z"] = z;
    j["upper"] = upper;
    j["lb1"] = lb1;
    j["lb2"] = lb2;
    j["lb3"] = lb3;
    j["lb4"] = lb4;
    j["s_inf"] = s_inf;
    body << j.dump(2) << "\n";
  } else {
    body << "z,upper,lb1,lb2,lb3,lb4,lb_max,s_inf\n";
    for (int i = 0; i < z_count; ++i) {
      const double lb_max = std::max({lb1[i], lb2[i], lb3[i], lb4[i]});
      body << fmt(z[i]) << ',' << fmt(upper[i]) << ',' << fmt(lb1[i]) << ',' << fmt(lb2[i]) << ','
           << fmt(lb3[i]) << ',' << fmt(lb4[i]) << ',' << fmt(lb_max) << ',' << fmt(s_inf[i])
           << '\n';
    }
  }

  if (out_path.empty() || out_path == "-") {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output file '" << out_path << "'\n";
      return kExitValidation;
    }
    out << body.str();
    if (!quiet) std::cerr << "wrote " << z_count << " rows to " << out_path << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// theta-verify

int cmd_theta_verify(int k, double n, int grid, double extent, bool as_json, bool quiet) {
  minent_theta* theta = nullptr;
  check(minent_theta_create(k, n, &theta), "building circulant system");

  std::vector<double> d_re(k), d_im(k), e_re(k), e_im(k);
  check(minent_theta_eigs(theta, d_re.data(), d_im.data(), e_re.data(), e_im.data()),
        "reading eigen-data");
  double residual = 0.0;
  check(minent_theta_det_residual(theta, &residual), "determinant identity");
  double char_dev = 0.0;
  check(minent_theta_char_deviation(theta, grid, extent, &char_dev),
        "characteristic-function comparison");
  double bound = 0.0;
  check(minent_croma_bound(k, n, &bound), "k-purity bound");

  const bool ok = residual <= 1e-10 && char_dev <= 1e-8;

  if (as_json) {
    json j;
    j["config"] = {{"k", k}, {"n", n}, {"grid", grid}, {"extent", extent}};
    json factors = json::array();
    for (int jdx = 0; jdx < k; ++jdx) {
      double pre_re, pre_im, ratio_re, ratio_im;
      int is_id;
      check(minent_theta_factor(theta, jdx, &pre_re, &pre_im, &ratio_re, &ratio_im, &is_id),
            "reading factor");
      factors.push_back({{"j", jdx},
                         {"d", {d_re[jdx], d_im[jdx]}},
                         {"e", {e_re[jdx], e_im[jdx]}},
                         {"prefactor", {pre_re, pre_im}},
                         {"ratio", {ratio_re, ratio_im}},
                         {"identity", is_id != 0}});
    }
    j["factors"] = factors;
    j["det_residual"] = residual;
    j["char_max_deviation"] = char_dev;
    j["k_purity_bound"] = bound;
    j["pass"] = ok;
    std::cout << j.dump(2) << "\n";
  } else if (!quiet) {
    std::cout << "circulant system k=" << k << " n=" << fmt(n, 6) << "\n";
    for (int jdx = 0; jdx < k; ++jdx) {
      double pre_re, pre_im, ratio_re, ratio_im;
      int is_id;
      check(minent_theta_factor(theta, jdx, &pre_re, &pre_im, &ratio_re, &ratio_im, &is_id),
            "reading factor");
      std::cout << "  j=" << jdx << "  d=(" << fmt(d_re[jdx], 6) << "," << fmt(d_im[jdx], 6)
                << ")  e=(" << fmt(e_re[jdx], 6) << "," << fmt(e_im[jdx], 6) << ")";
      if (is_id)
        std::cout << "  Theta_j = identity\n";
      else
        std::cout << "  prefactor=(" << fmt(pre_re, 6) << "," << fmt(pre_im, 6) << ") ratio=("
                  << fmt(ratio_re, 6) << "," << fmt(ratio_im, 6) << ")\n";
    }
    std::cout << "determinant identity residual  " << fmt(residual, 3) << "\n";
    std::cout << "char-function max deviation    " << fmt(char_dev, 3) << "\n";
    std::cout << "k-purity bound 1/((n+1)^k-n^k) " << fmt(bound, 12) << "\n";
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
  }
  minent_theta_free(theta);
  return ok ? 0 : kExitConvergence;
}

// ---------------------------------------------------------------------------
// conjecture

int cmd_conjecture(const ChannelFlags& channel_flags, double z, const std::string& objective,
                   int support_dim, int starts, uint64_t seed, const std::string& out_path,
                   bool quiet) {
  minent_search* search = nullptr;
  const int obj = objective == "wehrl" ? MINENT_OBJECTIVE_WEHRL : MINENT_OBJECTIVE_RENYI;
  check(minent_search_run(channel_flags.to_channel(), obj, z, support_dim, starts, seed, &search),
        "running search");

  const int len = minent_search_state_len(search);
  std::vector<double> re(len), im(len);
  check(minent_search_best_state(search, re.data(), im.data(), len), "reading best state");

  json j;
  j["config"] = {{"channel", channel_flags.to_json()}, {"objective", objective},
                 {"z", z},                             {"support_dim", support_dim},
                 {"starts", starts},                   {"seed", seed}};
  j["best_value"] = minent_search_best_value(search);
  j["coherent_value"] = minent_search_coherent_value(search);
  j["gap"] = minent_search_gap(search);
  j["refine_drift"] = minent_search_refine_drift(search);
  j["converged"] = minent_search_converged(search) != 0;
  j["violation"] = minent_search_violation(search) != 0;
  j["best_state"] = {{"re", re}, {"im", im}};
  const bool violation = minent_search_violation(search) != 0;
  minent_search_free(search);

  const std::string text = j.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output file '" << out_path << "'\n";
      return kExitValidation;
    }
    out << text;
  }
  if (!quiet)
    std::cerr << (violation ? "VIOLATION candidate: gap " : "no violation: gap ")
              << fmt(j["gap"].get<double>(), 6) << "\n";
  return violation ? kExitViolation : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum Renyi/Wehrl output entropies of bosonic Gaussian noise channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(minent_version()));

  bool as_json = false, quiet = false;

  // entropy
  auto* entropy = app.add_subcommand("entropy", "Output entropies of a state through a channel");
  StateFlags state_flags;
  ChannelFlags entropy_channel;
  std::vector<double> z_list;
  int radial = 0, angular = 0, env_dim = 0;
  bool no_check = false;
  state_flags.attach(entropy);
  entropy_channel.attach(entropy, false);
  entropy->add_option("--z", z_list, "Renyi orders (repeat or comma-separate)")
      ->delimiter(',');
  entropy->add_option("--radial", radial, "Radial quadrature order (default 40)");
  entropy->add_option("--angular", angular, "Angular quadrature count (default 64)");
  entropy->add_option("--env-dim", env_dim, "Thermal environment cutoff (0 = automatic)");
  entropy->add_flag("--no-check", no_check, "Skip the grid-doubling convergence checks");
  entropy->add_flag("--json", as_json, "Machine-readable JSON output");
  entropy->add_flag("--quiet", quiet, "Values only");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "CSV of the minimum-entropy bound curves");
  double b_n = 1.0, z_min = 0.2, z_max = 12.0;
  int z_count = 200, k_max = 12;
  double vn_bound = std::nan("");
  std::string out_path;
  bounds->add_option("--n", b_n, "Classical noise parameter n > 0")->required();
  bounds->add_option("--z-min", z_min, "Grid start (default 0.2)");
  bounds->add_option("--z-max", z_max, "Grid end (default 12)");
  bounds->add_option("--z-count", z_count, "Grid points (default 200)");
  bounds->add_option("--vn-bound", vn_bound, "Imported von Neumann lower bound for z <= 1");
  bounds->add_option("--k-max", k_max, "Largest integer order used by the bounds (default 12)");
  bounds->add_option("--out", out_path, "Output path (default stdout)");
  bounds->add_flag("--json", as_json, "JSON instead of CSV");
  bounds->add_flag("--quiet", quiet, "No progress chatter");

  // theta-verify
  auto* theta = app.add_subcommand("theta-verify",
                                   "Circulant eigen-data, Theta factors and identity checks");
  int t_k = 2, t_grid = 5;
  double t_n = 1.0, t_extent = 1.0;
  theta->add_option("--k", t_k, "Renyi order k >= 2")->required();
  theta->add_option("--n", t_n, "Classical noise parameter n > 0")->required();
  theta->add_option("--grid", t_grid, "Characteristic-function grid per axis (default 5)");
  theta->add_option("--extent", t_extent, "Grid extent in nu (default 1)");
  theta->add_flag("--json", as_json, "Machine-readable JSON output");
  theta->add_flag("--quiet", quiet, "Suppress the report");

  // conjecture
  auto* conjecture = app.add_subcommand("conjecture",
                                        "Multi-start search for conjecture counterexamples");
  ChannelFlags conj_channel;
  double c_z = 2.0;
  int support_dim = 4, starts = 20;
  uint64_t seed = 1;
  std::string objective = "renyi", c_out;
  conj_channel.attach(conjecture, true);
  conjecture->add_option("--z", c_z, "Renyi order (ignored for --objective wehrl)");
  conjecture->add_option("--objective", objective, "renyi | wehrl")
      ->check(CLI::IsMember({"renyi", "wehrl"}));
  conjecture->add_option("--support-dim", support_dim, "Input support levels (<= 8)");
  conjecture->add_option("--starts", starts, "Random multi-starts");
  conjecture->add_option("--seed", seed, "RNG seed");
  conjecture->add_option("--out", c_out, "JSON report path (default stdout)");
  conjecture->add_flag("--json", as_json, "Reports are always JSON; accepted for symmetry");
  conjecture->add_flag("--quiet", quiet, "Suppress the stderr summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;  // flag misuse is a validation failure
  }

  if (entropy->parsed())
    return cmd_entropy(state_flags, entropy_channel, z_list, radial, angular, env_dim, no_check,
                       as_json, quiet);
  if (bounds->parsed())
    return cmd_bounds(b_n, z_min, z_max, z_count, vn_bound, k_max, out_path, as_json, quiet);
  if (theta->parsed()) return cmd_theta_verify(t_k, t_n, t_grid, t_extent, as_json, quiet);
  if (conjecture->parsed())
    return cmd_conjecture(conj_channel, c_z, objective, support_dim, starts, seed, c_out, quiet);
  return 0;
}
