#include "minent/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "minent/entropies.hpp"

namespace minent {

namespace {

// Channel application abstracted over the two channel kinds, at fixed
// quadrature/truncation settings.
class OutputMap {
 public:
  OutputMap(const ChannelSpec& spec, int support_dim, int radial, int angular,
            int extra_dim = 0) {
    const double n_eff = spec.effective_noise();
    if (spec.kind == ChannelSpec::Kind::classical) {
      if (spec.n < 0) raise(Errc::invalid_argument, "classical noise n must be >= 0");
      dim_ = support_dim + classical_noise_headroom(spec.n) + extra_dim;
      if (spec.n > 0.0)
        classical_ = std::make_unique<ClassicalChannelOperator>(
            spec.n, dim_, gaussian_kernel_rule(spec.n, radial, angular));
    } else {
      dim_ = support_dim + classical_noise_headroom(n_eff) + extra_dim;
      if (spec.eta < 1.0)
        thermal_ = std::make_unique<ThermalChannelOperator>(
            spec.eta, spec.N, dim_, thermal_env_dim(spec.N, support_dim) + extra_dim);
    }
  }

  DensityOperator apply_pure(const Vector& amplitudes) const {
    if (classical_) return classical_->apply_pure(amplitudes);
    if (thermal_) return thermal_->apply_pure(amplitudes);
    Vector full = Vector::Zero(dim_);
    full.head(amplitudes.size()) = amplitudes;
    return DensityOperator{dim_, full * full.adjoint(), 0.0};  // identity channel
  }

  int dim() const { return dim_; }

 private:
  int dim_ = 0;
  std::unique_ptr<ClassicalChannelOperator> classical_;
  std::unique_ptr<ThermalChannelOperator> thermal_;
};

Vector params_to_state(const RealVector& p) {
  const int s = static_cast<int>(p.size() / 2);
  Vector amps(s);
  for (int m = 0; m < s; ++m) amps[m] = Complex(p[2 * m], p[2 * m + 1]);
  const double norm = amps.norm();
  if (norm < 1e-12) {
    amps.setZero();
    amps[0] = 1.0;
    return amps;
  }
  return amps / norm;
}

double objective_value(const OutputMap& map, Objective obj, double z, const Vector& amps,
                       int husimi_radial, int husimi_angular) {
  const DensityOperator out = map.apply_pure(amps);
  if (obj == Objective::renyi) return renyi_entropy(out, z);
  return wehrl_of(out, husimi_radial, husimi_angular);
}

struct SimplexResult {
  RealVector best;
  double value = 0.0;
  bool converged = false;
};

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2) on R^dim with an iteration cap and f-spread tolerance.
SimplexResult nelder_mead(const std::function<double(const RealVector&)>& f, RealVector start,
                          int iteration_cap, double f_tol) {
  const int dim = static_cast<int>(start.size());
  const double step = 0.25;
  std::vector<RealVector> pts(dim + 1, start);
  std::vector<double> vals(dim + 1);
  for (int i = 1; i <= dim; ++i) pts[i][i - 1] += step;
  for (int i = 0; i <= dim; ++i) vals[i] = f(pts[i]);

  auto order = [&] {
    std::vector<int> idx(dim + 1);
    for (int i = 0; i <= dim; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<RealVector> p2(dim + 1);
    std::vector<double> v2(dim + 1);
    for (int i = 0; i <= dim; ++i) {
      p2[i] = pts[idx[i]];
      v2[i] = vals[idx[i]];
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  bool converged = false;
  int it = 0;
  for (; it < iteration_cap; ++it) {
    order();
    if (vals[dim] - vals[0] < f_tol) {
      converged = true;
      break;
    }
    RealVector centroid = RealVector::Zero(dim);
    for (int i = 0; i < dim; ++i) centroid += pts[i];
    centroid /= dim;

    const RealVector reflected = centroid + (centroid - pts[dim]);
    const double fr = f(reflected);
    if (fr < vals[0]) {
      const RealVector expanded = centroid + 2.0 * (centroid - pts[dim]);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[dim] = expanded;
        vals[dim] = fe;
      } else {
        pts[dim] = reflected;
        vals[dim] = fr;
      }
    } else if (fr < vals[dim - 1]) {
      pts[dim] = reflected;
      vals[dim] = fr;
    } else {
      const RealVector contracted = centroid + 0.5 * (pts[dim] - centroid);
      const double fc = f(contracted);
      if (fc < vals[dim]) {
        pts[dim] = contracted;
        vals[dim] = fc;
      } else {
        for (int i = 1; i <= dim; ++i) {
          pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  return SimplexResult{pts[0], vals[0], converged};
}

SearchReport run_search(const ChannelSpec& channel, Objective objective, double z,
                        const SearchOptions& opts) {
  if (opts.support_dim < 1 || opts.support_dim > 8)
    raise(Errc::invalid_argument, "support_dim must lie in 1..8 (desk scale)");
  if (opts.starts < 1) raise(Errc::invalid_argument, "need at least one start");
  const double n_eff = channel.effective_noise();

  // +8 levels beyond the headroom floor keeps the truncation bias on the
  // objective well under the 1e-6 reporting scale.
  const OutputMap search_map(channel, opts.support_dim, opts.search_radial, opts.search_angular,
                             /*extra_dim=*/8);
  auto objective_fn = [&](const RealVector& p) {
    return objective_value(search_map, objective, z, params_to_state(p), opts.husimi_radial,
                           opts.husimi_angular);
  };

  // Seeded start list, plus the coherent (vacuum) start when requested.
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<RealVector> starts;
  if (opts.include_coherent_start) {
    RealVector p = RealVector::Zero(2 * opts.support_dim);
    p[0] = 1.0;
    starts.push_back(std::move(p));
  }
  while (static_cast<int>(starts.size()) < opts.starts) {
    RealVector p(2 * opts.support_dim);
    for (int i = 0; i < p.size(); ++i) p[i] = gauss(rng);
    p /= p.norm();
    starts.push_back(std::move(p));
  }

  std::vector<SimplexResult> results(starts.size());
  parallel_for(static_cast<int>(starts.size()), [&](int i) {
    results[i] = nelder_mead(objective_fn, starts[i], opts.iteration_cap, opts.f_tol);
  });
  // Deterministic winner: lowest value, then lowest start index.
  int best = 0;
  for (int i = 1; i < static_cast<int>(results.size()); ++i)
    if (results[i].value < results[best].value) best = i;

  SearchReport report;
  report.channel = channel;
  report.objective = objective;
  report.z = z;
  report.support_dim = opts.support_dim;
  report.starts = static_cast<int>(starts.size());
  report.seed = opts.seed;
  report.best_state = params_to_state(results[best].best);
  report.best_value = results[best].value;
  report.converged = results[best].converged;
  report.coherent_value = objective == Objective::renyi ? min_renyi_coherent(n_eff, z)
                                                        : wehrl_min(n_eff);
  report.gap = report.best_value - report.coherent_value;

  // Re-score the winner at doubled quadrature/truncation settings; the drift
  // estimates how much of the gap could be a cutoff artifact.
  const OutputMap refine_map(channel, opts.support_dim, 2 * opts.search_radial,
                             2 * opts.search_angular, /*extra_dim=*/16);
  const double refined = objective_value(refine_map, objective, z, report.best_state,
                                         2 * opts.husimi_radial, 2 * opts.husimi_angular);
  report.refine_drift = std::abs(refined - report.best_value);
  report.violation =
      report.gap < -1e-5 && report.gap < -10.0 * std::max(report.refine_drift, 1e-9);
  return report;
}

}  // namespace

SearchReport minimize_output_renyi(const ChannelSpec& channel, double z,
                                   const SearchOptions& opts) {
  if (z <= 0.0) raise(Errc::invalid_argument, "Renyi order must be > 0");
  return run_search(channel, Objective::renyi, z, opts);
}

SearchReport minimize_output_wehrl(const ChannelSpec& channel, const SearchOptions& opts) {
  return run_search(channel, Objective::wehrl, 1.0, opts);
}

double gaussian_output_renyi(const ChannelSpec& channel, double z, double s) {
  if (s <= 0.0) raise(Errc::invalid_argument, "squeeze parameter must be > 0");
  GaussianState in;
  in.cov << 0.5 * s, 0.0, 0.0, 0.5 / s;
  const GaussianState out = channel.kind == ChannelSpec::Kind::classical
                                ? propagate_gaussian(in, ClassicalNoiseSpec{channel.n})
                                : propagate_gaussian(in, ThermalNoiseSpec{channel.eta, channel.N});
  return min_renyi_coherent(effective_thermal_photon(out), z);
}

std::pair<double, GaussianState> minimize_gaussian(const ChannelSpec& channel, double z) {
  // det Gamma' is (c + eta s/2)(c + eta/(2s)) with c = (1-eta)(N+1/2) for the
  // thermal channel and (n + s/2)(n + 1/(2s)) for the classical one; the s
  // derivative vanishes only at s = 1, which is the minimum. The coherent
  // input is therefore the exact argmin and the value is the closed form.
  const double value = min_renyi_coherent(channel.effective_noise(), z);
  return {value, GaussianState{}};
}

}  // namespace minent
