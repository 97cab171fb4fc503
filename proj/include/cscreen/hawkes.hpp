#ifndef CSCREEN_HAWKES_HPP
#define CSCREEN_HAWKES_HPP

#include "cscreen/graph.hpp"
#include "cscreen/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cscreen::hawkes {

/// g(u) = a * exp(-b u) for u >= 0.
struct ExponentialKernel {
  double a = 0.0;
  double b = 1.0;

  double operator()(double u) const { return u < 0 ? 0.0 : a * std::exp(-b * u); }
  /// Integral of g over [0, u].
  double integral(double u) const { return u <= 0 ? 0.0 : a / b * -std::expm1(-b * u); }
  /// Expected number of direct offspring per parent event.
  double branching() const { return a / b; }

  friend bool operator==(const ExponentialKernel &, const ExponentialKernel &) = default;
};

class RunawayError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NonStationaryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Linear Hawkes model with exponential kernels. kernel(beta, alpha) is the
/// effect of alpha's events on beta's intensity.
class HawkesModel {
public:
  HawkesModel(std::vector<double> mu, std::vector<std::vector<ExponentialKernel>> kernels,
              double horizon, std::vector<std::string> labels = {})
      : mu_(std::move(mu)), kernels_(std::move(kernels)), horizon_(horizon),
        labels_(std::move(labels)) {
    const std::size_t n = mu_.size();
    if (n == 0) throw InputError("Hawkes model: no processes");
    if (!(horizon_ > 0) || !std::isfinite(horizon_)) throw InputError("Hawkes model: T must be positive");
    if (kernels_.size() != n) throw InputError("Hawkes model: kernel matrix must be n x n");
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mu_[i] >= 0) || !std::isfinite(mu_[i]))
        throw InputError("Hawkes model: mu[" + std::to_string(i) + "] must be finite and >= 0");
      if (kernels_[i].size() != n) throw InputError("Hawkes model: kernel matrix must be n x n");
      for (std::size_t j = 0; j < n; ++j) {
        const auto &k = kernels_[i][j];
        if (!(k.a >= 0) || !std::isfinite(k.a) || !(k.b > 0) || !std::isfinite(k.b))
          throw InputError("Hawkes model: kernel[" + std::to_string(i) + "][" + std::to_string(j) +
                           "] needs a >= 0 and b > 0");
      }
    }
    if (labels_.empty())
      for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
    if (labels_.size() != n) throw InputError("Hawkes model: wrong number of labels");
  }

  std::size_t size() const { return mu_.size(); }
  double mu(std::size_t i) const { return mu_.at(i); }
  const std::vector<double> &mu() const { return mu_; }
  const ExponentialKernel &kernel(std::size_t beta, std::size_t alpha) const {
    return kernels_.at(beta).at(alpha);
  }
  double horizon() const { return horizon_; }
  const std::vector<std::string> &labels() const { return labels_; }
  const std::string &label(std::size_t i) const { return labels_.at(i); }
  std::size_t index_of(const std::string &label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw InputError("Hawkes model: unknown process '" + label + "'");
  }

  /// Branching matrix A[beta][alpha] = a / b.
  std::vector<std::vector<double>> branching_matrix() const {
    std::vector<std::vector<double>> m(size(), std::vector<double>(size()));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) m[i][j] = kernels_[i][j].branching();
    return m;
  }

private:
  std::vector<double> mu_;
  std::vector<std::vector<ExponentialKernel>> kernels_;
  double horizon_;
  std::vector<std::string> labels_;
};

/// Per-process event times, strictly increasing, within [0, T].
class EventHistory {
public:
  explicit EventHistory(std::size_t n = 0) : times_(n) {}
  EventHistory(std::vector<std::vector<double>> times, double horizon) : times_(std::move(times)) {
    for (std::size_t i = 0; i < times_.size(); ++i)
      for (std::size_t k = 0; k < times_[i].size(); ++k) {
        const double t = times_[i][k];
        if (!(t >= 0) || t > horizon)
          throw InputError("event history: time outside [0, T] for process " + std::to_string(i));
        if (k > 0 && !(t > times_[i][k - 1]))
          throw InputError("event history: times not strictly increasing for process " +
                           std::to_string(i));
      }
  }

  std::size_t size() const { return times_.size(); }
  const std::vector<double> &times(std::size_t i) const { return times_.at(i); }
  std::size_t count(std::size_t i) const { return times_.at(i).size(); }
  std::size_t total() const {
    std::size_t s = 0;
    for (const auto &v : times_) s += v.size();
    return s;
  }
  void append(std::size_t i, double t) { times_.at(i).push_back(t); }

  /// All events as (time, process), ordered by time then process index.
  std::vector<std::pair<double, std::size_t>> merged() const {
    std::vector<std::pair<double, std::size_t>> out;
    out.reserve(total());
    for (std::size_t i = 0; i < times_.size(); ++i)
      for (double t : times_[i]) out.emplace_back(t, i);
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const EventHistory &, const EventHistory &) = default;

private:
  std::vector<std::vector<double>> times_;
};

/// Hard intervention: process `target` fires exactly at `times`.
struct Intervention {
  std::size_t target = 0;
  std::vector<double> times;

  void validate(const HawkesModel &m) const {
    if (target >= m.size()) throw InputError("intervention: unknown target process");
    for (std::size_t k = 0; k < times.size(); ++k) {
      if (!(times[k] >= 0) || times[k] > m.horizon())
        throw InputError("intervention: time outside [0, T]");
      if (k > 0 && !(times[k] > times[k - 1]))
        throw InputError("intervention: times must be strictly increasing");
    }
  }
};

/// Edge alpha -> beta iff kernel(beta, alpha) is not identically zero. Loops
/// are always present; a warning is recorded for each process without
/// self-excitation.
inline DirectedMixedGraph causal_graph(const HawkesModel &m,
                                       std::vector<std::string> *warnings = nullptr) {
  GraphBuilder b;
  for (const auto &l : m.labels()) b.add_node(l);
  for (std::size_t beta = 0; beta < m.size(); ++beta)
    for (std::size_t alpha = 0; alpha < m.size(); ++alpha) {
      if (alpha == beta) {
        if (m.kernel(beta, beta).a == 0 && warnings)
          warnings->push_back("process '" + m.label(beta) +
                              "' has no self-excitation; loop kept by convention");
        continue;
      }
      if (m.kernel(beta, alpha).a > 0) b.add_directed(NodeId(alpha), NodeId(beta));
    }
  return b.build();
}

/// Left-limit intensities at t: events at exactly t do not contribute.
inline std::vector<double> intensity(const HawkesModel &m, const EventHistory &h, double t) {
  if (!(t >= 0) || t > m.horizon()) throw InputError("intensity: t outside [0, T]");
  if (h.size() != m.size()) throw InputError("intensity: history does not match model");
  std::vector<double> lambda(m.mu());
  for (std::size_t alpha = 0; alpha < m.size(); ++alpha)
    for (double s : h.times(alpha)) {
      if (!(s < t)) break;
      for (std::size_t beta = 0; beta < m.size(); ++beta) lambda[beta] += m.kernel(beta, alpha)(t - s);
    }
  return lambda;
}

/// Compensators Lambda_beta(t) = integral of lambda_beta over [0, t].
inline std::vector<double> compensator(const HawkesModel &m, const EventHistory &h, double t) {
  if (!(t >= 0) || t > m.horizon()) throw InputError("compensator: t outside [0, T]");
  std::vector<double> out(m.size());
  for (std::size_t beta = 0; beta < m.size(); ++beta) out[beta] = m.mu(beta) * t;
  for (std::size_t alpha = 0; alpha < m.size(); ++alpha)
    for (double s : h.times(alpha)) {
      if (!(s < t)) break;
      for (std::size_t beta = 0; beta < m.size(); ++beta)
        out[beta] += m.kernel(beta, alpha).integral(t - s);
    }
  return out;
}

struct StationarityReport {
  bool stationary = false;
  double spectral_radius = 0.0;
  std::size_t iterations = 0;
};

/// Spectral radius of the branching matrix by power iteration on A + I (the
/// shift keeps iterates positive). Stops when the Collatz-Wielandt bounds
/// agree to `tolerance`.
inline StationarityReport stationarity_check(const HawkesModel &m, double tolerance = 1e-10,
                                             std::size_t max_iterations = 100000) {
  const auto a = m.branching_matrix();
  const std::size_t n = m.size();
  std::vector<double> x(n, 1.0), y(n);
  double lo = 0, hi = 0;
  std::size_t it = 0;
  for (; it < max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = x[i];
      for (std::size_t j = 0; j < n; ++j) y[i] += a[i][j] * x[j];
    }
    lo = INFINITY;
    hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    const double norm = *std::max_element(y.begin(), y.end());
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    if (hi - lo <= tolerance * hi) break;
  }
  const double rho = std::max(0.0, 0.5 * (lo + hi) - 1.0);
  return {rho < 1.0, rho, it + 1};
}

struct SimulationOptions {
  /// Simulate even if the stationarity check fails.
  bool force = false;
  /// Abort once this many stochastic events have been generated.
  std::size_t event_cap = 10'000'000;
};

namespace detail {

/// Exact thinning on [0, T]. `forced` (if any) pins one process to fixed
/// event times and removes its stochastic intensity.
inline EventHistory thin(const HawkesModel &m, std::uint64_t seed, const SimulationOptions &opt,
                         const Intervention *forced) {
  if (!opt.force) {
    const auto report = stationarity_check(m);
    if (!report.stationary)
      throw NonStationaryError("model is not stationary (spectral radius " +
                               std::to_string(report.spectral_radius) + "); use force to override");
  }
  const std::size_t n = m.size();
  const double horizon = m.horizon();
  std::vector<bool> stochastic(n, true);
  if (forced) {
    forced->validate(m);
    stochastic[forced->target] = false;
  }

  // excite[beta * n + alpha]: current contribution of alpha's past to beta.
  std::vector<double> excite(n * n, 0.0);
  std::vector<double> lambda(n);
  auto advance = [&](double dt) {
    for (std::size_t beta = 0; beta < n; ++beta)
      for (std::size_t alpha = 0; alpha < n; ++alpha) {
        double &e = excite[beta * n + alpha];
        if (e != 0) e *= std::exp(-m.kernel(beta, alpha).b * dt);
      }
  };
  auto total_intensity = [&] {
    double total = 0;
    for (std::size_t beta = 0; beta < n; ++beta) {
      double l = 0;
      if (stochastic[beta]) {
        l = m.mu(beta);
        for (std::size_t alpha = 0; alpha < n; ++alpha) l += excite[beta * n + alpha];
      }
      lambda[beta] = l;
      total += l;
    }
    return total;
  };
  auto fire = [&](std::size_t alpha) {
    for (std::size_t beta = 0; beta < n; ++beta) excite[beta * n + alpha] += m.kernel(beta, alpha).a;
  };

  EventHistory h(n);
  Rng rng(seed);
  std::size_t next_forced = 0;
  std::size_t generated = 0;
  double t = 0;
  auto forced_time = [&]() -> double {
    return forced && next_forced < forced->times.size() ? forced->times[next_forced] : INFINITY;
  };

  while (true) {
    const double bound = total_intensity();
    const double candidate = bound > 0 ? t + rng.exponential(bound) : INFINITY;
    const double f = forced_time();
    if (f <= candidate && f <= horizon) {
      // The forced event comes first; memorylessness makes discarding the
      // candidate exact.
      advance(f - t);
      t = f;
      h.append(forced->target, f);
      fire(forced->target);
      ++next_forced;
      continue;
    }
    if (candidate > horizon) break;
    advance(candidate - t);
    t = candidate;
    const double actual = total_intensity();
    if (rng.uniform() * bound > actual) continue;
    double pick = rng.uniform() * actual;
    std::size_t beta = 0;
    for (; beta + 1 < n; ++beta) {
      if (pick < lambda[beta]) break;
      pick -= lambda[beta];
    }
    while (!stochastic[beta] || lambda[beta] == 0) beta = beta == 0 ? n - 1 : beta - 1;
    h.append(beta, t);
    fire(beta);
    if (++generated > opt.event_cap)
      throw RunawayError("simulation exceeded the event cap of " + std::to_string(opt.event_cap) +
                         " events");
  }
  return h;
}

} // namespace detail

/// Ogata thinning. Random draws per step: candidate time, acceptance, and
/// (if accepted) process selection.
inline EventHistory simulate(const HawkesModel &m, std::uint64_t seed,
                             const SimulationOptions &opt = {}) {
  return detail::thin(m, seed, opt, nullptr);
}

/// Simulation under a hard intervention on one process.
inline EventHistory simulate_intervened(const HawkesModel &m, const Intervention &iv,
                                        std::uint64_t seed, const SimulationOptions &opt = {}) {
  return detail::thin(m, seed, opt, &iv);
}

/// Compensator increments between consecutive events of each process, pooled
/// over processes. Exp(1) if the history follows the model.
inline std::vector<double> rescaled_intervals(const HawkesModel &m, const EventHistory &h) {
  const std::size_t n = m.size();
  if (h.size() != n) throw InputError("rescaled_intervals: history does not match model");
  const auto events = h.merged();
  // comp[beta]: Lambda_beta at the current time, updated incrementally.
  std::vector<double> comp(n, 0.0), last(n, 0.0), excite(n * n, 0.0);
  double t = 0;
  std::vector<double> out;
  out.reserve(events.size());
  for (auto [s, alpha] : events) {
    const double dt = s - t;
    for (std::size_t beta = 0; beta < n; ++beta) {
      comp[beta] += m.mu(beta) * dt;
      for (std::size_t g = 0; g < n; ++g) {
        double &e = excite[beta * n + g];
        if (e == 0) continue;
        const double b = m.kernel(beta, g).b;
        comp[beta] += e / b * -std::expm1(-b * dt);
        e *= std::exp(-b * dt);
      }
    }
    t = s;
    out.push_back(comp[alpha] - last[alpha]);
    last[alpha] = comp[alpha];
    for (std::size_t beta = 0; beta < n; ++beta) excite[beta * n + alpha] += m.kernel(beta, alpha).a;
  }
  return out;
}

/// One-sample Kolmogorov-Smirnov statistic against Exp(1).
inline double ks_statistic_exp1(std::vector<double> xs) {
  if (xs.empty()) throw InputError("ks_statistic_exp1: no samples");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = -std::expm1(-xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

/// Asymptotic KS critical value at level 0.01.
inline double ks_critical_01(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

} // namespace cscreen::hawkes

#endif
