#include "docest/scmc.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "docest/errors.hpp"
#include "docest/parallel.hpp"
#include "docest/rng.hpp"
#include "docest/stats.hpp"

namespace docest::scmc {

void ConstraintSpec::validate() const {
  for (int k = 0; k < 4; ++k) {
    if (!std::isfinite(lower[k]) || !std::isfinite(upper[k]))
      throw std::invalid_argument("bounds must be finite");
    if (!(lower[k] >= 0.0 && lower[k] < upper[k] && upper[k] <= 1.0))
      throw std::invalid_argument("bounds must satisfy 0 <= l_k < u_k <= 1");
  }
}

bool ConstraintSpec::in_box(const Eigen::Vector4d& p) const {
  for (int k = 0; k < 4; ++k)
    if (p[k] < lower[k] || p[k] > upper[k]) return false;
  return true;
}

Eigen::Matrix<double, 9, 1> deviation(const ConstraintSpec& spec,
                                      const Eigen::Vector4d& p) {
  if (!p.allFinite())
    throw std::invalid_argument("deviation: point must be finite");
  Eigen::Matrix<double, 9, 1> c;
  c[0] = std::fabs(p.sum() - 1.0);
  for (int k = 0; k < 4; ++k) {
    c[1 + k] = p[k] - spec.upper[k];
    c[5 + k] = spec.lower[k] - p[k];
  }
  return c;
}

namespace {

double soft_log_from_dev(const Eigen::Matrix<double, 9, 1>& c, double tau) {
  double s = 0.0;
  for (int j = 0; j < 9; ++j) s += log_norm_cdf(-tau * c[j]);
  return s;
}

}  // namespace

double soft_indicator_log(const ConstraintSpec& spec, const Eigen::Vector4d& p,
                          double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
  return soft_log_from_dev(deviation(spec, p), tau);
}

double ess(const Eigen::VectorXd& weights) {
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("ess: weights must be finite and >= 0");
    sum += w;
    sum2 += w * w;
  }
  if (sum2 <= 0.0) throw NumericalError("ess: all weights are zero");
  return sum * sum / sum2;
}

double ess_from_log_weights(const Eigen::VectorXd& log_weights) {
  const double m = log_weights.maxCoeff();
  if (!std::isfinite(m)) throw NumericalError("ess: all weights are zero");
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < log_weights.size(); ++i) {
    const double w = std::exp(log_weights[i] - m);
    sum += w;
    sum2 += w * w;
  }
  return sum * sum / sum2;
}

namespace {

// Incremental-weight ESS as a function of tau, on precomputed deviations.
double incremental_ess(const Eigen::MatrixXd& dev, double tau_prev,
                       double tau) {
  const int n = static_cast<int>(dev.rows());
  Eigen::VectorXd logw(n);
  for (int i = 0; i < n; ++i) {
    double lw = 0.0;
    for (int j = 0; j < 9; ++j) {
      const double c = dev(i, j);
      lw += log_norm_cdf(-tau * c) - log_norm_cdf(-tau_prev * c);
    }
    logw[i] = lw;
  }
  return ess_from_log_weights(logw);
}

Eigen::MatrixXd deviations_of(const ConstraintSpec& spec,
                              const Eigen::MatrixXd& points) {
  Eigen::MatrixXd dev(points.rows(), 9);
  for (int i = 0; i < points.rows(); ++i)
    dev.row(i) = deviation(spec, points.row(i).transpose()).transpose();
  return dev;
}

}  // namespace

double next_tau(const WeightedCloud& cloud, const ConstraintSpec& spec,
                double target_ess, double tau_target) {
  if (!(cloud.tau < tau_target))
    throw std::invalid_argument("next_tau: cloud.tau must be < tau_target");
  const int n = static_cast<int>(cloud.points.rows());
  if (!(target_ess >= 1.0 && target_ess <= n))
    throw SolverError("next_tau: target ESS outside [1, N]");

  const Eigen::MatrixXd dev = deviations_of(spec, cloud.points);
  if (incremental_ess(dev, cloud.tau, tau_target) >= target_ess)
    return tau_target;

  constexpr double kTol = 1.0;
  constexpr int kMaxIter = 100;
  double lo = cloud.tau, hi = tau_target;
  const double ess_lo = incremental_ess(dev, cloud.tau, lo);
  if (ess_lo < target_ess - kTol) {
    std::ostringstream msg;
    msg << "next_tau: bracket not monotone, ESS(" << lo << ") = " << ess_lo
        << " already below target " << target_ess;
    throw SolverError(msg.str());
  }
  double mid = hi;
  for (int it = 0; it < kMaxIter; ++it) {
    mid = 0.5 * (lo + hi);
    const double e = incremental_ess(dev, cloud.tau, mid);
    if (std::fabs(e - target_ess) <= kTol) return mid;
    if (e > target_ess)
      lo = mid;
    else
      hi = mid;
  }
  std::ostringstream msg;
  msg << "next_tau: bisection did not reach |ESS - " << target_ess
      << "| <= 1 in " << kMaxIter << " iterations; last tau = " << mid;
  throw SolverError(msg.str());
}

namespace {

struct MoveStats {
  long proposals = 0;
  long accepts = 0;
};

// One round of component-wise Gaussian random-walk Metropolis targeting
// U(p) * prod Phi(-tau C(p)), one particle per call. The uniform base
// density restricts proposals to [0,1]^4.
MoveStats move_particle(const ConstraintSpec& spec, Eigen::Vector4d& p,
                        double& logtarget, double tau, double scale,
                        Rng& rng) {
  MoveStats stats;
  for (int k = 0; k < 4; ++k) {
    const double step = scale * rng.normal();
    const double old = p[k];
    const double cand = old + step;
    ++stats.proposals;
    if (cand < 0.0 || cand > 1.0) continue;
    p[k] = cand;
    const double cand_log = soft_indicator_log(spec, p, tau);
    if (std::log(rng.uniform() + 1e-300) < cand_log - logtarget) {
      logtarget = cand_log;
      ++stats.accepts;
    } else {
      p[k] = old;
    }
  }
  return stats;
}

std::vector<int> systematic_resample(const Eigen::VectorXd& logw, Rng& rng) {
  const int n = static_cast<int>(logw.size());
  const double m = logw.maxCoeff();
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = std::exp(logw[i] - m);
  const double total = w.sum();
  std::vector<int> idx(n);
  const double u0 = rng.uniform() / n;
  double cum = 0.0;
  int j = 0;
  for (int i = 0; i < n; ++i) {
    const double target = (u0 + static_cast<double>(i) / n) * total;
    while (cum + w[j] < target && j < n - 1) cum += w[j++];
    idx[i] = j;
  }
  return idx;
}

}  // namespace

ScmcResult run_scmc(const ConstraintSpec& spec, const ScmcOptions& opts) {
  spec.validate();
  if (opts.n < 100) throw std::invalid_argument("run_scmc: n must be >= 100");
  if (!(opts.tau_target > 0.0))
    throw std::invalid_argument("run_scmc: tau_target must be > 0");
  const int n = opts.n;

  Eigen::MatrixXd points(n, 4);
  {
    Rng init(derive_seed(opts.seed, "scmc-init"));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < 4; ++k) points(i, k) = init.uniform();
  }

  ScmcResult result;
  Rng coordinator(derive_seed(opts.seed, "scmc-resample"));
  double tau = 0.0;
  double scale = 0.25;
  const double target_ess = 0.5 * n;

  for (int step = 1; step <= opts.max_steps; ++step) {
    WeightedCloud cloud{points, Eigen::VectorXd::Ones(n), tau};
    const double tau_next = next_tau(cloud, spec, target_ess, opts.tau_target);

    // Reweight with the incremental weights at tau_next, then resample.
    const Eigen::MatrixXd dev = deviations_of(spec, points);
    Eigen::VectorXd logw(n);
    for (int i = 0; i < n; ++i) {
      double lw = 0.0;
      for (int j = 0; j < 9; ++j) {
        const double c = dev(i, j);
        lw += log_norm_cdf(-tau_next * c) - log_norm_cdf(-tau * c);
      }
      logw[i] = lw;
    }
    result.ess_path.push_back(ess_from_log_weights(logw));
    const std::vector<int> idx = systematic_resample(logw, coordinator);
    Eigen::MatrixXd resampled(n, 4);
    for (int i = 0; i < n; ++i) resampled.row(i) = points.row(idx[i]);
    points = std::move(resampled);
    tau = tau_next;
    result.tau_path.push_back(tau);

    // Diversify with Metropolis moves; the proposal scale adapts between
    // rounds toward a 25-45% acceptance window.
    Eigen::VectorXd logtarget(n);
    for (int i = 0; i < n; ++i)
      logtarget[i] = soft_indicator_log(spec, points.row(i).transpose(), tau);
    long step_props = 0, step_accs = 0;
    for (int round = 0; round < opts.moves_per_step; ++round) {
      std::vector<long> accs(n, 0);
      const double round_scale = scale;
      parallel_for(n, opts.threads, [&](int64_t i) {
        Rng rng(derive_seed(opts.seed,
                            static_cast<uint64_t>(step) * 1024 + round, i));
        Eigen::Vector4d p = points.row(i).transpose();
        double lt = logtarget[i];
        const MoveStats st = move_particle(spec, p, lt, tau, round_scale, rng);
        points.row(i) = p.transpose();
        logtarget[i] = lt;
        accs[i] = st.accepts;
      });
      long round_accs = 0;
      for (long a : accs) round_accs += a;
      step_props += 4L * n;
      step_accs += round_accs;
      const double rate = static_cast<double>(round_accs) / (4.0 * n);
      if (rate < 0.25 || rate > 0.45)
        scale = std::clamp(scale * std::exp(rate - 0.35), 1e-10, 0.5);
    }
    result.acceptance.push_back(static_cast<double>(step_accs) /
                                static_cast<double>(step_props));

    if (tau >= opts.tau_target) break;
  }

  if (tau < opts.tau_target) {
    std::ostringstream msg;
    msg << "run_scmc: tau_target not reached in " << opts.max_steps
        << " steps; tau trajectory:";
    for (double t : result.tau_path) msg << ' ' << t;
    throw SolverError(msg.str());
  }

  // Exact projection onto the simplex, then drop box violators. Trial
  // simulation downstream needs exact multinomial probabilities.
  std::vector<int> keep;
  keep.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double s = points.row(i).sum();
    points.row(i) /= s;
    if (spec.in_box(points.row(i).transpose())) keep.push_back(i);
  }
  result.n_dropped = n - static_cast<int>(keep.size());
  result.points.resize(static_cast<int>(keep.size()), 4);
  for (size_t i = 0; i < keep.size(); ++i)
    result.points.row(static_cast<int>(i)) = points.row(keep[i]);
  return result;
}

}  // namespace docest::scmc
