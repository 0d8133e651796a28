#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace docest::scmc {

// Box bounds for the four category risks. Together with the sum-to-one
// equality they define the constrained simplex region sampled below.
struct ConstraintSpec {
  Eigen::Vector4d lower;
  Eigen::Vector4d upper;

  static constexpr int n_constraints = 9;  // 1 equality + 4 upper + 4 lower

  void validate() const;
  bool in_box(const Eigen::Vector4d& p) const;
};

// Deviation vector: entry 0 is |sum(p) - 1|, entries 1-4 are p_k - u_k,
// entries 5-8 are l_k - p_k. Inside the region entry 0 is 0 and the rest
// are <= 0.
Eigen::Matrix<double, 9, 1> deviation(const ConstraintSpec& spec,
                                      const Eigen::Vector4d& p);

// Log of the probit constraint relaxation, sum_j log Phi(-tau * C_j(p)).
// Stays finite at tau = 1e6.
double soft_indicator_log(const ConstraintSpec& spec, const Eigen::Vector4d& p,
                          double tau);

// Effective sample size (sum w)^2 / sum w^2 of nonnegative weights.
double ess(const Eigen::VectorXd& weights);
double ess_from_log_weights(const Eigen::VectorXd& log_weights);

struct WeightedCloud {
  Eigen::MatrixXd points;   // N x 4
  Eigen::VectorXd weights;  // N
  double tau = 0.0;
};

// Smallest tau in (cloud.tau, tau_target] at which the incremental-weight
// ESS drops to target_ess (within +-1, by bisection); returns tau_target
// when even the target keeps ESS above the threshold.
double next_tau(const WeightedCloud& cloud, const ConstraintSpec& spec,
                double target_ess, double tau_target);

struct ScmcOptions {
  int n = 2000;
  double tau_target = 1e6;
  uint64_t seed = 0;
  int moves_per_step = 5;
  int max_steps = 200;
  int threads = 0;
};

struct ScmcResult {
  Eigen::MatrixXd points;            // rows satisfy sum = 1 and box bounds
  std::vector<double> tau_path;      // accepted constraint parameters
  std::vector<double> ess_path;      // ESS of incremental weights per step
  std::vector<double> acceptance;    // move acceptance rate per step
  int n_dropped = 0;                 // box violators removed after projection
};

// Adaptive-tempering SCMC run: uniform start on [0,1]^4, per-step bisection
// of tau, systematic resampling, component-wise random-walk Metropolis
// moves, final exact projection onto the simplex.
ScmcResult run_scmc(const ConstraintSpec& spec, const ScmcOptions& opts);

}  // namespace docest::scmc
