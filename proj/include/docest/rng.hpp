#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace docest {

uint64_t splitmix64(uint64_t& state);

// Deterministic substream derivation: hash (master, tag, index) into a fresh
// seed. Stages, particles and replicates each get their own stream so that
// results are independent of thread count and partial reruns.
uint64_t derive_seed(uint64_t master, std::string_view tag, uint64_t index = 0);
uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b);

// mt19937_64 engine with explicit samplers. The standard library's
// distribution objects are implementation-defined, so every variate used by
// the library is generated here.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);

  // Standard normal via the Marsaglia polar method (one spare cached).
  double normal();
  double normal(double mu, double sd) { return mu + sd * normal(); }

  // Marsaglia-Tsang for shape >= 1, boosted below 1. Unit scale.
  double gamma(double shape);
  double beta(double a, double b);

  // Bernoulli-summation binomial; n stays at trial scale here.
  int binomial(int n, double p);

  // Multinomial counts by bucketing n independent categorical draws.
  std::array<int, 4> multinomial4(int n, const std::array<double, 4>& p);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace docest
