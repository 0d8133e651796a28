#include "docest/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace docest {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {
constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

uint64_t fnv1a(uint64_t h, const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}
}  // namespace

uint64_t derive_seed(uint64_t master, std::string_view tag, uint64_t index) {
  uint64_t h = fnv1a(kFnvOffset, &master, sizeof(master));
  h = fnv1a(h, tag.data(), tag.size());
  h = fnv1a(h, &index, sizeof(index));
  return splitmix64(h);
}

uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b) {
  uint64_t h = fnv1a(kFnvOffset, &master, sizeof(master));
  h = fnv1a(h, &a, sizeof(a));
  h = fnv1a(h, &b, sizeof(b));
  return splitmix64(h);
}

Rng::Rng(uint64_t seed) {
  // Expand the 64-bit seed into a full state via splitmix64, the seeding
  // scheme recommended for the mt19937 family.
  uint64_t s = seed;
  std::array<uint64_t, std::mt19937_64::state_size> init;
  for (auto& w : init) w = splitmix64(s);
  std::seed_seq seq(init.begin(), init.end());
  gen_.seed(seq);
}

double Rng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be > 0");
  if (shape < 1.0) {
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::beta(double a, double b) {
  const double ga = gamma(a);
  const double gb = gamma(b);
  return ga / (ga + gb);
}

int Rng::binomial(int n, double p) {
  if (n < 0 || p < 0.0 || p > 1.0)
    throw std::invalid_argument("binomial: invalid n or p");
  int count = 0;
  for (int i = 0; i < n; ++i)
    if (uniform() < p) ++count;
  return count;
}

std::array<int, 4> Rng::multinomial4(int n, const std::array<double, 4>& p) {
  const double c1 = p[0];
  const double c2 = p[0] + p[1];
  const double c3 = p[0] + p[1] + p[2];
  std::array<int, 4> counts{0, 0, 0, 0};
  for (int i = 0; i < n; ++i) {
    const double u = uniform();
    if (u < c1)
      ++counts[0];
    else if (u < c2)
      ++counts[1];
    else if (u < c3)
      ++counts[2];
    else
      ++counts[3];
  }
  return counts;
}

}  // namespace docest
