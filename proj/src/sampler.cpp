#include "unitdist/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace unitdist {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// All variate recipes are spelled out here rather than taken from
// <random>'s distributions so that streams are identical across platforms.
class Engine {
 public:
  explicit Engine(std::uint64_t seed) {
    std::uint64_t s = seed;
    eng_.seed(splitmix64(s));
  }

  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double u01_open() {
    double u = u01();
    while (u <= 0.0) u = u01();
    return u;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = u01_open();
    const double u2 = u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  // Marsaglia-Tsang; the a < 1 case is boosted through gamma(a + 1).
  double gamma(double a) {
    if (a < 1.0) return gamma(a + 1.0) * std::pow(u01_open(), 1.0 / a);
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = u01_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    const double ga = gamma(a);
    const double gb = gamma(b);
    return ga / (ga + gb);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

bool has_closed_quantile(Family family) {
  switch (family) {
    case Family::unit_power:
    case Family::unit_rayleigh:
    case Family::kumaraswamy:
    case Family::fatima1:
    case Family::fatima3:
    case Family::fatima4:
      return true;
    default:
      return false;
  }
}

double draw_one(const DistributionSpec& spec, Engine& engine) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    double y;
    if (has_closed_quantile(spec.family())) {
      y = quantile(spec, engine.u01_open());
    } else {
      const auto rep = to_power_beta(spec);
      y = std::pow(engine.beta(rep.a, rep.b), rep.c);
    }
    if (y > 0.0 && y < 1.0) return y;
  }
  throw std::runtime_error("sample: draws kept collapsing onto an endpoint");
}

}  // namespace

std::vector<double> sample(const SampleRequest& request) {
  Engine engine(request.seed);
  std::vector<double> out;
  out.reserve(request.count);
  for (std::size_t k = 0; k < request.count; ++k) out.push_back(draw_one(request.spec, engine));
  return out;
}

std::vector<double> sample_by_order_stat(const DistributionSpec& parent, int i, int n,
                                         std::size_t count, std::uint64_t seed) {
  if (n < 1 || i < 1 || i > n)
    throw std::domain_error("sample_by_order_stat: need integers 1 <= i <= n");
  Engine engine(seed);
  std::vector<double> out;
  out.reserve(count);
  std::vector<double> group(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < count; ++k) {
    for (auto& g : group) g = draw_one(parent, engine);
    std::nth_element(group.begin(), group.begin() + (i - 1), group.end());
    out.push_back(group[static_cast<std::size_t>(i - 1)]);
  }
  return out;
}

}  // namespace unitdist
