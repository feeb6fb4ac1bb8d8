#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace fbmjump {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derive an independent-stream seed for path index i under a master seed.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ (0x632be59bd9b4e019ULL * (stream + 1)));
}

// Deterministic generator: mt19937_64 is bit-exact across implementations and
// all variate transforms below are explicit, so identical seeds give identical
// streams regardless of standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  double uniform() { // in (0,1)
    const std::uint64_t r = eng_();
    return (static_cast<double>(r >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  // Exact Poisson draw; large means are split to keep the Knuth product stable.
  std::uint64_t poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > 30.0) {
      total += poisson_knuth(30.0);
      mean -= 30.0;
    }
    return total + poisson_knuth(mean);
  }

private:
  std::uint64_t poisson_knuth(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    double prod = uniform();
    std::uint64_t n = 0;
    while (prod > limit) {
      prod *= uniform();
      ++n;
    }
    return n;
  }

  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace fbmjump
