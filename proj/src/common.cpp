#include "stegocap/common.hpp"

#include <cmath>

namespace stegocap {

double log_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log_big: argument must be positive");
  BigFloat f(v);
  return static_cast<double>(boost::multiprecision::log(f));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over the combined state
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double normal01(Rng& rng) {
  // Box-Muller; u1 drawn from (0,1] so the log stays finite
  double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::size_t sample_index(const std::vector<double>& probs, Rng& rng) {
  double u = uniform01(rng);
  double acc = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.size() - 1;  // guards against accumulated rounding
}

}  // namespace stegocap
