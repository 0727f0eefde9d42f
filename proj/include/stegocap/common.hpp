#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace stegocap {

// exact integer counting (set sizes, multinomials); never rounded through double
using BigInt = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

// reported log base; all internal computation is in natural log and converted
// once at the boundary
enum class LogBase { bits, nats };

inline double log_scale(LogBase base) {
  return base == LogBase::bits ? 0.6931471805599453094 : 1.0;
}

inline double from_nats(double nats, LogBase base) {
  return nats / log_scale(base);
}

// natural log of a positive big integer, accurate to double precision even for
// values with tens of thousands of bits
double log_big(const BigInt& v);

// thrown when an exact enumeration would exceed the configured budget; the CLI
// maps this to its own exit code
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

struct EnumBudget {
  std::uint64_t max_tuples = std::uint64_t{1} << 24;
};

// deterministic randomness: mt19937_64 is bit-exact across platforms, and the
// samplers below avoid the implementation-defined std distributions so seeded
// runs reproduce everywhere
using Rng = std::mt19937_64;

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// uniform in [0, 1), 53-bit resolution
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// standard normal via Box-Muller (two engine draws per value)
double normal01(Rng& rng);

// index sampled from an explicit probability vector by CDF inversion
std::size_t sample_index(const std::vector<double>& probs, Rng& rng);

}  // namespace stegocap
