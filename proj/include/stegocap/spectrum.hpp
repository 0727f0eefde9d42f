#pragma once

#include "stegocap/channel.hpp"
#include "stegocap/common.hpp"
#include "stegocap/prob.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace stegocap {

// finitely supported distribution over n-tuples of symbol indices
class BlockDist {
 public:
  static BlockDist iid(Distribution letter, int n);
  static BlockDist uniform_on(std::size_t alphabet_size, int n,
                              std::vector<std::vector<int>> members);

  int n() const { return n_; }
  std::size_t alphabet_size() const { return k_; }
  bool is_iid() const { return kind_ == Kind::iid; }
  const Distribution& letter() const;

  double prob(std::span<const int> x) const;
  // visits every support tuple with its probability, in lexicographic order
  void for_each(const std::function<void(std::span<const int>, double)>& fn,
                const EnumBudget& budget = {}) const;
  std::vector<int> sample(Rng& rng) const;

 private:
  enum class Kind { iid, uniform_set };
  BlockDist() = default;

  Kind kind_{};
  int n_ = 0;
  std::size_t k_ = 0;
  std::optional<Distribution> letter_;
  std::vector<std::vector<int>> members_;  // sorted, for membership lookup
};

struct SpectrumAtom {
  double value = 0;
  double prob = 0;
};

// empirical or exact law of a normalized log-density; atoms sorted by value,
// probabilities summing to one
struct SpectrumSample {
  int n = 0;
  bool exact = true;
  LogBase base = LogBase::bits;
  std::vector<SpectrumAtom> atoms;

  double mean() const;
  double total_prob() const;
};

struct SpectrumMode {
  bool exact = true;
  std::uint64_t draws = 0;
  std::uint64_t seed = 0;
  EnumBudget budget{};

  static SpectrumMode exact_mode(EnumBudget b = {}) { return {true, 0, 0, b}; }
  static SpectrumMode sampled(std::uint64_t draws, std::uint64_t seed) {
    return {false, draws, seed, {}};
  }
};

// law of (1/n) log 1/p(X^n) under X^n ~ p
SpectrumSample entropy_spectrum(const BlockDist& source, const SpectrumMode& mode,
                                LogBase base);

// law of (1/n) log q(Z^n|X^n)/p(Z^n) under the joint input/output pair
SpectrumSample information_spectrum(const BlockDist& input, const BlockKernel& q,
                                    const SpectrumMode& mode, LogBase base);

// sampled information-density law for Gaussian input power p through Gaussian
// noise (continuous case is sampling-only; densities evaluated in closed form)
SpectrumSample gaussian_information_spectrum(double input_power,
                                             double noise_variance, int n,
                                             std::uint64_t draws,
                                             std::uint64_t seed, LogBase base);

// P{ value <= r } under the sample
double outage(const SpectrumSample& s, double r);

struct SpectralInequalityReport {
  double h_x = 0, h_y = 0, h_z = 0;
  double i_xy = 0, i_yz = 0, i_xz = 0;
  double i_xz_chain = 0;             // H(Z) - H(Z|X), must match i_xz
  bool entropy_in_range = false;     // 0 <= H <= log alphabet, all three
  bool mi_nonnegative = false;
  bool chain_consistent = false;     // |i_xz - i_xz_chain| <= 1e-10
  bool data_processing_holds = false;  // i_xz <= min(i_xy, i_yz) + 1e-10
  double max_violation = 0;
};

// single-letter sanity panel for a Markov chain X -> Y -> Z
SpectralInequalityReport spectral_inequality_check(const Distribution& px,
                                                   const DmcKernel& w,
                                                   const DmcKernel& a,
                                                   LogBase base);

}  // namespace stegocap
