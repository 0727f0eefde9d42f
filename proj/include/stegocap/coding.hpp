#pragma once

#include "stegocap/channel.hpp"
#include "stegocap/common.hpp"
#include "stegocap/spectrum.hpp"
#include "stegocap/steganalyzer.hpp"

#include <optional>
#include <span>
#include <vector>

namespace stegocap {

enum class DecoderKind { maximum_likelihood, minimum_distance, explicit_regions };

// block code over a finite alphabet with its decoding rule; explicit regions
// are stored densely as message-per-output-tuple (-1 = declared failure),
// which makes them disjoint and covering by construction
struct Code {
  int n = 0;
  std::size_t output_alphabet = 0;
  std::vector<std::vector<int>> codewords;
  DecoderKind decoder = DecoderKind::maximum_likelihood;
  std::vector<int> region_of;  // explicit_regions only, size |Z|^n

  Code(int n_, std::vector<std::vector<int>> codewords_, DecoderKind d,
       std::size_t output_alphabet_, std::vector<int> region_of_ = {});

  std::size_t size() const { return codewords.size(); }
  // decode an output tuple to a message index (or -1); q supplies the metric
  // for maximum-likelihood decoding, ties break to the lowest index
  int decode(std::span<const int> z, const BlockKernel* q) const;
};

struct SimMode {
  bool exact = true;
  std::uint64_t draws = 0;
  std::uint64_t seed = 0;
  EnumBudget budget{};

  static SimMode exact_mode(EnumBudget b = {}) { return {true, 0, 0, b}; }
  static SimMode monte_carlo(std::uint64_t draws, std::uint64_t seed) {
    return {false, draws, seed, {}};
  }
};

struct Estimate {
  double value = 0;
  double half_width = 0;  // 1.96 standard errors; 0 for exact results
  bool exact = true;
};

// average decoding-error probability over a uniform message (exact sum over
// Z^n, or Monte Carlo)
Estimate error_probability(const Code& code, const BlockKernel& q,
                           const SimMode& mode);

// average probability the detector flags the transmitted word after the
// encoder-side channel w
Estimate detection_probability(const Code& code, const BlockKernel& w,
                               const Steganalyzer& g, const SimMode& mode);

struct FeinsteinReport {
  std::optional<Code> code;
  bool reached_target = false;
  int target_m = 0;
  double gamma = 0;            // nats
  double epsilon = 0;          // exact average error of the built code
  double max_codeword_error = 0;
  double outage_term = 0;      // P{(1/n) i <= (1/n) log M + gamma}
  double bound_rhs = 0;        // outage_term + exp(-n gamma)
};

// greedy threshold-decoder construction: scan candidate inputs by decreasing
// probability, claim the unclaimed outputs whose normalized information
// density clears (1/n) log M + gamma, and admit the candidate when the
// claimed mass is at least 1 - bound_rhs.  The built code's average (indeed
// maximal) error is at most bound_rhs.
FeinsteinReport feinstein_code(const BlockKernel& q, const BlockDist& input,
                               double gamma, int target_m,
                               const EnumBudget& budget = {});

struct AwgnExperimentParams {
  double c = 1;            // detector's second-moment threshold
  double se2 = 0;          // encoder-side noise variance
  double sa2 = 0;          // attacker-side noise variance
  double rate_bits = 0;    // code rate, bits per use
  int n = 1;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  // input power defaults to c - se2 - margin_fraction * c; the back-off keeps
  // the empirical second moment of the noisy signal below the threshold at
  // finite n
  double margin_fraction = 0.05;
  // codebooks up to this size are drawn explicitly; above it the error event
  // is averaged over the codeword ensemble in closed form per trial
  std::uint64_t explicit_codebook_limit = std::uint64_t{1} << 14;
};

struct AwgnExperimentResult {
  Estimate epsilon;
  Estimate delta;
  double p_in = 0;
  double rate_penalty_bits = 0;  // capacity give-up from the power back-off
  bool explicit_codebook = false;
  double m_log2 = 0;             // log2 of the codebook size
  AwgnExperimentParams params;
};

// random Gaussian codebooks at the given rate through encoder noise, a
// second-moment detector at threshold c, attacker noise, and nearest-neighbor
// decoding; all randomness from the seed
AwgnExperimentResult awgn_experiment(const AwgnExperimentParams& params);

struct SpherePackingResult {
  double log_count = 0;  // log of the packing count at block length n
  double rate = 0;       // per-use rate, clamped at zero
  LogBase base = LogBase::bits;
};

// (c / sigma2)^{n/2} packing count for power c spheres of noise radius sigma2
SpherePackingResult sphere_packing_count(double c, double sigma2, int n,
                                         LogBase base);

struct TwoNoiseReport {
  int n = 0;
  bool composite_empty = false;  // the two detectors in series pass nothing
  BigInt codebook_size;
  double rate_bits = 0;
  double epsilon = 0;
  double delta = 0;
};

// two sign detectors that jointly block every odd-length tuple, yet a symbol
// negation inserted between them lets 2^{n-1} codewords through undetected
// and error-free
TwoNoiseReport two_noise_demo(int n);

}  // namespace stegocap
