#pragma once

#include "stegocap/common.hpp"
#include "stegocap/prob.hpp"
#include "stegocap/steganalyzer.hpp"

#include <span>
#include <variant>
#include <vector>

namespace stegocap {

// discrete memoryless channel; rows are conditional distributions w(y|x),
// each summing to one within 1e-12
class DmcKernel {
 public:
  DmcKernel(std::size_t input_size, std::size_t output_size,
            std::vector<double> rows);

  static DmcKernel identity(std::size_t k);
  static DmcKernel bsc(double flip_prob);
  // deterministic relabeling y = image[x]
  static DmcKernel permutation(std::vector<std::size_t> image);

  std::size_t input_size() const { return in_; }
  std::size_t output_size() const { return out_; }
  double prob(std::size_t x, std::size_t y) const { return rows_[x * out_ + y]; }
  const std::vector<double>& rows() const { return rows_; }

 private:
  std::size_t in_, out_;
  std::vector<double> rows_;
};

// additive white Gaussian noise, z = x + N(0, variance); variance 0 is the
// noiseless identity
struct GaussianKernel {
  double variance = 0;
};

// Q(z|x) = sum_y A(z|y) W(y|x)
DmcKernel compose_kernels(const DmcKernel& w, const DmcKernel& a);
// Gaussian noise composes by adding variances
GaussianKernel compose_kernels(const GaussianKernel& w, const GaussianKernel& a);

// n independent uses of one DMC; block transition probabilities are evaluated
// lazily as per-letter products
class BlockKernel {
 public:
  BlockKernel(DmcKernel w, int n);

  int n() const { return n_; }
  const DmcKernel& letter_kernel() const { return w_; }
  std::size_t input_size() const { return w_.input_size(); }
  std::size_t output_size() const { return w_.output_size(); }

  double prob(std::span<const int> x, std::span<const int> y) const;
  std::vector<int> sample(std::span<const int> x, Rng& rng) const;

 private:
  DmcKernel w_;
  int n_;
};

// deterministic symbol negation on an alphabet whose value set is closed
// under v -> -v; returned as a permutation kernel
DmcKernel negation_attack(const FiniteAlphabet& a);

// one channel use per letter
std::vector<int> sample(const DmcKernel& w, std::span<const int> x, Rng& rng);
std::vector<double> sample(const GaussianKernel& w, std::span<const double> x,
                           Rng& rng);

// quantized view of a Gaussian kernel for finite-alphabet experiments: input
// value grid, output bins (edges), probabilities from the normal CDF
DmcKernel discretize(const GaussianKernel& w, const std::vector<double>& inputs,
                     const std::vector<double>& bin_edges);

struct IdentityKernel {};
using Kernel = std::variant<IdentityKernel, DmcKernel, GaussianKernel>;

// the full pipeline: encoder-side noise, a detector watching the noisy
// signal, and attacker-side processing before the decoder
struct StegoChannel {
  Kernel encoder_noise;
  Steganalyzer analyzer;
  Kernel attack;

  StegoChannel(Kernel w, Steganalyzer g, Kernel a);  // validates compatibility
};

JointDistribution joint_from_input_and_kernel(const Distribution& px,
                                              const DmcKernel& w);

}  // namespace stegocap
