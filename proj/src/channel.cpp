#include "stegocap/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stegocap {

namespace {

constexpr double kRowTol = 1e-12;

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

}  // namespace

DmcKernel::DmcKernel(std::size_t input_size, std::size_t output_size,
                     std::vector<double> rows)
    : in_(input_size), out_(output_size), rows_(std::move(rows)) {
  if (in_ == 0 || out_ == 0)
    throw std::invalid_argument("kernel needs nonempty alphabets");
  if (rows_.size() != in_ * out_)
    throw std::invalid_argument("kernel row data has the wrong shape");
  for (std::size_t x = 0; x < in_; ++x) {
    double s = 0;
    for (std::size_t y = 0; y < out_; ++y) {
      double p = rows_[x * out_ + y];
      if (!(p >= 0.0) || p > 1.0)
        throw std::invalid_argument("kernel entries must lie in [0, 1]");
      s += p;
    }
    if (std::fabs(s - 1.0) > kRowTol)
      throw std::invalid_argument("kernel rows must each sum to one");
  }
}

DmcKernel DmcKernel::identity(std::size_t k) {
  std::vector<double> rows(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) rows[i * k + i] = 1.0;
  return DmcKernel(k, k, std::move(rows));
}

DmcKernel DmcKernel::bsc(double flip_prob) {
  if (!(flip_prob >= 0.0) || flip_prob > 1.0)
    throw std::invalid_argument("flip probability must lie in [0, 1]");
  return DmcKernel(2, 2,
                   {1.0 - flip_prob, flip_prob, flip_prob, 1.0 - flip_prob});
}

DmcKernel DmcKernel::permutation(std::vector<std::size_t> image) {
  std::size_t k = image.size();
  std::vector<char> seen(k, 0);
  for (std::size_t y : image) {
    if (y >= k || seen[y])
      throw std::invalid_argument("permutation image must be a bijection");
    seen[y] = 1;
  }
  std::vector<double> rows(k * k, 0.0);
  for (std::size_t x = 0; x < k; ++x) rows[x * k + image[x]] = 1.0;
  return DmcKernel(k, k, std::move(rows));
}

DmcKernel compose_kernels(const DmcKernel& w, const DmcKernel& a) {
  if (w.output_size() != a.input_size())
    throw std::invalid_argument("kernel shapes do not chain");
  std::size_t in = w.input_size(), mid = w.output_size(), out = a.output_size();
  std::vector<double> rows(in * out, 0.0);
  for (std::size_t x = 0; x < in; ++x)
    for (std::size_t y = 0; y < mid; ++y) {
      double wxy = w.prob(x, y);
      if (wxy == 0.0) continue;
      for (std::size_t z = 0; z < out; ++z) rows[x * out + z] += wxy * a.prob(y, z);
    }
  return DmcKernel(in, out, std::move(rows));
}

GaussianKernel compose_kernels(const GaussianKernel& w, const GaussianKernel& a) {
  return GaussianKernel{w.variance + a.variance};
}

BlockKernel::BlockKernel(DmcKernel w, int n) : w_(std::move(w)), n_(n) {
  if (n_ < 1) throw std::invalid_argument("block length must be positive");
}

double BlockKernel::prob(std::span<const int> x, std::span<const int> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw std::invalid_argument("tuple lengths must match the block length");
  double p = 1.0;
  for (int i = 0; i < n_; ++i) {
    if (x[i] < 0 || x[i] >= static_cast<int>(w_.input_size()) || y[i] < 0 ||
        y[i] >= static_cast<int>(w_.output_size()))
      throw std::invalid_argument("tuple symbol outside the kernel alphabets");
    p *= w_.prob(static_cast<std::size_t>(x[i]), static_cast<std::size_t>(y[i]));
  }
  return p;
}

std::vector<int> BlockKernel::sample(std::span<const int> x, Rng& rng) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("tuple length must match the block length");
  return stegocap::sample(w_, x, rng);
}

DmcKernel negation_attack(const FiniteAlphabet& a) {
  std::size_t k = a.size();
  std::vector<std::size_t> image(k);
  for (std::size_t i = 0; i < k; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < k; ++j)
      if (a.values[j] == -a.values[i]) {
        image[i] = j;
        found = true;
        break;
      }
    if (!found)
      throw std::invalid_argument(
          "alphabet values are not closed under negation");
  }
  return DmcKernel::permutation(std::move(image));
}

std::vector<int> sample(const DmcKernel& w, std::span<const int> x, Rng& rng) {
  std::vector<int> y(x.size());
  std::size_t out = w.output_size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= static_cast<int>(w.input_size()))
      throw std::invalid_argument("input symbol outside the kernel alphabet");
    double u = uniform01(rng), acc = 0.0;
    std::size_t pick = out - 1;
    for (std::size_t z = 0; z < out; ++z) {
      acc += w.prob(static_cast<std::size_t>(x[i]), z);
      if (u < acc) {
        pick = z;
        break;
      }
    }
    y[i] = static_cast<int>(pick);
  }
  return y;
}

std::vector<double> sample(const GaussianKernel& w, std::span<const double> x,
                           Rng& rng) {
  std::vector<double> z(x.begin(), x.end());
  if (w.variance == 0.0) return z;
  if (w.variance < 0.0) throw std::invalid_argument("variance must be nonnegative");
  double sd = std::sqrt(w.variance);
  for (double& v : z) v += sd * normal01(rng);
  return z;
}

DmcKernel discretize(const GaussianKernel& w, const std::vector<double>& inputs,
                     const std::vector<double>& bin_edges) {
  if (inputs.empty() || bin_edges.empty())
    throw std::invalid_argument("discretization needs inputs and bin edges");
  for (std::size_t i = 1; i < bin_edges.size(); ++i)
    if (!(bin_edges[i - 1] < bin_edges[i]))
      throw std::invalid_argument("bin edges must be strictly increasing");
  if (w.variance < 0.0) throw std::invalid_argument("variance must be nonnegative");
  std::size_t in = inputs.size(), out = bin_edges.size() + 1;
  std::vector<double> rows(in * out, 0.0);
  for (std::size_t x = 0; x < in; ++x) {
    if (w.variance == 0.0) {
      // noiseless: unit mass on the bin holding the input value
      std::size_t bin = static_cast<std::size_t>(
          std::upper_bound(bin_edges.begin(), bin_edges.end(), inputs[x]) -
          bin_edges.begin());
      rows[x * out + bin] = 1.0;
      continue;
    }
    double sd = std::sqrt(w.variance), prev = 0.0;
    for (std::size_t e = 0; e < bin_edges.size(); ++e) {
      double cdf = normal_cdf((bin_edges[e] - inputs[x]) / sd);
      rows[x * out + e] = std::max(0.0, cdf - prev);
      prev = cdf;
    }
    rows[x * out + out - 1] = std::max(0.0, 1.0 - prev);
  }
  return DmcKernel(in, out, std::move(rows));
}

StegoChannel::StegoChannel(Kernel w, Steganalyzer g, Kernel a)
    : encoder_noise(std::move(w)), analyzer(std::move(g)), attack(std::move(a)) {
  bool discrete_signal = false, continuous_signal = false;
  std::size_t signal_size = 0;
  if (const auto* dmc = std::get_if<DmcKernel>(&encoder_noise)) {
    discrete_signal = true;
    signal_size = dmc->output_size();
  } else if (const auto* gk = std::get_if<GaussianKernel>(&encoder_noise)) {
    continuous_signal = gk->variance >= 0.0;
  }

  if (analyzer.has_finite_alphabet()) {
    if (continuous_signal)
      throw std::invalid_argument(
          "finite-alphabet detector cannot watch a continuous signal");
    if (discrete_signal && analyzer.alphabet().size() != signal_size)
      throw std::invalid_argument(
          "detector alphabet does not match the noisy-signal alphabet");
  } else if (discrete_signal) {
    throw std::invalid_argument(
        "real-valued detector cannot watch a finite-alphabet signal");
  }

  if (const auto* atk = std::get_if<DmcKernel>(&attack)) {
    if (continuous_signal)
      throw std::invalid_argument("discrete attack on a continuous signal");
    if (discrete_signal && atk->input_size() != signal_size)
      throw std::invalid_argument("attack alphabet does not match the signal");
  } else if (std::holds_alternative<GaussianKernel>(attack) && discrete_signal) {
    throw std::invalid_argument("additive-noise attack on a discrete signal");
  }
}

JointDistribution joint_from_input_and_kernel(const Distribution& px,
                                              const DmcKernel& w) {
  if (px.size() != w.input_size())
    throw std::invalid_argument("input distribution does not match the kernel");
  std::size_t nx = w.input_size(), nz = w.output_size();
  std::vector<double> p(nx * nz);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t z = 0; z < nz; ++z) p[x * nz + z] = px[x] * w.prob(x, z);
  return JointDistribution(nx, nz, std::move(p));
}

}  // namespace stegocap
