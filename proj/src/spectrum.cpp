#include "stegocap/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stegocap {

namespace {

// overflow-safe k^n versus the enumeration budget
std::uint64_t checked_tuple_count(std::size_t k, int n, const EnumBudget& budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budget.max_tuples / k)
      throw budget_error("tuple space exceeds the enumeration budget");
    total *= k;
  }
  return total;
}

void for_each_tuple(std::size_t k, int n,
                    const std::function<void(std::span<const int>)>& fn) {
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  while (true) {
    fn(t);
    int i = n - 1;
    while (i >= 0 && t[i] == static_cast<int>(k) - 1) t[i--] = 0;
    if (i < 0) return;
    ++t[i];
  }
}

// collapse raw (value, prob) pairs into sorted atoms, merging values that
// agree to within floating round-off so algebraically equal densities land in
// one atom
std::vector<SpectrumAtom> merge_atoms(std::vector<SpectrumAtom> raw) {
  std::sort(raw.begin(), raw.end(), [](const SpectrumAtom& a, const SpectrumAtom& b) {
    return a.value < b.value;
  });
  std::vector<SpectrumAtom> out;
  for (const auto& a : raw) {
    if (a.prob == 0.0) continue;
    double tol = 1e-12 * std::max(1.0, std::fabs(a.value));
    if (!out.empty() && a.value - out.back().value <= tol)
      out.back().prob += a.prob;
    else
      out.push_back(a);
  }
  return out;
}

std::vector<SpectrumAtom> merge_counted(std::vector<double> values,
                                        std::uint64_t denom) {
  std::sort(values.begin(), values.end());
  std::vector<SpectrumAtom> out;
  std::uint64_t run = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double tol = 1e-12 * std::max(1.0, std::fabs(values[i]));
    if (!out.empty() && values[i] - out.back().value <= tol) {
      ++run;
    } else {
      if (!out.empty())
        out.back().prob = static_cast<double>(run) / static_cast<double>(denom);
      out.push_back({values[i], 0.0});
      run = 1;
    }
  }
  if (!out.empty())
    out.back().prob = static_cast<double>(run) / static_cast<double>(denom);
  return out;
}

// per-letter output distribution r = p W of an i.i.d. input pushed through the
// letter kernel
std::vector<double> pushforward(const Distribution& p, const DmcKernel& w) {
  std::vector<double> r(w.output_size(), 0.0);
  for (std::size_t x = 0; x < w.input_size(); ++x)
    for (std::size_t z = 0; z < w.output_size(); ++z) r[z] += p[x] * w.prob(x, z);
  return r;
}

std::size_t block_index(std::span<const int> t, std::size_t k) {
  std::size_t idx = 0;
  for (int s : t) idx = idx * k + static_cast<std::size_t>(s);
  return idx;
}

}  // namespace

BlockDist BlockDist::iid(Distribution letter, int n) {
  if (n < 1) throw std::invalid_argument("block length must be positive");
  BlockDist b;
  b.kind_ = Kind::iid;
  b.n_ = n;
  b.k_ = letter.size();
  b.letter_ = std::move(letter);
  return b;
}

BlockDist BlockDist::uniform_on(std::size_t alphabet_size, int n,
                                std::vector<std::vector<int>> members) {
  if (n < 1) throw std::invalid_argument("block length must be positive");
  if (alphabet_size == 0) throw std::invalid_argument("empty alphabet");
  if (members.empty())
    throw std::invalid_argument("uniform support must be nonempty");
  for (const auto& t : members) {
    if (static_cast<int>(t.size()) != n)
      throw std::invalid_argument("support tuple length mismatch");
    for (int s : t)
      if (s < 0 || s >= static_cast<int>(alphabet_size))
        throw std::invalid_argument("support symbol outside the alphabet");
  }
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end())
    throw std::invalid_argument("support tuples must be distinct");
  BlockDist b;
  b.kind_ = Kind::uniform_set;
  b.n_ = n;
  b.k_ = alphabet_size;
  b.members_ = std::move(members);
  return b;
}

const Distribution& BlockDist::letter() const {
  if (!letter_)
    throw std::logic_error("only i.i.d. block distributions have a letter law");
  return *letter_;
}

double BlockDist::prob(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("tuple length must match the block length");
  for (int s : x)
    if (s < 0 || s >= static_cast<int>(k_))
      throw std::invalid_argument("tuple symbol outside the alphabet");
  if (kind_ == Kind::iid) {
    double p = 1.0;
    for (int s : x) p *= (*letter_)[static_cast<std::size_t>(s)];
    return p;
  }
  std::vector<int> key(x.begin(), x.end());
  return std::binary_search(members_.begin(), members_.end(), key)
             ? 1.0 / static_cast<double>(members_.size())
             : 0.0;
}

void BlockDist::for_each(
    const std::function<void(std::span<const int>, double)>& fn,
    const EnumBudget& budget) const {
  if (kind_ == Kind::uniform_set) {
    double p = 1.0 / static_cast<double>(members_.size());
    for (const auto& t : members_) fn(t, p);
    return;
  }
  checked_tuple_count(k_, n_, budget);
  for_each_tuple(k_, n_, [&](std::span<const int> t) {
    double p = 1.0;
    for (int s : t) p *= (*letter_)[static_cast<std::size_t>(s)];
    fn(t, p);
  });
}

std::vector<int> BlockDist::sample(Rng& rng) const {
  if (kind_ == Kind::iid) {
    std::vector<int> x(static_cast<std::size_t>(n_));
    for (auto& s : x)
      s = static_cast<int>(sample_index(letter_->probs(), rng));
    return x;
  }
  auto m = static_cast<double>(members_.size());
  auto i = static_cast<std::size_t>(uniform01(rng) * m);
  if (i >= members_.size()) i = members_.size() - 1;
  return members_[i];
}

double SpectrumSample::mean() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.value * a.prob;
  return s;
}

double SpectrumSample::total_prob() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.prob;
  return s;
}

SpectrumSample entropy_spectrum(const BlockDist& source, const SpectrumMode& mode,
                                LogBase base) {
  SpectrumSample s;
  s.n = source.n();
  s.base = base;
  s.exact = mode.exact;
  double scale = static_cast<double>(source.n()) * log_scale(base);
  if (mode.exact) {
    if (!source.is_iid()) {
      // uniform support: the law is a single atom at the normalized log-size
      std::uint64_t m = 0;
      source.for_each([&](std::span<const int>, double) { ++m; }, mode.budget);
      double value = from_nats(log_big(BigInt(m)) / static_cast<double>(source.n()),
                               base);
      s.atoms = {{value, 1.0}};
      return s;
    }
    std::vector<SpectrumAtom> raw;
    source.for_each(
        [&](std::span<const int>, double p) {
          if (p > 0.0) raw.push_back({-std::log(p) / scale, p});
        },
        mode.budget);
    s.atoms = merge_atoms(std::move(raw));
    return s;
  }
  if (mode.draws == 0) throw std::invalid_argument("sampling needs draws > 0");
  Rng rng(mode.seed);
  std::vector<double> values;
  values.reserve(mode.draws);
  for (std::uint64_t d = 0; d < mode.draws; ++d) {
    auto x = source.sample(rng);
    values.push_back(-std::log(source.prob(x)) / scale);
  }
  s.atoms = merge_counted(std::move(values), mode.draws);
  return s;
}

SpectrumSample information_spectrum(const BlockDist& input, const BlockKernel& q,
                                    const SpectrumMode& mode, LogBase base) {
  if (input.n() != q.n())
    throw std::invalid_argument("input and kernel block lengths differ");
  if (input.alphabet_size() != q.input_size())
    throw std::invalid_argument("input alphabet does not match the kernel");
  int n = input.n();
  std::size_t kz = q.output_size();
  double scale = static_cast<double>(n) * log_scale(base);

  SpectrumSample s;
  s.n = n;
  s.base = base;
  s.exact = mode.exact;

  // log of the output-block probability, factorized when the input is i.i.d.
  std::vector<double> letter_out;
  std::vector<double> dense_out;
  if (input.is_iid()) {
    letter_out = pushforward(input.letter(), q.letter_kernel());
  } else {
    checked_tuple_count(kz, n, mode.budget);
    std::uint64_t kn = 1;
    for (int i = 0; i < n; ++i) kn *= kz;
    dense_out.assign(kn, 0.0);
    input.for_each(
        [&](std::span<const int> x, double px) {
          for_each_tuple(kz, n, [&](std::span<const int> z) {
            dense_out[block_index(z, kz)] += px * q.prob(x, z);
          });
        },
        mode.budget);
  }
  auto log_pz = [&](std::span<const int> z) {
    if (input.is_iid()) {
      double lp = 0.0;
      for (int sym : z) lp += std::log(letter_out[static_cast<std::size_t>(sym)]);
      return lp;
    }
    return std::log(dense_out[block_index(z, kz)]);
  };

  if (mode.exact) {
    checked_tuple_count(kz, n, mode.budget);
    std::vector<SpectrumAtom> raw;
    input.for_each(
        [&](std::span<const int> x, double px) {
          if (px == 0.0) return;
          for_each_tuple(kz, n, [&](std::span<const int> z) {
            double w = q.prob(x, z);
            if (w == 0.0) return;
            raw.push_back({(std::log(w) - log_pz(z)) / scale, px * w});
          });
        },
        mode.budget);
    s.atoms = merge_atoms(std::move(raw));
    return s;
  }

  if (mode.draws == 0) throw std::invalid_argument("sampling needs draws > 0");
  Rng rng(mode.seed);
  std::vector<double> values;
  values.reserve(mode.draws);
  for (std::uint64_t d = 0; d < mode.draws; ++d) {
    auto x = input.sample(rng);
    auto z = q.sample(x, rng);
    values.push_back((std::log(q.prob(x, z)) - log_pz(z)) / scale);
  }
  s.atoms = merge_counted(std::move(values), mode.draws);
  return s;
}

SpectrumSample gaussian_information_spectrum(double input_power,
                                             double noise_variance, int n,
                                             std::uint64_t draws,
                                             std::uint64_t seed, LogBase base) {
  if (!(input_power > 0.0) || !(noise_variance > 0.0))
    throw std::invalid_argument("power and noise variance must be positive");
  if (n < 1) throw std::invalid_argument("block length must be positive");
  if (draws == 0) throw std::invalid_argument("sampling needs draws > 0");
  double out_var = input_power + noise_variance;
  double half_log_ratio = 0.5 * std::log(out_var / noise_variance);
  double scale = static_cast<double>(n) * log_scale(base);

  SpectrumSample s;
  s.n = n;
  s.base = base;
  s.exact = false;
  Rng rng(seed);
  std::vector<double> values;
  values.reserve(draws);
  for (std::uint64_t d = 0; d < draws; ++d) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = std::sqrt(input_power) * normal01(rng);
      double v = std::sqrt(noise_variance) * normal01(rng);
      double z = x + v;
      acc += half_log_ratio + z * z / (2.0 * out_var) - v * v / (2.0 * noise_variance);
    }
    values.push_back(acc / scale);
  }
  s.atoms = merge_counted(std::move(values), draws);
  return s;
}

double outage(const SpectrumSample& s, double r) {
  double p = 0.0;
  for (const auto& a : s.atoms) {
    if (a.value > r) break;
    p += a.prob;
  }
  return p;
}

SpectralInequalityReport spectral_inequality_check(const Distribution& px,
                                                   const DmcKernel& w,
                                                   const DmcKernel& a,
                                                   LogBase base) {
  auto jxy = joint_from_input_and_kernel(px, w);
  auto py = jxy.output_marginal();
  auto jyz = joint_from_input_and_kernel(py, a);
  auto wa = compose_kernels(w, a);
  auto jxz = joint_from_input_and_kernel(px, wa);
  auto pz = jxz.output_marginal();

  SpectralInequalityReport rep;
  rep.h_x = entropy(px, base);
  rep.h_y = entropy(py, base);
  rep.h_z = entropy(pz, base);
  rep.i_xy = mutual_information(jxy, base);
  rep.i_yz = mutual_information(jyz, base);
  rep.i_xz = mutual_information(jxz, base);

  // the same quantity through the chain rule H(Z) - H(Z|X)
  double h_z_given_x = 0.0;
  for (std::size_t x = 0; x < wa.input_size(); ++x)
    for (std::size_t z = 0; z < wa.output_size(); ++z) {
      double p = wa.prob(x, z);
      if (p > 0.0) h_z_given_x -= px[x] * p * std::log(p);
    }
  rep.i_xz_chain = rep.h_z - from_nats(h_z_given_x, base);

  const double tol = 1e-10;
  auto log_k = [&](std::size_t k) {
    return from_nats(std::log(static_cast<double>(k)), base);
  };
  double worst = 0.0;
  auto track = [&worst](double violation) { worst = std::max(worst, violation); };
  track(-rep.h_x);
  track(-rep.h_y);
  track(-rep.h_z);
  track(rep.h_x - log_k(px.size()));
  track(rep.h_y - log_k(py.size()));
  track(rep.h_z - log_k(pz.size()));
  rep.entropy_in_range = worst <= tol;
  double mi_worst = std::max({-rep.i_xy, -rep.i_yz, -rep.i_xz});
  track(mi_worst);
  rep.mi_nonnegative = mi_worst <= tol;
  double chain_err = std::fabs(rep.i_xz - rep.i_xz_chain);
  track(chain_err);
  rep.chain_consistent = chain_err <= tol;
  double dpi = rep.i_xz - std::min(rep.i_xy, rep.i_yz);
  track(dpi);
  rep.data_processing_holds = dpi <= tol;
  rep.max_violation = worst;
  return rep;
}

}  // namespace stegocap
