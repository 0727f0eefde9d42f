#include "stegocap/coding.hpp"

#include <boost/math/distributions/non_central_chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stegocap {

namespace {

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

void require_compatible(const Code& code, const BlockKernel& q) {
  if (code.n != q.n())
    throw std::invalid_argument("code and kernel block lengths differ");
  for (const auto& cw : code.codewords)
    for (int s : cw)
      if (s >= static_cast<int>(q.input_size()))
        throw std::invalid_argument("codeword symbol outside the kernel input");
}

Estimate bernoulli_estimate(std::uint64_t hits, std::uint64_t draws) {
  double v = static_cast<double>(hits) / static_cast<double>(draws);
  Estimate e;
  e.value = v;
  e.half_width = 1.96 * std::sqrt(v * (1.0 - v) / static_cast<double>(draws));
  e.exact = false;
  return e;
}

std::size_t uniform_index(std::size_t m, Rng& rng) {
  auto i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(m));
  return i < m ? i : m - 1;
}

}  // namespace

Code::Code(int n_, std::vector<std::vector<int>> codewords_, DecoderKind d,
           std::size_t output_alphabet_, std::vector<int> region_of_)
    : n(n_),
      output_alphabet(output_alphabet_),
      codewords(std::move(codewords_)),
      decoder(d),
      region_of(std::move(region_of_)) {
  if (n < 1) throw std::invalid_argument("block length must be positive");
  if (output_alphabet == 0) throw std::invalid_argument("empty output alphabet");
  if (codewords.empty()) throw std::invalid_argument("a code needs codewords");
  for (const auto& cw : codewords) {
    if (static_cast<int>(cw.size()) != n)
      throw std::invalid_argument("codeword length mismatch");
    for (int s : cw)
      if (s < 0) throw std::invalid_argument("codeword symbols must be >= 0");
  }
  if (decoder == DecoderKind::explicit_regions) {
    std::uint64_t table = 1;
    for (int i = 0; i < n; ++i) {
      if (table > (std::uint64_t{1} << 40) / output_alphabet)
        throw std::invalid_argument("region table would be too large");
      table *= output_alphabet;
    }
    if (region_of.size() != table)
      throw std::invalid_argument("region table must cover every output tuple");
    for (int r : region_of)
      if (r < -1 || r >= static_cast<int>(codewords.size()))
        throw std::invalid_argument("region entry is not a message index");
  } else if (!region_of.empty()) {
    throw std::invalid_argument("region table only applies to explicit regions");
  }
}

int Code::decode(std::span<const int> z, const BlockKernel* q) const {
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("tuple length must match the block length");
  switch (decoder) {
    case DecoderKind::maximum_likelihood: {
      if (q == nullptr)
        throw std::invalid_argument("maximum likelihood needs the kernel");
      std::size_t best = 0;
      double best_p = q->prob(codewords[0], z);
      for (std::size_t i = 1; i < codewords.size(); ++i) {
        double p = q->prob(codewords[i], z);
        if (p > best_p) {  // ties stay with the lowest message
          best_p = p;
          best = i;
        }
      }
      return static_cast<int>(best);
    }
    case DecoderKind::minimum_distance: {
      std::size_t best = 0;
      int best_d = n + 1;
      for (std::size_t i = 0; i < codewords.size(); ++i) {
        int d = 0;
        for (int t = 0; t < n; ++t) d += codewords[i][t] != z[t];
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      return static_cast<int>(best);
    }
    case DecoderKind::explicit_regions: {
      std::size_t idx = 0;
      for (int s : z) {
        if (s < 0 || s >= static_cast<int>(output_alphabet))
          throw std::invalid_argument("tuple symbol outside the output alphabet");
        idx = idx * output_alphabet + static_cast<std::size_t>(s);
      }
      return region_of[idx];
    }
  }
  return -1;
}

Estimate error_probability(const Code& code, const BlockKernel& q,
                           const SimMode& mode) {
  require_compatible(code, q);
  std::size_t m = code.size();
  if (mode.exact) {
    checked_tuple_count(q.output_size(), code.n, mode.budget);
    double err = 0.0;
    for_each_tuple(q.output_size(), code.n, [&](std::span<const int> z) {
      int d = code.decode(z, &q);
      for (std::size_t i = 0; i < m; ++i)
        if (d != static_cast<int>(i)) err += q.prob(code.codewords[i], z);
    });
    return {err / static_cast<double>(m), 0.0, true};
  }
  if (mode.draws == 0) throw std::invalid_argument("sampling needs draws > 0");
  Rng rng(mode.seed);
  std::uint64_t errors = 0;
  for (std::uint64_t d = 0; d < mode.draws; ++d) {
    std::size_t i = uniform_index(m, rng);
    auto z = q.sample(code.codewords[i], rng);
    if (code.decode(z, &q) != static_cast<int>(i)) ++errors;
  }
  return bernoulli_estimate(errors, mode.draws);
}

Estimate detection_probability(const Code& code, const BlockKernel& w,
                               const Steganalyzer& g, const SimMode& mode) {
  require_compatible(code, w);
  std::size_t m = code.size();
  if (mode.exact) {
    checked_tuple_count(w.output_size(), code.n, mode.budget);
    double flagged = 0.0;
    for_each_tuple(w.output_size(), code.n, [&](std::span<const int> y) {
      if (g.classify(y) != 1) return;
      for (std::size_t i = 0; i < m; ++i) flagged += w.prob(code.codewords[i], y);
    });
    return {flagged / static_cast<double>(m), 0.0, true};
  }
  if (mode.draws == 0) throw std::invalid_argument("sampling needs draws > 0");
  Rng rng(mode.seed);
  std::uint64_t hits = 0;
  for (std::uint64_t d = 0; d < mode.draws; ++d) {
    std::size_t i = uniform_index(m, rng);
    auto y = w.sample(code.codewords[i], rng);
    if (g.classify(y) == 1) ++hits;
  }
  return bernoulli_estimate(hits, mode.draws);
}

FeinsteinReport feinstein_code(const BlockKernel& q, const BlockDist& input,
                               double gamma, int target_m,
                               const EnumBudget& budget) {
  if (input.n() != q.n())
    throw std::invalid_argument("input and kernel block lengths differ");
  if (input.alphabet_size() != q.input_size())
    throw std::invalid_argument("input alphabet does not match the kernel");
  if (target_m < 1) throw std::invalid_argument("target size must be positive");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  int n = q.n();
  checked_tuple_count(q.input_size(), n, budget);
  std::uint64_t nz = checked_tuple_count(q.output_size(), n, budget);

  // materialize the input support and the output marginal
  std::vector<std::vector<int>> xs;
  std::vector<double> px;
  input.for_each(
      [&](std::span<const int> x, double p) {
        if (p == 0.0) return;
        xs.emplace_back(x.begin(), x.end());
        px.push_back(p);
      },
      budget);
  std::vector<double> pz(nz, 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::size_t zi = 0;
    for_each_tuple(q.output_size(), n, [&](std::span<const int> z) {
      pz[zi++] += px[i] * q.prob(xs[i], z);
    });
  }

  FeinsteinReport rep;
  rep.target_m = target_m;
  rep.gamma = gamma;
  double tau = std::log(static_cast<double>(target_m)) +
               static_cast<double>(n) * gamma;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::size_t zi = 0;
    for_each_tuple(q.output_size(), n, [&](std::span<const int> z) {
      double w = q.prob(xs[i], z);
      std::size_t here = zi++;
      if (w > 0.0 && std::log(w) - std::log(pz[here]) <= tau)
        rep.outage_term += px[i] * w;
    });
  }
  rep.bound_rhs = rep.outage_term + std::exp(-static_cast<double>(n) * gamma);

  // greedy scan by decreasing input probability, ties to the earlier tuple
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return px[a] > px[b]; });
  std::vector<int> region(nz, -1);
  std::vector<std::vector<int>> codewords;
  std::vector<std::size_t> claim;
  for (std::size_t cand : order) {
    if (static_cast<int>(codewords.size()) == target_m) break;
    claim.clear();
    double mass = 0.0;
    std::size_t zi = 0;
    for_each_tuple(q.output_size(), n, [&](std::span<const int> z) {
      std::size_t here = zi++;
      if (region[here] != -1) return;
      double w = q.prob(xs[cand], z);
      if (w > 0.0 && std::log(w) - std::log(pz[here]) > tau) {
        mass += w;
        claim.push_back(here);
      }
    });
    if (mass >= 1.0 - rep.bound_rhs) {
      for (std::size_t here : claim)
        region[here] = static_cast<int>(codewords.size());
      codewords.push_back(xs[cand]);
    }
  }

  rep.reached_target = static_cast<int>(codewords.size()) == target_m;
  if (!rep.reached_target) return rep;

  Code code(n, codewords, DecoderKind::explicit_regions, q.output_size(), region);
  double avg = 0.0;
  for (std::size_t i = 0; i < codewords.size(); ++i) {
    double good = 0.0;
    std::size_t zi = 0;
    for_each_tuple(q.output_size(), n, [&](std::span<const int> z) {
      if (region[zi++] == static_cast<int>(i)) good += q.prob(codewords[i], z);
    });
    double err = 1.0 - good;
    avg += err;
    rep.max_codeword_error = std::max(rep.max_codeword_error, err);
  }
  rep.epsilon = avg / static_cast<double>(codewords.size());
  rep.code = std::move(code);
  return rep;
}

AwgnExperimentResult awgn_experiment(const AwgnExperimentParams& params) {
  if (params.n < 1) throw std::invalid_argument("block length must be positive");
  if (params.trials == 0) throw std::invalid_argument("trials must be positive");
  if (!(params.c > 0.0))
    throw std::invalid_argument("power threshold must be positive");
  if (params.se2 < 0.0 || params.sa2 < 0.0)
    throw std::invalid_argument("noise variances must be nonnegative");
  if (params.rate_bits < 0.0)
    throw std::invalid_argument("rate must be nonnegative");
  if (params.margin_fraction < 0.0)
    throw std::invalid_argument("margin fraction must be nonnegative");

  AwgnExperimentResult res;
  res.params = params;
  res.p_in = params.c - params.se2 - params.margin_fraction * params.c;
  if (!(res.p_in > 0.0))
    throw std::domain_error("no input power left under the detector threshold");
  double noise = params.se2 + params.sa2;
  if (noise > 0.0)
    res.rate_penalty_bits =
        0.5 * std::log2((params.c + params.sa2) / (res.p_in + noise));

  int n = params.n;
  res.m_log2 = params.rate_bits * static_cast<double>(n);
  double m_real = std::exp2(res.m_log2);
  std::uint64_t m_explicit = 0;
  if (m_real <= static_cast<double>(params.explicit_codebook_limit)) {
    m_explicit = static_cast<std::uint64_t>(std::ceil(m_real));
    if (m_explicit < 1) m_explicit = 1;
    res.explicit_codebook = true;
  }

  double sd_in = std::sqrt(res.p_in);
  double sd_e = std::sqrt(params.se2);
  double sd_a = std::sqrt(params.sa2);
  std::vector<double> x(static_cast<std::size_t>(n)),
      y(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n));

  double eps_sum = 0.0, eps_sq = 0.0;
  std::uint64_t flagged = 0;
  for (std::uint64_t t = 0; t < params.trials; ++t) {
    Rng rng(derive_seed(params.seed, t));
    for (int i = 0; i < n; ++i) x[i] = sd_in * normal01(rng);
    for (int i = 0; i < n; ++i)
      y[i] = x[i] + (params.se2 > 0.0 ? sd_e * normal01(rng) : 0.0);
    double power = 0.0;
    for (int i = 0; i < n; ++i) power += y[i] * y[i];
    if (power / static_cast<double>(n) > params.c) ++flagged;
    double d2 = 0.0, z2 = 0.0;
    for (int i = 0; i < n; ++i) {
      z[i] = y[i] + (params.sa2 > 0.0 ? sd_a * normal01(rng) : 0.0);
      d2 += (z[i] - x[i]) * (z[i] - x[i]);
      z2 += z[i] * z[i];
    }

    double eps_t;
    if (res.explicit_codebook) {
      // draw the competing codewords and decode by nearest neighbor
      bool err = false;
      for (std::uint64_t j = 0; j + 1 < m_explicit; ++j) {
        double dist = 0.0;
        for (int i = 0; i < n; ++i) {
          double cj = sd_in * normal01(rng);
          dist += (z[i] - cj) * (z[i] - cj);
        }
        if (dist < d2) {
          err = true;
          break;
        }
      }
      eps_t = err ? 1.0 : 0.0;
    } else {
      // ensemble average: the chance one random codeword lands closer than
      // the transmitted one, amplified to the whole codebook
      boost::math::non_central_chi_squared_distribution<double> law(
          static_cast<double>(n), z2 / res.p_in);
      double p_pair = boost::math::cdf(law, d2 / res.p_in);
      eps_t = p_pair <= 0.0 ? 0.0 : -std::expm1(-m_real * p_pair);
    }
    eps_sum += eps_t;
    eps_sq += eps_t * eps_t;
  }

  auto trials = static_cast<double>(params.trials);
  res.epsilon.value = eps_sum / trials;
  res.epsilon.exact = false;
  if (params.trials > 1) {
    double var = (eps_sq - eps_sum * eps_sum / trials) / (trials - 1.0);
    res.epsilon.half_width = 1.96 * std::sqrt(std::max(0.0, var) / trials);
  }
  res.delta = bernoulli_estimate(flagged, params.trials);
  return res;
}

SpherePackingResult sphere_packing_count(double c, double sigma2, int n,
                                         LogBase base) {
  if (!(sigma2 > 0.0)) throw std::domain_error("noise radius must be positive");
  if (!(c > 0.0)) throw std::domain_error("power must be positive");
  if (n < 1) throw std::invalid_argument("block length must be positive");
  SpherePackingResult r;
  r.base = base;
  r.log_count = from_nats(0.5 * static_cast<double>(n) * std::log(c / sigma2), base);
  r.rate = std::max(0.0, r.log_count / static_cast<double>(n));
  return r;
}

TwoNoiseReport two_noise_demo(int n) {
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument("the demonstration needs an odd block length");
  auto signs = FiniteAlphabet::pm_one();
  auto first =
      Steganalyzer::mean_sign(signs, MeanSignDirection::triggers_on_negative_sum);
  auto second =
      Steganalyzer::mean_sign(signs, MeanSignDirection::triggers_on_positive_sum);

  TwoNoiseReport rep;
  rep.n = n;
  rep.composite_empty = count_permissible(compose(first, second), n) == 0;

  // the codebook is everything the first detector lets through
  auto codebook = enumerate_permissible(first, n);
  rep.codebook_size = codebook.count;
  rep.rate_bits =
      from_nats(log_big(codebook.count) / static_cast<double>(n), LogBase::bits);

  // send each word, negate it in flight, decode by negating back
  auto neg = negation_attack(signs);
  std::uint64_t detections = 0, errors = 0;
  for (const auto& word : codebook.members) {
    if (first.classify(word) == 1) ++detections;
    std::vector<int> attacked(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
      for (std::size_t j = 0; j < signs.size(); ++j)
        if (neg.prob(static_cast<std::size_t>(word[i]), j) == 1.0)
          attacked[i] = static_cast<int>(j);
    }
    if (second.classify(attacked) == 1) ++detections;
    std::vector<int> decoded(attacked.size());
    for (std::size_t i = 0; i < attacked.size(); ++i) {
      for (std::size_t j = 0; j < signs.size(); ++j)
        if (neg.prob(static_cast<std::size_t>(attacked[i]), j) == 1.0)
          decoded[i] = static_cast<int>(j);
    }
    if (decoded != word) ++errors;
  }
  auto words = static_cast<double>(codebook.members.size());
  rep.epsilon = static_cast<double>(errors) / words;
  rep.delta = static_cast<double>(detections) / words;
  return rep;
}

}  // namespace stegocap
