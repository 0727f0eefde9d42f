#include "stegocap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stegocap {

namespace {

void require_window(std::span<const int> n_window) {
  if (n_window.empty()) throw std::invalid_argument("empty block-length window");
  for (int n : n_window)
    if (n < 1) throw std::invalid_argument("block lengths must be positive");
}

// normalized log-count; an empty set carries rate -infinity
double rate_of(const BigInt& count, int n, LogBase base) {
  if (count == 0) return -std::numeric_limits<double>::infinity();
  return from_nats(log_big(count) / static_cast<double>(n), base);
}

std::vector<double> window_rates(const CountFn& counts,
                                 std::span<const int> n_window, LogBase base) {
  require_window(n_window);
  std::vector<double> rates(n_window.size());
  for (std::size_t i = 0; i < n_window.size(); ++i)
    rates[i] = rate_of(counts(n_window[i]), n_window[i], base);
  return rates;
}

// inf and sup of a suffix of the per-n rates
std::pair<double, double> suffix_range(const std::vector<double>& rates,
                                       std::size_t from) {
  double lo = rates[from], hi = rates[from];
  for (std::size_t i = from + 1; i < rates.size(); ++i) {
    lo = std::min(lo, rates[i]);
    hi = std::max(hi, rates[i]);
  }
  return {lo, hi};
}

CapacityResult rate_envelope(const CountFn& counts, std::span<const int> n_window,
                             LogBase base, bool take_sup) {
  CapacityResult r;
  r.method = CapacityMethod::finite_n_rate;
  r.base = base;
  r.n_window.assign(n_window.begin(), n_window.end());
  r.per_n_rates = window_rates(counts, n_window, base);
  r.tail_start = static_cast<int>(n_window.size() / 2);
  auto [lo, hi] = suffix_range(r.per_n_rates, n_window.size() / 2);
  r.liminf_estimate = lo;
  r.limsup_estimate = hi;
  r.unclamped = take_sup ? hi : lo;
  r.value = std::max(0.0, r.unclamped);
  return r;
}

}  // namespace

CountFn permissible_counts(const Steganalyzer& g, const EnumBudget& budget) {
  return [g, budget](int n) { return count_permissible(g, n, budget); };
}

CapacityResult noiseless_secure_capacity(const CountFn& counts,
                                         std::span<const int> n_window,
                                         LogBase base) {
  return rate_envelope(counts, n_window, base, /*take_sup=*/false);
}

CapacityResult noiseless_secure_capacity(const Steganalyzer& g,
                                         std::span<const int> n_window,
                                         LogBase base, const EnumBudget& budget) {
  return noiseless_secure_capacity(permissible_counts(g, budget), n_window, base);
}

CapacityResult dmsc_noiseless_capacity(const Steganalyzer& per_letter,
                                       LogBase base) {
  if (per_letter.kind() != Steganalyzer::Kind::memoryless_lift)
    throw std::invalid_argument("per-letter capacity needs a memoryless detector");
  auto k = static_cast<double>(per_letter.permissible_letters().size());
  CapacityResult r;
  r.method = CapacityMethod::closed_form;
  r.base = base;
  r.strong_converse = true;
  r.unclamped = from_nats(std::log(k), base);
  r.value = std::max(0.0, r.unclamped);
  r.liminf_estimate = r.limsup_estimate = r.value;
  return r;
}

CapacityResult awgn_secure_capacity(double c, double se2, double sa2,
                                    LogBase base) {
  if (!(c > 0.0)) throw std::invalid_argument("power threshold must be positive");
  if (se2 < 0.0 || sa2 < 0.0)
    throw std::invalid_argument("noise variances must be nonnegative");
  CapacityResult r;
  r.method = CapacityMethod::closed_form;
  r.base = base;
  r.strong_converse = true;
  if (se2 == 0.0 && sa2 == 0.0) {
    r.unbounded = true;
    r.value = r.unclamped = std::numeric_limits<double>::infinity();
    r.liminf_estimate = r.limsup_estimate = r.value;
    return r;
  }
  r.unclamped = from_nats(0.5 * std::log((c + sa2) / (se2 + sa2)), base);
  r.value = std::max(0.0, r.unclamped);
  r.liminf_estimate = r.limsup_estimate = r.value;
  return r;
}

CapacityResult permissible_set_upper_bound(const CountFn& counts,
                                           std::span<const int> n_window,
                                           LogBase base) {
  return rate_envelope(counts, n_window, base, /*take_sup=*/true);
}

ConverseReport strong_converse_probe(const CountFn& counts,
                                     std::span<const int> n_window, LogBase base,
                                     double tolerance) {
  auto rates = window_rates(counts, n_window, base);
  std::size_t early_from = rates.size() / 2;
  std::size_t late_from = (3 * rates.size()) / 4;
  if (late_from >= rates.size()) late_from = rates.size() - 1;
  auto [early_lo, early_hi] = suffix_range(rates, early_from);
  auto [late_lo, late_hi] = suffix_range(rates, late_from);

  ConverseReport rep;
  rep.tolerance = tolerance;
  rep.liminf_estimate = late_lo;
  rep.limsup_estimate = late_hi;
  rep.early_gap = early_hi - early_lo;
  rep.tail_gap = late_hi - late_lo;
  if (rep.tail_gap <= tolerance)
    rep.verdict = ConverseVerdict::satisfied;
  else if (rep.tail_gap >= 0.8 * rep.early_gap)
    rep.verdict = ConverseVerdict::violated;  // the gap is not closing
  else
    rep.verdict = ConverseVerdict::inconclusive;
  return rep;
}

CapacityResult empirical_dist_capacity(const std::function<TypeVector(int)>& types,
                                       std::span<const int> n_window,
                                       LogBase base) {
  require_window(n_window);
  CapacityResult r;
  r.method = CapacityMethod::finite_n_rate;
  r.base = base;
  r.n_window.assign(n_window.begin(), n_window.end());
  r.per_n_rates.resize(n_window.size());
  r.per_n_lower.resize(n_window.size());
  r.per_n_upper.resize(n_window.size());
  for (std::size_t i = 0; i < n_window.size(); ++i) {
    auto bounds = type_class_entropy_bounds(types(n_window[i]), base);
    r.per_n_rates[i] = bounds.value;
    r.per_n_lower[i] = bounds.lower;
    r.per_n_upper[i] = bounds.upper;
  }
  r.tail_start = static_cast<int>(n_window.size() / 2);
  auto [lo, hi] = suffix_range(r.per_n_rates, n_window.size() / 2);
  r.liminf_estimate = lo;
  r.limsup_estimate = hi;
  r.unclamped = lo;
  r.value = std::max(0.0, lo);
  return r;
}

CapacityResult cachin_capacity(const Distribution& p_source, LogBase base) {
  CapacityResult r;
  r.method = CapacityMethod::closed_form;
  r.base = base;
  r.strong_converse = true;
  r.unclamped = entropy(p_source, base);
  r.value = r.unclamped;
  r.liminf_estimate = r.limsup_estimate = r.value;
  return r;
}

CapacityResult dmsc_secure_capacity(const DmcKernel& w,
                                    const Steganalyzer& per_letter, LogBase base,
                                    double tol) {
  if (!per_letter.has_finite_alphabet() ||
      per_letter.alphabet().size() != w.output_size())
    throw std::invalid_argument("detector alphabet must match the channel output");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  std::size_t nz = w.output_size();
  std::vector<char> flagged(nz, 0);
  for (std::size_t z = 0; z < nz; ++z) {
    int s = static_cast<int>(z);
    flagged[z] = static_cast<char>(per_letter.classify(std::span<const int>(&s, 1)));
  }
  std::vector<std::size_t> secure;
  for (std::size_t x = 0; x < w.input_size(); ++x) {
    bool leaks = false;
    for (std::size_t z = 0; z < nz; ++z)
      if (flagged[z] && w.prob(x, z) != 0.0) {
        leaks = true;
        break;
      }
    if (!leaks) secure.push_back(x);
  }

  CapacityResult r;
  r.method = CapacityMethod::optimization;
  r.base = base;
  r.strong_converse = true;
  if (secure.empty()) return r;  // every letter can trip the detector

  // alternating maximization over inputs restricted to the secure letters;
  // the per-letter divergences give matching lower/upper capacity bounds
  std::size_t m = secure.size();
  std::vector<double> p(m, 1.0 / static_cast<double>(m)), d(m), q(nz);
  double lower = 0.0;
  for (int iter = 0; iter < 1000000; ++iter) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t z = 0; z < nz; ++z) q[z] += p[i] * w.prob(secure[i], z);
    double upper = -std::numeric_limits<double>::infinity();
    lower = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double dx = 0.0;
      for (std::size_t z = 0; z < nz; ++z) {
        double wz = w.prob(secure[i], z);
        if (wz > 0.0) dx += wz * std::log(wz / q[z]);
      }
      d[i] = dx;
      lower += p[i] * dx;
      upper = std::max(upper, dx);
    }
    if (upper - lower < tol) break;
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      p[i] *= std::exp(d[i] - upper);
      norm += p[i];
    }
    for (std::size_t i = 0; i < m; ++i) p[i] /= norm;
  }
  r.unclamped = from_nats(lower, base);
  r.value = std::max(0.0, r.unclamped);
  r.liminf_estimate = r.limsup_estimate = r.value;
  return r;
}

MonotonicityReport monotonicity_check(const Steganalyzer& g, const Steganalyzer& v,
                                      std::span<const int> n_window,
                                      const EnumBudget& budget) {
  require_window(n_window);
  auto both = compose(g, v);
  MonotonicityReport rep;
  rep.ns.assign(n_window.begin(), n_window.end());
  rep.inclusion_holds = true;
  rep.counts_ordered = true;
  rep.composite_bounded = true;
  for (int n : n_window) {
    auto pg = enumerate_permissible(g, n, budget);
    auto pv = enumerate_permissible(v, n, budget);
    BigInt pc = count_permissible(both, n, budget);
    for (const auto& tuple : pg.members)
      if (!std::binary_search(pv.members.begin(), pv.members.end(), tuple)) {
        rep.inclusion_holds = false;
        break;
      }
    if (pg.count > pv.count) rep.counts_ordered = false;
    if (pc > pg.count || pc > pv.count) rep.composite_bounded = false;
    rep.count_g.push_back(pg.count);
    rep.count_v.push_back(pv.count);
    rep.count_composite.push_back(pc);
  }
  return rep;
}

}  // namespace stegocap
