#pragma once

#include "stegocap/channel.hpp"
#include "stegocap/common.hpp"
#include "stegocap/prob.hpp"
#include "stegocap/steganalyzer.hpp"

#include <functional>
#include <span>
#include <vector>

namespace stegocap {

enum class CapacityMethod { closed_form, finite_n_rate, optimization };

// capacity estimates are never extrapolated beyond the computed window; the
// window and per-n rates ship with the number so the asymptotic caveat is
// visible.  `value` is clamped at zero, `unclamped` keeps the raw number.
struct CapacityResult {
  double value = 0;
  double unclamped = 0;
  CapacityMethod method = CapacityMethod::closed_form;
  LogBase base = LogBase::bits;
  bool unbounded = false;
  bool strong_converse = false;

  std::vector<int> n_window;
  std::vector<double> per_n_rates;
  std::vector<double> per_n_lower;   // sandwich bounds where available
  std::vector<double> per_n_upper;
  int tail_start = 0;                // index where the tail estimate begins
  double liminf_estimate = 0;
  double limsup_estimate = 0;
};

// exact |P_n| supplier; adapters exist for detector families and synthetic
// count sequences
using CountFn = std::function<BigInt(int)>;

CountFn permissible_counts(const Steganalyzer& g, const EnumBudget& budget = {});

// (1/n) log |P_n| over the window; value = tail-infimum estimate over the
// second half of the window
CapacityResult noiseless_secure_capacity(const CountFn& counts,
                                         std::span<const int> n_window,
                                         LogBase base);
CapacityResult noiseless_secure_capacity(const Steganalyzer& g,
                                         std::span<const int> n_window,
                                         LogBase base,
                                         const EnumBudget& budget = {});

// memoryless per-letter detector: the rate is log of the per-letter allowed
// count at every n, so the limit is exact and the strong converse holds
CapacityResult dmsc_noiseless_capacity(const Steganalyzer& per_letter,
                                       LogBase base);

// power-constrained Gaussian pipeline with an empirical-second-moment
// detector at threshold c: (1/2) log((c + sa2) / (se2 + sa2)), clamped at
// zero; se2 = sa2 = 0 with c > 0 reports unbounded
CapacityResult awgn_secure_capacity(double c, double se2, double sa2,
                                    LogBase base);

// tail-supremum estimate of (1/n) log |P_n| (an upper bound on any achievable
// rate within the window)
CapacityResult permissible_set_upper_bound(const CountFn& counts,
                                           std::span<const int> n_window,
                                           LogBase base);

enum class ConverseVerdict { satisfied, violated, inconclusive };

struct ConverseReport {
  ConverseVerdict verdict = ConverseVerdict::inconclusive;
  double liminf_estimate = 0;
  double limsup_estimate = 0;
  double tail_gap = 0;        // sup - inf over the late tail
  double early_gap = 0;       // sup - inf over the earlier tail marker
  double tolerance = 0;
};

// finite-window probe of whether lower and upper rate envelopes meet:
// `satisfied` when the late-tail gap is within tolerance, `violated` when the
// gap is persistent (the late gap has not shrunk below 80% of the earlier
// gap), otherwise `inconclusive`
ConverseReport strong_converse_probe(const CountFn& counts,
                                     std::span<const int> n_window,
                                     LogBase base, double tolerance = 0.01);

// rates (1/n) log |T(p_n)| for a family of target occupancies, with the
// entropy sandwich carried per n
CapacityResult empirical_dist_capacity(const std::function<TypeVector(int)>& types,
                                       std::span<const int> n_window,
                                       LogBase base);

// entropy of the covertext source (the capacity of a perfectly undetectable
// mimic of it)
CapacityResult cachin_capacity(const Distribution& p_source, LogBase base);

// capacity of a DMC restricted to input letters that can never produce a
// flagged output letter; alternating maximization to `tol` (nats)
CapacityResult dmsc_secure_capacity(const DmcKernel& w,
                                    const Steganalyzer& per_letter,
                                    LogBase base, double tol = 1e-9);

struct MonotonicityReport {
  std::vector<int> ns;
  std::vector<BigInt> count_g;
  std::vector<BigInt> count_v;
  std::vector<BigInt> count_composite;
  bool inclusion_holds = false;      // P_{g,n} subset of P_{v,n} at every n
  bool counts_ordered = false;       // |P_{g,n}| <= |P_{v,n}| at every n
  bool composite_bounded = false;    // |P_comp| <= min(|P_g|, |P_v|) at every n
};

// enumerative check that stricter detectors leave fewer tuples, and that a
// series composition is at least as strict as both components
MonotonicityReport monotonicity_check(const Steganalyzer& g,
                                      const Steganalyzer& v,
                                      std::span<const int> n_window,
                                      const EnumBudget& budget = {});

}  // namespace stegocap
