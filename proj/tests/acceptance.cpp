// Acceptance gate: one self-contained check per shipped guarantee, each
// printing a single PASS/FAIL line with its runtime.  Exit status is nonzero
// if any check fails.
#include "oracles.hpp"
#include "stegocap/capacity.hpp"
#include "stegocap/coding.hpp"
#include "stegocap/spectrum.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace stegocap;

namespace {

int g_failures = 0;

void run_check(int id, const std::string& label, const std::function<bool()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = fn();
  } catch (const std::exception& e) {
    ok = false;
    note = std::string(" (exception: ") + e.what() + ")";
  }
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  std::printf("%s criterion %2d: %s [%.2fs]%s\n", ok ? "PASS" : "FAIL", id,
              label.c_str(), dt.count(), note.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::vector<int> window_to(int n_max) {
  std::vector<int> w(n_max);
  for (int i = 0; i < n_max; ++i) w[i] = i + 1;
  return w;
}

DmcKernel random_dmc(std::mt19937_64& rng, std::size_t in, std::size_t out) {
  std::vector<double> rows(in * out);
  for (std::size_t x = 0; x < in; ++x) {
    double s = 0;
    for (std::size_t y = 0; y < out; ++y) {
      rows[x * out + y] = std::uniform_real_distribution<>(0.02, 1.0)(rng);
      s += rows[x * out + y];
    }
    for (std::size_t y = 0; y < out; ++y) rows[x * out + y] /= s;
  }
  return DmcKernel(in, out, rows);
}

// ---- criterion 1: exact small-block member sets of the majority detector --
bool check_majority_sets() {
  using Tuples = std::vector<std::vector<int>>;
  const Tuples p1{{0}};
  const Tuples p2{{0, 0}, {0, 1}, {1, 0}};
  const Tuples p3{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  const Tuples p4{{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 0, 1, 1},
                  {0, 1, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 0},
                  {1, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}};
  auto g = Steganalyzer::sum_threshold();
  auto e1 = enumerate_permissible(g, 1);
  auto e2 = enumerate_permissible(g, 2);
  auto e3 = enumerate_permissible(g, 3);
  auto e4 = enumerate_permissible(g, 4);
  return e1.members == p1 && e2.members == p2 && e3.members == p3 &&
         e4.members == p4 && e1.count == 1 && e2.count == 3 && e3.count == 4 &&
         e4.count == 11;
}

// ---- criterion 2: majority counts vs enumeration and the parity form ------
bool check_majority_counts() {
  for (int n = 1; n <= 20; ++n)
    if (count_sum_permissible(n) != oracle::count_low_weight_binary(n))
      return false;
  // recurrence sweep against the parity closed form at every length
  auto sweep = count_sum_permissible_sweep(10000);
  for (int n = 1; n <= 10000; ++n)
    if (sweep[n - 1] != sum_permissible_closed_form(n)) return false;
  // the defining binomial sum ties into the sweep on a spot grid
  for (int n : {1,   2,   3,    5,    8,    13,   21,  34,  55,  89,  144,
                233, 377, 610,  987,  999,  1000, 1597, 2584, 4181, 5000,
                6765, 9999, 10000})
    if (count_sum_permissible(n) != sweep[n - 1]) return false;
  return true;
}

// ---- criterion 3: majority rates near one bit, exact value at n = 999 -----
bool check_majority_rates() {
  auto r = noiseless_secure_capacity(Steganalyzer::sum_threshold(), window_to(999),
                                     LogBase::bits);
  if (std::fabs(r.per_n_rates[998] - 998.0 / 999.0) > 1e-12) return false;
  for (int n = 101; n <= 999; n += 2)
    if (std::fabs(r.per_n_rates[n - 1] - 1.0) > 0.01) return false;
  return true;
}

// ---- criterion 4: memoryless product structure at every block length ------
bool check_memoryless_products() {
  std::mt19937_64 rng(20250815);
  for (int t = 0; t < 50; ++t) {
    std::size_t k = 2 + rng() % 5;  // alphabet size up to 6
    std::vector<int> letters;
    for (std::size_t s = 0; s < k; ++s)
      if (rng() % 2) letters.push_back(static_cast<int>(s));
    if (letters.empty()) letters.push_back(static_cast<int>(rng() % k));
    auto g = Steganalyzer::memoryless_lift(FiniteAlphabet::indexed(k), letters);
    double per_letter_rate = std::log2(static_cast<double>(letters.size()));
    BigInt expect = 1;
    for (int n = 1; n <= 8; ++n) {
      expect *= static_cast<long long>(letters.size());
      auto ps = enumerate_permissible(g, n);
      if (ps.count != expect) return false;
      double rate = log_big(ps.count) / (n * std::log(2.0));
      if (std::fabs(rate - per_letter_rate) > 1e-12) return false;
    }
  }
  return true;
}

// ---- criterion 5: gaussian capacity table rows and regimes ----------------
bool check_gaussian_rows() {
  std::mt19937_64 rng(5150);
  for (int t = 0; t < 200; ++t) {
    double c = std::uniform_real_distribution<>(0.05, 20.0)(rng);
    double se2 = std::uniform_real_distribution<>(0.01, 10.0)(rng);
    double sa2 = std::uniform_real_distribution<>(0.01, 10.0)(rng);
    auto full = awgn_secure_capacity(c, se2, sa2, LogBase::bits);
    double row1 = 0.5 * std::log2((c + sa2) / (se2 + sa2));
    if (std::fabs(full.unclamped - row1) > 1e-12) return false;
    auto no_attack = awgn_secure_capacity(c, se2, 0.0, LogBase::bits);
    if (std::fabs(no_attack.unclamped - 0.5 * std::log2(c / se2)) > 1e-12)
      return false;
    auto no_encoder = awgn_secure_capacity(c, 0.0, sa2, LogBase::bits);
    if (std::fabs(no_encoder.unclamped - 0.5 * std::log2((c + sa2) / sa2)) > 1e-12)
      return false;
    // strong attacker noise pushes the rate under 1e-3 bits
    double big = 1000.0 * std::max(c, se2);
    if (awgn_secure_capacity(c, se2, big, LogBase::bits).value > 1e-3) return false;
    // encoder noise at or past the threshold shuts the channel exactly
    if (awgn_secure_capacity(c, c + se2, sa2, LogBase::bits).value != 0.0)
      return false;
    if (awgn_secure_capacity(c, c, sa2, LogBase::bits).value != 0.0) return false;
  }
  return awgn_secure_capacity(1.0, 0.0, 0.0, LogBase::bits).unbounded;
}

// ---- criterion 6: random-coding bracket around the gaussian capacity ------
bool check_gaussian_bracket() {
  AwgnExperimentParams p;
  p.c = 3.0;
  p.se2 = 1.0;
  p.sa2 = 1.0;
  p.n = 512;
  p.trials = 2000;
  p.seed = 90210;
  // the power back-off is an experiment knob; 12% of the threshold keeps the
  // finite-n detection rate visible below 5% while leaving the capacity gap
  // wide enough to bracket (the closed-form capacity here is 0.5 bits)
  p.margin_fraction = 0.12;

  p.rate_bits = 0.7 * 0.5;
  auto low = awgn_experiment(p);
  if (!(low.epsilon.value <= 0.1 && low.delta.value <= 0.05)) return false;

  p.rate_bits = 1.3 * 0.5;
  auto high = awgn_experiment(p);
  return high.epsilon.value >= 0.9;
}

// ---- criterion 7: occupancy-count sandwich tightening with n --------------
bool check_type_sandwich() {
  const double h = 1.4854752972273343195;  // entropy of (.5,.3,.2), bits
  for (int n : {10, 100, 1000}) {
    long long a = std::llround(0.5 * n), b = std::llround(0.3 * n);
    auto bounds =
        type_class_entropy_bounds(TypeVector(n, {a, b, n - a - b}), LogBase::bits);
    if (!(bounds.lower <= bounds.value + 1e-12 &&
          bounds.value <= bounds.upper + 1e-12))
      return false;
    if (n == 1000 && std::fabs(bounds.value - h) > 0.02) return false;
  }
  return true;
}

// ---- criterion 8: mimicry rates agree with the source entropy -------------
bool check_mimicry_rates() {
  std::vector<std::vector<double>> sources{
      {0.5, 0.5}, {0.5, 0.25, 0.25}, {0.5, 0.3, 0.2}};
  std::vector<int> window{100, 500, 1000, 2000};
  for (auto& probs : sources) {
    Distribution src(probs);
    double h = entropy(src, LogBase::bits);
    auto types = [&probs](int n) {
      std::vector<long long> counts(probs.size());
      long long used = 0;
      for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
        counts[i] = std::llround(probs[i] * n);
        used += counts[i];
      }
      counts.back() = n - used;
      return TypeVector(n, counts);
    };
    auto emp = empirical_dist_capacity(types, window, LogBase::bits);
    if (std::fabs(emp.value - h) > 0.02) return false;
    // the rate at n = 2000 itself is already inside the tolerance
    if (std::fabs(emp.per_n_rates.back() - h) > 0.02) return false;
    auto mimic = cachin_capacity(src, LogBase::bits);
    if (std::fabs(mimic.value - h) > 1e-12) return false;
  }
  return true;
}

// ---- criterion 9: count monotonicity under inclusion and composition ------
bool check_count_monotonicity() {
  std::mt19937_64 rng(424242);
  auto win = window_to(5);
  for (int t = 0; t < 100; ++t) {
    // nested per-letter sets force inclusion of the lifted families
    std::size_t k = 2 + rng() % 3;
    std::vector<int> small, large;
    for (std::size_t s = 0; s < k; ++s)
      if (rng() % 3 != 0) large.push_back(static_cast<int>(s));
    if (large.empty()) large.push_back(0);
    for (int s : large)
      if (rng() % 2) small.push_back(s);
    if (small.empty()) small.push_back(large[0]);
    auto g = Steganalyzer::memoryless_lift(FiniteAlphabet::indexed(k), small);
    auto v = Steganalyzer::memoryless_lift(FiniteAlphabet::indexed(k), large);
    auto rep = monotonicity_check(g, v, win);
    if (!(rep.inclusion_holds && rep.counts_ordered && rep.composite_bounded))
      return false;
  }
  for (int t = 0; t < 100; ++t) {
    // arbitrary pairs: the composite count never exceeds either component
    std::size_t k = 2 + rng() % 3;
    auto pick = [&]() {
      std::vector<int> letters;
      for (std::size_t s = 0; s < k; ++s)
        if (rng() % 2) letters.push_back(static_cast<int>(s));
      if (letters.empty()) letters.push_back(static_cast<int>(rng() % k));
      return Steganalyzer::memoryless_lift(FiniteAlphabet::indexed(k), letters);
    };
    auto g = pick(), v = pick();
    auto rep = monotonicity_check(g, v, win);
    if (!rep.composite_bounded) return false;
    for (std::size_t i = 0; i < rep.ns.size(); ++i)
      if (rep.count_composite[i] > rep.count_g[i] ||
          rep.count_composite[i] > rep.count_v[i])
        return false;
  }
  return true;
}

// ---- criterion 10: constructed codes meet the threshold-decoding bound ----
bool check_threshold_bound() {
  std::mt19937_64 rng(314159);
  int built = 0;
  for (int t = 0; t < 20; ++t) {
    std::size_t in = 2 + rng() % 2, out = 2 + rng() % 2;
    // n >= 3 keeps the candidate pool larger than any target below
    int n = 3 + static_cast<int>(rng() % 4);
    auto w = random_dmc(rng, in, out);
    BlockKernel q(w, n);
    auto src = BlockDist::iid(Distribution::uniform(in), n);
    double gamma = std::uniform_real_distribution<>(0.02, 0.25)(rng);
    int m = 2 + static_cast<int>(rng() % 4);
    auto rep = feinstein_code(q, src, gamma, m);
    double rhs = rep.outage_term + std::exp(-static_cast<double>(n) * gamma);
    if (std::fabs(rhs - rep.bound_rhs) > 1e-12) return false;
    if (rep.reached_target) {
      ++built;
      if (rep.epsilon > rep.bound_rhs + 1e-12) return false;
    }
  }
  return built == 20;  // at these sizes the construction always completes
}

// ---- criterion 11: exact error/detection vs brute force, and monte carlo --
bool check_exact_and_mc() {
  std::mt19937_64 rng(271828);
  for (int t = 0; t < 20; ++t) {
    std::size_t in = 2 + rng() % 2;
    int n = 2 + static_cast<int>(rng() % 3);
    auto w = random_dmc(rng, in, 2);  // binary output so the detector applies
    std::size_t m = 2 + rng() % 3;
    std::vector<std::vector<int>> words;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<int> cw(n);
      for (int j = 0; j < n; ++j) cw[j] = static_cast<int>(rng() % in);
      words.push_back(cw);
    }
    Code code(n, words, DecoderKind::maximum_likelihood, 2);
    BlockKernel q(w, n);
    auto sum = Steganalyzer::sum_threshold();

    // independent reference: materialized rows, scan-max decoding
    std::vector<std::vector<int>> outputs;
    oracle::for_each_tuple(2, n,
                           [&](const std::vector<int>& z) { outputs.push_back(z); });
    double eps_ref = 0, delta_ref = 0;
    std::vector<std::vector<double>> rows(m, std::vector<double>(outputs.size()));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t zi = 0; zi < outputs.size(); ++zi) {
        double pr = 1;
        for (int j = 0; j < n; ++j) pr *= w.prob(words[i][j], outputs[zi][j]);
        rows[i][zi] = pr;
      }
    for (std::size_t zi = 0; zi < outputs.size(); ++zi) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < m; ++i)
        if (rows[i][zi] > rows[best][zi]) best = i;
      for (std::size_t i = 0; i < m; ++i)
        if (i != best) eps_ref += rows[i][zi];
    }
    eps_ref /= static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t zi = 0; zi < outputs.size(); ++zi)
        if (sum.classify(outputs[zi]) == 1) delta_ref += rows[i][zi];
    delta_ref /= static_cast<double>(m);

    auto eps = error_probability(code, q, SimMode::exact_mode());
    auto del = detection_probability(code, q, sum, SimMode::exact_mode());
    if (std::fabs(eps.value - eps_ref) > 1e-12) return false;
    if (std::fabs(del.value - delta_ref) > 1e-12) return false;

    std::uint64_t draws = 60000;
    auto eps_mc = error_probability(code, q, SimMode::monte_carlo(draws, 1000 + t));
    auto del_mc =
        detection_probability(code, q, sum, SimMode::monte_carlo(draws, 2000 + t));
    double se_e =
        std::sqrt(std::max(eps_ref * (1 - eps_ref), 1e-9) / static_cast<double>(draws));
    double se_d = std::sqrt(std::max(delta_ref * (1 - delta_ref), 1e-9) /
                            static_cast<double>(draws));
    if (std::fabs(eps_mc.value - eps_ref) > 3 * se_e + 1e-9) return false;
    if (std::fabs(del_mc.value - delta_ref) > 3 * se_d + 1e-9) return false;
  }
  return true;
}

// ---- criterion 12: series detectors beaten by an in-between negation ------
bool check_two_noise() {
  for (int n : {3, 5, 7}) {
    auto rep = two_noise_demo(n);
    if (!rep.composite_empty) return false;
    if (rep.codebook_size != BigInt(1) << (n - 1)) return false;
    if (std::fabs(rep.rate_bits - static_cast<double>(n - 1) / n) > 1e-12)
      return false;
    if (rep.epsilon != 0.0 || rep.delta != 0.0) return false;
  }
  return true;
}

// ---- criterion 13: spectrum means and degenerate laws ---------------------
bool check_spectrum_sanity() {
  std::mt19937_64 rng(161803);
  for (int t = 0; t < 10; ++t) {
    std::size_t in = 2 + rng() % 2, out = 2 + rng() % 2;
    int n = 1 + static_cast<int>(rng() % 6);
    auto w = random_dmc(rng, in, out);
    std::vector<double> probs(in);
    double s = 0;
    for (auto& v : probs) {
      v = std::uniform_real_distribution<>(0.05, 1.0)(rng);
      s += v;
    }
    for (auto& v : probs) v /= s;
    Distribution letter(probs);
    auto input = BlockDist::iid(letter, n);
    BlockKernel q(w, n);
    auto spec = information_spectrum(input, q, SpectrumMode::exact_mode(),
                                     LogBase::nats);
    double mi = mutual_information(joint_from_input_and_kernel(letter, w),
                                   LogBase::nats);
    if (std::fabs(spec.mean() - mi) > 1e-10) return false;
  }
  // uniform input over a permissible set has a degenerate entropy spectrum
  auto g = Steganalyzer::sum_threshold();
  for (int n : {3, 4, 6}) {
    auto ps = enumerate_permissible(g, n);
    auto u = BlockDist::uniform_on(2, n, ps.members);
    auto spec = entropy_spectrum(u, SpectrumMode::exact_mode(), LogBase::bits);
    if (spec.atoms.size() != 1) return false;
    if (spec.atoms[0].prob != 1.0) return false;
    double want = log_big(ps.count) / static_cast<double>(n) / std::log(2.0);
    if (std::fabs(spec.atoms[0].value - want) > 1e-14) return false;
  }
  return true;
}

}  // namespace

int main() {
  run_check(1, "majority detector member sets at n = 1..4", check_majority_sets);
  run_check(2, "majority counts: defining sum, sweep, closed form to n = 10000",
            check_majority_counts);
  run_check(3, "majority rates: exact 998/999 at n = 999, near one bit beyond 101",
            check_majority_rates);
  run_check(4, "memoryless lifts: exact product counts for 50 random families",
            check_memoryless_products);
  run_check(5, "gaussian capacity rows and limiting regimes", check_gaussian_rows);
  run_check(6, "gaussian random-coding bracket at 0.7x and 1.3x capacity",
            check_gaussian_bracket);
  run_check(7, "occupancy sandwich bounds tighten to the entropy",
            check_type_sandwich);
  run_check(8, "mimicry rates match the source entropy within 0.02 bits",
            check_mimicry_rates);
  run_check(9, "count monotonicity under inclusion and composition",
            check_count_monotonicity);
  run_check(10, "threshold-decoder codes meet the exact bound on 20 channels",
            check_threshold_bound);
  run_check(11, "exact error/detection equal brute force; monte carlo in 3 SE",
            check_exact_and_mc);
  run_check(12, "sign detectors in series beaten by negation at n = 3, 5, 7",
            check_two_noise);
  run_check(13, "spectrum means equal mutual information; degenerate laws exact",
            check_spectrum_sanity);

  if (g_failures == 0) {
    std::printf("acceptance: all 13 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
