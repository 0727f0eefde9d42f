#pragma once

#include "stegocap/common.hpp"
#include "stegocap/prob.hpp"

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace stegocap {

// finite output alphabet: symbol i carries the real value values[i] (used by
// statistics such as sums, signs, and empirical second moments)
struct FiniteAlphabet {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  static FiniteAlphabet indexed(std::size_t k);  // values 0, 1, ..., k-1
  static FiniteAlphabet pm_one();                // {-1, +1}
  static FiniteAlphabet pm_one_zero();           // {-1, 0, +1}
};

enum class MeanSignDirection { triggers_on_negative_sum, triggers_on_positive_sum };

// a detector family: classify(y) = 1 flags an n-tuple as suspicious, 0 lets it
// through; the permissible set at block length n is classify^{-1}(0)
class Steganalyzer {
 public:
  enum class Kind {
    sum_threshold,        // binary: flags sum(y) > floor(n/2)
    variance_threshold,   // flags (1/n) sum y_i^2 > c
    memoryless_lift,      // flags any letter outside a per-letter allowed set
    explicit_sets,        // membership in a stored set per block length
    type_match,           // flags tuples whose occupancy differs from a target
    mean_sign,            // flags strictly negative (or positive) sums
    composite             // flags if either component flags
  };

  static Steganalyzer sum_threshold();
  static Steganalyzer variance_threshold(double c);                 // real line
  static Steganalyzer variance_threshold(FiniteAlphabet a, double c);
  static Steganalyzer memoryless_lift(FiniteAlphabet a,
                                      std::vector<int> permissible_letters);
  static Steganalyzer vacuous(FiniteAlphabet a);  // never flags
  static Steganalyzer explicit_sets(
      FiniteAlphabet a, std::map<int, std::vector<std::vector<int>>> members);
  static Steganalyzer type_match(FiniteAlphabet a,
                                 std::function<TypeVector(int)> target);
  static Steganalyzer mean_sign(MeanSignDirection d);                // real line
  static Steganalyzer mean_sign(FiniteAlphabet a, MeanSignDirection d);
  static Steganalyzer composite(Steganalyzer left, Steganalyzer right);

  Kind kind() const { return kind_; }
  bool has_finite_alphabet() const { return !alphabet_.values.empty(); }
  const FiniteAlphabet& alphabet() const;

  // finite-alphabet classification; y holds symbol indices
  int classify(std::span<const int> y) const;
  // real-valued classification (statistic-based detectors only)
  int classify_values(std::span<const double> y) const;

  // variant accessors (throw std::logic_error on kind mismatch)
  const std::vector<int>& permissible_letters() const;
  double threshold() const;
  MeanSignDirection direction() const;
  const Steganalyzer& left() const;
  const Steganalyzer& right() const;
  const std::map<int, std::vector<std::vector<int>>>& explicit_members() const;
  TypeVector target_type(int n) const;

 private:
  Steganalyzer() = default;

  Kind kind_{};
  FiniteAlphabet alphabet_;                 // empty values => real line
  std::vector<int> permissible_letters_;    // memoryless_lift
  std::vector<char> letter_allowed_;        // memoryless_lift fast lookup
  double threshold_ = 0;                    // variance_threshold
  MeanSignDirection direction_{};           // mean_sign
  std::map<int, std::vector<std::vector<int>>> explicit_members_;
  std::function<TypeVector(int)> target_type_;
  std::shared_ptr<const Steganalyzer> left_, right_;  // composite
};

// the permissible tuples at one block length; members are lexicographically
// sorted symbol-index tuples (populated only when materialized)
struct PermissibleSet {
  int n = 0;
  BigInt count;
  std::vector<std::vector<int>> members;
};

// exhaustive scan of all |Y|^n tuples (throws budget_error past the budget);
// members are materialized
PermissibleSet enumerate_permissible(const Steganalyzer& g, int n,
                                     const EnumBudget& budget = {});

// exact count, via a variant closed form when one exists, otherwise by
// enumeration within the budget
BigInt count_permissible(const Steganalyzer& g, int n,
                         const EnumBudget& budget = {});

// number of binary n-tuples whose sum stays at or below floor(n/2), computed
// as the defining binomial sum
BigInt count_sum_permissible(int n);

// the same count in closed form: 2^{n-1} for odd n, 2^{n-1} + C(n, n/2)/2 for
// even n
BigInt sum_permissible_closed_form(int n);

// counts for every n in [1, n_max] via a Pascal-style recurrence; one cheap
// big-integer step per n, independent of both routes above
std::vector<BigInt> count_sum_permissible_sweep(int n_max);

// per-letter allowed set lifted to a memoryless detector family (the block-n
// permissible set is the n-fold product of the per-letter set)
Steganalyzer lift_memoryless(FiniteAlphabet a,
                             std::vector<int> permissible_letters);

// series composition: a tuple is permissible iff it passes both detectors
Steganalyzer compose(const Steganalyzer& g, const Steganalyzer& v);

}  // namespace stegocap
