#include "stegocap/steganalyzer.hpp"

#include <algorithm>
#include <cmath>

namespace stegocap {

namespace {
// k^n if it stays within the budget, otherwise throws
std::uint64_t tuple_space_size(std::size_t k, int n, const EnumBudget& budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budget.max_tuples / k)
      throw budget_error("enumeration over " + std::to_string(k) + "^" +
                         std::to_string(n) + " tuples exceeds the budget of " +
                         std::to_string(budget.max_tuples));
    total *= k;
  }
  if (total > budget.max_tuples)
    throw budget_error("enumeration exceeds the tuple budget");
  return total;
}

// visits all n-tuples over {0..k-1} in lexicographic order
template <typename Fn>
void for_each_tuple(std::size_t k, int n, Fn&& fn) {
  std::vector<int> t(n, 0);
  while (true) {
    fn(t);
    int i = n - 1;
    while (i >= 0 && t[i] == static_cast<int>(k) - 1) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
}

bool same_alphabet(const FiniteAlphabet& a, const FiniteAlphabet& b) {
  return a.values == b.values;
}
}  // namespace

FiniteAlphabet FiniteAlphabet::indexed(std::size_t k) {
  FiniteAlphabet a;
  a.values.resize(k);
  for (std::size_t i = 0; i < k; ++i) a.values[i] = static_cast<double>(i);
  return a;
}

FiniteAlphabet FiniteAlphabet::pm_one() { return FiniteAlphabet{{-1.0, 1.0}}; }

FiniteAlphabet FiniteAlphabet::pm_one_zero() {
  return FiniteAlphabet{{-1.0, 0.0, 1.0}};
}

const FiniteAlphabet& Steganalyzer::alphabet() const {
  if (!has_finite_alphabet())
    throw std::logic_error("steganalyzer has no finite alphabet");
  return alphabet_;
}

Steganalyzer Steganalyzer::sum_threshold() {
  Steganalyzer g;
  g.kind_ = Kind::sum_threshold;
  g.alphabet_ = FiniteAlphabet::indexed(2);
  return g;
}

Steganalyzer Steganalyzer::variance_threshold(double c) {
  if (c < 0) throw std::invalid_argument("variance_threshold: negative threshold");
  Steganalyzer g;
  g.kind_ = Kind::variance_threshold;
  g.threshold_ = c;
  return g;
}

Steganalyzer Steganalyzer::variance_threshold(FiniteAlphabet a, double c) {
  auto g = variance_threshold(c);
  if (a.values.empty())
    throw std::invalid_argument("variance_threshold: empty alphabet");
  g.alphabet_ = std::move(a);
  return g;
}

Steganalyzer Steganalyzer::memoryless_lift(FiniteAlphabet a,
                                           std::vector<int> permissible_letters) {
  if (a.values.empty())
    throw std::invalid_argument("memoryless_lift: empty alphabet");
  std::sort(permissible_letters.begin(), permissible_letters.end());
  if (std::adjacent_find(permissible_letters.begin(), permissible_letters.end()) !=
      permissible_letters.end())
    throw std::invalid_argument("memoryless_lift: duplicate letter");
  for (int s : permissible_letters)
    if (s < 0 || s >= static_cast<int>(a.size()))
      throw std::invalid_argument("memoryless_lift: letter out of range");
  Steganalyzer g;
  g.kind_ = Kind::memoryless_lift;
  g.letter_allowed_.assign(a.size(), 0);
  for (int s : permissible_letters) g.letter_allowed_[s] = 1;
  g.alphabet_ = std::move(a);
  g.permissible_letters_ = std::move(permissible_letters);
  return g;
}

Steganalyzer Steganalyzer::vacuous(FiniteAlphabet a) {
  std::vector<int> all(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) all[i] = static_cast<int>(i);
  return memoryless_lift(std::move(a), std::move(all));
}

Steganalyzer Steganalyzer::explicit_sets(
    FiniteAlphabet a, std::map<int, std::vector<std::vector<int>>> members) {
  if (a.values.empty())
    throw std::invalid_argument("explicit_sets: empty alphabet");
  for (auto& [n, tuples] : members) {
    if (n <= 0) throw std::invalid_argument("explicit_sets: block length must be positive");
    for (auto& t : tuples) {
      if (static_cast<int>(t.size()) != n)
        throw std::invalid_argument("explicit_sets: tuple length mismatch");
      for (int s : t)
        if (s < 0 || s >= static_cast<int>(a.size()))
          throw std::invalid_argument("explicit_sets: symbol out of range");
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  }
  Steganalyzer g;
  g.kind_ = Kind::explicit_sets;
  g.alphabet_ = std::move(a);
  g.explicit_members_ = std::move(members);
  return g;
}

Steganalyzer Steganalyzer::type_match(FiniteAlphabet a,
                                      std::function<TypeVector(int)> target) {
  if (a.values.empty()) throw std::invalid_argument("type_match: empty alphabet");
  if (!target) throw std::invalid_argument("type_match: missing target family");
  Steganalyzer g;
  g.kind_ = Kind::type_match;
  g.alphabet_ = std::move(a);
  g.target_type_ = std::move(target);
  return g;
}

Steganalyzer Steganalyzer::mean_sign(MeanSignDirection d) {
  Steganalyzer g;
  g.kind_ = Kind::mean_sign;
  g.direction_ = d;
  return g;
}

Steganalyzer Steganalyzer::mean_sign(FiniteAlphabet a, MeanSignDirection d) {
  auto g = mean_sign(d);
  if (a.values.empty()) throw std::invalid_argument("mean_sign: empty alphabet");
  g.alphabet_ = std::move(a);
  return g;
}

Steganalyzer Steganalyzer::composite(Steganalyzer left, Steganalyzer right) {
  bool lf = left.has_finite_alphabet(), rf = right.has_finite_alphabet();
  if (lf != rf || (lf && !same_alphabet(left.alphabet_, right.alphabet_)))
    throw std::invalid_argument("composite: component alphabets differ");
  Steganalyzer g;
  g.kind_ = Kind::composite;
  g.alphabet_ = left.alphabet_;
  g.left_ = std::make_shared<Steganalyzer>(std::move(left));
  g.right_ = std::make_shared<Steganalyzer>(std::move(right));
  return g;
}

int Steganalyzer::classify(std::span<const int> y) const {
  if (y.empty()) throw std::invalid_argument("classify: empty tuple");
  switch (kind_) {
    case Kind::sum_threshold: {
      long long sum = 0;
      for (int s : y) {
        if (s != 0 && s != 1)
          throw std::invalid_argument("classify: binary symbol expected");
        sum += s;
      }
      return sum > static_cast<long long>(y.size()) / 2 ? 1 : 0;
    }
    case Kind::memoryless_lift: {
      for (int s : y) {
        if (s < 0 || s >= static_cast<int>(alphabet_.size()))
          throw std::invalid_argument("classify: symbol out of range");
        if (!letter_allowed_[s]) return 1;
      }
      return 0;
    }
    case Kind::explicit_sets: {
      auto it = explicit_members_.find(static_cast<int>(y.size()));
      if (it == explicit_members_.end())
        throw std::invalid_argument("classify: no stored set for this block length");
      std::vector<int> key(y.begin(), y.end());
      return std::binary_search(it->second.begin(), it->second.end(), key) ? 0 : 1;
    }
    case Kind::type_match: {
      int n = static_cast<int>(y.size());
      std::vector<long long> counts(alphabet_.size(), 0);
      for (int s : y) {
        if (s < 0 || s >= static_cast<int>(alphabet_.size()))
          throw std::invalid_argument("classify: symbol out of range");
        ++counts[s];
      }
      TypeVector want = target_type_(n);
      if (want.counts.size() != counts.size() || want.n != n)
        throw std::invalid_argument("classify: target type has the wrong shape");
      return counts == want.counts ? 0 : 1;
    }
    case Kind::variance_threshold:
    case Kind::mean_sign: {
      if (!has_finite_alphabet())
        throw std::invalid_argument("classify: detector is real-valued; use classify_values");
      std::vector<double> vals(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        int s = y[i];
        if (s < 0 || s >= static_cast<int>(alphabet_.size()))
          throw std::invalid_argument("classify: symbol out of range");
        vals[i] = alphabet_.values[s];
      }
      return classify_values(vals);
    }
    case Kind::composite:
      return (left_->classify(y) == 1 || right_->classify(y) == 1) ? 1 : 0;
  }
  throw std::logic_error("classify: unknown kind");
}

int Steganalyzer::classify_values(std::span<const double> y) const {
  if (y.empty()) throw std::invalid_argument("classify_values: empty tuple");
  switch (kind_) {
    case Kind::variance_threshold: {
      double acc = 0;
      for (double v : y) acc += v * v;
      return acc / static_cast<double>(y.size()) > threshold_ ? 1 : 0;
    }
    case Kind::mean_sign: {
      double sum = 0;
      for (double v : y) sum += v;
      if (direction_ == MeanSignDirection::triggers_on_negative_sum)
        return sum < 0 ? 1 : 0;
      return sum > 0 ? 1 : 0;
    }
    case Kind::composite:
      return (left_->classify_values(y) == 1 || right_->classify_values(y) == 1)
                 ? 1
                 : 0;
    default:
      throw std::invalid_argument(
          "classify_values: detector is defined on symbol tuples");
  }
}

const std::vector<int>& Steganalyzer::permissible_letters() const {
  if (kind_ != Kind::memoryless_lift)
    throw std::logic_error("permissible_letters: not a memoryless detector");
  return permissible_letters_;
}

double Steganalyzer::threshold() const {
  if (kind_ != Kind::variance_threshold)
    throw std::logic_error("threshold: not a variance detector");
  return threshold_;
}

MeanSignDirection Steganalyzer::direction() const {
  if (kind_ != Kind::mean_sign)
    throw std::logic_error("direction: not a sign detector");
  return direction_;
}

const Steganalyzer& Steganalyzer::left() const {
  if (kind_ != Kind::composite) throw std::logic_error("left: not a composite");
  return *left_;
}

const Steganalyzer& Steganalyzer::right() const {
  if (kind_ != Kind::composite) throw std::logic_error("right: not a composite");
  return *right_;
}

const std::map<int, std::vector<std::vector<int>>>&
Steganalyzer::explicit_members() const {
  if (kind_ != Kind::explicit_sets)
    throw std::logic_error("explicit_members: not an explicit-set detector");
  return explicit_members_;
}

TypeVector Steganalyzer::target_type(int n) const {
  if (kind_ != Kind::type_match)
    throw std::logic_error("target_type: not a type-match detector");
  return target_type_(n);
}

PermissibleSet enumerate_permissible(const Steganalyzer& g, int n,
                                     const EnumBudget& budget) {
  if (n <= 0) throw std::invalid_argument("enumerate_permissible: n must be positive");
  if (!g.has_finite_alphabet())
    throw std::invalid_argument("enumerate_permissible: real-valued detector");
  std::size_t k = g.alphabet().size();
  tuple_space_size(k, n, budget);
  PermissibleSet out;
  out.n = n;
  out.count = 0;
  for_each_tuple(k, n, [&](const std::vector<int>& t) {
    if (g.classify(t) == 0) {
      out.members.push_back(t);
      ++out.count;
    }
  });
  return out;
}

namespace {
BigInt count_by_enumeration(const Steganalyzer& g, int n, const EnumBudget& budget) {
  std::size_t k = g.alphabet().size();
  tuple_space_size(k, n, budget);
  BigInt count = 0;
  for_each_tuple(k, n, [&](const std::vector<int>& t) {
    if (g.classify(t) == 0) ++count;
  });
  return count;
}
}  // namespace

BigInt count_permissible(const Steganalyzer& g, int n, const EnumBudget& budget) {
  if (n <= 0) throw std::invalid_argument("count_permissible: n must be positive");
  switch (g.kind()) {
    case Steganalyzer::Kind::sum_threshold:
      return sum_permissible_closed_form(n);
    case Steganalyzer::Kind::memoryless_lift: {
      BigInt per_letter = static_cast<long long>(g.permissible_letters().size());
      return boost::multiprecision::pow(per_letter, static_cast<unsigned>(n));
    }
    case Steganalyzer::Kind::type_match:
      return type_class_size(g.target_type(n));
    case Steganalyzer::Kind::explicit_sets: {
      auto it = g.explicit_members().find(n);
      if (it == g.explicit_members().end())
        throw std::invalid_argument("count_permissible: no stored set for n");
      return static_cast<long long>(it->second.size());
    }
    default:
      if (!g.has_finite_alphabet())
        throw std::invalid_argument("count_permissible: real-valued detector");
      return count_by_enumeration(g, n, budget);
  }
}

BigInt count_sum_permissible(int n) {
  if (n <= 0) throw std::invalid_argument("count_sum_permissible: n must be positive");
  // running binomial C(n, i), added up through i = floor(n/2)
  BigInt term = 1, total = 0;
  for (int i = 0; i <= n / 2; ++i) {
    total += term;
    term *= (n - i);
    term /= (i + 1);
  }
  return total;
}

BigInt sum_permissible_closed_form(int n) {
  if (n <= 0) throw std::invalid_argument("sum_permissible_closed_form: n must be positive");
  BigInt half = BigInt(1) << (n - 1);
  if (n % 2 == 1) return half;
  return half + binomial(n, n / 2) / 2;
}

std::vector<BigInt> count_sum_permissible_sweep(int n_max) {
  if (n_max <= 0) throw std::invalid_argument("count_sum_permissible_sweep: n_max must be positive");
  // S(n) = 2 S(n-1) + C(n-1, floor((n-1)/2)) for even n,
  //        2 S(n-1) - C(n-1, floor((n-1)/2)) for odd n,
  // which follows from splitting each count with Pascal's rule
  std::vector<BigInt> out(n_max);
  BigInt s = 1;        // S(1)
  BigInt central = 1;  // C(m, floor(m/2)) at m = 1
  out[0] = s;
  for (int n = 2; n <= n_max; ++n) {
    s = 2 * s + (n % 2 == 0 ? central : -central);
    out[n - 1] = s;
    // advance central from m = n-1 to m = n (both divisions exact)
    if (n % 2 == 0) {
      central *= n;
      central /= n / 2;
    } else {
      central *= n;
      central /= (n + 1) / 2;
    }
  }
  return out;
}

Steganalyzer lift_memoryless(FiniteAlphabet a, std::vector<int> permissible_letters) {
  return Steganalyzer::memoryless_lift(std::move(a), std::move(permissible_letters));
}

Steganalyzer compose(const Steganalyzer& g, const Steganalyzer& v) {
  return Steganalyzer::composite(g, v);
}

}  // namespace stegocap
