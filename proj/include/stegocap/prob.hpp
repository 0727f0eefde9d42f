#pragma once

#include "stegocap/common.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace stegocap {

// probability vector over a finite alphabet; entries nonnegative, sum within
// 1e-12 of one (validated on construction)
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);
  static Distribution uniform(std::size_t k);
  static Distribution point_mass(std::size_t k, std::size_t at);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// joint distribution over a finite input/output pair, row-major p[x*nz + z]
class JointDistribution {
 public:
  JointDistribution(std::size_t nx, std::size_t nz, std::vector<double> probs);

  std::size_t input_size() const { return nx_; }
  std::size_t output_size() const { return nz_; }
  double prob(std::size_t x, std::size_t z) const { return p_[x * nz_ + z]; }
  Distribution input_marginal() const;
  Distribution output_marginal() const;

 private:
  std::size_t nx_, nz_;
  std::vector<double> p_;
};

// occupancy counts of an n-tuple over a finite alphabet; counts sum to n
struct TypeVector {
  long long n = 0;
  std::vector<long long> counts;

  TypeVector(long long n_, std::vector<long long> counts_);
  Distribution empirical() const;
};

// Shannon entropy with the 0 log 0 = 0 convention
double entropy(const Distribution& p, LogBase base);
double mutual_information(const JointDistribution& j, LogBase base);

// log[ p(z|x) / p(z) ].  Returns -infinity when p(z|x) = 0 but p(z) > 0;
// throws std::domain_error when p(z) = 0 or the conditioning input has
// probability zero.
double information_density(const JointDistribution& j, std::size_t x,
                           std::size_t z, LogBase base);

BigInt binomial(long long n, long long k);

// exact number of n-tuples with the given occupancy counts (multinomial)
BigInt type_class_size(const TypeVector& t);

// two-sided bound on the normalized log type-class size:
//   lower <= (1/n) log |T| <= upper,  upper = H(empirical),
//   lower = H(empirical) - (s/n) log(sqrt(2 pi n) e^{1/2})
// where s is the number of strictly positive counts; `value` is the exact
// normalized log size
struct TypeClassBounds {
  double lower = 0;
  double upper = 0;
  double value = 0;
};
TypeClassBounds type_class_entropy_bounds(const TypeVector& t, LogBase base);

}  // namespace stegocap
