#include "stegocap/prob.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace stegocap {

namespace {
constexpr double kSumTol = 1e-12;

void check_prob_vector(const std::vector<double>& p, const char* what) {
  if (p.empty())
    throw std::invalid_argument(std::string(what) + ": empty probability vector");
  double sum = 0;
  for (double x : p) {
    if (!(x >= 0))
      throw std::invalid_argument(std::string(what) + ": negative entry");
    sum += x;
  }
  if (std::fabs(sum - 1.0) > kSumTol)
    throw std::invalid_argument(std::string(what) + ": entries sum to " +
                                std::to_string(sum) + ", expected 1");
}

double entropy_nats(const std::vector<double>& p) {
  double acc = 0;
  for (double x : p)
    if (x > 0) acc -= x * std::log(x);
  return acc;
}
}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  check_prob_vector(probs_, "Distribution");
}

Distribution Distribution::uniform(std::size_t k) {
  if (k == 0) throw std::invalid_argument("Distribution::uniform: empty alphabet");
  return Distribution(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Distribution Distribution::point_mass(std::size_t k, std::size_t at) {
  if (at >= k) throw std::invalid_argument("Distribution::point_mass: index out of range");
  std::vector<double> p(k, 0.0);
  p[at] = 1.0;
  return Distribution(std::move(p));
}

JointDistribution::JointDistribution(std::size_t nx, std::size_t nz,
                                     std::vector<double> probs)
    : nx_(nx), nz_(nz), p_(std::move(probs)) {
  if (nx_ == 0 || nz_ == 0 || p_.size() != nx_ * nz_)
    throw std::invalid_argument("JointDistribution: shape mismatch");
  check_prob_vector(p_, "JointDistribution");
}

Distribution JointDistribution::input_marginal() const {
  std::vector<double> m(nx_, 0.0);
  for (std::size_t x = 0; x < nx_; ++x)
    for (std::size_t z = 0; z < nz_; ++z) m[x] += prob(x, z);
  return Distribution(std::move(m));
}

Distribution JointDistribution::output_marginal() const {
  std::vector<double> m(nz_, 0.0);
  for (std::size_t x = 0; x < nx_; ++x)
    for (std::size_t z = 0; z < nz_; ++z) m[z] += prob(x, z);
  return Distribution(std::move(m));
}

TypeVector::TypeVector(long long n_, std::vector<long long> counts_)
    : n(n_), counts(std::move(counts_)) {
  if (n <= 0 || counts.empty())
    throw std::invalid_argument("TypeVector: need a positive length and an alphabet");
  long long sum = 0;
  for (long long c : counts) {
    if (c < 0) throw std::invalid_argument("TypeVector: negative count");
    sum += c;
  }
  if (sum != n) throw std::invalid_argument("TypeVector: counts do not sum to n");
}

Distribution TypeVector::empirical() const {
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  return Distribution(std::move(p));
}

double entropy(const Distribution& p, LogBase base) {
  return from_nats(entropy_nats(p.probs()), base);
}

double mutual_information(const JointDistribution& j, LogBase base) {
  auto px = j.input_marginal();
  auto pz = j.output_marginal();
  double acc = 0;
  for (std::size_t x = 0; x < j.input_size(); ++x)
    for (std::size_t z = 0; z < j.output_size(); ++z) {
      double pxz = j.prob(x, z);
      if (pxz > 0) acc += pxz * std::log(pxz / (px[x] * pz[z]));
    }
  return from_nats(acc, base);
}

double information_density(const JointDistribution& j, std::size_t x,
                           std::size_t z, LogBase base) {
  if (x >= j.input_size() || z >= j.output_size())
    throw std::invalid_argument("information_density: index out of range");
  double px = j.input_marginal()[x];
  double pz = j.output_marginal()[z];
  if (pz <= 0)
    throw std::domain_error("information_density: output symbol has probability zero");
  if (px <= 0)
    throw std::domain_error("information_density: conditioning input has probability zero");
  double cond = j.prob(x, z) / px;  // p(z|x)
  if (cond <= 0) return -std::numeric_limits<double>::infinity();
  return from_nats(std::log(cond) - std::log(pz), base);
}

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;  // exact: the running product is always a binomial coefficient
  }
  return r;
}

BigInt type_class_size(const TypeVector& t) {
  // multinomial as a telescoping product of binomials, exact at every step
  BigInt r = 1;
  long long placed = 0;
  for (long long c : t.counts) {
    placed += c;
    r *= binomial(placed, c);
  }
  return r;
}

TypeClassBounds type_class_entropy_bounds(const TypeVector& t, LogBase base) {
  TypeClassBounds b;
  double n = static_cast<double>(t.n);
  double h = entropy(t.empirical(), LogBase::nats);
  long long support = 0;
  for (long long c : t.counts)
    if (c > 0) ++support;
  double correction = static_cast<double>(support) *
                      std::log(std::sqrt(2.0 * M_PI * n) * std::exp(0.5));
  b.upper = from_nats(h, base);
  b.lower = from_nats(h - correction / n, base);
  b.value = from_nats(log_big(type_class_size(t)) / n, base);
  return b;
}

}  // namespace stegocap
