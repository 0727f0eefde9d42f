#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "stegocap/prob.hpp"

#include <cmath>
#include <random>

using namespace stegocap;

namespace {
// frozen high-precision reference values (40-digit arithmetic, rounded)
constexpr double kH011Bits = 0.4999159581645279956;   // binary entropy of 0.11
constexpr double kH01Bits = 0.4689955935892812213;    // binary entropy of 0.10
constexpr double kH03Bits = 0.8812908992306926182;    // binary entropy of 0.30
constexpr double kH532Bits = 1.4854752972273343195;   // entropy of (.5,.3,.2)
constexpr double kLn09Over05 = 0.5877866649021190082; // ln(0.9/0.5)
constexpr double kQuarterLn6 = 0.4479398673070137502; // (1/4) ln 6
constexpr double kLn2 = 0.6931471805599453094;
}  // namespace

TEST_CASE("distribution validation") {
  CHECK_NOTHROW(Distribution({0.5, 0.5}));
  CHECK_NOTHROW(Distribution({1.0}));
  CHECK_THROWS_AS(Distribution({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution({1.2, -0.2}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution({}), std::invalid_argument);
  // a 1e-13 slack in the total is accepted
  CHECK_NOTHROW(Distribution({0.5, 0.5 + 5e-13}));

  auto u = Distribution::uniform(4);
  CHECK(u.size() == 4);
  CHECK(u[2] == doctest::Approx(0.25).epsilon(1e-15));
  auto pm = Distribution::point_mass(3, 1);
  CHECK(pm[0] == 0.0);
  CHECK(pm[1] == 1.0);
}

TEST_CASE("entropy matches frozen references") {
  CHECK(entropy(Distribution({0.11, 0.89}), LogBase::bits) ==
        doctest::Approx(kH011Bits).epsilon(1e-14));
  CHECK(entropy(Distribution({0.1, 0.9}), LogBase::bits) ==
        doctest::Approx(kH01Bits).epsilon(1e-14));
  CHECK(entropy(Distribution({0.3, 0.7}), LogBase::bits) ==
        doctest::Approx(kH03Bits).epsilon(1e-14));
  CHECK(entropy(Distribution({0.5, 0.3, 0.2}), LogBase::bits) ==
        doctest::Approx(kH532Bits).epsilon(1e-14));
  CHECK(entropy(Distribution({0.5, 0.25, 0.25}), LogBase::bits) ==
        doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("entropy conventions and invariants") {
  // 0 log 0 = 0: a point mass has zero entropy exactly
  CHECK(entropy(Distribution::point_mass(5, 2), LogBase::bits) == 0.0);
  CHECK(entropy(Distribution::point_mass(5, 2), LogBase::nats) == 0.0);
  // uniform reaches log k
  CHECK(entropy(Distribution::uniform(8), LogBase::bits) ==
        doctest::Approx(3.0).epsilon(1e-15));
  // base change is a fixed factor
  Distribution p({0.2, 0.5, 0.3});
  CHECK(entropy(p, LogBase::nats) ==
        doctest::Approx(entropy(p, LogBase::bits) * kLn2).epsilon(1e-15));

  // random distributions: 0 <= H <= log k, and agreement with the oracle sum
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    int k = 2 + static_cast<int>(rng() % 5);
    std::vector<double> w(k);
    double s = 0;
    for (auto& x : w) {
      x = std::uniform_real_distribution<>(0.0, 1.0)(rng);
      s += x;
    }
    for (auto& x : w) x /= s;
    Distribution d(w);
    double h = entropy(d, LogBase::nats);
    CHECK(h >= -1e-12);
    CHECK(h <= std::log(static_cast<double>(k)) + 1e-12);
    CHECK(h == doctest::Approx(oracle::entropy_nats(w)).epsilon(1e-12));
  }
}

TEST_CASE("joint distribution marginals and mutual information") {
  // BSC(0.1) with uniform input, built by hand
  JointDistribution j(2, 2, {0.45, 0.05, 0.05, 0.45});
  auto px = j.input_marginal();
  auto pz = j.output_marginal();
  CHECK(px[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pz[1] == doctest::Approx(0.5).epsilon(1e-15));

  double mi = mutual_information(j, LogBase::bits);
  CHECK(mi == doctest::Approx(1.0 - kH01Bits).epsilon(1e-13));
  CHECK(mutual_information(j, LogBase::nats) ==
        doctest::Approx(oracle::mutual_information_nats(2, 2, {0.45, 0.05, 0.05, 0.45}))
            .epsilon(1e-13));

  // independent pair has zero mutual information
  JointDistribution ind(2, 3, {0.2 * 0.5, 0.3 * 0.5, 0.5 * 0.5,
                               0.2 * 0.5, 0.3 * 0.5, 0.5 * 0.5});
  CHECK(std::fabs(mutual_information(ind, LogBase::bits)) <= 1e-12);

  CHECK_THROWS_AS(JointDistribution(2, 2, {0.5, 0.5, 0.5, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("information density values and sentinels") {
  JointDistribution j(2, 2, {0.45, 0.05, 0.05, 0.45});
  CHECK(information_density(j, 0, 0, LogBase::nats) ==
        doctest::Approx(kLn09Over05).epsilon(1e-14));
  CHECK(information_density(j, 0, 0, LogBase::bits) ==
        doctest::Approx(kLn09Over05 / kLn2).epsilon(1e-14));

  // p(z|x) = 0 with p(z) > 0: minus infinity sentinel
  JointDistribution holes(2, 2, {0.5, 0.0, 0.25, 0.25});
  double v = information_density(holes, 0, 1, LogBase::bits);
  CHECK(std::isinf(v));
  CHECK(v < 0);

  // p(z) = 0: domain error
  JointDistribution deadcol(2, 2, {0.5, 0.0, 0.5, 0.0});
  CHECK_THROWS_AS(information_density(deadcol, 0, 1, LogBase::bits),
                  std::domain_error);

  // conditioning on a zero-probability input: domain error
  JointDistribution deadrow(2, 2, {0.0, 0.0, 0.5, 0.5});
  CHECK_THROWS_AS(information_density(deadrow, 0, 0, LogBase::bits),
                  std::domain_error);
}

TEST_CASE("expected information density equals mutual information") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    std::size_t nx = 2 + rng() % 3, nz = 2 + rng() % 3;
    std::vector<double> cells(nx * nz);
    double s = 0;
    for (auto& c : cells) {
      c = std::uniform_real_distribution<>(0.01, 1.0)(rng);
      s += c;
    }
    for (auto& c : cells) c /= s;
    JointDistribution j(nx, nz, cells);
    double acc = 0;
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t z = 0; z < nz; ++z)
        acc += j.prob(x, z) * information_density(j, x, z, LogBase::nats);
    CHECK(acc == doctest::Approx(mutual_information(j, LogBase::nats)).epsilon(1e-12));
  }
}

TEST_CASE("binomial coefficients agree with Pascal's triangle") {
  for (int n = 0; n <= 25; ++n)
    for (int k = -1; k <= n + 1; ++k)
      CHECK(binomial(n, k) == oracle::pascal_binomial(n, k));
  // a large value stays exact
  CHECK(binomial(200, 100) == oracle::pascal_binomial(200, 100));
}

TEST_CASE("type vector validation and empirical distribution") {
  CHECK_THROWS_AS(TypeVector(4, {2, 1}), std::invalid_argument);   // sums to 3
  CHECK_THROWS_AS(TypeVector(4, {5, -1}), std::invalid_argument);  // negative
  TypeVector t(4, {2, 2});
  auto e = t.empirical();
  CHECK(e[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("type class size matches direct enumeration") {
  CHECK(type_class_size(TypeVector(4, {2, 2})) == 6);
  CHECK(type_class_size(TypeVector(3, {3, 0})) == 1);
  CHECK(type_class_size(TypeVector(5, {0, 5})) == 1);

  std::mt19937_64 rng(99);
  for (int t = 0; t < 30; ++t) {
    int k = 2 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 7);
    std::vector<long long> counts(k, 0);
    for (int i = 0; i < n; ++i) ++counts[rng() % k];
    TypeVector tv(n, counts);
    CHECK(type_class_size(tv) == oracle::count_tuples_with_type(counts));
  }
}

TEST_CASE("type classes partition the tuple space") {
  // sum over all occupancies of |T| recovers k^n exactly
  for (int k = 2; k <= 3; ++k)
    for (int n = 1; n <= 10; ++n) {
      BigInt total = 0;
      std::vector<long long> counts(k, 0);
      // iterate compositions of n into k parts
      std::function<void(int, long long)> rec = [&](int pos, long long left) {
        if (pos == k - 1) {
          counts[pos] = left;
          total += type_class_size(TypeVector(n, counts));
          return;
        }
        for (long long c = 0; c <= left; ++c) {
          counts[pos] = c;
          rec(pos + 1, left - c);
        }
      };
      rec(0, n);
      BigInt expect = 1;
      for (int i = 0; i < n; ++i) expect *= k;
      CHECK(total == expect);
    }
}

TEST_CASE("type class entropy sandwich") {
  // n = 4, counts (2,2): exact value is (1/4) ln 6
  auto b = type_class_entropy_bounds(TypeVector(4, {2, 2}), LogBase::nats);
  CHECK(b.value == doctest::Approx(kQuarterLn6).epsilon(1e-14));
  CHECK(b.upper == doctest::Approx(kLn2).epsilon(1e-14));
  CHECK(b.lower <= b.value + 1e-12);
  CHECK(b.value <= b.upper + 1e-12);

  std::mt19937_64 rng(123);
  for (int t = 0; t < 60; ++t) {
    int k = 2 + static_cast<int>(rng() % 4);
    int n = 1 + static_cast<int>(rng() % 60);
    std::vector<long long> counts(k, 0);
    for (int i = 0; i < n; ++i) ++counts[rng() % k];
    auto bb = type_class_entropy_bounds(TypeVector(n, counts), LogBase::bits);
    CHECK(bb.lower <= bb.value + 1e-12);
    CHECK(bb.value <= bb.upper + 1e-12);
    // the upper bound is the empirical entropy
    TypeVector tv(n, counts);
    CHECK(bb.upper ==
          doctest::Approx(entropy(tv.empirical(), LogBase::bits)).epsilon(1e-13));
  }
}

TEST_CASE("big integer logarithm") {
  CHECK(log_big(BigInt(1)) == 0.0);
  CHECK(log_big(BigInt(2)) == doctest::Approx(kLn2).epsilon(1e-15));
  // 2^998: the log must be exact to double precision
  BigInt big = BigInt(1) << 998;
  CHECK(log_big(big) == doctest::Approx(998.0 * kLn2).epsilon(1e-15));
  BigInt huge = BigInt(1) << 9999;
  CHECK(log_big(huge) == doctest::Approx(9999.0 * kLn2).epsilon(1e-15));
}
