#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "qnetsim/request_sampling.hpp"
#include "qnetsim/rng.hpp"

using qnetsim::DistributionKind;
using qnetsim::Error;
using qnetsim::NodeSampler;
using qnetsim::RequestDistribution;
using qnetsim::Rng;

namespace {

RequestDistribution uniform_dist() { return {}; }

RequestDistribution gaussian_dist(double mu, double sigma) {
  RequestDistribution d;
  d.kind = DistributionKind::gaussian;
  d.mu = mu;
  d.sigma = sigma;
  return d;
}

RequestDistribution powerlaw_dist(double exponent) {
  RequestDistribution d;
  d.kind = DistributionKind::power_law;
  d.exponent = exponent;
  return d;
}

}  // namespace

TEST_CASE("pmfs are normalised", "[request_sampling]") {
  for (const auto& d :
       {uniform_dist(), gaussian_dist(50, 20), powerlaw_dist(-0.75)}) {
    const auto pmf = qnetsim::request_pmf(d, 100);
    REQUIRE(pmf.size() == 101);
    const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
    REQUIRE_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("uniform pmf is flat", "[request_sampling]") {
  const auto pmf = qnetsim::request_pmf(uniform_dist(), 10);
  for (int i = 1; i <= 10; ++i)
    REQUIRE_THAT(pmf[static_cast<std::size_t>(i)],
                 Catch::Matchers::WithinAbs(0.1, 1e-12));
}

TEST_CASE("power-law pmf has the documented head-to-tail ratio",
          "[request_sampling]") {
  const auto pmf = qnetsim::request_pmf(powerlaw_dist(-0.75), 100);
  // p(1)/p(100) = 100^0.75
  REQUIRE_THAT(pmf[1] / pmf[100],
               Catch::Matchers::WithinRel(std::pow(100.0, 0.75), 1e-9));
  for (int i = 1; i < 100; ++i)
    REQUIRE(pmf[static_cast<std::size_t>(i)] > pmf[static_cast<std::size_t>(i) + 1]);
}

TEST_CASE("gaussian pmf peaks at the mean and decays symmetrically",
          "[request_sampling]") {
  const auto pmf = qnetsim::request_pmf(gaussian_dist(50, 20), 100);
  REQUIRE(pmf[50] > pmf[40]);
  REQUIRE(pmf[40] > pmf[30]);
  REQUIRE(pmf[30] > pmf[10]);
  // integer grid symmetric around 50 up to renormalisation of the [1,100] window
  REQUIRE_THAT(pmf[40], Catch::Matchers::WithinRel(pmf[60], 1e-6));
}

TEST_CASE("uniform sampler is unbiased across nodes", "[request_sampling]") {
  Rng rng(31);
  NodeSampler sampler(uniform_dist(), 10);
  std::vector<int> counts(11, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const int v = sampler(rng);
    REQUIRE(v >= 1);
    REQUIRE(v <= 10);
    ++counts[static_cast<std::size_t>(v)];
  }
  for (int i = 1; i <= 10; ++i) {
    REQUIRE(counts[static_cast<std::size_t>(i)] > 9500);
    REQUIRE(counts[static_cast<std::size_t>(i)] < 10500);
  }
}

TEST_CASE("gaussian sampler matches its parameters", "[request_sampling]") {
  Rng rng(37);
  NodeSampler sampler(gaussian_dist(50, 20), 100);
  double sum = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const int v = sampler(rng);
    REQUIRE(v >= 1);
    REQUIRE(v <= 100);
    sum += v;
  }
  const double mean = sum / draws;
  REQUIRE(mean > 48.0);
  REQUIRE(mean < 52.0);
}

TEST_CASE("tight gaussian concentrates on the mean", "[request_sampling]") {
  Rng rng(41);
  NodeSampler sampler(gaussian_dist(50, 0.1), 100);
  for (int i = 0; i < 1000; ++i) REQUIRE(sampler(rng) == 50);
}

TEST_CASE("power-law sampler tracks its pmf", "[request_sampling]") {
  Rng rng(43);
  const auto d = powerlaw_dist(-0.75);
  NodeSampler sampler(d, 100);
  const auto pmf = qnetsim::request_pmf(d, 100);
  std::vector<int> counts(101, 0);
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(sampler(rng))];
  REQUIRE_THAT(static_cast<double>(counts[1]) / draws,
               Catch::Matchers::WithinRel(pmf[1], 0.05));
  REQUIRE_THAT(static_cast<double>(counts[2]) / draws,
               Catch::Matchers::WithinRel(pmf[2], 0.05));
}

TEST_CASE("pairs are distinct, ordered and keep the first draw",
          "[request_sampling]") {
  Rng rng(47);
  NodeSampler sampler(uniform_dist(), 5);
  for (int i = 0; i < 2000; ++i) {
    const auto [u, v] = qnetsim::sample_pair(sampler, rng);
    REQUIRE(u < v);
    REQUIRE(u >= 1);
    REQUIRE(v <= 5);
  }
}

TEST_CASE("two nodes always produce the only pair", "[request_sampling]") {
  Rng rng(53);
  for (const auto& d :
       {uniform_dist(), gaussian_dist(1.5, 2.0), powerlaw_dist(-0.5)}) {
    for (int i = 0; i < 100; ++i) {
      const auto [u, v] = qnetsim::sample_pair(d, 2, rng);
      REQUIRE(u == 1);
      REQUIRE(v == 2);
    }
  }
}

TEST_CASE("sampling a pair needs two nodes", "[request_sampling]") {
  Rng rng(59);
  REQUIRE_THROWS_AS(qnetsim::sample_pair(uniform_dist(), 1, rng), Error);
}

TEST_CASE("parameter validation", "[request_sampling]") {
  REQUIRE_THROWS_AS(qnetsim::validate(gaussian_dist(50, 0.0)), Error);
  REQUIRE_THROWS_AS(qnetsim::validate(gaussian_dist(50, -3.0)), Error);
  REQUIRE_THROWS_AS(qnetsim::validate(powerlaw_dist(0.0)), Error);
  REQUIRE_THROWS_AS(qnetsim::validate(powerlaw_dist(0.75)), Error);
  REQUIRE_NOTHROW(qnetsim::validate(uniform_dist()));
  REQUIRE_NOTHROW(qnetsim::validate(powerlaw_dist(-0.25)));
}

TEST_CASE("sampler replay is deterministic", "[request_sampling]") {
  Rng a(61), b(61);
  NodeSampler s1(gaussian_dist(50, 20), 100);
  NodeSampler s2(gaussian_dist(50, 20), 100);
  for (int i = 0; i < 1000; ++i) REQUIRE(s1(a) == s2(b));
}
