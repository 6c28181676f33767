#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qnetsim/error.hpp"
#include "qnetsim/rng.hpp"
#include "qnetsim/topology.hpp"

namespace qnetsim {

enum class DistributionKind { uniform, gaussian, power_law };

inline const char* distribution_kind_name(DistributionKind k) {
  switch (k) {
    case DistributionKind::uniform: return "uniform";
    case DistributionKind::gaussian: return "gaussian";
    case DistributionKind::power_law: return "powerlaw";
  }
  return "unknown";
}

// How connection-request endpoints are drawn from {1..n}.
struct RequestDistribution {
  DistributionKind kind = DistributionKind::uniform;
  double mu = 50.0;       // gaussian
  double sigma = 20.0;    // gaussian, > 0
  double exponent = -0.75;  // power law, < 0: p(i) proportional to i^exponent
};

inline void validate(const RequestDistribution& d) {
  if (d.kind == DistributionKind::gaussian && !(d.sigma > 0.0))
    fail(errc::invalid_parameter, "sigma must be > 0");
  if (d.kind == DistributionKind::power_law && !(d.exponent < 0.0))
    fail(errc::invalid_parameter, "exponent must be < 0");
}

// Normalized probability mass over ids 1..n (index 0 unused). Uniform and
// gaussian masses are exact; the gaussian one integrates the rounded-and-
// truncated sampling rule below.
inline std::vector<double> request_pmf(const RequestDistribution& d, int n) {
  if (n < 1) fail(errc::invalid_parameter, "n must be >= 1");
  validate(d);
  std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
  switch (d.kind) {
    case DistributionKind::uniform:
      for (int i = 1; i <= n; ++i) p[static_cast<std::size_t>(i)] = 1.0 / n;
      break;
    case DistributionKind::gaussian: {
      // Mass of round(X) == i under X ~ N(mu, sigma), renormalized over the
      // acceptance window (resampling until the rounded value lands in range).
      const auto cdf = [&](double x) {
        return 0.5 * std::erfc(-(x - d.mu) / (d.sigma * std::sqrt(2.0)));
      };
      double total = 0.0;
      for (int i = 1; i <= n; ++i) {
        const double m = cdf(i + 0.5) - cdf(i - 0.5);
        p[static_cast<std::size_t>(i)] = m;
        total += m;
      }
      if (total <= 0.0) fail(errc::invalid_parameter, "gaussian mass vanishes on 1..n");
      for (int i = 1; i <= n; ++i) p[static_cast<std::size_t>(i)] /= total;
      break;
    }
    case DistributionKind::power_law: {
      double total = 0.0;
      for (int i = 1; i <= n; ++i) {
        const double w = std::pow(static_cast<double>(i), d.exponent);
        p[static_cast<std::size_t>(i)] = w;
        total += w;
      }
      for (int i = 1; i <= n; ++i) p[static_cast<std::size_t>(i)] /= total;
      break;
    }
  }
  return p;
}

// Draws endpoint ids. Holds the power-law inverse-CDF table so repeated draws
// cost O(log n); stateless with respect to the random stream otherwise.
class NodeSampler {
 public:
  NodeSampler(const RequestDistribution& d, int n) : dist_(d), n_(n) {
    if (n < 1) fail(errc::invalid_parameter, "n must be >= 1");
    validate(d);
    if (d.kind == DistributionKind::power_law) {
      cdf_.resize(static_cast<std::size_t>(n));
      double total = 0.0;
      for (int i = 1; i <= n; ++i) {
        total += std::pow(static_cast<double>(i), d.exponent);
        cdf_[static_cast<std::size_t>(i) - 1] = total;
      }
      for (double& c : cdf_) c /= total;
      cdf_.back() = 1.0;
    }
  }

  int n() const { return n_; }

  NodeId operator()(Rng& rng) const {
    switch (dist_.kind) {
      case DistributionKind::uniform:
        return 1 + static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n_)));
      case DistributionKind::gaussian: {
        // Round to the nearest id and resample (not clamp) until in range, so
        // out-of-range mass is redistributed proportionally.
        for (long long attempt = 0; attempt < 1000000; ++attempt) {
          const double x = rng.normal(dist_.mu, dist_.sigma);
          const long long id = std::llround(x);
          if (id >= 1 && id <= n_) return static_cast<NodeId>(id);
        }
        fail(errc::invalid_parameter, "gaussian sampling never lands in 1..n");
      }
      case DistributionKind::power_law: {
        const double u = rng.uniform01();
        const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<NodeId>(it - cdf_.begin()) + 1;
      }
    }
    fail(errc::invalid_parameter, "unknown distribution kind");
  }

 private:
  RequestDistribution dist_;
  int n_;
  std::vector<double> cdf_;
};

// Single endpoint draw from {1..n}.
inline NodeId sample_node(const RequestDistribution& d, int n, Rng& rng) {
  return NodeSampler(d, n)(rng);
}

// Unordered request pair with distinct endpoints: the first endpoint is kept
// and only the second is redrawn until it differs.
inline std::pair<NodeId, NodeId> sample_pair(const NodeSampler& sampler, Rng& rng) {
  if (sampler.n() < 2) fail(errc::invalid_parameter, "pair sampling needs n >= 2");
  const NodeId first = sampler(rng);
  NodeId second;
  do {
    second = sampler(rng);
  } while (second == first);
  return {std::min(first, second), std::max(first, second)};
}

inline std::pair<NodeId, NodeId> sample_pair(const RequestDistribution& d, int n,
                                             Rng& rng) {
  if (n < 2) fail(errc::invalid_parameter, "pair sampling needs n >= 2");
  return sample_pair(NodeSampler(d, n), rng);
}

}  // namespace qnetsim
