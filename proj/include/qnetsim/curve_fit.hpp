#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qnetsim/error.hpp"

namespace qnetsim {

// Result of fitting either model family:
//   power law      y = A * x^B
//   monomolecular  y = C - D * exp(-E * x), with optional onset k0
//                  (prediction is 0 for x <= k0 when k0 > 0).
struct FitResult {
  enum class Model { power_law, monomolecular };

  Model model = Model::power_law;
  double amplitude = 0.0;  // A
  double exponent = 0.0;   // B
  double ceiling = 0.0;    // C
  double depth = 0.0;      // D
  double rate = 0.0;       // E
  long long onset = 0;     // k0
  double r_squared = 0.0;
  double rmse = 0.0;
  int n_points = 0;
  int excluded_points = 0;
  bool converged = true;

  double predict(double x) const {
    if (model == Model::power_law) return amplitude * std::pow(x, exponent);
    if (onset > 0 && x <= static_cast<double>(onset)) return 0.0;
    return ceiling - depth * std::exp(-rate * x);
  }
};

namespace detail {

struct LineFit {
  double slope = 0.0, intercept = 0.0;
};

inline LineFit ols_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit f;
  if (denom != 0.0) {
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
  } else {
    f.slope = 0.0;
    f.intercept = sy / n;
  }
  return f;
}

// Solve the 3x3 system M*delta = rhs by Gaussian elimination with partial
// pivoting. Returns false when M is numerically singular.
inline bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> rhs,
                   std::array<double, 3>& out) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    if (std::fabs(m[pivot][col]) < 1e-300) return false;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double factor = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  for (int i = 0; i < 3; ++i) out[i] = rhs[i] / m[i][i];
  return true;
}

inline double monomolecular_ssr(const std::vector<double>& x,
                                const std::vector<double>& y, double c, double d,
                                double e) {
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (c - d * std::exp(-e * x[i]));
    ssr += r * r;
  }
  return ssr;
}

}  // namespace detail

// Least-squares power law in log-log space: OLS on (ln x, ln y) gives
// B = slope and A = exp(intercept). Points with y <= 0 are excluded and
// counted; r_squared and rmse are evaluated in log space.
inline FitResult fit_power_law(const std::vector<std::pair<double, double>>& points) {
  std::vector<double> lx, ly;
  lx.reserve(points.size());
  ly.reserve(points.size());
  int excluded = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0)) fail(errc::invalid_parameter, "power-law x values must be > 0");
    if (y > 0.0) {
      lx.push_back(std::log(x));
      ly.push_back(std::log(y));
    } else {
      ++excluded;
    }
  }
  if (lx.size() < 3)
    fail(errc::insufficient_points,
         "power-law fit needs >= 3 points with y > 0, got " +
             std::to_string(lx.size()));

  const detail::LineFit line = detail::ols_line(lx, ly);
  FitResult fit;
  fit.model = FitResult::Model::power_law;
  fit.amplitude = std::exp(line.intercept);
  fit.exponent = line.slope;
  fit.n_points = static_cast<int>(lx.size());
  fit.excluded_points = excluded;

  double mean = 0.0;
  for (double v : ly) mean += v;
  mean /= static_cast<double>(ly.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double pred = line.intercept + line.slope * lx[i];
    ss_res += (ly[i] - pred) * (ly[i] - pred);
    ss_tot += (ly[i] - mean) * (ly[i] - mean);
  }
  fit.rmse = std::sqrt(ss_res / static_cast<double>(lx.size()));
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res < 1e-24 ? 1.0 : 0.0);
  return fit;
}

// Nonlinear least squares for y = C - D*exp(-E*x) over the points with
// x > k0. Initialisation: C0 = max(y); D0, E0 from a log-linear regression on
// ln(C0 + eps - y). Refinement: damped Gauss-Newton (multiplicative damping,
// x10 on residual increase, /10 on decrease), stopping on relative parameter
// change < 1e-9 or 200 iterations.
inline FitResult fit_monomolecular(const std::vector<std::pair<double, double>>& points,
                                   long long k0 = 0) {
  std::vector<double> x, y;
  x.reserve(points.size());
  y.reserve(points.size());
  int excluded = 0;
  for (const auto& [px, py] : points) {
    if (px > static_cast<double>(k0)) {
      x.push_back(px);
      y.push_back(py);
    } else {
      ++excluded;
    }
  }
  if (x.size() < 4)
    fail(errc::insufficient_points,
         "monomolecular fit needs >= 4 points beyond the onset, got " +
             std::to_string(x.size()));

  double c = *std::max_element(y.begin(), y.end());
  const double eps = std::max(1e-6 * std::fabs(c), 1e-12);
  {
    std::vector<double> lz;
    lz.reserve(y.size());
    for (double v : y) lz.push_back(std::log(std::max(c + eps - v, 1e-300)));
    const detail::LineFit line = detail::ols_line(x, lz);
    const double e0 = -line.slope;
    const double d0 = std::exp(line.intercept);
    double e = e0 > 0.0 ? e0 : 1e-3;  // guard: a non-decaying init stalls the Jacobian
    double d = d0;

    double lambda = 1e-3;
    double ssr = detail::monomolecular_ssr(x, y, c, d, e);
    bool converged = false;
    int iter = 0;
    for (; iter < 200; ++iter) {
      // Normal equations J^T J delta = J^T r for residuals r = y - model.
      std::array<std::array<double, 3>, 3> jtj{};
      std::array<double, 3> jtr{};
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = std::exp(-e * x[i]);
        const double r = y[i] - (c - d * u);
        const std::array<double, 3> row{1.0, -u, d * x[i] * u};  // d model / d(C,D,E)
        for (int a = 0; a < 3; ++a) {
          for (int b = 0; b < 3; ++b) jtj[a][b] += row[a] * row[b];
          jtr[a] += row[a] * r;
        }
      }
      std::array<std::array<double, 3>, 3> damped = jtj;
      for (int a = 0; a < 3; ++a) damped[a][a] += lambda * (jtj[a][a] > 0 ? jtj[a][a] : 1.0);
      std::array<double, 3> delta{};
      if (!detail::solve3(damped, jtr, delta)) {
        lambda = std::min(lambda * 10.0, 1e12);
        continue;
      }
      const double nc = c + delta[0], nd = d + delta[1], ne = e + delta[2];
      const double new_ssr = detail::monomolecular_ssr(x, y, nc, nd, ne);
      if (new_ssr <= ssr) {
        const double rel = std::max({std::fabs(delta[0]) / (std::fabs(c) + 1e-12),
                                     std::fabs(delta[1]) / (std::fabs(d) + 1e-12),
                                     std::fabs(delta[2]) / (std::fabs(e) + 1e-12)});
        c = nc;
        d = nd;
        e = ne;
        ssr = new_ssr;
        lambda = std::max(lambda / 10.0, 1e-12);
        if (rel < 1e-9) {
          converged = true;
          break;
        }
      } else {
        lambda = std::min(lambda * 10.0, 1e12);
      }
    }

    FitResult fit;
    fit.model = FitResult::Model::monomolecular;
    fit.ceiling = c;
    fit.depth = d;
    fit.rate = e;
    fit.onset = k0;
    fit.n_points = static_cast<int>(x.size());
    fit.excluded_points = excluded;
    fit.converged = converged;

    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double ss_tot = 0.0;
    for (double v : y) ss_tot += (v - mean) * (v - mean);
    fit.rmse = std::sqrt(ssr / static_cast<double>(x.size()));
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ssr / ss_tot : (ssr < 1e-24 ? 1.0 : 0.0);
    return fit;
  }
}

// Sweep the onset k0 over [0, max_k0] and keep the fit with the smallest
// rmse; near-ties (within relative 1e-9) go to the smaller k0, so dropping
// points off an already-perfect fit cannot push the onset upward. Onsets
// leaving fewer than 4 points are skipped.
inline FitResult fit_monomolecular_auto_onset(
    const std::vector<std::pair<double, double>>& points, long long max_k0 = 50) {
  bool have = false;
  FitResult best;
  for (long long k0 = 0; k0 <= max_k0; ++k0) {
    int usable = 0;
    for (const auto& [px, py] : points)
      if (px > static_cast<double>(k0)) ++usable;
    if (usable < 4) break;
    const FitResult fit = fit_monomolecular(points, k0);
    // absolute tie margin: onsets whose residuals agree to within noise keep
    // the smallest shift instead of drifting along an exactly-fitted tail
    if (!have || fit.rmse + 1e-9 < best.rmse) {
      best = fit;
      have = true;
    }
  }
  if (!have)
    fail(errc::insufficient_points, "no onset leaves enough points to fit");
  return best;
}

}  // namespace qnetsim
