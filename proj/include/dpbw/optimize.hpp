// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace dpbw {

struct MaximizeOptions {
  int grid_points = 1024;
  // Golden-section stops once the bracket is this fraction of [lo, hi].
  double relative_width = 1e-10;
};

struct ScalarMaximum {
  double argmax = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

namespace detail {

inline constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

template <typename F>
ScalarMaximum golden_section(F& f, double a, double b, double width,
                             int& evals) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  evals += 2;
  while (b - a > width) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  return fc >= fd ? ScalarMaximum{c, fc, 0} : ScalarMaximum{d, fd, 0};
}

// Bisection on the sign of a decreasing-through-zero slope.
template <typename S>
double slope_root(S& slope, double a, double b) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (slope(mid) > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

struct NoSlope {
  double operator()(double) const { return 0.0; }
};

template <typename F, typename S, bool kHasSlope>
ScalarMaximum maximize_impl(F& f, S& slope, double lo, double hi,
                            const MaximizeOptions& opts) {
  ScalarMaximum best;
  if (!(hi > lo)) {
    best.argmax = lo;
    best.value = f(lo);
    best.evaluations = 1;
    return best;
  }
  const int n = std::max(opts.grid_points, 3);
  std::vector<double> grid(static_cast<std::size_t>(n));
  int k_best = 0;
  double v_best = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = (k == n - 1) ? hi : lo + (hi - lo) * k / (n - 1);
    grid[static_cast<std::size_t>(k)] = t;
    const double v = f(t);
    if (k == 0 || v > v_best) {
      v_best = v;
      k_best = k;
    }
  }
  int evals = n;
  const double a = grid[static_cast<std::size_t>(std::max(k_best - 1, 0))];
  const double b = grid[static_cast<std::size_t>(std::min(k_best + 1, n - 1))];
  best = {grid[static_cast<std::size_t>(k_best)], v_best, 0};

  const ScalarMaximum golden =
      golden_section(f, a, b, opts.relative_width * (hi - lo), evals);
  // Ties go to the grid point so exact boundary optima stay exact.
  if (golden.value > best.value) best = golden;

  if constexpr (kHasSlope) {
    // Near a smooth interior maximum the objective is flat to rounding, so
    // the slope's sign change pins the argmax far more precisely than values.
    if (slope(a) > 0.0 && slope(b) < 0.0) {
      const double root = slope_root(slope, a, b);
      const double v = f(root);
      ++evals;
      if (v >= best.value - 1e-14 * std::max(1.0, std::abs(best.value))) {
        best = {root, v, 0};
      }
    }
  }
  best.evaluations = evals;
  return best;
}

}  // namespace detail

// Maximizes f on [lo, hi]: uniform grid, then golden-section refinement on
// the bracket around the best grid point.
template <typename F>
ScalarMaximum maximize_scalar(F&& f, double lo, double hi,
                              const MaximizeOptions& opts = {}) {
  detail::NoSlope none;
  return detail::maximize_impl<F, detail::NoSlope, false>(f, none, lo, hi,
                                                          opts);
}

// Same, and when the bracket contains a sign change of `slope` (df/dt),
// polishes the argmax by bisection on that sign.
template <typename F, typename S>
ScalarMaximum maximize_scalar(F&& f, S&& slope, double lo, double hi,
                              const MaximizeOptions& opts = {}) {
  return detail::maximize_impl<F, S, true>(f, slope, lo, hi, opts);
}

}  // namespace dpbw
