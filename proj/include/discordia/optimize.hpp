#pragma once

#include <functional>
#include <span>
#include <vector>

namespace discordia {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  double diameter_tol = 1e-6;
  int max_iter = 4000;
};

struct OptimumPoint {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Nelder–Mead maximization started from `x0` with an axis-aligned initial
/// simplex of edge lengths `step`. Stops once the simplex diameter drops
/// below `diameter_tol`. The returned value is never below f(x0).
OptimumPoint nelder_mead_max(const Objective& f, std::vector<double> x0, std::span<const double> step,
                             const NelderMeadOptions& opts = {});

struct GridRefineResult {
  OptimumPoint best;
  double best_grid_value = 0.0;
  std::vector<double> best_grid_x;
};

/// Evaluates f on the tensor grid xs × ys, then refines the `top` best grid
/// points with Nelder–Mead (initial step = local grid spacing). Returns the
/// best point overall; best.value >= best_grid_value always holds.
GridRefineResult maximize_grid_refine(const Objective& f, std::span<const double> xs, std::span<const double> ys,
                                      int top = 3, const NelderMeadOptions& opts = {});

/// n evenly spaced points from lo to hi, endpoints included.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace discordia
