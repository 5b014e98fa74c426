// Derivative-free local minimization: Hooke-Jeeves pattern search.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace roofkit::detail {

struct search_options {
  double initial_step = 0.25;
  double min_step = 1e-9;
  double shrink = 0.5;
  std::size_t max_evaluations = 1000;
};

struct search_result {
  std::vector<double> x;
  double value;
  std::size_t evaluations;
  bool converged;  // step fell below min_step before the evaluation cap
};

/// Polls +-step along each coordinate, accepts improvements greedily, then
/// tries the pattern move x + (x - base). Halves the step when a full poll fails.
template <class F>
search_result pattern_search(F&& f, std::vector<double> x, const search_options& opt) {
  const std::size_t n = x.size();
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& p) {
    ++evals;
    return f(std::span<const double>(p));
  };

  double fx = eval(x);
  double step = opt.initial_step;

  auto explore = [&](std::vector<double>& p, double& fp) {
    for (std::size_t i = 0; i < n && evals < opt.max_evaluations; ++i) {
      const double keep = p[i];
      p[i] = keep + step;
      double trial = eval(p);
      if (trial < fp) {
        fp = trial;
        continue;
      }
      if (evals >= opt.max_evaluations) {
        p[i] = keep;
        break;
      }
      p[i] = keep - step;
      trial = eval(p);
      if (trial < fp) {
        fp = trial;
        continue;
      }
      p[i] = keep;
    }
  };

  while (step >= opt.min_step && evals < opt.max_evaluations) {
    std::vector<double> trial_point = x;
    double f_trial = fx;
    explore(trial_point, f_trial);
    if (!(f_trial < fx)) {
      step *= opt.shrink;
      continue;
    }
    // Pattern moves while they keep paying off.
    for (;;) {
      std::vector<double> base = x;
      x = trial_point;
      fx = f_trial;
      if (evals >= opt.max_evaluations) break;
      std::vector<double> jump(n);
      for (std::size_t i = 0; i < n; ++i) jump[i] = 2.0 * x[i] - base[i];
      double f_jump = eval(jump);
      explore(jump, f_jump);
      if (!(f_jump < fx)) break;
      trial_point = std::move(jump);
      f_trial = f_jump;
    }
  }
  return {std::move(x), fx, evals, step < opt.min_step};
}

}  // namespace roofkit::detail
