#pragma once

#include <functional>
#include <string>

#include "pcm/vec.hpp"

namespace pcm {

// A convex function presented through an evaluation + subgradient-selection
// pair. `feasible_declared` records whether the caller asserts the sublevel
// set {f <= 0} is nonempty; solvers use it only for reporting, never to
// change arithmetic.
struct ConvexFunction {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> subgrad;
  std::string name;
  bool feasible_declared = true;
};

// f(x) = coef * ||x||^2 + shift with subgradient 2*coef*x. Covers every
// built-in objective; the sublevel set is a ball when shift <= 0 and empty
// when shift > 0.
inline ConvexFunction quadratic_sublevel(double coef, double shift, std::string name) {
  ConvexFunction f;
  f.value = [coef, shift](const Vec& x) { return coef * dot(x, x) + shift; };
  f.subgrad = [coef](const Vec& x) { return (2.0 * coef) * x; };
  f.name = std::move(name);
  f.feasible_declared = (shift <= 0.0);
  return f;
}

// Named objectives used by the CLI and the benchmark tables.
//   x2m1      f(x) = ||x||^2 - 1        (unit-ball sublevel set)
//   100x2m1   f(x) = 100||x||^2 - 1     (radius-0.1 ball, steep walls)
//   ball_d    alias of x2m1 for any dimension
//   square    f(x) = ||x||^2            (sublevel set = {0}, empty interior)
//   square_p1 f(x) = ||x||^2 + 1        (empty sublevel set)
ConvexFunction builtin_objective(const std::string& name);

}  // namespace pcm
