#pragma once

#include <functional>

#include "pcm/sets.hpp"
#include "pcm/vec.hpp"

namespace pcm {

enum class QuasiKind { metric, relaxed_cone, composed };

// Operator Q with ran Q = Fix Q = C that never increases distance to points
// of C. Three constructions:
//   metric        Q = P_C
//   relaxed_cone  Q = (1 - lambda(x)) x + lambda(x) P_C x, lambda(x) in [1,2],
//                 C a declared-obtuse cone (the segment [P_C x, R_C x] lies
//                 in C, so any such blend lands in C)
//   composed      Q = P_C ∘ R with R quasi-nonexpansive and C ⊆ Fix R
//                 (caller-asserted; not verifiable in general)
struct QuasiProjector {
  QuasiKind kind;
  ConvexSet set;
  std::function<double(const Vec&)> relaxation;  // relaxed_cone only
  std::function<Vec(const Vec&)> premap;         // composed only

  static QuasiProjector metric(ConvexSet S);
  static QuasiProjector relaxed_cone(ConvexSet S, std::function<double(const Vec&)> lambda);
  static QuasiProjector composed(ConvexSet S, std::function<Vec(const Vec&)> premap);
};

// Evaluate Q at x. Throws InvalidRelaxation if a relaxed_cone map returns a
// value outside [1, 2].
Vec quasi_project(const QuasiProjector& Q, const Vec& x);

}  // namespace pcm
