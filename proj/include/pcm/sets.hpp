#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/vec.hpp"

namespace pcm {

enum class SetKind {
  box,
  ball,
  halfspace,
  affine_subspace,
  nonneg_orthant,
  whole_space,
  interval_product,
};

// Closed convex set with a closed-form nearest-point map. Factory functions
// validate payloads at construction; after that the object is immutable.
struct ConvexSet {
  SetKind kind;
  std::size_t dim = 0;

  // box
  Vec lo, hi;
  // ball
  Vec center;
  double radius = 0.0;
  // halfspace {x : <normal, x> <= offset}
  Vec normal;
  double offset = 0.0;
  // affine_subspace: anchor + span(basis), basis orthonormal
  std::vector<Vec> basis;
  Vec anchor;
  // interval_product: per-axis bounds, entries may be +-inf
  std::vector<double> ilo, ihi;

  static ConvexSet box(Vec lo, Vec hi);
  static ConvexSet ball(Vec center, double radius);
  static ConvexSet halfspace(Vec normal, double offset);
  static ConvexSet affine_subspace(std::vector<Vec> basis, Vec anchor);
  static ConvexSet nonneg_orthant(std::size_t dim);
  static ConvexSet whole_space(std::size_t dim);
  static ConvexSet interval_product(std::vector<double> lo, std::vector<double> hi);
};

// Nearest point of S to x.
Vec project(const ConvexSet& S, const Vec& x);

// True iff dist(x, S) <= tol.
bool membership(const ConvexSet& S, const Vec& x, double tol = 1e-9);

// 2*project(S, x) - x. Requires a cone declared obtuse (the reflector of an
// obtuse cone maps into the cone and is nonexpansive); throws NotACone
// otherwise.
Vec reflect(const ConvexSet& S, const Vec& x);

// Structural cone test: the set is invariant under nonnegative scaling.
bool is_cone(const ConvexSet& S);

// Obtuseness (polar cone contained in -S) is a constructor-level declaration;
// among built-ins only the nonnegative orthant and the whole space carry it.
bool is_declared_obtuse(const ConvexSet& S);

struct ObtusenessReport {
  bool pass = false;
  int polar_candidates = 0;  // sampled directions that looked polar
  int failures = 0;          // polar candidates u with -u outside S
};

// Monte-Carlo audit of obtuseness: sample unit directions, keep those u whose
// inner product with sampled members of S stays <= ~0, and check -u lands in
// S. Evidence, not proof. Requires is_cone(S).
ObtusenessReport obtuseness_sample_check(const ConvexSet& S, int n_samples,
                                         std::uint64_t seed = 7);

}  // namespace pcm
