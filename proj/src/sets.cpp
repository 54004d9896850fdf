#include "pcm/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "pcm/quasi_projector.hpp"
#include "pcm/rng.hpp"

namespace pcm {

namespace {

void check_dim(const ConvexSet& S, const Vec& x, const char* where) {
  if (x.size() != S.dim) {
    throw InvalidInput(std::string(where) + ": point dimension " + std::to_string(x.size()) +
                       " does not match set dimension " + std::to_string(S.dim));
  }
}

}  // namespace

ConvexSet ConvexSet::box(Vec lo, Vec hi) {
  check_same_dim(lo, hi, "box");
  if (lo.empty()) throw InvalidInput("box: empty bounds");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw InvalidInput("box: lower bound exceeds upper bound");
  }
  ConvexSet S;
  S.kind = SetKind::box;
  S.dim = lo.size();
  S.lo = std::move(lo);
  S.hi = std::move(hi);
  return S;
}

ConvexSet ConvexSet::ball(Vec center, double radius) {
  if (center.empty()) throw InvalidInput("ball: empty center");
  if (!(radius > 0.0)) throw InvalidParameter("ball: radius must be positive");
  ConvexSet S;
  S.kind = SetKind::ball;
  S.dim = center.size();
  S.center = std::move(center);
  S.radius = radius;
  return S;
}

ConvexSet ConvexSet::halfspace(Vec normal, double offset) {
  if (normal.empty()) throw InvalidInput("halfspace: empty normal");
  if (dot(normal, normal) == 0.0) throw InvalidInput("halfspace: zero normal");
  if (!std::isfinite(offset)) throw InvalidInput("halfspace: offset is not finite");
  ConvexSet S;
  S.kind = SetKind::halfspace;
  S.dim = normal.size();
  S.normal = std::move(normal);
  S.offset = offset;
  return S;
}

ConvexSet ConvexSet::affine_subspace(std::vector<Vec> basis, Vec anchor) {
  if (anchor.empty()) throw InvalidInput("affine_subspace: empty anchor");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    check_same_dim(basis[i], anchor, "affine_subspace");
    if (std::fabs(dot(basis[i], basis[i]) - 1.0) > 1e-9) {
      throw InvalidInput("affine_subspace: basis vector is not unit length");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::fabs(dot(basis[i], basis[j])) > 1e-9) {
        throw InvalidInput("affine_subspace: basis vectors are not orthogonal");
      }
    }
  }
  ConvexSet S;
  S.kind = SetKind::affine_subspace;
  S.dim = anchor.size();
  S.basis = std::move(basis);
  S.anchor = std::move(anchor);
  return S;
}

ConvexSet ConvexSet::nonneg_orthant(std::size_t dim) {
  if (dim == 0) throw InvalidInput("nonneg_orthant: dimension must be positive");
  ConvexSet S;
  S.kind = SetKind::nonneg_orthant;
  S.dim = dim;
  return S;
}

ConvexSet ConvexSet::whole_space(std::size_t dim) {
  if (dim == 0) throw InvalidInput("whole_space: dimension must be positive");
  ConvexSet S;
  S.kind = SetKind::whole_space;
  S.dim = dim;
  return S;
}

ConvexSet ConvexSet::interval_product(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size()) {
    throw InvalidInput("interval_product: bounds must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (std::isnan(lo[i]) || std::isnan(hi[i])) {
      throw InvalidInput("interval_product: bound is NaN");
    }
    if (lo[i] > hi[i]) throw InvalidInput("interval_product: lower bound exceeds upper bound");
    if (lo[i] == std::numeric_limits<double>::infinity() ||
        hi[i] == -std::numeric_limits<double>::infinity()) {
      throw InvalidInput("interval_product: bound makes an axis interval empty");
    }
  }
  ConvexSet S;
  S.kind = SetKind::interval_product;
  S.dim = lo.size();
  S.ilo = std::move(lo);
  S.ihi = std::move(hi);
  return S;
}

Vec project(const ConvexSet& S, const Vec& x) {
  check_dim(S, x, "project");
  switch (S.kind) {
    case SetKind::box: {
      std::vector<double> out(S.dim);
      for (std::size_t i = 0; i < S.dim; ++i) out[i] = std::min(std::max(x[i], S.lo[i]), S.hi[i]);
      return Vec(std::move(out));
    }
    case SetKind::ball: {
      Vec d = x - S.center;
      double nd = norm(d);
      if (nd <= S.radius) return x;
      double scale = S.radius / nd;
      std::vector<double> out(S.dim);
      for (std::size_t i = 0; i < S.dim; ++i) out[i] = S.center[i] + scale * d[i];
      return Vec(std::move(out));
    }
    case SetKind::halfspace: {
      double v = dot(S.normal, x);
      if (v <= S.offset) return x;
      double c = (v - S.offset) / dot(S.normal, S.normal);
      std::vector<double> out(S.dim);
      for (std::size_t i = 0; i < S.dim; ++i) out[i] = x[i] - c * S.normal[i];
      return Vec(std::move(out));
    }
    case SetKind::affine_subspace: {
      Vec d = x - S.anchor;
      std::vector<double> out(S.anchor.data());
      for (const Vec& b : S.basis) {
        double c = dot(d, b);
        for (std::size_t i = 0; i < S.dim; ++i) out[i] += c * b[i];
      }
      return Vec(std::move(out));
    }
    case SetKind::nonneg_orthant: {
      std::vector<double> out(S.dim);
      for (std::size_t i = 0; i < S.dim; ++i) out[i] = std::max(x[i], 0.0);
      return Vec(std::move(out));
    }
    case SetKind::whole_space:
      return x;
    case SetKind::interval_product: {
      std::vector<double> out(S.dim);
      for (std::size_t i = 0; i < S.dim; ++i) out[i] = std::min(std::max(x[i], S.ilo[i]), S.ihi[i]);
      return Vec(std::move(out));
    }
  }
  throw InvalidInput("project: unknown set kind");
}

bool membership(const ConvexSet& S, const Vec& x, double tol) {
  if (S.kind == SetKind::whole_space) {
    check_dim(S, x, "membership");
    return true;
  }
  return norm(x - project(S, x)) <= tol;
}

bool is_cone(const ConvexSet& S) {
  switch (S.kind) {
    case SetKind::nonneg_orthant:
    case SetKind::whole_space:
      return true;
    case SetKind::halfspace:
      return S.offset == 0.0;
    case SetKind::ball:
      return false;
    case SetKind::box:
      for (std::size_t i = 0; i < S.dim; ++i) {
        if (S.lo[i] != 0.0 || S.hi[i] != 0.0) return false;
      }
      return true;
    case SetKind::interval_product:
      for (std::size_t i = 0; i < S.dim; ++i) {
        bool lo_ok = S.ilo[i] == 0.0 || S.ilo[i] == -std::numeric_limits<double>::infinity();
        bool hi_ok = S.ihi[i] == 0.0 || S.ihi[i] == std::numeric_limits<double>::infinity();
        if (!lo_ok || !hi_ok) return false;
      }
      return true;
    case SetKind::affine_subspace: {
      // a linear subspace, i.e. the origin lies on it
      Vec p = project(S, Vec::zeros(S.dim));
      return norm(p) <= 1e-12 * (1.0 + norm(S.anchor));
    }
  }
  return false;
}

bool is_declared_obtuse(const ConvexSet& S) {
  return S.kind == SetKind::nonneg_orthant || S.kind == SetKind::whole_space;
}

Vec reflect(const ConvexSet& S, const Vec& x) {
  if (!is_declared_obtuse(S)) {
    throw NotACone("reflect: requires a cone declared obtuse");
  }
  Vec p = project(S, x);
  std::vector<double> out(S.dim);
  for (std::size_t i = 0; i < S.dim; ++i) out[i] = 2.0 * p[i] - x[i];
  return Vec(std::move(out));
}

ObtusenessReport obtuseness_sample_check(const ConvexSet& S, int n_samples, std::uint64_t seed) {
  if (!is_cone(S)) throw NotACone("obtuseness_sample_check: set is not a cone");
  if (n_samples <= 0) throw InvalidParameter("obtuseness_sample_check: need samples");

  SplitMix64 rng(seed);
  auto random_vec = [&rng](std::size_t d, double lo, double hi) {
    std::vector<double> v(d);
    for (auto& c : v) c = sample_uniform(rng, lo, hi);
    return Vec(std::move(v));
  };

  // fixed pool of members to screen polar candidates against
  std::vector<Vec> members;
  members.reserve(64);
  for (int j = 0; j < 64; ++j) members.push_back(project(S, random_vec(S.dim, -10.0, 10.0)));

  ObtusenessReport rep;
  for (int i = 0; i < n_samples; ++i) {
    std::vector<double> g(S.dim);
    double nn = 0.0;
    do {
      nn = 0.0;
      for (auto& c : g) {
        c = sample_gaussian(rng);
        nn += c * c;
      }
    } while (nn == 0.0);
    double inv = 1.0 / std::sqrt(nn);
    std::vector<double> uc(S.dim);
    for (std::size_t k = 0; k < S.dim; ++k) uc[k] = inv * g[k];
    Vec u(std::move(uc));

    bool polar = true;
    for (const Vec& m : members) {
      if (dot(u, m) > 1e-9) {
        polar = false;
        break;
      }
    }
    if (!polar) continue;
    ++rep.polar_candidates;
    if (!membership(S, -1.0 * u, 1e-9)) ++rep.failures;
  }
  rep.pass = rep.failures == 0;
  return rep;
}

QuasiProjector QuasiProjector::metric(ConvexSet S) {
  QuasiProjector Q;
  Q.kind = QuasiKind::metric;
  Q.set = std::move(S);
  return Q;
}

QuasiProjector QuasiProjector::relaxed_cone(ConvexSet S,
                                            std::function<double(const Vec&)> lambda) {
  if (!is_declared_obtuse(S)) {
    throw NotACone("relaxed_cone: requires a cone declared obtuse");
  }
  QuasiProjector Q;
  Q.kind = QuasiKind::relaxed_cone;
  Q.set = std::move(S);
  Q.relaxation = std::move(lambda);
  return Q;
}

QuasiProjector QuasiProjector::composed(ConvexSet S, std::function<Vec(const Vec&)> premap) {
  QuasiProjector Q;
  Q.kind = QuasiKind::composed;
  Q.set = std::move(S);
  Q.premap = std::move(premap);
  return Q;
}

Vec quasi_project(const QuasiProjector& Q, const Vec& x) {
  switch (Q.kind) {
    case QuasiKind::metric:
      return project(Q.set, x);
    case QuasiKind::relaxed_cone: {
      double lam = Q.relaxation(x);
      if (!(lam >= 1.0 && lam <= 2.0)) {
        throw InvalidRelaxation("relaxed_cone: relaxation value outside [1, 2]");
      }
      Vec p = project(Q.set, x);
      std::vector<double> out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + lam * (p[i] - x[i]);
      return Vec(std::move(out));
    }
    case QuasiKind::composed:
      return project(Q.set, Q.premap(x));
  }
  throw InvalidInput("quasi_project: unknown kind");
}

}  // namespace pcm
