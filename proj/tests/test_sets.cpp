#include <cmath>
#include <vector>

#include "doctest.h"
#include "pcm/quasi_projector.hpp"
#include "pcm/rng.hpp"
#include "pcm/sets.hpp"
#include "pcm/vec.hpp"

using namespace pcm;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec random_vec(SplitMix64& rng, std::size_t d, double lo, double hi) {
  std::vector<double> v(d);
  for (auto& c : v) c = sample_uniform(rng, lo, hi);
  return Vec(std::move(v));
}

std::vector<ConvexSet> builtin_sets() {
  std::vector<ConvexSet> sets;
  sets.push_back(ConvexSet::box(Vec{-1.0, -2.0}, Vec{1.0, 2.0}));
  sets.push_back(ConvexSet::ball(Vec{0.5, -0.5}, 2.0));
  sets.push_back(ConvexSet::halfspace(Vec{1.0, 1.0}, 1.0));
  sets.push_back(ConvexSet::affine_subspace({Vec{1.0, 0.0}}, Vec{0.0, 1.0}));
  sets.push_back(ConvexSet::nonneg_orthant(2));
  sets.push_back(ConvexSet::whole_space(2));
  sets.push_back(ConvexSet::interval_product({0.0, -kInf}, {kInf, 0.0}));
  return sets;
}

}  // namespace

TEST_CASE("projection closed forms") {
  CHECK(project(ConvexSet::box(Vec{-1.0}, Vec{1.0}), Vec::scalar(3.0))[0] == 1.0);

  Vec pb = project(ConvexSet::ball(Vec::zeros(2), 1.0), Vec{3.0, 4.0});
  CHECK(pb[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(pb[1] == doctest::Approx(0.8).epsilon(1e-15));

  Vec ph = project(ConvexSet::halfspace(Vec{1.0, 0.0}, 0.0), Vec{2.0, 5.0});
  CHECK(ph[0] == 0.0);
  CHECK(ph[1] == 5.0);

  Vec pa = project(ConvexSet::affine_subspace({Vec{1.0, 0.0}}, Vec{0.0, 1.0}), Vec{3.0, 4.0});
  CHECK(pa[0] == 3.0);
  CHECK(pa[1] == 1.0);

  Vec po = project(ConvexSet::nonneg_orthant(2), Vec{-1.0, 2.0});
  CHECK(po[0] == 0.0);
  CHECK(po[1] == 2.0);

  Vec pi = project(ConvexSet::interval_product({0.0, -kInf}, {kInf, 0.0}), Vec{-1.0, 5.0});
  CHECK(pi[0] == 0.0);
  CHECK(pi[1] == 0.0);

  Vec pw = project(ConvexSet::whole_space(3), Vec{1.0, 2.0, 3.0});
  CHECK(pw[2] == 3.0);
}

TEST_CASE("set construction validation") {
  CHECK_THROWS_AS(ConvexSet::box(Vec{1.0}, Vec{0.0}), InvalidInput);
  CHECK_THROWS_AS(ConvexSet::box(Vec{1.0}, Vec{0.0, 1.0}), InvalidInput);
  CHECK_THROWS_AS(ConvexSet::ball(Vec{0.0}, 0.0), InvalidParameter);
  CHECK_THROWS_AS(ConvexSet::ball(Vec{0.0}, -1.0), InvalidParameter);
  CHECK_THROWS_AS(ConvexSet::halfspace(Vec{0.0, 0.0}, 1.0), InvalidInput);
  CHECK_THROWS_AS(ConvexSet::whole_space(0), InvalidInput);
  CHECK_THROWS_AS(ConvexSet::interval_product({1.0}, {0.0}), InvalidInput);
  CHECK_THROWS_AS(ConvexSet::interval_product({std::nan("")}, {1.0}), InvalidInput);

  // basis must be orthonormal
  CHECK_THROWS_AS(ConvexSet::affine_subspace({Vec{1.0, 1.0}}, Vec::zeros(2)), InvalidInput);
  CHECK_THROWS_AS(ConvexSet::affine_subspace({Vec{1.0, 0.0}, Vec{1.0, 0.0}}, Vec::zeros(2)),
                  InvalidInput);
  CHECK_NOTHROW(ConvexSet::affine_subspace({Vec{0.6, 0.8}}, Vec::zeros(2)));
}

TEST_CASE("membership") {
  ConvexSet B = ConvexSet::ball(Vec::zeros(2), 1.0);
  CHECK(membership(B, Vec{1.0, 0.0}));
  CHECK(membership(B, Vec{1.0 + 1e-10, 0.0}));
  CHECK_FALSE(membership(B, Vec{1.1, 0.0}));
  CHECK(membership(B, Vec{1.1, 0.0}, 0.2));

  ConvexSet W = ConvexSet::whole_space(2);
  CHECK(membership(W, Vec{1e9, -1e9}));
}

TEST_CASE("projection properties on all built-in sets") {
  SplitMix64 rng(21);
  for (const ConvexSet& S : builtin_sets()) {
    for (int i = 0; i < 1000; ++i) {
      Vec x = random_vec(rng, S.dim, -10.0, 10.0);
      Vec p = project(S, x);

      CHECK(membership(S, p, 1e-10));
      // idempotence
      CHECK(norm(project(S, p) - p) <= 1e-10);

      // nearest point among sampled members, and the variational inequality
      for (int j = 0; j < (i < 10 ? 100 : 3); ++j) {
        Vec c = project(S, random_vec(rng, S.dim, -10.0, 10.0));
        CHECK(norm(x - p) <= norm(x - c) + 1e-9);
        CHECK(dot(x - p, c - p) <= 1e-9);
      }
    }
  }
}

TEST_CASE("cone structure") {
  CHECK(is_cone(ConvexSet::nonneg_orthant(2)));
  CHECK(is_cone(ConvexSet::whole_space(2)));
  CHECK(is_cone(ConvexSet::halfspace(Vec{1.0, 0.0}, 0.0)));
  CHECK_FALSE(is_cone(ConvexSet::halfspace(Vec{1.0, 0.0}, 1.0)));
  CHECK_FALSE(is_cone(ConvexSet::ball(Vec::zeros(2), 1.0)));
  CHECK_FALSE(is_cone(ConvexSet::box(Vec{-1.0}, Vec{1.0})));
  CHECK(is_cone(ConvexSet::box(Vec{0.0}, Vec{0.0})));
  CHECK(is_cone(ConvexSet::interval_product({0.0, -kInf}, {kInf, 0.0})));
  CHECK_FALSE(is_cone(ConvexSet::interval_product({1.0}, {kInf})));
  CHECK(is_cone(ConvexSet::affine_subspace({Vec{1.0, 0.0}}, Vec::zeros(2))));
  CHECK_FALSE(is_cone(ConvexSet::affine_subspace({Vec{1.0, 0.0}}, Vec{0.0, 1.0})));

  CHECK(is_declared_obtuse(ConvexSet::nonneg_orthant(2)));
  CHECK(is_declared_obtuse(ConvexSet::whole_space(2)));
  CHECK_FALSE(is_declared_obtuse(ConvexSet::halfspace(Vec{1.0, 0.0}, 0.0)));
}

TEST_CASE("reflector") {
  ConvexSet O2 = ConvexSet::nonneg_orthant(2);
  Vec r = reflect(O2, Vec{-1.0, 2.0});
  CHECK(r[0] == 1.0);
  CHECK(r[1] == 2.0);
  CHECK(reflect(ConvexSet::nonneg_orthant(1), Vec::scalar(-3.0))[0] == 3.0);

  Vec inside = Vec{1.0, 2.0};
  Vec ri = reflect(O2, inside);
  CHECK(ri[0] == inside[0]);
  CHECK(ri[1] == inside[1]);

  CHECK_THROWS_AS(reflect(ConvexSet::box(Vec{-1.0}, Vec{1.0}), Vec::scalar(0.5)), NotACone);
  CHECK_THROWS_AS(reflect(ConvexSet::ball(Vec::zeros(2), 1.0), Vec{0.0, 0.0}), NotACone);
  // a cone that is not declared obtuse is rejected too
  ConvexSet ray = ConvexSet::interval_product({0.0, 0.0}, {kInf, 0.0});
  CHECK_THROWS_AS(reflect(ray, Vec{1.0, 1.0}), NotACone);

  SUBCASE("reflector lands in the cone and is nonexpansive") {
    SplitMix64 rng(22);
    for (int i = 0; i < 1000; ++i) {
      Vec x = random_vec(rng, 2, -10.0, 10.0);
      Vec u = random_vec(rng, 2, -10.0, 10.0);
      CHECK(membership(O2, reflect(O2, x), 1e-10));
      CHECK(norm(reflect(O2, x) - reflect(O2, u)) <= norm(x - u) + 1e-9);
    }
  }
}

TEST_CASE("obtuseness sampling audit") {
  CHECK(obtuseness_sample_check(ConvexSet::nonneg_orthant(2), 400).pass);
  CHECK(obtuseness_sample_check(ConvexSet::whole_space(2), 400).pass);

  // the ray {t (1,0) : t >= 0} has polar directions (e.g. (0,1)) whose
  // negatives leave the ray
  ConvexSet ray = ConvexSet::interval_product({0.0, 0.0}, {kInf, 0.0});
  ObtusenessReport rep = obtuseness_sample_check(ray, 400);
  CHECK_FALSE(rep.pass);
  CHECK(rep.failures > 0);

  CHECK_THROWS_AS(obtuseness_sample_check(ConvexSet::ball(Vec::zeros(2), 1.0), 10), NotACone);
}

TEST_CASE("quasi projector closed forms") {
  ConvexSet O2 = ConvexSet::nonneg_orthant(2);

  QuasiProjector m = QuasiProjector::metric(O2);
  Vec qm = quasi_project(m, Vec{-1.0, 2.0});
  CHECK(qm[0] == 0.0);
  CHECK(qm[1] == 2.0);

  QuasiProjector r1 = QuasiProjector::relaxed_cone(O2, [](const Vec&) { return 1.0; });
  Vec q1 = quasi_project(r1, Vec{-1.0, 2.0});
  CHECK(q1[0] == project(O2, Vec{-1.0, 2.0})[0]);

  QuasiProjector r2 = QuasiProjector::relaxed_cone(O2, [](const Vec&) { return 2.0; });
  Vec q2 = quasi_project(r2, Vec{-1.0, 2.0});
  CHECK(q2[0] == 1.0);
  CHECK(q2[1] == 2.0);

  QuasiProjector r15 = QuasiProjector::relaxed_cone(O2, [](const Vec&) { return 1.5; });
  Vec q15 = quasi_project(r15, Vec{-2.0, 0.0});
  CHECK(q15[0] == 1.0);
  CHECK(q15[1] == 0.0);

  QuasiProjector bad = QuasiProjector::relaxed_cone(O2, [](const Vec&) { return 0.5; });
  CHECK_THROWS_AS(quasi_project(bad, Vec{-1.0, 2.0}), InvalidRelaxation);
  QuasiProjector bad2 = QuasiProjector::relaxed_cone(O2, [](const Vec&) { return 2.5; });
  CHECK_THROWS_AS(quasi_project(bad2, Vec{-1.0, 2.0}), InvalidRelaxation);

  // relaxed_cone requires a declared obtuse cone
  CHECK_THROWS_AS(QuasiProjector::relaxed_cone(ConvexSet::box(Vec{0.0}, Vec{1.0}),
                                               [](const Vec&) { return 1.0; }),
                  NotACone);
}

TEST_CASE("quasi projector invariants") {
  SplitMix64 rng(23);
  ConvexSet O2 = ConvexSet::nonneg_orthant(2);
  ConvexSet boxInOrthant = ConvexSet::box(Vec{0.0, 1.0}, Vec{2.0, 3.0});

  std::vector<QuasiProjector> qs;
  qs.push_back(QuasiProjector::metric(ConvexSet::ball(Vec{0.5, -0.5}, 2.0)));
  qs.push_back(QuasiProjector::metric(boxInOrthant));
  qs.push_back(QuasiProjector::relaxed_cone(O2, [](const Vec&) { return 1.0; }));
  qs.push_back(QuasiProjector::relaxed_cone(O2, [](const Vec&) { return 1.5; }));
  qs.push_back(QuasiProjector::relaxed_cone(O2, [](const Vec&) { return 2.0; }));
  // discontinuous state-dependent relaxation, still valued in [1,2]
  qs.push_back(QuasiProjector::relaxed_cone(O2, [](const Vec& v) { return v[0] < 0.0 ? 2.0 : 1.0; }));
  // pre-map is the orthant reflector, quasi-nonexpansive with the box
  // (which sits in the orthant) inside its fixed set
  qs.push_back(QuasiProjector::composed(
      boxInOrthant, [O2](const Vec& v) { return reflect(O2, v); }));

  for (const QuasiProjector& Q : qs) {
    for (int i = 0; i < 1000; ++i) {
      Vec x = random_vec(rng, 2, -10.0, 10.0);
      Vec qx = quasi_project(Q, x);
      Vec c = project(Q.set, random_vec(rng, 2, -10.0, 10.0));

      CHECK(membership(Q.set, qx, 1e-10));
      CHECK(norm(quasi_project(Q, c) - c) <= 1e-10);              // Q(c) = c
      CHECK(norm(quasi_project(Q, qx) - qx) <= 1e-10);            // idempotence
      CHECK(norm(qx - c) <= norm(x - c) + 1e-9);                  // quasi-nonexpansive
    }
  }
}
