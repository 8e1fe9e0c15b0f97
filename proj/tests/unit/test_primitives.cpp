#include <doctest.h>

#include "pplan/primitives.hpp"
#include "support.hpp"

using namespace pplan;
using namespace pplan::testing;

namespace {

// Smallest d >= 0 that takes `fp` off `goal` along `side`, by bisection on
// the intersection-area oracle.
double bisect_displacement(const Rect& fp, const Rect& goal, Side side) {
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (intersection_area(translate(fp, direction(side) * mid), goal) > 0 ? lo : hi) = mid;
  }
  return hi;
}

Scene one_blocker(Vec2 blocker, HalfDims bh = {0.05, 0.05}) {
  return Scene({{0, 0}, {1, 1}}, {box(0, 0.05, 0.05), {1, bh, {}}}, {{{0.15, 0.15}, blocker}},
               {{{0.5, 0.5}, {0.85, 0.85}}});
}

}  // namespace

TEST_CASE("blocker_displacement") {
  {
    // Blocker [0,2]^2 covering goal [0,2]^2, pushed right with 0.01 clearance.
    const Scene s({{-5, -5}, {5, 5}}, {box(0, 1, 1), box(1, 1, 1)}, {{{-3, -3}, {1, 1}}}, {{{1, 1}, {3, 3}}});
    CHECK(blocker_displacement(s, 1, 0, Side::Right, 0.01) == doctest::Approx(2.01).epsilon(1e-12));
  }
  {
    // Goal [0,2]^2, blocker [1.5,3.5]x[0,2] overlaps the right half by 0.5.
    const Scene s({{-5, -5}, {5, 5}}, {box(0, 1, 1), box(1, 1, 1)}, {{{-3, -3}, {2.5, 1}}}, {{{1, 1}, {-3, 3}}});
    CHECK(blocker_displacement(s, 1, 0, Side::Right, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(blocker_displacement(s, 1, 0, Side::Left, 0.0) == doctest::Approx(3.5).epsilon(1e-12));
  }
  const Scene s = one_blocker({0.8, 0.8});
  CHECK_THROWS_AS(blocker_displacement(s, 1, 0, Side::Right, 0.0), std::invalid_argument);

  Rng rng(17);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 b{0.5 + rng.uniform(-0.09, 0.09), 0.5 + rng.uniform(-0.09, 0.09)};
    const HalfDims bh{rng.uniform(0.01, 0.05), rng.uniform(0.01, 0.05)};
    const Scene sc = one_blocker(b, bh);
    if (blockers_of(sc, 0).empty()) continue;
    ++checked;
    for (Side side : kAllSides) {
      const double delta = rng.uniform(0, 0.01);
      const double oracle = bisect_displacement(sc.footprint(1), sc.goal_footprint(0), side) + delta;
      CHECK(blocker_displacement(sc, 1, 0, side, delta) == doctest::Approx(oracle).epsilon(1e-9));
      CHECK(blocker_displacement(sc, 1, 0, side, delta) > 0);
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("corridor_clear") {
  const Scene lonely = one_blocker({0.5, 0.5});
  const ObjectId held[] = {0};
  for (Side s : kAllSides) CHECK(corridor_clear(lonely, 1, s, 0.105, held));

  const Scene chain = chain_scene();
  for (Side s : kAllSides) CHECK_FALSE(corridor_clear(chain, 1, s, 0.105, held));
  // Just short of the 2 cm gap to each neighbour.
  for (Side s : kAllSides) CHECK(corridor_clear(chain, 1, s, 0.019, held));

  // Random scenes against a sampled-translate oracle: the corridor is blocked
  // iff some intermediate position of the blocker overlaps another object.
  int blocked = 0, cases = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Scene r = random_scene(7, seed, 0.6);
    Rng rng(seed);
    for (ObjectId b = 0; b < r.size(); ++b) {
      for (Side side : kAllSides) {
        const double d = rng.uniform(0, 0.2);
        const ObjectId ex[] = {static_cast<ObjectId>((b + 1) % r.size())};
        bool hit = false;
        for (int k = 0; k <= 2000 && !hit; ++k) {
          const Rect at = translate(r.footprint(b), direction(side) * (d * k / 2000));
          for (ObjectId j = 0; j < r.size(); ++j) {
            if (j != b && j != ex[0] && intersection_area(at, r.footprint(j)) > 1e-12) hit = true;
          }
        }
        ++cases;
        blocked += hit;
        CHECK(corridor_clear(r, b, side, d, ex) == !hit);
      }
    }
  }
  CHECK(blocked > 0);
  CHECK(blocked < cases);
}

TEST_CASE("edge_safe") {
  const Scene center = one_blocker({0.5, 0.5});
  for (Side s : kAllSides) CHECK(edge_safe(center, 1, s, 0.05, 0.01));

  const Scene edge = edge_scene();
  CHECK_FALSE(edge_safe(edge, 1, Side::Right, blocker_displacement(edge, 1, 0, Side::Right, 0.005), 0.01));
  CHECK_FALSE(edge_safe(edge, 1, Side::Up, blocker_displacement(edge, 1, 0, Side::Up, 0.005), 0.01));

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Scene r = random_scene(5, seed);
    Rng rng(seed + 1000);
    for (ObjectId b = 0; b < r.size(); ++b) {
      for (Side side : kAllSides) {
        const double d = rng.uniform(0, 0.4), m = rng.uniform(0, 0.05);
        const Rect post = translate(r.footprint(b), direction(side) * d);
        const Rect ws = r.workspace();
        const bool oracle = post.lo.x >= ws.lo.x + m && post.lo.y >= ws.lo.y + m && post.hi.x <= ws.hi.x - m &&
                            post.hi.y <= ws.hi.y - m;
        CHECK(edge_safe(r, b, side, d, m) == oracle);
      }
    }
  }
}

TEST_CASE("select_push on simple layouts") {
  const PushConfig cfg;
  const Scene s = one_blocker({0.5, 0.5});
  const auto p = select_push(s, 0, cfg);
  REQUIRE(p);
  CHECK(p->side == Side::Left);
  REQUIRE(p->blocker_moves.size() == 1);
  CHECK(p->blocker_moves[0].displacement == doctest::Approx(0.105));
  // Pre-push is aligned with the goal across the push axis.
  CHECK(p->pre_push.y == s.goal_pose(0).y);
  // Leading (left) face 5 mm right of the blocker's right face at 0.55.
  CHECK(p->pre_push.x - 0.05 == doctest::Approx(0.555));

  const Scene after = apply_action(s, p->action());
  CHECK(is_at_goal(after, 0));
  CHECK(after.pose(1).x == doctest::Approx(0.395));

  CHECK_THROWS_AS(select_push(swap_scene().with_current(swap_scene().goal()), 0, cfg), std::invalid_argument);
  CHECK(select_push(s, 0, cfg) ->pre_push == p->pre_push);
}

TEST_CASE("unsafe pushes are rejected") {
  const PushConfig cfg;
  SUBCASE("contact chain") {
    const Scene s = chain_scene();
    CHECK_FALSE(select_push(s, 0, cfg));
    for (Side side : kAllSides) CHECK_FALSE(oracle_side_ok(s, 0, side, cfg));
  }
  SUBCASE("table edge") {
    const Scene s = edge_scene();
    CHECK_FALSE(select_push(s, 0, cfg));
    for (Side side : kAllSides) CHECK_FALSE(oracle_side_ok(s, 0, side, cfg));
  }
}

TEST_CASE("select_push agrees with the discretized sweep oracle") {
  const PushConfig cfg;
  int accepted = 0, rejected = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Scene r = random_scene(6, seed, 0.55);
    for (ObjectId t = 0; t < r.size(); ++t) {
      const auto blockers = blockers_of(r, t);
      if (blockers.empty()) continue;
      const auto p = select_push(r, t, cfg);
      if (p) {
        ++accepted;
        const auto v = oracle_sweep(r, t, p->side, p->pre_push, p->sweep_end(), blockers, cfg.edge_margin);
        CHECK(v.ok);
      } else {
        ++rejected;
        for (Side side : kAllSides) CHECK_FALSE(oracle_side_ok(r, t, side, cfg));
      }
    }
  }
  CHECK(accepted > 20);
  CHECK(rejected > 20);
}

TEST_CASE("admissibility work is bounded by 4 sides and linear in blockers") {
  PushCheckStats stats;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Scene r = random_scene(8, seed, 0.6);
    for (ObjectId t = 0; t < r.size(); ++t) {
      if (!blockers_of(r, t).empty()) select_push(r, t, {}, &stats);
    }
  }
  CHECK(stats.calls > 0);
  CHECK(stats.max_sides_per_call <= 4);
  CHECK(stats.side_evaluations <= 4 * stats.calls);
  CHECK(stats.superlinear_sides == 0);
  CHECK(stats.blocker_checks <= 4 * stats.blocker_total);
}

TEST_CASE("sample_buffer_pose") {
  const Scene s = one_blocker({0.8, 0.8});
  Rng rng(1);
  const auto p = sample_buffer_pose(s, 1, rng, 100);
  REQUIRE(p);
  const Rect r = s.footprint_at(1, *p);
  CHECK(contains(s.workspace(), r));
  CHECK_FALSE(overlaps(r, s.footprint(0)));
  CHECK_FALSE(overlaps(r, s.goal_footprint(0)));

  Rng a(99), b(99);
  CHECK(*sample_buffer_pose(s, 1, a) == *sample_buffer_pose(s, 1, b));

  // A 2x2 tiling leaves nowhere to go.
  const double h = 0.0625, lo = 0.0625, hi = 0.1875;
  const Scene tiled({{0, 0}, {0.25, 0.25}}, {box(0, h, h), box(1, h, h), box(2, h, h), box(3, h, h)},
                    {{{lo, lo}, {hi, lo}, {lo, hi}, {hi, hi}}}, {{{hi, lo}, {lo, lo}, {lo, hi}, {hi, hi}}});
  Rng c(3);
  CHECK_FALSE(sample_buffer_pose(tiled, 0, c, 100));
}

TEST_CASE("PushConfig validation") {
  PushConfig c;
  CHECK_NOTHROW(c.validate());
  c.clearance = -1;
  CHECK_THROWS(c.validate());
  c = {};
  c.side_order = {Side::Left, Side::Left, Side::Up, Side::Down};
  CHECK_THROWS(c.validate());
}
