#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "biobab/matrix_backend.hpp"
#include "biobab/problems.hpp"
#include "biobab/search.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace biobab;

namespace {

ParetoFront pts_front(const std::vector<std::pair<double, double>>& zs) {
  ParetoFront f;
  for (const auto& [a, b] : zs) f.push_back({{a, b}, ""});
  return f;
}

using fixtures::enumerated_front;
using fixtures::image_points;
using fixtures::random_binary_program;

void verify_solutions(const BiObjectiveModel& bm, const ParetoFront& front) {
  CHECK(fixtures::solutions_consistent(bm, front));
}

// Extremes of a bound set built by bound(): first p, then each proper
// segment's q. A single rectangle stands for a single extreme point.
std::vector<ObjPoint> chain_of(const LowerBoundSet& segs) {
  REQUIRE(!segs.empty());
  std::vector<ObjPoint> chain{segs.front().p};
  for (const auto& s : segs) {
    if (!s.is_rectangle()) chain.push_back(s.q);
  }
  return chain;
}

// No feasible image may lie below the bound set by more than the
// lexicographic pinning band (1e-6) plus solver tolerance.
void check_valid_bound(const LowerBoundSet& segs, const std::vector<ObjPoint>& images) {
  constexpr double kMargin = 1e-5;
  REQUIRE(!segs.empty());
  for (const auto& z : images) {
    CHECK(z.z1 >= segs.front().p.z1 - kMargin);
    CHECK(z.z2 >= segs.back().q.z2 - kMargin);
    for (const auto& s : segs) {
      if (s.is_rectangle()) {
        if (z.z1 >= s.p.z1 - 1e-9 && z.z1 <= s.c.z1 + 1e-9) {
          CHECK(z.z2 >= s.p.z2 - kMargin);
        }
      } else if (z.z1 >= s.p.z1 - 1e-9 && z.z1 <= s.q.z1 + 1e-9) {
        CHECK(z.z2 >= s.p.z2 + s.slope() * (z.z1 - s.p.z1) - kMargin);
      }
    }
  }
}

BoundResult root_bound(BiObjectiveModel& bm, BoundMode mode, bool lifting) {
  MatrixBackend backend(bm, mode);
  SearchNode root;
  backend.enter_node(root);
  return bound(backend, root, lifting, Granularity{1.0, 1.0});
}

void check_stats_sane(const SearchStats& s) {
  CHECK(s.complete);
  CHECK(s.node_count >= 1);
  CHECK(s.lp_count >= 2 * s.node_count);
  CHECK(s.cpu_seconds >= 0.0);
  CHECK((s.osb_branches_root == 0 || s.osb_branches_root >= 2));
  CHECK((s.osb_branches_other == 0 || s.osb_branches_other >= 2));
}

}  // namespace

TEST_CASE("hand-sized fronts are reproduced in both bounding modes") {
  for (BoundMode mode : {BoundMode::LpRelaxation, BoundMode::IntegerExact}) {
    CAPTURE(static_cast<int>(mode));
    BiobabConfig config;
    config.mode = mode;

    auto u = build_uboflp(fixtures::tiny_uboflp());
    BiobabRun ru = run_biobab(u, config);
    CHECK(same_front_points(ru.front, pts_front({{3, 6}, {4, 7}, {7, 11}})));
    verify_solutions(u, ru.front);
    check_stats_sane(ru.stats);

    auto s = build_ssuflp(fixtures::tiny_ssuflp());
    BiobabRun rs = run_biobab(s, config);
    CHECK(same_front_points(rs.front, pts_front({{10, 10}, {20, 2}})));
    verify_solutions(s, rs.front);

    auto c = build_set_covering(fixtures::tiny_setcov());
    BiobabRun rc = run_biobab(c, config);
    CHECK(same_front_points(rc.front, pts_front({{1, 5}, {5, 1}})));
    verify_solutions(c, rc.front);
  }
}

TEST_CASE("objective scaling by the gcd changes units but not the front") {
  UboflpInstance inst{{8, 6}, {15, 6, 12}, {{0, 1}, {1, 2}}};
  auto bm = build_uboflp(inst);
  CHECK(bm.scale[0] == doctest::Approx(2.0));
  CHECK(bm.scale[1] == doctest::Approx(3.0));
  for (BoundMode mode : {BoundMode::LpRelaxation, BoundMode::IntegerExact}) {
    BiobabConfig config;
    config.mode = mode;
    BiobabRun run = run_biobab(bm, config);
    CHECK(same_front_points(run.front, pts_front({{6, 18}, {8, 21}, {14, 33}})));
    verify_solutions(bm, run.front);
  }
}

TEST_CASE("an infeasible model yields an empty front after one node") {
  UboflpInstance inst{{}, {5, 2, 4}, {}};
  auto bm = build_uboflp(inst);
  for (BoundMode mode : {BoundMode::LpRelaxation, BoundMode::IntegerExact}) {
    BiobabConfig config;
    config.mode = mode;
    BiobabRun run = run_biobab(bm, config);
    CHECK(run.front.empty());
    CHECK(run.stats.node_count == 1);
    CHECK(run.stats.lp_count == 2);  // one lexicographic attempt
    CHECK(run.stats.complete);
  }
}

TEST_CASE("a single-image instance fathoms at the root") {
  // One facility, one location: the location must be assigned, so the only
  // solution opens the facility.
  UboflpInstance inst{{5}, {3}, {{0}}};
  auto bm = build_uboflp(inst);
  CHECK(same_front_points(brute_force_front(inst), pts_front({{5, 3}})));
  for (BoundMode mode : {BoundMode::LpRelaxation, BoundMode::IntegerExact}) {
    BiobabConfig config;
    config.mode = mode;
    BiobabRun run = run_biobab(bm, config);
    CHECK(same_front_points(run.front, pts_front({{5, 3}})));
    CHECK(run.stats.node_count == 1);
    verify_solutions(bm, run.front);
  }
}

TEST_CASE("generated instances match the exhaustive oracle in both modes") {
  BiobabConfig lp, mip;
  mip.mode = BoundMode::IntegerExact;

  for (std::uint32_t seed : {1u, 2u, 3u}) {
    UboflpInstance inst = generate_uboflp(5, 9, seed);
    ParetoFront expected = brute_force_front(inst);
    auto bm = build_uboflp(inst);
    CAPTURE(seed);
    BiobabRun a = run_biobab(bm, lp);
    CHECK(same_front_points(a.front, expected));
    verify_solutions(bm, a.front);
    check_stats_sane(a.stats);
    BiobabRun b = run_biobab(bm, mip);
    CHECK(same_front_points(b.front, expected));
    verify_solutions(bm, b.front);
    check_stats_sane(b.stats);
  }

  for (std::uint32_t seed : {4u, 5u}) {
    SsuflpInstance inst = generate_ssuflp(4, 7, seed);
    ParetoFront expected = brute_force_front(inst);
    auto bm = build_ssuflp(inst);
    CAPTURE(seed);
    BiobabRun a = run_biobab(bm, lp);
    CHECK(same_front_points(a.front, expected));
    verify_solutions(bm, a.front);
    BiobabRun b = run_biobab(bm, mip);
    CHECK(same_front_points(b.front, expected));
    verify_solutions(bm, b.front);
  }

  for (std::uint32_t seed : {6u, 7u}) {
    SetCoveringInstance inst = generate_set_covering(5, 10, seed);
    ParetoFront expected = brute_force_front(inst);
    auto bm = build_set_covering(inst);
    CAPTURE(seed);
    BiobabRun a = run_biobab(bm, lp);
    CHECK(same_front_points(a.front, expected));
    verify_solutions(bm, a.front);
    BiobabRun b = run_biobab(bm, mip);
    CHECK(same_front_points(b.front, expected));
    verify_solutions(bm, b.front);
  }
}

TEST_CASE("random binary programs match full enumeration in both modes") {
  int nonempty = 0;
  for (std::uint32_t seed = 0; seed < 60; ++seed) {
    BiObjectiveModel bm = random_binary_program(seed);
    ParetoFront expected = enumerated_front(bm);
    if (!expected.empty()) ++nonempty;
    CAPTURE(seed);
    for (BoundMode mode : {BoundMode::LpRelaxation, BoundMode::IntegerExact}) {
      BiobabConfig config;
      config.mode = mode;
      BiobabRun run = run_biobab(bm, config);
      CHECK(same_front_points(run.front, expected));
      verify_solutions(bm, run.front);
    }
  }
  CHECK(nonempty >= 20);  // the generator must exercise feasible programs
}

TEST_CASE("every toggle combination computes the same front") {
  std::vector<std::pair<ParetoFront, BiObjectiveModel>> cases;
  cases.emplace_back(brute_force_front(fixtures::tiny_uboflp()),
                     build_uboflp(fixtures::tiny_uboflp()));
  cases.emplace_back(brute_force_front(fixtures::tiny_ssuflp()),
                     build_ssuflp(fixtures::tiny_ssuflp()));
  cases.emplace_back(brute_force_front(fixtures::tiny_setcov()),
                     build_set_covering(fixtures::tiny_setcov()));
  UboflpInstance single{{5}, {3}, {{0}}};
  cases.emplace_back(brute_force_front(single), build_uboflp(single));
  UboflpInstance gen = generate_uboflp(4, 8, 11);
  cases.emplace_back(brute_force_front(gen), build_uboflp(gen));
  SetCoveringInstance cov = generate_set_covering(4, 9, 12);
  cases.emplace_back(brute_force_front(cov), build_set_covering(cov));

  for (auto& [expected, bm] : cases) {
    for (int mask = 0; mask < 16; ++mask) {
      for (BoundMode mode : {BoundMode::LpRelaxation, BoundMode::IntegerExact}) {
        BiobabConfig config;
        config.mode = mode;
        config.engine.objective_space_branching = mask & 1;
        config.engine.tighten = mask & 2;
        config.engine.lift = mask & 4;
        config.engine.integer_dominance = mask & 8;
        CAPTURE(mask);
        CAPTURE(static_cast<int>(mode));
        BiobabRun run = run_biobab(bm, config);
        CHECK(same_front_points(run.front, expected));
        if (!config.engine.objective_space_branching) {
          CHECK(run.stats.osb_branches_root == 0);
          CHECK(run.stats.osb_branches_other == 0);
          CHECK(run.stats.max_osb_depth == 0);
        }
      }
    }
  }
}

TEST_CASE("exact-mode bounding without lifting recovers the supported hull") {
  std::vector<BiObjectiveModel> models;
  models.push_back(build_uboflp(fixtures::tiny_uboflp()));
  models.push_back(build_ssuflp(fixtures::tiny_ssuflp()));
  models.push_back(build_set_covering(fixtures::tiny_setcov()));
  for (std::uint32_t seed = 100; seed < 112; ++seed) {
    models.push_back(random_binary_program(seed));
  }

  for (std::size_t i = 0; i < models.size(); ++i) {
    CAPTURE(i);
    BiObjectiveModel& bm = models[i];
    std::vector<ObjPoint> images = image_points(bm);
    BoundResult lb = root_bound(bm, BoundMode::IntegerExact, false);
    if (images.empty()) {
      CHECK(lb.segments.empty());
      continue;
    }
    std::vector<ObjPoint> hull = oracle::lower_left_hull(images);
    std::vector<ObjPoint> chain = chain_of(lb.segments);
    REQUIRE(chain.size() == hull.size());
    for (std::size_t k = 0; k < hull.size(); ++k) {
      CHECK(approx_eq(chain[k].z1, hull[k].z1));
      CHECK(approx_eq(chain[k].z2, hull[k].z2));
    }
    check_valid_bound(lb.segments, images);
    // Exact-mode extreme points are images of integer solutions.
    for (const auto& e : chain) {
      bool hit = false;
      for (const auto& z : images) {
        hit = hit || (approx_eq(e.z1, z.z1) && approx_eq(e.z2, z.z2));
      }
      CHECK(hit);
    }
  }
}

TEST_CASE("root bounds are valid lower bounds in both modes, with and without lifting") {
  std::vector<BiObjectiveModel> models;
  models.push_back(build_uboflp(fixtures::tiny_uboflp()));
  models.push_back(build_ssuflp(fixtures::tiny_ssuflp()));
  for (std::uint32_t seed = 200; seed < 210; ++seed) {
    models.push_back(random_binary_program(seed));
  }
  for (std::size_t i = 0; i < models.size(); ++i) {
    CAPTURE(i);
    BiObjectiveModel& bm = models[i];
    std::vector<ObjPoint> images = image_points(bm);
    if (images.empty()) continue;
    for (BoundMode mode : {BoundMode::LpRelaxation, BoundMode::IntegerExact}) {
      for (bool lifting : {false, true}) {
        BoundResult lb = root_bound(bm, mode, lifting);
        check_valid_bound(lb.segments, images);
        CHECK(!lb.supports.empty());
        CHECK(lb.scalar_solves >= 4);
      }
    }
  }
}

TEST_CASE("branch variable selection averages supports and prefers means near one") {
  auto bm = build_uboflp(fixtures::tiny_uboflp());
  MatrixBackend backend(bm, BoundMode::LpRelaxation);
  int n = bm.model.num_cols();
  auto support = [&](const std::vector<std::pair<int, double>>& vals) {
    SupportSolution s;
    s.z = {0.0, 0.0};
    s.x.assign(static_cast<std::size_t>(n), 0.0);
    for (const auto& [j, v] : vals) s.x[static_cast<std::size_t>(j)] = v;
    return s;
  };
  auto check_branches = [](const std::vector<BranchingDecision>& d, int var) {
    REQUIRE(d.size() == 2);
    CHECK(d[0].kind == BranchingDecision::Kind::VarFix);
    CHECK(d[0].var == var);
    CHECK(d[0].value == doctest::Approx(1.0));
    CHECK(d[1].var == var);
    CHECK(d[1].value == doctest::Approx(0.0));
  };

  // Mean 0.9 beats mean 0.4 (closer to one).
  check_branches(backend.decision_branches({support({{0, 0.9}, {1, 0.4}})}), 0);
  // Integral means are not branching candidates.
  check_branches(backend.decision_branches(
                     {support({{0, 1.0}, {1, 0.7}}), support({{0, 1.0}, {1, 0.3}})}),
                 1);
  // Averaging across supports can make an entity fractional.
  check_branches(backend.decision_branches({support({{2, 1.0}}), support({})}), 2);
  // Ties keep the lowest index.
  check_branches(backend.decision_branches({support({{0, 0.5}, {1, 0.5}})}), 0);
  // All-integral supports yield no decision.
  CHECK(backend.decision_branches({support({{0, 1.0}}), support({{0, 1.0}})}).empty());
  CHECK(backend.decision_branches({}).empty());
}

TEST_CASE("the time limit aborts cleanly and flags the run incomplete") {
  auto bm = build_uboflp(fixtures::tiny_uboflp());
  BiobabConfig config;
  config.engine.time_limit_seconds = -1.0;
  BiobabRun run = run_biobab(bm, config);
  CHECK_FALSE(run.stats.complete);
  CHECK(run.stats.node_count == 0);
  CHECK(run.front.empty());
}

TEST_CASE("a run restores the model, so back-to-back runs agree") {
  UboflpInstance inst = generate_uboflp(5, 9, 21);
  auto bm = build_uboflp(inst);
  std::vector<double> lb0, ub0;
  for (int j = 0; j < bm.model.num_cols(); ++j) {
    lb0.push_back(bm.model.lower(j));
    ub0.push_back(bm.model.upper(j));
  }
  double r0 = bm.model.rhs(bm.model.objective_bound_row(0));
  double r1 = bm.model.rhs(bm.model.objective_bound_row(1));

  BiobabConfig config;
  BiobabRun first = run_biobab(bm, config);
  for (int j = 0; j < bm.model.num_cols(); ++j) {
    CHECK(bm.model.lower(j) == doctest::Approx(lb0[static_cast<std::size_t>(j)]));
    CHECK(bm.model.upper(j) == doctest::Approx(ub0[static_cast<std::size_t>(j)]));
  }
  CHECK(bm.model.rhs(bm.model.objective_bound_row(0)) == doctest::Approx(r0));
  CHECK(bm.model.rhs(bm.model.objective_bound_row(1)) == doctest::Approx(r1));

  BiobabRun second = run_biobab(bm, config);
  CHECK(same_front_points(first.front, second.front));
  CHECK(first.stats.node_count == second.stats.node_count);
  CHECK(first.stats.lp_count == second.stats.lp_count);
}
