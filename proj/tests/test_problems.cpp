#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "biobab/problems.hpp"
#include "biobab/simplex.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace biobab;

namespace {

ParetoFront make_front(const std::vector<ObjPoint>& pts) {
  ParetoFront out;
  for (const auto& z : pts) out.push_back({z, ""});
  return out;
}

/// Front of a matrix model by exhaustive integer enumeration, mapped to
/// original units. Independent of every solver code path.
ParetoFront enumerated_front(const BiObjectiveModel& bm) {
  std::vector<ObjPoint> internal;
  for (const auto& x : oracle::integer_feasible_points(bm.model)) {
    internal.push_back(bm.internal_objectives(x));
  }
  internal = oracle::pareto_filter(std::move(internal));
  std::vector<ObjPoint> orig;
  orig.reserve(internal.size());
  for (const auto& z : internal) orig.push_back(bm.to_original(z));
  std::sort(orig.begin(), orig.end(),
            [](const ObjPoint& a, const ObjPoint& b) { return a.z1 < b.z1; });
  return make_front(orig);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) {
    if (tok != "-") out.push_back(tok);
  }
  return out;
}

/// Re-evaluates a facility-location solution string ("yI" and "xI_J" tokens)
/// directly against raw instance data.
struct FacilityChoice {
  std::set<int> open;
  std::map<int, int> assigned;  // location -> facility
};

FacilityChoice parse_facility_solution(const std::string& sol) {
  FacilityChoice out;
  for (const auto& tok : tokens(sol)) {
    if (tok[0] == 'y') {
      out.open.insert(std::stoi(tok.substr(1)));
    } else {
      REQUIRE(tok[0] == 'x');
      auto sep = tok.find('_');
      REQUIRE(sep != std::string::npos);
      out.assigned[std::stoi(tok.substr(sep + 1))] = std::stoi(tok.substr(1, sep - 1));
    }
  }
  return out;
}

ObjPoint evaluate_uboflp(const UboflpInstance& inst, const std::string& sol) {
  FacilityChoice choice = parse_facility_solution(sol);
  long long cost = 0, covered = 0;
  for (int i : choice.open) cost += inst.open_cost[static_cast<std::size_t>(i)];
  REQUIRE(choice.assigned.size() == inst.weight.size());
  for (auto [j, i] : choice.assigned) {
    REQUIRE(choice.open.count(i) == 1);
    const auto& cov = inst.coverage[static_cast<std::size_t>(i)];
    if (std::binary_search(cov.begin(), cov.end(), j)) {
      covered += inst.weight[static_cast<std::size_t>(j)];
    }
  }
  return {static_cast<double>(cost), static_cast<double>(covered)};
}

ObjPoint evaluate_ssuflp(const SsuflpInstance& inst, const std::string& sol) {
  FacilityChoice choice = parse_facility_solution(sol);
  long long cost = 0, assign = 0;
  for (int i : choice.open) cost += inst.open_cost[static_cast<std::size_t>(i)];
  REQUIRE(choice.assigned.size() == inst.assign_cost.at(0).size());
  for (auto [j, i] : choice.assigned) {
    REQUIRE(choice.open.count(i) == 1);
    assign += inst.assign_cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return {static_cast<double>(cost), static_cast<double>(assign)};
}

ObjPoint evaluate_setcov(const SetCoveringInstance& inst, const std::string& sol) {
  long long c1 = 0, c2 = 0;
  std::set<int> picked;
  for (const auto& tok : tokens(sol)) {
    REQUIRE(tok[0] == 'x');
    picked.insert(std::stoi(tok.substr(1)));
  }
  for (const auto& cov : inst.covers) {
    bool hit = false;
    for (int j : cov) hit = hit || picked.count(j) == 1;
    REQUIRE(hit);
  }
  for (int j : picked) {
    c1 += inst.cost1[static_cast<std::size_t>(j)];
    c2 += inst.cost2[static_cast<std::size_t>(j)];
  }
  return {static_cast<double>(c1), static_cast<double>(c2)};
}

/// Expands a solution string back into a 0/1 column vector of the model.
std::vector<double> solution_vector(const BiObjectiveModel& bm,
                                    const std::string& sol) {
  std::map<std::string, int> index;
  for (std::size_t j = 0; j < bm.col_names.size(); ++j) {
    index[bm.col_names[j]] = static_cast<int>(j);
  }
  std::vector<double> x(static_cast<std::size_t>(bm.model.num_cols()), 0.0);
  for (const auto& tok : tokens(sol)) {
    auto it = index.find(tok);
    REQUIRE(it != index.end());
    x[static_cast<std::size_t>(it->second)] = 1.0;
  }
  return x;
}

}  // namespace

TEST_CASE("tiny facility-location fixture matches its exhaustive front") {
  UboflpInstance inst = fixtures::tiny_uboflp();
  ParetoFront expected = make_front({{3, 6}, {4, 7}, {7, 11}});

  ParetoFront brute = brute_force_front(inst);
  CHECK(same_front_points(brute, expected));

  BiObjectiveModel bm = build_uboflp(inst);
  CHECK(bm.model.num_cols() == 8);                 // 2 open + 6 assign
  CHECK(bm.model.num_rows() == 3 + 6 + 2);         // assign + link + bounds
  CHECK(bm.model.has_objective_bounds());
  CHECK(bm.scale[0] == 1.0);
  CHECK(bm.scale[1] == 1.0);
  CHECK(!bm.negated[0]);
  CHECK(bm.negated[1]);
  CHECK(bm.col_names[0] == "y0");
  CHECK(bm.col_names[2] == "x0_0");

  CHECK(same_front_points(enumerated_front(bm), expected));

  for (const auto& fp : brute) {
    ObjPoint z = evaluate_uboflp(inst, fp.solution);
    CHECK(approx_eq(z.z1, fp.z.z1));
    CHECK(approx_eq(z.z2, fp.z.z2));
    std::vector<double> x = solution_vector(bm, fp.solution);
    CHECK(bm.model.feasibility_residual(x) < 1e-9);
    ObjPoint back = bm.to_original(bm.internal_objectives(x));
    CHECK(approx_eq(back.z1, fp.z.z1));
    CHECK(approx_eq(back.z2, fp.z.z2));
  }
}

TEST_CASE("facility problems without facilities are infeasible") {
  UboflpInstance inst{{}, {5, 2}, {}};
  CHECK(brute_force_front(inst).empty());

  BiObjectiveModel bm = build_uboflp(inst);
  CHECK(solve_lp(bm.model, bm.model.objective(0)).status == SolveStatus::Infeasible);
  CHECK(oracle::integer_feasible_points(bm.model).empty());
}

TEST_CASE("single facility covering everything yields one point") {
  UboflpInstance inst{{9}, {3, 1, 4}, {{0, 1, 2}}};
  ParetoFront front = brute_force_front(inst);
  REQUIRE(front.size() == 1);
  CHECK(front[0].z.z1 == 9);
  CHECK(front[0].z.z2 == 8);
  CHECK(same_front_points(enumerated_front(build_uboflp(inst)), front));
}

TEST_CASE("single-source fixture, single and identical facilities") {
  SsuflpInstance inst = fixtures::tiny_ssuflp();
  ParetoFront expected = make_front({{10, 10}, {20, 2}});
  CHECK(same_front_points(brute_force_front(inst), expected));
  CHECK(same_front_points(enumerated_front(build_ssuflp(inst)), expected));

  SsuflpInstance single{{7}, {{2, 3}}};
  ParetoFront sf = brute_force_front(single);
  REQUIRE(sf.size() == 1);
  CHECK(sf[0].z.z1 == 7);
  CHECK(sf[0].z.z2 == 5);

  SsuflpInstance twins{{10, 10}, {{1, 9}, {1, 9}}};
  ParetoFront tf = brute_force_front(twins);
  REQUIRE(tf.size() == 1);  // duplicate and dominated subsets collapse
  CHECK(tf[0].z.z1 == 10);
  CHECK(tf[0].z.z2 == 10);
}

TEST_CASE("set covering fixtures and a random cross-check") {
  CHECK(same_front_points(brute_force_front(fixtures::tiny_setcov()),
                          make_front({{1, 5}, {5, 1}})));
  CHECK(same_front_points(enumerated_front(build_set_covering(fixtures::tiny_setcov())),
                          make_front({{1, 5}, {5, 1}})));

  // A cheap column covering every row dominates everything it can.
  SetCoveringInstance cheap{{1, 9, 9}, {1, 9, 9}, {{0, 1}, {0, 2}}};
  ParetoFront cf = brute_force_front(cheap);
  REQUIRE(cf.size() == 1);
  CHECK(cf[0].z.z1 == 1);
  CHECK(cf[0].z.z2 == 1);

  for (std::uint32_t seed : {7u, 8u, 9u}) {
    SetCoveringInstance inst = generate_set_covering(5, 10, seed);
    ParetoFront brute = brute_force_front(inst);
    REQUIRE(!brute.empty());
    CHECK(same_front_points(enumerated_front(build_set_covering(inst)), brute));
    for (const auto& fp : brute) {
      ObjPoint z = evaluate_setcov(inst, fp.solution);
      CHECK(approx_eq(z.z1, fp.z.z1));
      CHECK(approx_eq(z.z2, fp.z.z2));
    }
  }
}

TEST_CASE("gcd scaling maps internal points back to original units") {
  UboflpInstance inst = fixtures::tiny_uboflp();
  for (auto& f : inst.open_cost) f *= 2;
  for (auto& w : inst.weight) w *= 3;

  BiObjectiveModel bm = build_uboflp(inst);
  CHECK(bm.scale[0] == 2.0);
  CHECK(bm.scale[1] == 3.0);

  ParetoFront expected = make_front({{6, 18}, {8, 21}, {14, 33}});
  CHECK(same_front_points(brute_force_front(inst), expected));
  CHECK(same_front_points(enumerated_front(bm), expected));

  // Internal objective values live on the unit grid after scaling.
  for (const auto& x : oracle::integer_feasible_points(bm.model)) {
    ObjPoint z = bm.internal_objectives(x);
    CHECK(is_on_grid(z.z1, 1.0));
    CHECK(is_on_grid(z.z2, 1.0));
  }
}

TEST_CASE("instance text formats round-trip") {
  for (std::uint32_t seed : {1u, 2u, 3u, 4u, 5u}) {
    UboflpInstance u = generate_uboflp(4 + static_cast<int>(seed % 3), 9, seed);
    CHECK(parse_ubof(serialize_ubof(u)) == u);
    SsuflpInstance s = generate_ssuflp(3, 7, seed);
    CHECK(parse_ssuf(serialize_ssuf(s)) == s);
    SetCoveringInstance c = generate_set_covering(4, 12, seed);
    CHECK(parse_bscp(serialize_bscp(c)) == c);
    BitoptwInstance b = generate_bitoptw(5, 2, seed);
    CHECK(parse_btop(serialize_btop(b)) == b);
    CHECK(serialize_btop(parse_btop(serialize_btop(b))) == serialize_btop(b));
  }

  // Comments anywhere, an empty coverage list, unsorted indices normalized.
  std::string text =
      "# facility instance\n"
      "2 3\n"
      "4 3\n"
      "# weights follow\n"
      "5 2 4\n"
      "1 0\n"
      "\n";
  UboflpInstance inst = parse_ubof(text);
  CHECK(inst.coverage[0] == std::vector<int>{0, 1});
  CHECK(inst.coverage[1].empty());
  CHECK(parse_ubof(serialize_ubof(inst)) == inst);
}

TEST_CASE("generators are deterministic and validate their parameters") {
  CHECK(serialize_ubof(generate_uboflp(5, 15, 1)) ==
        serialize_ubof(generate_uboflp(5, 15, 1)));
  CHECK(serialize_ubof(generate_uboflp(5, 15, 1)) !=
        serialize_ubof(generate_uboflp(5, 15, 2)));
  CHECK(serialize_ssuf(generate_ssuflp(4, 12, 3)) ==
        serialize_ssuf(generate_ssuflp(4, 12, 3)));
  CHECK(serialize_bscp(generate_set_covering(5, 25, 7)) ==
        serialize_bscp(generate_set_covering(5, 25, 7)));
  CHECK(serialize_btop(generate_bitoptw(6, 2, 4)) ==
        serialize_btop(generate_bitoptw(6, 2, 4)));

  SetCoveringInstance c = generate_set_covering(5, 25, 7);
  for (const auto& cov : c.covers) CHECK(!cov.empty());

  SsuflpInstance s = generate_ssuflp(4, 12, 3);
  BiObjectiveModel bm = build_ssuflp(s);
  CHECK(bm.scale[0] >= 1.0);
  CHECK(bm.scale[1] >= 1.0);

  CHECK_THROWS_AS((void)generate_uboflp(0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)generate_ssuflp(3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)generate_set_covering(2, 4, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)generate_bitoptw(0, 1, 1), std::invalid_argument);
}

TEST_CASE("parsers reject malformed input") {
  CHECK_THROWS_AS((void)parse_ubof("2 3\n4\n5 2 4\n0 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS((void)parse_ubof("2 3\n4 3\n5 2 4\n0 1\n"), ParseError);
  CHECK_THROWS_AS((void)parse_ubof("2 3\n4 3\n5 2 4\n0 1\n1 3\n"), ParseError);
  CHECK_THROWS_AS((void)parse_ubof("2 3\n4 3\n5 2 4\n0 0\n1 2\n"), ParseError);
  CHECK_THROWS_AS((void)parse_ubof("2 3\n4 -3\n5 2 4\n0 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS((void)parse_ubof("2 3\n4 x\n5 2 4\n0 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS((void)parse_ubof("2 3\n4 3\n5 2 4\n0 1\n1 2\n9\n"), ParseError);
  CHECK_THROWS_AS((void)parse_ssuf("1 2\n5\n1 2 3\n"), ParseError);
  CHECK_THROWS_AS((void)parse_bscp("1 2\n1 5\n5 1\n\n"), ParseError);
  CHECK_THROWS_AS((void)parse_btop("1 1\n0 0 0 0 0 0 9\n2 1 1 0 0 0 9\n1 1 1 0 1 0 9\n"),
                  ParseError);
  CHECK_THROWS_AS((void)parse_btop("1 1\n0 0 0 0 0 0 9\n1 1 1 0 1 5 2\n2 1 1 0 0 0 9\n"),
                  ParseError);
}

TEST_CASE("solution strings reconstruct reported points on generated instances") {
  for (std::uint32_t seed : {11u, 12u}) {
    UboflpInstance u = generate_uboflp(4, 8, seed);
    BiObjectiveModel um = build_uboflp(u);
    for (const auto& fp : brute_force_front(u)) {
      ObjPoint z = evaluate_uboflp(u, fp.solution);
      CHECK(approx_eq(z.z1, fp.z.z1));
      CHECK(approx_eq(z.z2, fp.z.z2));
      std::vector<double> x = solution_vector(um, fp.solution);
      CHECK(um.model.feasibility_residual(x) < 1e-9);
      ObjPoint back = um.to_original(um.internal_objectives(x));
      CHECK(approx_eq(back.z1, fp.z.z1));
      CHECK(approx_eq(back.z2, fp.z.z2));
    }

    SsuflpInstance s = generate_ssuflp(3, 6, seed);
    for (const auto& fp : brute_force_front(s)) {
      ObjPoint z = evaluate_ssuflp(s, fp.solution);
      CHECK(approx_eq(z.z1, fp.z.z1));
      CHECK(approx_eq(z.z2, fp.z.z2));
    }
  }
}

TEST_CASE("brute force refuses oversized enumerations") {
  UboflpInstance big;
  big.open_cost.assign(25, 1);
  big.coverage.assign(25, {});
  CHECK_THROWS_AS((void)brute_force_front(big), SizeLimit);

  SetCoveringInstance wide;
  wide.cost1.assign(25, 1);
  wide.cost2.assign(25, 1);
  wide.covers = {{0}};
  CHECK_THROWS_AS((void)brute_force_front(wide), SizeLimit);
}

TEST_CASE("orienteering travel metric and vertex validation") {
  BitoptwInstance inst;
  inst.nodes = {{0, 0, 0, 0, 0, 100}, {3, 4, 1, 2, 0, 100}, {0, 0, 0, 0, 0, 100}};
  inst.fleet = 1;
  CHECK(inst.travel(0, 1) == 500);  // floor(100 * 5.0)
  CHECK(inst.travel(0, 2) == 0);
  CHECK(inst.travel(1, 2) == 500);
  CHECK(inst.num_points() == 1);
  CHECK(parse_btop(serialize_btop(inst)) == inst);

  BitoptwInstance gen = generate_bitoptw(4, 2, 9);
  CHECK(gen.num_points() == 4);
  for (const auto& nd : gen.nodes) {
    CHECK(nd.open <= nd.close);
    CHECK(nd.score >= 0);
    CHECK(nd.service >= 0);
  }
}
