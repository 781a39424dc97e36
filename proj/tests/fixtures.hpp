#ifndef BIOBAB_TESTS_FIXTURES_HPP
#define BIOBAB_TESTS_FIXTURES_HPP

// Hand-sized instances with fronts small enough to check by hand (the
// expected fronts are pinned in the tests that use them), plus shared helpers
// for generating enumerable random programs and validating reported fronts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "biobab/problems.hpp"
#include "oracles.hpp"

namespace biobab::fixtures {

/// Two facilities (costs 4, 3), three locations (weights 5, 2, 4), coverage
/// {0,1} and {1,2}. Front: {(3,6), (4,7), (7,11)} as (cost, covered weight).
inline UboflpInstance tiny_uboflp() {
  return {{4, 3}, {5, 2, 4}, {{0, 1}, {1, 2}}};
}

/// Two facilities (costs 10, 10), assignment costs [[1,9],[9,1]].
/// Front: {(10,10), (20,2)} as (opening cost, assignment cost).
inline SsuflpInstance tiny_ssuflp() {
  return {{10, 10}, {{1, 9}, {9, 1}}};
}

/// One row covered by two columns with costs (1,5) and (5,1).
/// Front: {(1,5), (5,1)}.
inline SetCoveringInstance tiny_setcov() {
  return {{1, 5}, {5, 1}, {{0, 1}}};
}

/// Two control points on a 100-unit grid cross (cost gcd 100, score gcd 1):
/// point 1 at distance 3 with score 5, point 2 at distance 4 with score 3,
/// depots co-located, every window wide open. Single-vehicle front:
/// {(0,0), (600,5), (1200,8)} as (travel cost, collected score).
inline BitoptwInstance tiny_bitoptw(int fleet = 1) {
  BitoptwInstance inst;
  inst.fleet = fleet;
  inst.nodes = {
      {0, 0, 0, 0, 0, 100000},
      {3, 0, 0, 5, 0, 100000},
      {0, 4, 0, 3, 0, 100000},
      {0, 0, 0, 0, 0, 100000},
  };
  return inst;
}

/// Two points reachable directly (arrival 100 within [0, 200]) but not one
/// after the other (141 more time units), so the front grows with the fleet:
/// one vehicle gives {(0,0), (200,5)}, two give {(0,0), (200,5), (400,8)}.
inline BitoptwInstance split_window_bitoptw(int fleet) {
  BitoptwInstance inst;
  inst.fleet = fleet;
  inst.nodes = {
      {0, 0, 0, 0, 0, 100000},
      {1, 0, 0, 5, 0, 200},
      {0, 1, 0, 3, 0, 200},
      {0, 0, 0, 0, 0, 100000},
  };
  return inst;
}

/// Every control-point window closes at 0 while any arrival is positive, so
/// only depot-to-depot routes exist; the depots sit 5 apart, giving the
/// single front point (500 * fleet, 0).
inline BitoptwInstance closed_bitoptw(int fleet) {
  BitoptwInstance inst;
  inst.fleet = fleet;
  inst.nodes = {
      {0, 0, 0, 0, 0, 100000},
      {1, 1, 0, 5, 0, 0},
      {2, 2, 0, 3, 0, 0},
      {3, 4, 0, 0, 0, 100000},
  };
  return inst;
}

/// Collinear 0 - 1 - 2 - end line, 100 cost/time per hop. Service 200 at
/// point 1 plus the windows make each point reachable only directly: 1
/// closes at 120 (too late after 2), 2 closes at 250 (too late after 1).
inline BitoptwInstance line_bitoptw() {
  BitoptwInstance inst;
  inst.fleet = 1;
  inst.nodes = {
      {0, 0, 0, 0, 0, 100000},
      {1, 0, 200, 5, 0, 120},
      {2, 0, 0, 3, 0, 250},
      {3, 0, 0, 0, 0, 100000},
  };
  return inst;
}

/// Small random pure-binary two-objective program with integer data. Bound
/// rows are installed at a value no box point can exceed.
inline BiObjectiveModel random_binary_program(std::uint32_t seed) {
  std::mt19937 rng(seed);
  auto draw = [&](int k) { return static_cast<int>(rng() % static_cast<std::uint32_t>(k)); };
  int n = 2 + draw(7);
  int m = 1 + draw(4);
  BiObjectiveModel bm;
  for (int j = 0; j < n; ++j) {
    bm.model.add_column(0.0, 1.0, true);
    bm.col_names.push_back("v" + std::to_string(j));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, double>> entries;
    for (int j = 0; j < n; ++j) {
      int c = draw(9) - 4;
      if (c != 0) entries.emplace_back(j, static_cast<double>(c));
    }
    int s = draw(4);
    RowSense sense = s == 2 ? RowSense::GreaterEqual
                            : (s == 3 ? RowSense::Equal : RowSense::LessEqual);
    bm.model.add_row(entries, sense, static_cast<double>(draw(13) - 6));
  }
  double big[2];
  for (int k = 0; k < 2; ++k) {
    std::vector<double> obj(static_cast<std::size_t>(n), 0.0);
    bool nonzero = false;
    big[k] = 1.0;
    for (int j = 0; j < n; ++j) {
      int c = draw(19) - 9;
      obj[static_cast<std::size_t>(j)] = c;
      nonzero = nonzero || c != 0;
      big[k] += std::max(0, c);
    }
    if (!nonzero) obj[0] = 1.0, big[k] += 1.0;
    bm.model.set_objective(k, obj);
  }
  bm.model.install_objective_bounds(big[0], big[1]);
  return bm;
}

/// Internal-unit images of every integer-feasible point (enumerable sizes only).
inline std::vector<ObjPoint> image_points(const BiObjectiveModel& bm) {
  std::vector<ObjPoint> out;
  for (const auto& x : oracle::integer_feasible_points(bm.model)) {
    out.push_back(bm.internal_objectives(x));
  }
  return out;
}

/// Exact front (original units, sorted by z1) by full enumeration.
inline ParetoFront enumerated_front(const BiObjectiveModel& bm) {
  std::vector<ObjPoint> front = oracle::pareto_filter(image_points(bm));
  ParetoFront out;
  for (const auto& z : front) out.push_back({bm.to_original(z), ""});
  std::sort(out.begin(), out.end(),
            [](const FrontPoint& a, const FrontPoint& b) { return a.z.z1 < b.z.z1; });
  return out;
}

/// Decodes a solution string (space-separated set variable names, "-" for the
/// all-zero solution) back into a 0/1 vector; nullopt on an unknown name.
inline std::optional<std::vector<double>> solution_to_x(const BiObjectiveModel& bm,
                                                        const std::string& sol) {
  std::vector<double> x(static_cast<std::size_t>(bm.model.num_cols()), 0.0);
  std::istringstream in(sol);
  std::string tok;
  while (in >> tok) {
    if (tok == "-") continue;
    bool found = false;
    for (std::size_t j = 0; j < bm.col_names.size(); ++j) {
      if (bm.col_names[j] == tok) {
        x[j] = 1.0;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return x;
}

/// Every reported solution string must decode to a feasible point whose
/// objectives in original units equal the reported ones.
inline bool solutions_consistent(const BiObjectiveModel& bm, const ParetoFront& front) {
  for (const auto& fp : front) {
    std::optional<std::vector<double>> x = solution_to_x(bm, fp.solution);
    if (!x) return false;
    if (bm.model.feasibility_residual(*x) >= 1e-9) return false;
    ObjPoint z = bm.to_original(bm.internal_objectives(*x));
    if (!approx_eq(z.z1, fp.z.z1) || !approx_eq(z.z2, fp.z.z2)) return false;
  }
  return true;
}

}  // namespace biobab::fixtures

#endif  // BIOBAB_TESTS_FIXTURES_HPP
