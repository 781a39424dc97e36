#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "biobab/linear_model.hpp"
#include "biobab/mip.hpp"
#include "biobab/simplex.hpp"
#include "oracles.hpp"

using namespace biobab;

namespace {

LinearModel random_binary_program(std::mt19937& rng, int max_n = 12, int max_m = 6) {
  LinearModel m;
  const int n = 2 + static_cast<int>(rng() % (max_n - 1));
  const int rows = 1 + static_cast<int>(rng() % max_m);
  for (int j = 0; j < n; ++j) m.add_column(0, 1, true);
  for (int i = 0; i < rows; ++i) {
    std::vector<std::pair<int, double>> entries;
    for (int j = 0; j < n; ++j) {
      const int c = static_cast<int>(rng() % 7) - 3;
      if (c != 0) entries.emplace_back(j, static_cast<double>(c));
    }
    const RowSense sense = static_cast<RowSense>(rng() % 3);
    const double rhs = static_cast<double>(rng() % 9) - 2.0;
    m.add_row(entries, sense, rhs);
  }
  std::vector<double> o1(n), o2(n);
  for (int j = 0; j < n; ++j) {
    o1[j] = static_cast<double>(rng() % 13) - 6.0;
    o2[j] = static_cast<double>(rng() % 13) - 6.0;
  }
  m.set_objective(0, o1);
  m.set_objective(1, o2);
  return m;
}

}  // namespace

TEST_CASE("matches exhaustive enumeration on random binary programs") {
  std::mt19937 rng(20250101);
  int feasible = 0, infeasible = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const LinearModel m = random_binary_program(rng);
    const auto& obj = m.objective(0);
    const auto want = oracle::mip_by_enumeration(m, obj);
    const auto got = solve_mip(m, obj);
    CAPTURE(iter);
    REQUIRE(got.optimal() == want.has_value());
    if (want) {
      ++feasible;
      CHECK(got.value == doctest::Approx(want->first).epsilon(1e-6));
      CHECK(m.feasibility_residual(got.x) < 1e-6);
      // Relaxation bound sits below the integer optimum.
      const auto lp = solve_lp(m, obj);
      REQUIRE(lp.optimal());
      CHECK(lp.value <= got.value + 1e-6);
    } else {
      ++infeasible;
    }
  }
  CHECK(feasible >= 80);
  CHECK(infeasible >= 10);
}

TEST_CASE("matches enumeration on general integer boxes") {
  std::mt19937 rng(555);
  for (int iter = 0; iter < 100; ++iter) {
    LinearModel m;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < n; ++j) {
      const double lb = -static_cast<double>(rng() % 2);
      m.add_column(lb, lb + 1 + static_cast<double>(rng() % 3), true);
    }
    std::vector<std::pair<int, double>> entries;
    for (int j = 0; j < n; ++j)
      entries.emplace_back(j, static_cast<double>(rng() % 5) - 2.0);
    m.add_row(entries, RowSense::LessEqual, static_cast<double>(rng() % 7) - 1.0);
    std::vector<double> obj(n);
    for (int j = 0; j < n; ++j) obj[j] = static_cast<double>(rng() % 9) - 4.0;
    m.set_objective(0, obj);
    m.set_objective(1, obj);

    const auto want = oracle::mip_by_enumeration(m, obj);
    const auto got = solve_mip(m, obj);
    CAPTURE(iter);
    REQUIRE(got.optimal() == want.has_value());
    if (want) CHECK(got.value == doctest::Approx(want->first).epsilon(1e-6));
  }
}

TEST_CASE("cutoff semantics require strict improvement") {
  std::mt19937 rng(808);
  int exercised = 0;
  while (exercised < 40) {
    const LinearModel m = random_binary_program(rng);
    const auto want = oracle::mip_by_enumeration(m, m.objective(0));
    if (!want) continue;
    ++exercised;
    MipOptions at_opt;
    at_opt.cutoff = want->first;
    CHECK(solve_mip(m, m.objective(0), at_opt).status == SolveStatus::CutoffExceeded);
    MipOptions above;
    above.cutoff = want->first + 0.5;
    const auto r = solve_mip(m, m.objective(0), above);
    REQUIRE(r.optimal());
    CHECK(r.value == doctest::Approx(want->first).epsilon(1e-6));
  }
}

TEST_CASE("zero objective returns the first feasible point") {
  LinearModel m;
  for (int j = 0; j < 3; ++j) m.add_column(0, 1, true);
  m.add_row({{0, 1.0}, {1, 1.0}, {2, 1.0}}, RowSense::GreaterEqual, 2.0);
  const auto r = solve_mip(m, {0.0, 0.0, 0.0});
  REQUIRE(r.optimal());
  CHECK(r.value == doctest::Approx(0.0));
  CHECK(m.feasibility_residual(r.x) < 1e-6);
}

TEST_CASE("infeasible integer model reports infeasibility") {
  LinearModel m;
  m.add_column(0, 1, true);
  m.add_column(0, 1, true);
  m.add_row({{0, 1.0}, {1, 1.0}}, RowSense::GreaterEqual, 3.0);
  CHECK(solve_mip(m, {1.0, 1.0}).status == SolveStatus::Infeasible);
}

TEST_CASE("incumbent stream improves strictly and ends at the optimum") {
  std::mt19937 rng(161803);
  int exercised = 0;
  while (exercised < 40) {
    const LinearModel m = random_binary_program(rng);
    const auto want = oracle::mip_by_enumeration(m, m.objective(0));
    if (!want) continue;
    ++exercised;
    std::vector<double> values;
    MipOptions opts;
    opts.incumbent_sink = [&](const std::vector<double>& x, double v) {
      CHECK(m.feasibility_residual(x) < 1e-6);
      values.push_back(v);
    };
    const auto r = solve_mip(m, m.objective(0), opts);
    REQUIRE(r.optimal());
    REQUIRE(!values.empty());
    for (std::size_t k = 1; k < values.size(); ++k) CHECK(values[k] < values[k - 1]);
    CHECK(values.back() == doctest::Approx(r.value));
  }
}

TEST_CASE("lexicographic MIP matches the enumeration oracle") {
  std::mt19937 rng(271828);
  int checked = 0;
  for (int iter = 0; iter < 80; ++iter) {
    LinearModel m = random_binary_program(rng, 8, 4);
    // Generous permanent objective-bound rows, as installed by model builders.
    double big1 = 1.0, big2 = 1.0;
    for (int j = 0; j < m.num_cols(); ++j) {
      big1 += std::abs(m.objective(0)[j]);
      big2 += std::abs(m.objective(1)[j]);
    }
    m.install_objective_bounds(big1, big2);
    for (const int first : {0, 1}) {
      const auto want = oracle::lexmin_mip_by_enumeration(m, first);
      const auto got = lexmin_mip(m, first);
      CAPTURE(iter);
      CAPTURE(first);
      REQUIRE(got.optimal() == want.has_value());
      if (!want) continue;
      ++checked;
      CHECK(got.first_value == doctest::Approx(want->first));
      CHECK(got.second_value == doctest::Approx(want->second));
      CHECK(m.objective_value(first, got.x) == doctest::Approx(want->first));
      CHECK(m.objective_value(1 - first, got.x) == doctest::Approx(want->second));
      CHECK(m.rhs(m.objective_bound_row(first)) == doctest::Approx(first == 0 ? big1 : big2));
    }
  }
  CHECK(checked >= 60);
}
