#include "biobab/mip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace biobab {

namespace {

constexpr double kIntTol = 1e-6;
constexpr double kCutTol = 1e-7;
const double kInfVal = std::numeric_limits<double>::infinity();

struct BoundChange {
  int col;
  double lb, ub;
};

struct Node {
  double bound;  // parent LP value
  long seq;      // FIFO tie-break for determinism
  std::vector<BoundChange> changes;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    return a.bound != b.bound ? a.bound > b.bound : a.seq > b.seq;
  }
};

}  // namespace

ScalarResult solve_mip(const LinearModel& model, const std::vector<double>& objective,
                       const MipOptions& opts) {
  SimplexSolver solver(model);
  solver.set_objective(objective);

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long seq = 0;
  open.push({-kInfVal, seq++, {}});

  const double user_cut = opts.cutoff.value_or(kInfVal);
  std::vector<double> best_x;
  double best_val = kInfVal;
  bool have_best = false;
  bool cutoff_pruned = false;
  const auto effective_cutoff = [&] { return std::min(user_cut, best_val); };

  while (!open.empty()) {
    const Node node = open.top();
    open.pop();
    if (node.bound >= effective_cutoff() - kCutTol) {
      // Best-first: every remaining node is at least as bad.
      if (!have_best && user_cut < kInfVal) cutoff_pruned = true;
      break;
    }

    solver.reset_bounds_from_model();
    for (const BoundChange& ch : node.changes) solver.set_col_bounds(ch.col, ch.lb, ch.ub);
    const ScalarResult lp = solver.solve();
    if (lp.status == SolveStatus::Infeasible) continue;
    if (lp.value >= effective_cutoff() - kCutTol) {
      if (!have_best && user_cut < kInfVal && lp.value >= user_cut - kCutTol)
        cutoff_pruned = true;
      continue;
    }

    // Most fractional integer variable; strict improvement keeps ties at the
    // lowest index.
    int branch_col = -1;
    double branch_score = kIntTol;
    for (int j = 0; j < model.num_cols(); ++j) {
      if (!model.is_integer(j)) continue;
      const double f = lp.x[j] - std::floor(lp.x[j]);
      const double dist = std::min(f, 1.0 - f);
      if (dist > branch_score) {
        branch_score = dist;
        branch_col = j;
      }
    }

    if (branch_col < 0) {
      std::vector<double> xi = lp.x;
      for (int j = 0; j < model.num_cols(); ++j)
        if (model.is_integer(j)) xi[j] = std::round(xi[j]);
      double v = 0.0;
      for (int j = 0; j < model.num_cols(); ++j) v += objective[j] * xi[j];
      if (v < effective_cutoff() - 1e-9) {
        best_x = std::move(xi);
        best_val = v;
        have_best = true;
        if (opts.incumbent_sink) opts.incumbent_sink(best_x, best_val);
      }
      continue;
    }

    double lo = model.lower(branch_col), hi = model.upper(branch_col);
    for (const BoundChange& ch : node.changes)
      if (ch.col == branch_col) { lo = ch.lb; hi = ch.ub; }
    const double xv = lp.x[branch_col];
    Node down{lp.value, seq++, node.changes};
    down.changes.push_back({branch_col, lo, std::floor(xv)});
    Node up{lp.value, seq++, node.changes};
    up.changes.push_back({branch_col, std::ceil(xv), hi});
    open.push(std::move(down));
    open.push(std::move(up));
  }

  ScalarResult r;
  if (have_best) {
    r.status = SolveStatus::Optimal;
    r.value = best_val;
    r.x = std::move(best_x);
  } else {
    r.status = cutoff_pruned ? SolveStatus::CutoffExceeded : SolveStatus::Infeasible;
  }
  return r;
}

LexResult lexmin_lp(const LinearModel& model, SimplexSolver& solver, int first) {
  solver.set_objective(model.objective(first));
  ScalarResult s1 = solver.solve();
  if (!s1.optimal()) return {s1.status, 0.0, 0.0, {}};
  const int row = model.objective_bound_row(first);
  const double saved = solver.rhs(row);
  solver.set_rhs(row, std::min(saved, s1.value + 1e-6));
  solver.set_objective(model.objective(1 - first));
  ScalarResult s2 = solver.solve();
  solver.set_rhs(row, saved);
  if (!s2.optimal()) {
    // The stage-1 point stays feasible for stage 2, so anything else is noise.
    const double other = model.objective_value(1 - first, s1.x);
    return {SolveStatus::Optimal, s1.value, other, std::move(s1.x)};
  }
  return {SolveStatus::Optimal, s1.value, s2.value, std::move(s2.x)};
}

LexResult lexmin_mip(LinearModel& model, int first, const IncumbentSink& sink) {
  MipOptions opts;
  opts.incumbent_sink = sink;
  ScalarResult s1 = solve_mip(model, model.objective(first), opts);
  if (!s1.optimal()) return {s1.status, 0.0, 0.0, {}};
  const int row = model.objective_bound_row(first);
  const double saved = model.rhs(row);
  model.set_rhs(row, std::min(saved, s1.value + 1e-6));
  ScalarResult s2 = solve_mip(model, model.objective(1 - first), opts);
  model.set_rhs(row, saved);
  if (!s2.optimal()) {
    const double other = model.objective_value(1 - first, s1.x);
    return {SolveStatus::Optimal, s1.value, other, std::move(s1.x)};
  }
  return {SolveStatus::Optimal, s1.value, s2.value, std::move(s2.x)};
}

}  // namespace biobab
