#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "biobab/matrix_backend.hpp"
#include "biobab/mip.hpp"

namespace biobab {

namespace {

constexpr double kIntegralTol = 1e-6;

bool is_integral(const LinearModel& model, const std::vector<double>& x) {
  for (int j = 0; j < model.num_cols(); ++j) {
    if (!model.is_integer(j)) continue;
    double v = x[static_cast<std::size_t>(j)];
    if (std::fabs(v - std::round(v)) > kIntegralTol) return false;
  }
  return true;
}

}  // namespace

MatrixBackend::MatrixBackend(BiObjectiveModel& bm, BoundMode mode)
    : bm_(&bm), mode_(mode), solver_(bm.model) {
  if (!bm.model.has_objective_bounds()) {
    throw std::invalid_argument("matrix backend needs installed objective-bound rows");
  }
  const LinearModel& model = bm.model;
  for (int j = 0; j < model.num_cols(); ++j) {
    base_lb_.push_back(model.lower(j));
    base_ub_.push_back(model.upper(j));
  }
  for (int k = 0; k < 2; ++k) base_rhs_[k] = model.rhs(model.objective_bound_row(k));
}

void MatrixBackend::enter_node(const SearchNode& node) {
  LinearModel& model = bm_->model;
  for (int j = 0; j < model.num_cols(); ++j) {
    model.set_col_bounds(j, base_lb_[static_cast<std::size_t>(j)],
                         base_ub_[static_cast<std::size_t>(j)]);
  }
  for (const BranchingDecision& d : node.decisions) {
    if (d.kind != BranchingDecision::Kind::VarFix) {
      throw std::logic_error("matrix backend only understands variable-fixing decisions");
    }
    model.set_col_bounds(d.var, d.value, d.value);
  }
  double rhs1 = std::min(node.c.z1, base_rhs_[0]);
  double rhs2 = std::min(node.c.z2, base_rhs_[1]);
  model.set_rhs(model.objective_bound_row(0), rhs1);
  model.set_rhs(model.objective_bound_row(1), rhs2);
  solver_.reset_bounds_from_model();
  solver_.set_rhs(model.objective_bound_row(0), rhs1);
  solver_.set_rhs(model.objective_bound_row(1), rhs2);
}

void MatrixBackend::harvest(const std::vector<double>& x) {
  harvest_solution(archive_, *bm_, x);
}

ScalarOutcome MatrixBackend::finish(ScalarResult r) {
  ScalarOutcome out;
  out.status = r.status;
  if (r.status != SolveStatus::Optimal) return out;
  if (mode_ == BoundMode::LpRelaxation && is_integral(bm_->model, r.x)) {
    harvest(r.x);
  }
  out.z = bm_->internal_objectives(r.x);
  out.x = std::move(r.x);
  return out;
}

ScalarOutcome MatrixBackend::lexmin(int first) {
  LexResult r =
      mode_ == BoundMode::LpRelaxation
          ? lexmin_lp(bm_->model, solver_, first)
          : lexmin_mip(bm_->model, first,
                       [this](const std::vector<double>& x, double) { harvest(x); });
  ScalarOutcome out;
  out.status = r.status;
  if (!r.optimal()) return out;
  if (mode_ == BoundMode::LpRelaxation && is_integral(bm_->model, r.x)) {
    harvest(r.x);
  }
  // Report the stage optima, not a re-evaluation of x: x only attains the
  // first objective up to the pinning band.
  (first == 0 ? out.z.z1 : out.z.z2) = r.first_value;
  (first == 0 ? out.z.z2 : out.z.z1) = r.second_value;
  out.x = std::move(r.x);
  return out;
}

ScalarOutcome MatrixBackend::weighted(double w1, double w2, double cutoff) {
  const LinearModel& model = bm_->model;
  std::vector<double> obj(static_cast<std::size_t>(model.num_cols()));
  for (int j = 0; j < model.num_cols(); ++j) {
    obj[static_cast<std::size_t>(j)] = w1 * model.objective(0)[static_cast<std::size_t>(j)] +
                                       w2 * model.objective(1)[static_cast<std::size_t>(j)];
  }
  if (mode_ == BoundMode::LpRelaxation) {
    solver_.set_objective(obj);
    return finish(solver_.solve());
  }
  MipOptions opts;
  opts.cutoff = cutoff;
  opts.incumbent_sink = [this](const std::vector<double>& x, double) { harvest(x); };
  return finish(solve_mip(model, obj, opts));
}

std::vector<BranchingDecision> MatrixBackend::decision_branches(
    const std::vector<SupportSolution>& supports) {
  if (supports.empty()) return {};
  const LinearModel& model = bm_->model;
  int best = -1;
  double best_dist = kInf;
  for (int j = 0; j < model.num_cols(); ++j) {
    if (!model.is_integer(j)) continue;
    double mean = 0.0;
    for (const auto& s : supports) mean += s.x[static_cast<std::size_t>(j)];
    mean /= static_cast<double>(supports.size());
    if (std::fabs(mean - std::round(mean)) <= kIntegralTol) continue;  // integral on average
    double dist = std::fabs(1.0 - mean);
    if (dist < best_dist - kGeomEps) {
      best = j;
      best_dist = dist;
    }
  }
  if (best < 0) return {};
  BranchingDecision up{BranchingDecision::Kind::VarFix, best, 1.0, -1, -1, false};
  BranchingDecision down{BranchingDecision::Kind::VarFix, best, 0.0, -1, -1, false};
  return {up, down};
}

BiobabRun run_biobab(BiObjectiveModel& bm, const BiobabConfig& config) {
  MatrixBackend backend(bm, config.mode);
  BiobabRun run;
  run.stats = run_engine(backend, config.engine);
  run.front = archive_to_front(backend.archive(), bm);
  SearchNode root;
  backend.enter_node(root);  // restore bounds and row sides
  return run;
}

}  // namespace biobab
