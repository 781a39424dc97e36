#include "biobab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace biobab {

namespace {

constexpr double kInfBound = std::numeric_limits<double>::infinity();
constexpr double kDualTol = 1e-7;   // reduced-cost eligibility
constexpr double kFeasTol = 1e-7;   // bound violation of basic variables
constexpr double kPivotTol = 1e-9;  // minimal pivot magnitude / degenerate step

}  // namespace

SimplexSolver::SimplexSolver(const LinearModel& model)
    : model_(&model), m_(model.num_rows()) {
  rhs_.resize(m_);
  for (int i = 0; i < m_; ++i) rhs_[i] = model.rhs(i);
  lb_.resize(m_);
  ub_.resize(m_);
  xval_.assign(m_, 0.0);
  state_.assign(m_, VarState::Basic);
  for (int i = 0; i < m_; ++i) {
    switch (model.sense(i)) {
      case RowSense::LessEqual: lb_[i] = 0.0; ub_[i] = kInfBound; break;
      case RowSense::Equal: lb_[i] = 0.0; ub_[i] = 0.0; break;
      case RowSense::GreaterEqual: lb_[i] = -kInfBound; ub_[i] = 0.0; break;
    }
  }
  sync_columns();
}

void SimplexSolver::sync_columns() {
  if (model_->num_rows() != m_)
    throw std::logic_error("rows added after solver construction");
  for (int j = ns_; j < model_->num_cols(); ++j) {
    const double lo = model_->lower(j);
    const double hi = model_->upper(j);
    lb_.push_back(lo);
    ub_.push_back(hi);
    if (std::isfinite(lo)) {
      xval_.push_back(lo);
      state_.push_back(VarState::AtLower);
    } else if (std::isfinite(hi)) {
      xval_.push_back(hi);
      state_.push_back(VarState::AtUpper);
    } else {
      xval_.push_back(0.0);
      state_.push_back(VarState::AtLower);
    }
    nz_.emplace_back();
    const auto& col = model_->col(j);
    for (int i = 0; i < m_; ++i)
      if (col[i] != 0.0) nz_.back().push_back(i);
  }
  ns_ = model_->num_cols();
  if (static_cast<int>(obj_.size()) < ns_) obj_.resize(ns_, 0.0);
}

void SimplexSolver::set_objective(const std::vector<double>& c) {
  obj_ = c;
  if (static_cast<int>(obj_.size()) < ns_) obj_.resize(ns_, 0.0);
}

void SimplexSolver::set_col_bounds(int col, double lb, double ub) {
  lb_[m_ + col] = lb;
  ub_[m_ + col] = ub;
}

void SimplexSolver::reset_bounds_from_model() {
  for (int j = 0; j < ns_ && j < model_->num_cols(); ++j) {
    lb_[m_ + j] = model_->lower(j);
    ub_[m_ + j] = model_->upper(j);
  }
}

double SimplexSolver::col_dot(int j, const std::vector<double>& v) const {
  if (is_slack(j)) return v[j];
  const auto& col = model_->col(struct_index(j));
  double s = 0.0;
  for (const int r : nz_[struct_index(j)]) s += col[r] * v[r];
  return s;
}

void SimplexSolver::ftran(int j, std::vector<double>& w) const {
  w.assign(m_, 0.0);
  if (is_slack(j)) {
    for (int i = 0; i < m_; ++i) w[i] = binv_[i * m_ + j];
    return;
  }
  const auto& col = model_->col(struct_index(j));
  for (int i = 0; i < m_; ++i) {
    const double* row = &binv_[i * m_];
    double s = 0.0;
    for (const int r : nz_[struct_index(j)]) s += row[r] * col[r];
    w[i] = s;
  }
}

void SimplexSolver::btran(const std::vector<double>& cb, std::vector<double>& y) const {
  y.assign(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    if (cb[i] == 0.0) continue;
    const double* row = &binv_[i * m_];
    const double f = cb[i];
    for (int k = 0; k < m_; ++k) y[k] += f * row[k];
  }
}

void SimplexSolver::refactor() {
  // Gauss-Jordan inversion of the basis matrix with partial pivoting.
  std::vector<double> aug(static_cast<std::size_t>(m_) * 2 * m_, 0.0);
  const int w = 2 * m_;
  for (int s = 0; s < m_; ++s) {
    const int j = basis_[s];
    if (is_slack(j)) {
      aug[static_cast<std::size_t>(j) * w + s] = 1.0;
    } else {
      const auto& col = model_->col(struct_index(j));
      for (const int r : nz_[struct_index(j)]) aug[static_cast<std::size_t>(r) * w + s] = col[r];
    }
  }
  for (int i = 0; i < m_; ++i) aug[static_cast<std::size_t>(i) * w + m_ + i] = 1.0;

  for (int k = 0; k < m_; ++k) {
    int piv = k;
    double best = std::abs(aug[static_cast<std::size_t>(k) * w + k]);
    for (int i = k + 1; i < m_; ++i) {
      const double v = std::abs(aug[static_cast<std::size_t>(i) * w + k]);
      if (v > best) { best = v; piv = i; }
    }
    if (best < 1e-11) throw std::runtime_error("simplex: singular basis");
    if (piv != k)
      std::swap_ranges(&aug[static_cast<std::size_t>(k) * w], &aug[static_cast<std::size_t>(k) * w] + w,
                       &aug[static_cast<std::size_t>(piv) * w]);
    double* rk = &aug[static_cast<std::size_t>(k) * w];
    const double inv = 1.0 / rk[k];
    for (int c = 0; c < w; ++c) rk[c] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == k) continue;
      double* ri = &aug[static_cast<std::size_t>(i) * w];
      const double f = ri[k];
      if (f == 0.0) continue;
      for (int c = 0; c < w; ++c) ri[c] -= f * rk[c];
    }
  }
  binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i)
    for (int k = 0; k < m_; ++k) binv_[static_cast<std::size_t>(i) * m_ + k] = aug[static_cast<std::size_t>(i) * w + m_ + k];
  pivots_since_refactor_ = 0;
}

void SimplexSolver::compute_basic_values() {
  std::vector<double> r = rhs_;
  for (int j = 0; j < num_internal(); ++j) {
    if (state_[j] == VarState::Basic || xval_[j] == 0.0) continue;
    if (is_slack(j)) {
      r[j] -= xval_[j];
    } else {
      const auto& col = model_->col(struct_index(j));
      for (const int row : nz_[struct_index(j)]) r[row] -= col[row] * xval_[j];
    }
  }
  for (int s = 0; s < m_; ++s) {
    const double* row = &binv_[static_cast<std::size_t>(s) * m_];
    double v = 0.0;
    for (int k = 0; k < m_; ++k) v += row[k] * r[k];
    xval_[basis_[s]] = v;
  }
}

double SimplexSolver::total_violation() const {
  double worst = 0.0;
  for (int s = 0; s < m_; ++s) {
    const int j = basis_[s];
    worst = std::max(worst, xval_[j] - ub_[j]);
    worst = std::max(worst, lb_[j] - xval_[j]);
  }
  return worst;
}

void SimplexSolver::phase1_costs(std::vector<double>& c) const {
  c.assign(num_internal(), 0.0);
  for (int s = 0; s < m_; ++s) {
    const int j = basis_[s];
    if (xval_[j] > ub_[j] + kFeasTol) c[j] = 1.0;
    else if (xval_[j] < lb_[j] - kFeasTol) c[j] = -1.0;
  }
}

void SimplexSolver::count_pivot(double theta) {
  ++solve_pivots_;
  ++total_pivots_;
  if (theta <= kPivotTol) {
    if (++degen_pivots_ > 3L * (num_internal() + m_)) bland_ = true;
  } else {
    degen_pivots_ = 0;
  }
}

SimplexSolver::StepKind SimplexSolver::step(const std::vector<double>& cost, bool phase1) {
  std::vector<double> cb(m_);
  for (int s = 0; s < m_; ++s) cb[s] = cost[basis_[s]];
  std::vector<double> y;
  btran(cb, y);

  // Pricing: Dantzig by default, Bland once degeneracy persists.
  int enter = -1;
  double enter_dir = 0.0;
  double best = kDualTol;
  for (int j = 0; j < num_internal(); ++j) {
    if (state_[j] == VarState::Basic || lb_[j] >= ub_[j]) continue;
    const double d = cost[j] - col_dot(j, y);
    const bool free_var = !std::isfinite(lb_[j]) && !std::isfinite(ub_[j]);
    double viol = 0.0, dir = 0.0;
    if (free_var) {
      if (std::abs(d) > kDualTol) { viol = std::abs(d); dir = d < 0 ? 1.0 : -1.0; }
    } else if (state_[j] == VarState::AtLower) {
      if (d < -kDualTol) { viol = -d; dir = 1.0; }
    } else {
      if (d > kDualTol) { viol = d; dir = -1.0; }
    }
    if (viol > best) {
      enter = j;
      enter_dir = dir;
      best = viol;
      if (bland_) break;
    }
  }
  if (enter < 0) return StepKind::Optimal;

  std::vector<double> w;
  ftran(enter, w);
  const double t = enter_dir;

  // Ratio test. A basic variable inside its bounds blocks at the bound it
  // moves toward; one outside a bound (phase 1) blocks where it regains
  // feasibility and leaves the basis there, while a move deepening its
  // violation never blocks (the phase-1 cost has already priced that in).
  const auto breakpoint = [&](int slot, double& target) -> double {
    const double rate = -t * w[slot];
    if (std::abs(rate) <= kPivotTol) return kInfBound;
    const int j = basis_[slot];
    const double x = xval_[j];
    if (rate < 0.0) {
      if (x < lb_[j] - kFeasTol) return kInfBound;
      target = x > ub_[j] + kFeasTol ? ub_[j] : lb_[j];
      if (!std::isfinite(target)) return kInfBound;
      return std::max(0.0, (x - target) / -rate);
    }
    if (x > ub_[j] + kFeasTol) return kInfBound;
    target = x < lb_[j] - kFeasTol ? lb_[j] : ub_[j];
    if (!std::isfinite(target)) return kInfBound;
    return std::max(0.0, (target - x) / rate);
  };

  double range = ub_[enter] - lb_[enter];
  if (!std::isfinite(range)) range = kInfBound;
  double theta = range;
  for (int s = 0; s < m_; ++s) {
    double target = 0.0;
    theta = std::min(theta, breakpoint(s, target));
  }
  if (!std::isfinite(theta)) {
    if (phase1) throw std::logic_error("simplex: unbounded infeasibility direction");
    throw std::runtime_error("simplex: unbounded objective");
  }

  // Leaving choice among blocking rows at the minimal ratio: largest pivot
  // for stability, lowest variable index under Bland's rule.
  int leave_slot = -1;
  double leave_target = 0.0;
  for (int s = 0; s < m_; ++s) {
    double target = 0.0;
    if (breakpoint(s, target) > theta + 1e-9) continue;
    if (leave_slot < 0 ||
        (bland_ ? basis_[s] < basis_[leave_slot]
                : std::abs(w[s]) > std::abs(w[leave_slot]))) {
      leave_slot = s;
      leave_target = target;
    }
  }

  if (leave_slot < 0) {
    // Bound flip: the entering variable crosses to its other bound.
    for (int s = 0; s < m_; ++s) xval_[basis_[s]] -= t * range * w[s];
    xval_[enter] = t > 0 ? ub_[enter] : lb_[enter];
    state_[enter] = t > 0 ? VarState::AtUpper : VarState::AtLower;
    count_pivot(range);
    return StepKind::Stepped;
  }

  const double step_len = std::min(theta, range);
  for (int s = 0; s < m_; ++s) xval_[basis_[s]] -= t * step_len * w[s];
  xval_[enter] += t * step_len;

  const int leaving = basis_[leave_slot];
  const double leave_pivot = w[leave_slot];
  xval_[leaving] = leave_target;
  state_[leaving] = leave_target == ub_[leaving] && ub_[leaving] > lb_[leaving]
                        ? VarState::AtUpper
                        : VarState::AtLower;
  basis_[leave_slot] = enter;
  state_[enter] = VarState::Basic;

  // Product-form update of B^-1 on the pivot row.
  double* pr = &binv_[static_cast<std::size_t>(leave_slot) * m_];
  const double inv = 1.0 / leave_pivot;
  for (int k = 0; k < m_; ++k) pr[k] *= inv;
  for (int s = 0; s < m_; ++s) {
    if (s == leave_slot) continue;
    const double f = w[s];
    if (f == 0.0) continue;
    double* row = &binv_[static_cast<std::size_t>(s) * m_];
    for (int k = 0; k < m_; ++k) row[k] -= f * pr[k];
  }
  count_pivot(step_len);
  if (++pivots_since_refactor_ >= 128) {
    refactor();
    compute_basic_values();
  }
  return StepKind::Stepped;
}

ScalarResult SimplexSolver::solve() {
  sync_columns();
  const long limit = 50L * (model_->num_cols() + m_) + 1000;
  solve_pivots_ = 0;
  degen_pivots_ = 0;
  bland_ = false;

  if (!basis_ready_) {
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      basis_[i] = i;
      state_[i] = VarState::Basic;
    }
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    pivots_since_refactor_ = 0;
    basis_ready_ = true;
  }
  // Bounds may have moved since the basis was formed: re-anchor nonbasics.
  for (int j = 0; j < num_internal(); ++j) {
    if (state_[j] == VarState::Basic) continue;
    if (state_[j] == VarState::AtUpper && std::isfinite(ub_[j])) xval_[j] = ub_[j];
    else if (std::isfinite(lb_[j])) { xval_[j] = lb_[j]; state_[j] = VarState::AtLower; }
    else if (std::isfinite(ub_[j])) { xval_[j] = ub_[j]; state_[j] = VarState::AtUpper; }
    else xval_[j] = 0.0;
  }
  compute_basic_values();

  std::vector<double> cost2(num_internal(), 0.0);
  for (int j = 0; j < ns_; ++j) cost2[m_ + j] = obj_[j];

  std::vector<double> pc;
  for (int round = 0;; ++round) {
    if (round > 8) throw std::runtime_error("simplex: failed to stabilize");
    while (total_violation() > kFeasTol) {
      phase1_costs(pc);
      if (step(pc, true) == StepKind::Optimal) {
        ScalarResult r;
        r.status = SolveStatus::Infeasible;
        return r;
      }
      if (solve_pivots_ > limit) throw IterationLimit("simplex: phase-1 pivot limit");
    }
    while (step(cost2, false) == StepKind::Stepped)
      if (solve_pivots_ > limit) throw IterationLimit("simplex: phase-2 pivot limit");
    // Recompute from clean factors; declare optimality only if both primal
    // feasibility and the pricing verdict survive.
    refactor();
    compute_basic_values();
    if (total_violation() <= kFeasTol && step(cost2, false) == StepKind::Optimal) break;
  }

  ScalarResult r;
  r.status = SolveStatus::Optimal;
  r.x.resize(ns_);
  for (int j = 0; j < ns_; ++j) r.x[j] = xval_[m_ + j];
  r.value = 0.0;
  for (int j = 0; j < ns_; ++j) r.value += obj_[j] * r.x[j];
  std::vector<double> cb(m_);
  for (int s = 0; s < m_; ++s) cb[s] = cost2[basis_[s]];
  btran(cb, r.duals);
  r.reduced_costs.assign(ns_, 0.0);
  for (int j = 0; j < ns_; ++j) {
    if (state_[m_ + j] == VarState::Basic) continue;
    r.reduced_costs[j] = obj_[j] - col_dot(m_ + j, r.duals);
  }
  return r;
}

ScalarResult solve_lp(const LinearModel& model, const std::vector<double>& objective) {
  SimplexSolver solver(model);
  solver.set_objective(objective);
  return solver.solve();
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::CutoffExceeded: return "cutoff-exceeded";
  }
  return "unknown";
}

}  // namespace biobab
