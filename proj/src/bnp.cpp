#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biobab/bnp.hpp"
#include "biobab/segment.hpp"

namespace biobab {

namespace {

constexpr double kIntegralTol = 1e-6;
constexpr double kNegativeRc = -1e-6;
constexpr int kMaxCgIterations = 100000;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

// ---------------------------------------------------------------------------
// Data preparation
// ---------------------------------------------------------------------------

long long BitoptwData::total_score() const {
  long long s = 0;
  for (long long v : score) s += v;
  return s;
}

BitoptwData build_route_data(const BitoptwInstance& inst) {
  const int nv = static_cast<int>(inst.nodes.size());
  if (nv < 2) throw std::invalid_argument("route instance needs both depots");
  if (nv - 2 > 62) {
    throw std::invalid_argument("too many control points for the visited-set mask");
  }
  if (inst.fleet < 1) throw std::invalid_argument("fleet must be positive");
  for (const BitoptwNode& nd : inst.nodes) {
    if (nd.open > nd.close) throw std::invalid_argument("time window is empty");
    if (nd.score < 0 || nd.service < 0) {
      throw std::invalid_argument("scores and service times must be nonnegative");
    }
  }

  BitoptwData d;
  d.n = nv - 2;
  d.fleet = inst.fleet;
  d.score.resize(static_cast<std::size_t>(nv));
  d.service.resize(static_cast<std::size_t>(nv));
  d.open.resize(static_cast<std::size_t>(nv));
  d.close.resize(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) {
    const BitoptwNode& nd = inst.nodes[static_cast<std::size_t>(v)];
    d.score[static_cast<std::size_t>(v)] =
        (v == 0 || v == d.end_vertex()) ? 0 : nd.score;
    d.service[static_cast<std::size_t>(v)] = nd.service;
    d.open[static_cast<std::size_t>(v)] = nd.open;
    d.close[static_cast<std::size_t>(v)] = nd.close;
  }

  long long g1 = 0, g2 = 0;
  d.cost.assign(static_cast<std::size_t>(nv),
                std::vector<long long>(static_cast<std::size_t>(nv), 0));
  d.time = d.cost;
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) {
      if (!d.arc_exists(i, j)) continue;
      long long t = inst.travel(i, j);
      d.time[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t;
      d.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t;
      g1 = std::gcd(g1, t);
    }
  }
  for (int i = 1; i <= d.n; ++i) g2 = std::gcd(g2, d.score[static_cast<std::size_t>(i)]);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  d.scale = Granularity{static_cast<double>(g1), static_cast<double>(g2)};
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) {
      d.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] /= g1;
    }
    if (i >= 1 && i <= d.n) d.score[static_cast<std::size_t>(i)] /= g2;
  }
  return d;
}

Column make_column(const BitoptwData& d, const std::vector<int>& route) {
  if (route.size() < 2 || route.front() != 0 || route.back() != d.end_vertex()) {
    throw std::invalid_argument("route must run from the start to the end depot");
  }
  Column col;
  col.route = route;
  long long t = d.open[0];
  for (std::size_t k = 1; k < route.size(); ++k) {
    const int a = route[k - 1], b = route[k];
    if (b < 0 || b >= d.num_vertices() || !d.arc_exists(a, b)) {
      throw std::invalid_argument("route uses a nonexistent arc");
    }
    if (b != d.end_vertex()) {
      if ((col.mask >> (b - 1)) & 1u) {
        throw std::invalid_argument("route visits a control point twice");
      }
      col.mask |= std::uint64_t{1} << (b - 1);
    }
    t = std::max(d.open[static_cast<std::size_t>(b)],
                 t + d.service[static_cast<std::size_t>(a)] +
                     d.time[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    if (t > d.close[static_cast<std::size_t>(b)]) {
      throw std::invalid_argument("route violates a time window");
    }
    col.cost += d.cost[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    col.score += d.score[static_cast<std::size_t>(b)];
  }
  return col;
}

// ---------------------------------------------------------------------------
// Pricing
// ---------------------------------------------------------------------------

std::vector<std::vector<double>> reduced_cost_matrix(const BitoptwData& d, double w1,
                                                     double w2,
                                                     const std::vector<double>& pi,
                                                     double alpha, double lambda1,
                                                     double lambda2) {
  const int nv = d.num_vertices();
  std::vector<std::vector<double>> rc(static_cast<std::size_t>(nv),
                                      std::vector<double>(static_cast<std::size_t>(nv),
                                                          kInf));
  for (int i = 0; i < nv; ++i) {
    const double dual = i == 0 ? alpha : pi[static_cast<std::size_t>(i)];
    for (int j = 0; j < nv; ++j) {
      if (!d.arc_exists(i, j)) continue;
      rc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (w1 - lambda1) *
              static_cast<double>(
                  d.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) -
          (w2 + lambda2) * static_cast<double>(d.score[static_cast<std::size_t>(i)]) -
          dual;
    }
  }
  return rc;
}

bool RouteRestrictions::allows(const Column& col) const {
  if (col.dummy) return true;
  for (std::size_t k = 0; k < col.route.size(); ++k) {
    const int v = col.route[k];
    if (forbidden[static_cast<std::size_t>(v)]) return false;
    if (k > 0 &&
        banned_arc[static_cast<std::size_t>(col.route[k - 1])][static_cast<std::size_t>(v)]) {
      return false;
    }
  }
  return true;
}

std::vector<Column> price(const BitoptwData& d,
                          const std::vector<std::vector<double>>& rcost,
                          const RouteRestrictions& restrictions) {
  const int nv = d.num_vertices();
  const int end = d.end_vertex();
  std::vector<Label> arena;
  std::vector<std::vector<int>> kept(static_cast<std::size_t>(nv));
  std::deque<int> queue;

  auto dominates = [](const Label& a, const Label& b) {
    return a.time <= b.time && a.rcost <= b.rcost &&
           (a.visited & ~b.visited) == 0;
  };
  auto insert = [&](Label cand) {
    std::vector<int>& at = kept[static_cast<std::size_t>(cand.vertex)];
    for (int idx : at) {
      if (dominates(arena[static_cast<std::size_t>(idx)], cand)) return;
    }
    at.erase(std::remove_if(at.begin(), at.end(),
                            [&](int idx) {
                              return dominates(cand, arena[static_cast<std::size_t>(idx)]);
                            }),
             at.end());
    const int id = static_cast<int>(arena.size());
    arena.push_back(cand);
    at.push_back(id);
    if (cand.vertex != end) queue.push_back(id);
  };

  insert(Label{0, d.open[0], 0.0, 0, -1});
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    const Label lab = arena[static_cast<std::size_t>(cur)];
    // A label replaced by a dominating one is no longer kept; skip it.
    const std::vector<int>& at = kept[static_cast<std::size_t>(lab.vertex)];
    if (std::find(at.begin(), at.end(), cur) == at.end()) continue;
    for (int j = 0; j < nv; ++j) {
      if (!d.arc_exists(lab.vertex, j)) continue;
      if (restrictions.banned_arc[static_cast<std::size_t>(lab.vertex)][static_cast<std::size_t>(j)]) {
        continue;
      }
      if (restrictions.forbidden[static_cast<std::size_t>(j)]) continue;
      if (j != end && ((lab.visited >> (j - 1)) & 1u)) continue;
      const long long arrive =
          std::max(d.open[static_cast<std::size_t>(j)],
                   lab.time + d.service[static_cast<std::size_t>(lab.vertex)] +
                       d.time[static_cast<std::size_t>(lab.vertex)][static_cast<std::size_t>(j)]);
      if (arrive > d.close[static_cast<std::size_t>(j)]) continue;
      Label next;
      next.vertex = j;
      next.time = arrive;
      next.rcost =
          lab.rcost + rcost[static_cast<std::size_t>(lab.vertex)][static_cast<std::size_t>(j)];
      next.visited =
          j == end ? lab.visited : (lab.visited | (std::uint64_t{1} << (j - 1)));
      next.parent = cur;
      insert(next);
    }
  }

  std::vector<Column> out;
  for (int idx : kept[static_cast<std::size_t>(end)]) {
    if (arena[static_cast<std::size_t>(idx)].rcost >= kNegativeRc) continue;
    std::vector<int> route;
    for (int k = idx; k >= 0; k = arena[static_cast<std::size_t>(k)].parent) {
      route.push_back(arena[static_cast<std::size_t>(k)].vertex);
    }
    std::reverse(route.begin(), route.end());
    out.push_back(make_column(d, route));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Column-generation master
// ---------------------------------------------------------------------------

ColgenBackend::ColgenBackend(const BitoptwInstance& inst)
    : data_(build_route_data(inst)), restrictions_(data_.num_vertices()) {
  const int n = data_.n;

  Column dummy;
  dummy.dummy = true;
  dummy.active = false;
  pool_.push_back(dummy);
  model_.add_column(0.0, 0.0, false);

  for (int i = 1; i <= n; ++i) model_.add_row(RowSense::LessEqual, 1.0);
  const int fleet_row = model_.add_row(RowSense::Equal, static_cast<double>(data_.fleet));
  model_.set_entry(fleet_row, 0, static_cast<double>(data_.fleet));

  // Root caps: nothing reachable is cut off. Every control point is left at
  // most once and each vehicle leaves the start once, bounding any total cost.
  double cost_bound = 1.0;
  for (int i = 0; i <= n; ++i) {
    long long best = 0;
    for (int j = 1; j < data_.num_vertices(); ++j) {
      if (data_.arc_exists(i, j)) {
        best = std::max(best, data_.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      }
    }
    cost_bound += static_cast<double>(best) * (i == 0 ? data_.fleet : 1);
  }
  base_rhs_[0] = cost_bound;
  base_rhs_[1] = 1.0;
  model_.set_objective(0, {0.0});
  model_.set_objective(1, {0.0});
  model_.install_objective_bounds(base_rhs_[0], base_rhs_[1]);
  // The dummy stays below any reachable objective cap on both bound rows.
  const double slack_entry =
      -(cost_bound + static_cast<double>(data_.total_score()) + 10.0);
  model_.set_entry(model_.objective_bound_row(0), 0, slack_entry);
  model_.set_entry(model_.objective_bound_row(1), 0, slack_entry);

  // The depot-to-depot column keeps the fleet equality satisfiable for any m
  // (unless even that route is time-infeasible, in which case the dummy will
  // expose the infeasibility).
  try {
    append_column(make_column(data_, {0, data_.end_vertex()}));
  } catch (const std::invalid_argument&) {
  }

  enter_node(SearchNode{});
}

int ColgenBackend::append_column(Column col) {
  if (route_index_.count(col.route) != 0) return -1;
  const int j = model_.add_column(0.0, kInf, true);
  for (std::size_t k = 1; k + 1 < col.route.size(); ++k) {
    model_.set_entry(covering_row(col.route[k]), j, 1.0);
  }
  model_.set_entry(data_.n, j, 1.0);  // fleet row
  const double f1 = static_cast<double>(col.cost);
  const double f2 = -static_cast<double>(col.score);
  model_.set_entry(model_.objective_bound_row(0), j, f1);
  model_.set_entry(model_.objective_bound_row(1), j, f2);
  model_.set_objective_coeff(0, j, f1);
  model_.set_objective_coeff(1, j, f2);
  route_index_.emplace(col.route, j);
  col.active = true;
  pool_.push_back(std::move(col));
  return j;
}

int ColgenBackend::ensure_column(const std::vector<int>& route) {
  const auto it = route_index_.find(route);
  if (it != route_index_.end()) return it->second;
  const int j = append_column(make_column(data_, route));
  Column& col = pool_[static_cast<std::size_t>(j)];
  col.active = restrictions_.allows(col);
  if (!col.active) model_.set_col_bounds(j, 0.0, 0.0);
  return j;
}

void ColgenBackend::enter_node(const SearchNode& node) {
  const int n = data_.n;
  restrictions_ = RouteRestrictions(data_.num_vertices());
  forced_.assign(static_cast<std::size_t>(data_.num_vertices()), 0);

  for (const BranchingDecision& d : node.decisions) {
    switch (d.kind) {
      case BranchingDecision::Kind::ControlPoint:
        (d.forced ? forced_ : restrictions_.forbidden)[static_cast<std::size_t>(d.from)] = 1;
        break;
      case BranchingDecision::Kind::Arc:
        if (d.forced) {
          for (int k = 0; k < data_.num_vertices(); ++k) {
            if (k != d.to && data_.arc_exists(d.from, k)) {
              restrictions_.banned_arc[static_cast<std::size_t>(d.from)][static_cast<std::size_t>(k)] = 1;
            }
            if (k != d.from && data_.arc_exists(k, d.to)) {
              restrictions_.banned_arc[static_cast<std::size_t>(k)][static_cast<std::size_t>(d.to)] = 1;
            }
          }
        } else {
          restrictions_.banned_arc[static_cast<std::size_t>(d.from)][static_cast<std::size_t>(d.to)] = 1;
        }
        break;
      case BranchingDecision::Kind::VarFix:
        throw std::logic_error("route master only takes control-point and arc decisions");
    }
  }

  for (int i = 1; i <= n; ++i) {
    const bool off = restrictions_.forbidden[static_cast<std::size_t>(i)] != 0;
    const bool on = forced_[static_cast<std::size_t>(i)] != 0;
    if (off && on) throw std::logic_error("contradictory control-point decisions");
    const int row = covering_row(i);
    model_.set_sense(row, on ? RowSense::Equal : RowSense::LessEqual);
    model_.set_rhs(row, off ? 0.0 : 1.0);
    model_.set_entry(row, 0, on ? 1.0 : 0.0);
  }

  for (std::size_t j = 1; j < pool_.size(); ++j) {
    pool_[j].active = restrictions_.allows(pool_[j]);
    model_.set_col_bounds(static_cast<int>(j), 0.0, pool_[j].active ? kInf : 0.0);
  }
  model_.set_col_bounds(0, 0.0, 0.0);
  pool_[0].active = false;

  model_.set_rhs(model_.objective_bound_row(0), std::min(node.c.z1, base_rhs_[0]));
  model_.set_rhs(model_.objective_bound_row(1), std::min(node.c.z2, base_rhs_[1]));

  // Row senses are frozen inside a solver, so each node gets a fresh one; the
  // column pool and its basis-relevant data live in the model.
  solver_ = std::make_unique<SimplexSolver>(model_);
}

ColgenBackend::CgResult ColgenBackend::cg_solve(double w1, double w2) {
  const int n = data_.n;
  const double penalty =
      1e6 * std::max(1.0, w1 * base_rhs_[0] +
                              w2 * static_cast<double>(data_.total_score()));
  bool dummy_active = false;
  solver_->set_col_bounds(0, 0.0, 0.0);

  ScalarResult r;
  for (int iter = 0;; ++iter) {
    if (iter > kMaxCgIterations) {
      throw std::logic_error("column generation did not converge");
    }
    std::vector<double> obj(pool_.size(), 0.0);
    obj[0] = dummy_active ? penalty : 0.0;
    for (std::size_t j = 1; j < pool_.size(); ++j) {
      if (!pool_[j].active) continue;
      obj[j] = w1 * static_cast<double>(pool_[j].cost) -
               w2 * static_cast<double>(pool_[j].score);
    }
    solver_->set_objective(obj);
    r = solver_->solve();
    ++master_solves_;
    if (!r.optimal()) {
      if (!dummy_active) {  // recover feasibility, then resume pricing
        dummy_active = true;
        solver_->set_col_bounds(0, 0.0, kInf);
        continue;
      }
      throw std::logic_error("penalized route master must be feasible");
    }

    std::vector<double> pi(static_cast<std::size_t>(data_.num_vertices()), 0.0);
    for (int i = 1; i <= n; ++i) {
      pi[static_cast<std::size_t>(i)] = r.duals[static_cast<std::size_t>(covering_row(i))];
    }
    const double alpha = r.duals[static_cast<std::size_t>(n)];
    const double lambda1 =
        r.duals[static_cast<std::size_t>(model_.objective_bound_row(0))];
    const double lambda2 =
        -r.duals[static_cast<std::size_t>(model_.objective_bound_row(1))];
    const auto rc = reduced_cost_matrix(data_, w1, w2, pi, alpha, lambda1, lambda2);
    const std::vector<Column> cols = price(data_, rc, restrictions_);
    int added = 0;
    for (const Column& c : cols) {
      if (append_column(c) >= 0) ++added;
    }
    if (added == 0) {
      if (!cols.empty()) {
        throw std::logic_error("pricer reproposed pooled columns: dual inconsistency");
      }
      break;
    }
  }

  if (dummy_active) {
    if (r.x[0] > 1e-7) return CgResult{};  // only the dummy holds the rows together
    solver_->set_col_bounds(0, 0.0, 0.0);
    std::vector<double> obj(pool_.size(), 0.0);
    for (std::size_t j = 1; j < pool_.size(); ++j) {
      if (!pool_[j].active) continue;
      obj[j] = w1 * static_cast<double>(pool_[j].cost) -
               w2 * static_cast<double>(pool_[j].score);
    }
    solver_->set_objective(obj);
    r = solver_->solve();
    ++master_solves_;
    if (!r.optimal()) return CgResult{};
  }

  CgResult out;
  out.status = SolveStatus::Optimal;
  out.value = r.value;
  out.z = ObjPoint{model_.row_activity(model_.objective_bound_row(0), r.x),
                   model_.row_activity(model_.objective_bound_row(1), r.x)};
  harvest_if_integral(r.x);
  out.x = std::move(r.x);
  return out;
}

bool ColgenBackend::is_integral_master(const std::vector<double>& x) const {
  if (!x.empty() && x[0] > kIntegralTol) return false;
  for (std::size_t j = 1; j < pool_.size() && j < x.size(); ++j) {
    if (std::fabs(x[j] - std::round(x[j])) > kIntegralTol) return false;
  }
  return true;
}

void ColgenBackend::harvest_if_integral(const std::vector<double>& x) {
  if (!is_integral_master(x)) return;
  long long z1 = 0, z2 = 0;
  std::vector<std::string> routes;
  for (std::size_t j = 1; j < pool_.size() && j < x.size(); ++j) {
    const long long count = std::llround(x[j]);
    if (count <= 0) continue;
    z1 += pool_[j].cost * count;
    z2 -= pool_[j].score * count;
    std::ostringstream os;
    for (std::size_t k = 0; k < pool_[j].route.size(); ++k) {
      if (k > 0) os << '-';
      os << pool_[j].route[k];
    }
    for (long long c = 0; c < count; ++c) routes.push_back(os.str());
  }
  std::sort(routes.begin(), routes.end());
  std::string sol;
  for (std::size_t k = 0; k < routes.size(); ++k) {
    if (k > 0) sol += ' ';
    sol += routes[k];
  }
  archive_.insert(ObjPoint{static_cast<double>(z1), static_cast<double>(z2)},
                  std::move(sol));
}

ScalarOutcome ColgenBackend::lexmin(int first) {
  const CgResult a = cg_solve(first == 0 ? 1.0 : 0.0, first == 0 ? 0.0 : 1.0);
  ScalarOutcome out;
  if (a.status != SolveStatus::Optimal) return out;

  const int row = model_.objective_bound_row(first);
  const double saved = solver_->rhs(row);
  solver_->set_rhs(row, std::min(saved, a.value + 1e-6));
  const CgResult b = cg_solve(first == 0 ? 0.0 : 1.0, first == 0 ? 1.0 : 0.0);
  solver_->set_rhs(row, saved);
  if (b.status != SolveStatus::Optimal) {
    throw std::logic_error("pinned second lexicographic stage lost feasibility");
  }

  out.status = SolveStatus::Optimal;
  // Report the stage optima: the stage-2 point only attains the first value
  // within the pinning band.
  (first == 0 ? out.z.z1 : out.z.z2) = a.value;
  (first == 0 ? out.z.z2 : out.z.z1) = b.value;
  out.x = b.x;
  return out;
}

ScalarOutcome ColgenBackend::weighted(double w1, double w2, double /*cutoff*/) {
  CgResult r = cg_solve(w1, w2);
  ScalarOutcome out;
  out.status = r.status;
  if (r.status != SolveStatus::Optimal) return out;
  out.z = r.z;
  out.x = std::move(r.x);
  return out;
}

std::vector<BranchingDecision> ColgenBackend::decision_branches(
    const std::vector<SupportSolution>& supports) {
  if (supports.empty()) return {};
  const int n = data_.n;
  const double count = static_cast<double>(supports.size());

  int best_point = -1;
  double best_dist = kInf;
  for (int i = 1; i <= n; ++i) {
    double mean = 0.0;
    for (const SupportSolution& s : supports) {
      for (std::size_t j = 1; j < pool_.size() && j < s.x.size(); ++j) {
        if (pool_[j].visits(i)) mean += s.x[j];
      }
    }
    mean /= count;
    if (std::fabs(mean - std::round(mean)) <= kIntegralTol) continue;
    const double dist = std::fabs(mean - 0.5);
    if (dist < best_dist - kGeomEps) {
      best_point = i;
      best_dist = dist;
    }
  }
  if (best_point >= 0) {
    BranchingDecision on{BranchingDecision::Kind::ControlPoint, best_point, 0.0,
                         best_point, -1, true};
    BranchingDecision off = on;
    off.forced = false;
    return {on, off};
  }

  const int nv = data_.num_vertices();
  std::vector<std::vector<double>> flow(static_cast<std::size_t>(nv),
                                        std::vector<double>(static_cast<std::size_t>(nv), 0.0));
  for (const SupportSolution& s : supports) {
    for (std::size_t j = 1; j < pool_.size() && j < s.x.size(); ++j) {
      if (s.x[j] <= 0.0) continue;
      const std::vector<int>& route = pool_[j].route;
      for (std::size_t k = 1; k < route.size(); ++k) {
        flow[static_cast<std::size_t>(route[k - 1])][static_cast<std::size_t>(route[k])] +=
            s.x[j];
      }
    }
  }
  int best_from = -1, best_to = -1;
  best_dist = kInf;
  for (int a = 0; a < nv; ++a) {
    for (int b = 0; b < nv; ++b) {
      if (!data_.arc_exists(a, b)) continue;
      const double mean = flow[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] / count;
      const double frac = mean - std::floor(mean);
      if (frac <= kIntegralTol || frac >= 1.0 - kIntegralTol) continue;
      const double dist = std::fabs(frac - 0.5);
      if (dist < best_dist - kGeomEps) {
        best_from = a;
        best_to = b;
        best_dist = dist;
      }
    }
  }
  if (best_from < 0) return {};
  BranchingDecision on{BranchingDecision::Kind::Arc, -1, 0.0, best_from, best_to, true};
  BranchingDecision off = on;
  off.forced = false;
  return {on, off};
}

// ---------------------------------------------------------------------------
// Front mapping and the bi-objective run
// ---------------------------------------------------------------------------

ParetoFront bitoptw_front(const Archive& archive, const BitoptwData& d) {
  ParetoFront out;
  out.reserve(archive.entries().size());
  for (const ArchiveEntry& e : archive.entries()) {
    out.push_back({ObjPoint{e.z.z1 * d.scale.g1, -e.z.z2 * d.scale.g2}, e.solution});
  }
  std::sort(out.begin(), out.end(), [](const FrontPoint& a, const FrontPoint& b) {
    return a.z.z1 != b.z.z1 ? a.z.z1 < b.z.z1 : a.z.z2 < b.z.z2;
  });
  return out;
}

BiobabRun run_biobab_bitoptw(const BitoptwInstance& inst, const EngineConfig& config) {
  ColgenBackend backend(inst);
  BiobabRun run;
  run.stats = run_engine(backend, config);
  run.front = bitoptw_front(backend.archive(), backend.data());
  return run;
}

// ---------------------------------------------------------------------------
// Lexicographic oracle for the criterion-space methods
// ---------------------------------------------------------------------------

ColgenLexmin::ColgenLexmin(ColgenBackend& backend, double time_limit_seconds)
    : backend_(&backend),
      start_(std::chrono::steady_clock::now()),
      time_limit_seconds_(time_limit_seconds) {}

double ColgenLexmin::solve_stage(int k, const ObjPoint& caps) {
  Archive& archive = backend_->archive();
  auto within_caps = [&](const ObjPoint& z) {
    return z.z1 <= caps.z1 && z.z2 <= caps.z2;
  };
  // Archived points inside the caps are feasible for this stage, so the best
  // of them is a valid incumbent even before the tree search starts.
  double incumbent = kInf;
  for (const ArchiveEntry& e : archive.entries()) {
    if (within_caps(e.z)) incumbent = std::min(incumbent, k == 0 ? e.z.z1 : e.z.z2);
  }

  std::deque<SearchNode> nodes;
  nodes.push_back(SearchNode{caps, {}, 0});
  while (!nodes.empty()) {
    if (elapsed_seconds(start_) > time_limit_seconds_) {
      timed_out_ = true;
      throw SearchTimeout();
    }
    const SearchNode node = std::move(nodes.front());
    nodes.pop_front();
    ++stats_.node_count;
    backend_->enter_node(node);
    const ScalarOutcome out =
        backend_->weighted(k == 0 ? 1.0 : 0.0, k == 0 ? 0.0 : 1.0, kInf);
    ++stats_.lp_count;
    if (out.status != SolveStatus::Optimal) continue;
    const double bound = k == 0 ? out.z.z1 : out.z.z2;

    if (backend_->is_integral_master(out.x)) {  // exact leaf, already harvested
      incumbent = std::min(incumbent, std::round(bound));
      continue;
    }

    // The relaxation value anchors a rectangle over the node's caps; filtered
    // empty against the half-step-shifted archive means some archived point
    // within the caps matches anything the subtree could still reach.
    const ObjPoint anchor =
        k == 0 ? ObjPoint{bound, node.c.z2} : ObjPoint{node.c.z1, bound};
    LowerBoundSet lb{LbSegment{anchor, anchor, node.c}};
    std::vector<ObjPoint> uppers;
    uppers.reserve(archive.entries().size());
    for (const ArchiveEntry& e : archive.entries()) uppers.push_back(e.z);
    if (filter_bound_set(lb, uppers, 0.5, 0.5).empty()) continue;

    // Integer images sit on the unit grid, so the subtree cannot strictly
    // beat the incumbent once the rounded-up bound reaches it.
    if (std::ceil(bound - kGridTol) >= incumbent - kGridTol) continue;

    std::vector<BranchingDecision> branches =
        backend_->decision_branches({{out.z, out.x}});
    if (branches.empty()) {
      throw std::logic_error("fractional master solution yielded no branching entity");
    }
    for (const BranchingDecision& d : branches) {
      SearchNode child{node.c, node.decisions, node.depth + 1};
      child.decisions.push_back(d);
      nodes.push_back(std::move(child));
    }
  }

  // Subtrees fathomed by the filter deferred to archived witnesses; those
  // points may have been harvested after the incumbent was seeded, so the
  // stage optimum is the best of the leaves and the final in-cap archive.
  for (const ArchiveEntry& e : archive.entries()) {
    if (within_caps(e.z)) incumbent = std::min(incumbent, k == 0 ? e.z.z1 : e.z.z2);
  }
  return incumbent;
}

LexResult ColgenLexmin::lexmin(int first, double cap1, double cap2) {
  LexResult r;
  r.status = SolveStatus::Infeasible;
  if (timed_out_) throw SearchTimeout();

  // Caps arrive as exact grid arithmetic; the slack keeps a solution lying
  // exactly on a cap feasible despite solver noise (the next grid point is a
  // whole step away).
  ObjPoint caps{std::isfinite(cap1) ? cap1 + kGridTol : cap1,
                std::isfinite(cap2) ? cap2 + kGridTol : cap2};
  const double v1 = solve_stage(first, caps);
  if (v1 == kInf) return r;

  ObjPoint pinned = caps;
  double& pin = first == 0 ? pinned.z1 : pinned.z2;
  pin = std::min(pin, v1 + 1e-6);
  const double v2 = solve_stage(1 - first, pinned);
  if (v2 == kInf) {
    throw std::logic_error("pinned second lexicographic stage lost feasibility");
  }
  r.status = SolveStatus::Optimal;
  r.first_value = v1;
  r.second_value = v2;
  return r;
}

// ---------------------------------------------------------------------------
// Criterion-space wrappers
// ---------------------------------------------------------------------------

namespace {

BiobabRun finish_criterion_run(ColgenBackend& backend, const ColgenLexmin& lex,
                               SearchStats stats) {
  stats.lp_count = lex.tree_stats().lp_count;
  stats.node_count = lex.tree_stats().node_count;
  stats.complete = stats.complete && !lex.timed_out();
  BiobabRun run;
  run.stats = stats;
  run.front = bitoptw_front(backend.archive(), backend.data());
  return run;
}

}  // namespace

BiobabRun run_epsilon_constraint_bitoptw(const BitoptwInstance& inst,
                                         EpsDirection direction,
                                         const CriterionConfig& config) {
  ColgenBackend backend(inst);
  ColgenLexmin lex(backend, config.time_limit_seconds);
  SearchStats stats;
  try {
    stats = epsilon_constraint_search(lex, direction, Granularity{1.0, 1.0}, config);
  } catch (const SearchTimeout&) {
    stats.complete = false;
  }
  return finish_criterion_run(backend, lex, stats);
}

BiobabRun run_epsilon_bidirectional_bitoptw(const BitoptwInstance& inst,
                                            const CriterionConfig& config) {
  ColgenBackend backend(inst);
  ColgenLexmin lex(backend, config.time_limit_seconds);
  SearchStats stats;
  try {
    stats = epsilon_bidirectional_search(lex, Granularity{1.0, 1.0}, config);
  } catch (const SearchTimeout&) {
    stats.complete = false;
  }
  return finish_criterion_run(backend, lex, stats);
}

BiobabRun run_balanced_box_bitoptw(const BitoptwInstance& inst,
                                   const CriterionConfig& config) {
  ColgenBackend backend(inst);
  ColgenLexmin lex(backend, config.time_limit_seconds);
  SearchStats stats;
  try {
    stats = balanced_box_search(lex, Granularity{1.0, 1.0}, config);
  } catch (const SearchTimeout&) {
    stats.complete = false;
  }
  return finish_criterion_run(backend, lex, stats);
}

}  // namespace biobab
