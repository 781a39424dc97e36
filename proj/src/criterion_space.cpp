#include "biobab/criterion_space.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace biobab {

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Granularity compute_epsilon(const LinearModel& model) {
  double g[2];
  for (int k = 0; k < 2; ++k) {
    long long acc = 0;
    for (double v : model.objective(k)) {
      const long long iv = std::llround(v);
      if (std::fabs(v - static_cast<double>(iv)) > 1e-9) {
        throw std::invalid_argument(
            "compute_epsilon: objective coefficients must be integral");
      }
      acc = std::gcd(acc, std::llabs(iv));
    }
    g[k] = acc == 0 ? 1.0 : static_cast<double>(acc);
  }
  return {g[0], g[1]};
}

MatrixLexmin::MatrixLexmin(BiObjectiveModel& bm) : bm_(&bm) {
  if (!bm.model.has_objective_bounds()) {
    throw std::invalid_argument("MatrixLexmin: model needs objective bound rows");
  }
  for (int k = 0; k < 2; ++k) {
    base_rhs_[k] = bm.model.rhs(bm.model.objective_bound_row(k));
  }
}

MatrixLexmin::~MatrixLexmin() {
  for (int k = 0; k < 2; ++k) {
    bm_->model.set_rhs(bm_->model.objective_bound_row(k), base_rhs_[k]);
  }
}

LexResult MatrixLexmin::lexmin(int first, double cap1, double cap2) {
  LinearModel& model = bm_->model;
  const double caps[2] = {cap1, cap2};
  for (int k = 0; k < 2; ++k) {
    // kGridTol of slack keeps a solution lying exactly on the cap feasible
    // despite solver noise; the objective grid is coarser than the slack, so
    // no point beyond the cap slips in.
    model.set_rhs(model.objective_bound_row(k), std::min(base_rhs_[k], caps[k] + kGridTol));
  }
  LexResult r = lexmin_mip(model, first, [this](const std::vector<double>& x, double) {
    harvest_solution(archive_, *bm_, x);
  });
  // Leave the model as found: callers may inspect it between solves.
  for (int k = 0; k < 2; ++k) {
    model.set_rhs(model.objective_bound_row(k), base_rhs_[k]);
  }
  // Every lexicographic optimum goes through the archive's dominance check as
  // well, so the front never depends on which incumbents the search happened
  // to visit first.
  if (r.optimal()) harvest_solution(archive_, *bm_, r.x);
  return r;
}

SearchStats epsilon_constraint_search(LexminBackend& backend, EpsDirection direction,
                                      const Granularity& eps,
                                      const CriterionConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SearchStats stats;
  const int first = direction == EpsDirection::Obj1First ? 0 : 1;
  const int second = 1 - first;
  const double eps_second = second == 0 ? eps.g1 : eps.g2;
  double caps[2] = {kInf, kInf};
  while (true) {
    if (elapsed_seconds(start) > config.time_limit_seconds) {
      stats.complete = false;
      break;
    }
    const LexResult r = backend.lexmin(first, caps[0], caps[1]);
    stats.node_count += 1;
    stats.lp_count += 2;
    if (!r.optimal()) break;
    caps[second] = std::min(caps[second], r.second_value - eps_second);
  }
  stats.cpu_seconds = elapsed_seconds(start);
  return stats;
}

SearchStats epsilon_bidirectional_search(LexminBackend& backend, const Granularity& eps,
                                         const CriterionConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SearchStats stats;
  double caps[2] = {kInf, kInf};
  int dir = 0;
  while (true) {
    if (elapsed_seconds(start) > config.time_limit_seconds) {
      stats.complete = false;
      break;
    }
    const LexResult r = backend.lexmin(dir, caps[0], caps[1]);
    stats.node_count += 1;
    stats.lp_count += 2;
    if (!r.optimal()) break;  // The two moving bounds crossed: front complete.
    const int other = 1 - dir;
    const double eps_other = other == 0 ? eps.g1 : eps.g2;
    caps[other] = std::min(caps[other], r.second_value - eps_other);
    dir = other;
  }
  stats.cpu_seconds = elapsed_seconds(start);
  return stats;
}

SearchStats balanced_box_search(LexminBackend& backend, const Granularity& eps,
                                const CriterionConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SearchStats stats;

  // Top-left / bottom-right rectangle corners, both confirmed front points.
  struct Rectangle {
    ObjPoint zT;
    ObjPoint zB;
  };
  std::deque<Rectangle> queue;
  // A new nondominated point inside rect(zT, zB) is strictly between the
  // corners in both coordinates, so it needs a free grid value in each: drop
  // rectangles thinner than two grid steps in either direction. This also
  // enforces zT.z1 < zB.z1 for every enqueued rectangle.
  auto enqueue_if_open = [&](const ObjPoint& zT, const ObjPoint& zB) {
    if (zB.z1 - zT.z1 >= 2.0 * eps.g1 - kGridTol &&
        zT.z2 - zB.z2 >= 2.0 * eps.g2 - kGridTol) {
      queue.push_back({zT, zB});
    }
  };

  if (elapsed_seconds(start) > config.time_limit_seconds) {
    stats.complete = false;
    stats.cpu_seconds = elapsed_seconds(start);
    return stats;
  }
  const LexResult r_top = backend.lexmin(0, kInf, kInf);
  stats.lp_count += 2;
  if (!r_top.optimal()) {
    stats.cpu_seconds = elapsed_seconds(start);
    return stats;  // Infeasible model: empty front.
  }
  const ObjPoint zT{r_top.first_value, r_top.second_value};
  const LexResult r_bottom = backend.lexmin(1, kInf, kInf);
  stats.lp_count += 2;
  if (!r_bottom.optimal()) {
    throw std::logic_error("balanced_box_search: second endpoint solve infeasible");
  }
  const ObjPoint zB{r_bottom.second_value, r_bottom.first_value};
  enqueue_if_open(zT, zB);

  while (!queue.empty()) {
    if (elapsed_seconds(start) > config.time_limit_seconds) {
      stats.complete = false;
      break;
    }
    const Rectangle rect = queue.front();
    queue.pop_front();
    stats.node_count += 1;

    // Bottom half: leftmost point with z2 at most the halfway line. The
    // bottom-right corner qualifies, so this solve cannot be infeasible.
    const double mid = (rect.zT.z2 + rect.zB.z2) / 2.0;
    const LexResult rb = backend.lexmin(0, kInf, mid);
    stats.lp_count += 2;
    if (!rb.optimal()) {
      throw std::logic_error("balanced_box_search: bottom-half solve infeasible");
    }
    const ObjPoint zb{rb.first_value, rb.second_value};
    if (!approx_eq(zb, rect.zB)) enqueue_if_open(zb, rect.zB);

    // Top half: best-z2 point strictly left of the bottom-half result. The
    // top-left corner qualifies (any point at or left of it in z1 that also
    // beat the halfway line would dominate it), so infeasibility here means
    // the bound bookkeeping broke.
    const LexResult rt = backend.lexmin(1, zb.z1 - eps.g1, kInf);
    stats.lp_count += 2;
    if (!rt.optimal()) {
      throw std::logic_error("balanced_box_search: top-half solve infeasible");
    }
    const ObjPoint zt{rt.second_value, rt.first_value};
    if (!approx_eq(zt, rect.zT)) enqueue_if_open(rect.zT, zt);
  }
  stats.cpu_seconds = elapsed_seconds(start);
  return stats;
}

BiobabRun run_epsilon_constraint(BiObjectiveModel& bm, EpsDirection direction,
                                 const CriterionConfig& config) {
  const Granularity eps = compute_epsilon(bm.model);
  MatrixLexmin backend(bm);
  BiobabRun out;
  out.stats = epsilon_constraint_search(backend, direction, eps, config);
  out.front = archive_to_front(backend.archive(), bm);
  return out;
}

BiobabRun run_epsilon_bidirectional(BiObjectiveModel& bm, const CriterionConfig& config) {
  const Granularity eps = compute_epsilon(bm.model);
  MatrixLexmin backend(bm);
  BiobabRun out;
  out.stats = epsilon_bidirectional_search(backend, eps, config);
  out.front = archive_to_front(backend.archive(), bm);
  return out;
}

BiobabRun run_balanced_box(BiObjectiveModel& bm, const CriterionConfig& config) {
  const Granularity eps = compute_epsilon(bm.model);
  MatrixLexmin backend(bm);
  BiobabRun out;
  out.stats = balanced_box_search(backend, eps, config);
  out.front = archive_to_front(backend.archive(), bm);
  return out;
}

}  // namespace biobab
