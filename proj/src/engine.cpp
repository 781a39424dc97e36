#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <utility>
#include <vector>

#include "biobab/search.hpp"

namespace biobab {

namespace {

constexpr double kImproveTol = 1e-6;

/// True when u lies strictly inside the rectangle spanned by a (upper left)
/// and b (lower right) in both coordinates; only such points split a pair.
bool strictly_between(const ObjPoint& a, const ObjPoint& b, const ObjPoint& u) {
  return u.z1 > a.z1 + kGeomEps && u.z1 < b.z1 - kGeomEps &&
         u.z2 < a.z2 - kGeomEps && u.z2 > b.z2 + kGeomEps;
}

}  // namespace

BoundResult bound(BoundingBackend& backend, const SearchNode& node, bool lifting,
                  const Granularity& grid) {
  BoundResult out;

  ScalarOutcome r1 = backend.lexmin(0);
  out.scalar_solves += 2;
  if (r1.status != SolveStatus::Optimal) return out;
  ScalarOutcome r2 = backend.lexmin(1);
  out.scalar_solves += 2;
  if (r2.status != SolveStatus::Optimal) {
    throw std::logic_error("second lexicographic solve failed in a region the first proved feasible");
  }

  ObjPoint p = r1.z, q = r2.z;
  out.supports.push_back({p, std::move(r1.x)});
  if (q.z1 - p.z1 <= kGridTol || p.z2 - q.z2 <= kGridTol) {
    // Both lexicographic optima coincide: the region holds a single image.
    out.segments = link_nadirs({p}, node.c);
    return out;
  }
  out.supports.push_back({q, std::move(r2.x)});

  std::vector<std::pair<ObjPoint, ObjPoint>> work{{p, q}}, accepted;
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    if (lifting && triangle_skip(a, b, grid)) {
      accepted.emplace_back(a, b);
      continue;
    }
    double w2 = b.z1 - a.z1;
    double w1 = a.z2 - b.z2;
    double cutoff = std::min(w1 * a.z1 + w2 * a.z2, w1 * b.z1 + w2 * b.z2);
    ScalarOutcome r = backend.weighted(w1, w2, cutoff);
    ++out.scalar_solves;
    if (r.status == SolveStatus::CutoffExceeded) {
      accepted.emplace_back(a, b);
      continue;
    }
    if (r.status != SolveStatus::Optimal) {
      throw std::logic_error("weighted scalarization infeasible between two feasible endpoints");
    }
    ObjPoint u = r.z;
    double value = w1 * u.z1 + w2 * u.z2;
    out.supports.push_back({u, std::move(r.x)});
    if (value < cutoff - kImproveTol && strictly_between(a, b, u)) {
      work.emplace_back(a, u);
      work.emplace_back(u, b);
    } else {
      accepted.emplace_back(a, b);
    }
  }

  std::sort(accepted.begin(), accepted.end(),
            [](const auto& s, const auto& t) { return s.first.z1 < t.first.z1; });
  std::vector<ObjPoint> chain{accepted.front().first};
  for (const auto& [a, b] : accepted) {
    if (!approx_eq(a.z1, chain.back().z1) || !approx_eq(a.z2, chain.back().z2)) {
      throw std::logic_error("dichotomy produced a non-contiguous chain of extreme points");
    }
    chain.push_back(b);
  }
  // Merge interior points that sit on the line of their neighbours (alternate
  // optima can re-derive a point of an already-confirmed chord).
  for (std::size_t i = 1; i + 1 < chain.size();) {
    const ObjPoint &l = chain[i - 1], &r = chain[i + 1];
    double slope = (r.z2 - l.z2) / (r.z1 - l.z1);
    double on_line = l.z2 + slope * (chain[i].z1 - l.z1);
    if (std::fabs(chain[i].z2 - on_line) <= 1e-7) {
      chain.erase(chain.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  out.segments = link_nadirs(chain, node.c);
  return out;
}

SearchStats run_engine(BoundingBackend& backend, const EngineConfig& config) {
  SearchStats stats;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  const double shift1 = config.integer_dominance ? 0.5 * config.grid.g1 : 0.0;
  const double shift2 = config.integer_dominance ? 0.5 * config.grid.g2 : 0.0;

  // A rectangle whose anchor is weakly dominated by an archived point covers
  // only images that point weakly dominates: nothing new can be found there.
  auto exhausted_rectangle = [&](const LbSegment& s) {
    if (!s.is_rectangle()) return false;
    for (const auto& e : backend.archive().entries()) {
      if (e.z.z1 > s.p.z1 + kGridTol) break;  // entries sorted by z1
      if (e.z.z2 <= s.p.z2 + kGridTol) return true;
    }
    return false;
  };

  std::deque<SearchNode> queue{SearchNode{}};
  while (!queue.empty()) {
    if (elapsed() > config.time_limit_seconds) {
      stats.complete = false;
      break;
    }
    SearchNode node = std::move(queue.front());
    queue.pop_front();
    ++stats.node_count;

    backend.enter_node(node);
    BoundResult lb = bound(backend, node, config.lift, config.grid);
    stats.lp_count += lb.scalar_solves;
    if (lb.segments.empty()) continue;

    LowerBoundSet segs =
        filter_bound_set(lb.segments, backend.archive().points(), shift1, shift2);
    if (config.tighten) {
      std::erase_if(segs, [&](const LbSegment& s) {
        return !segment_covers_grid_point(s, config.grid);
      });
    }
    std::erase_if(segs, exhausted_rectangle);
    if (segs.empty()) continue;

    std::vector<Portion> portions;
    if (config.objective_space_branching) {
      portions = disjoint_portions(segs);
    } else {
      Portion all{0, segs.size(), segs.front().c};
      for (const auto& s : segs) {
        all.nadir.z1 = std::max(all.nadir.z1, s.c.z1);
        all.nadir.z2 = std::max(all.nadir.z2, s.c.z2);
      }
      portions.push_back(all);
    }
    if (portions.size() > 1) {
      long k = static_cast<long>(portions.size());
      (node.depth == 0 ? stats.osb_branches_root : stats.osb_branches_other) += k;
      stats.max_osb_depth = std::max(stats.max_osb_depth, node.depth);
    }

    for (const Portion& portion : portions) {
      double lo = segs[portion.first].p.z1 - kGridTol;
      double hi = portion.nadir.z1 + kGridTol;
      std::vector<SupportSolution> in_portion;
      for (const auto& s : lb.supports) {
        if (s.z.z1 >= lo && s.z.z1 <= hi) in_portion.push_back(s);
      }
      std::vector<BranchingDecision> branches = backend.decision_branches(in_portion);
      if (branches.empty() && in_portion.size() < lb.supports.size()) {
        branches = backend.decision_branches(lb.supports);
      }
      if (branches.empty()) {
        throw std::logic_error("no decision branch found for a portion that survived fathoming");
      }
      for (const BranchingDecision& d : branches) {
        SearchNode child{portion.nadir, node.decisions, node.depth + 1};
        child.decisions.push_back(d);
        queue.push_back(std::move(child));
      }
    }
  }

  stats.cpu_seconds = elapsed();
  return stats;
}

}  // namespace biobab
