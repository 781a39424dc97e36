#include "biobab/segment.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace biobab {

LbSegment::LbSegment(ObjPoint p_, ObjPoint q_, ObjPoint c_) : p(p_), q(q_), c(c_) {
  if (!(p == q)) {
    if (!(p.z1 < q.z1 && p.z2 > q.z2))
      throw std::invalid_argument("segment extremes must satisfy p1 < q1 and p2 > q2");
  }
  if (c.z1 < q.z1 - kGridTol || c.z2 < p.z2 - kGridTol)
    throw std::invalid_argument("segment nadir must satisfy c1 >= q1 and c2 >= p2");
}

bool LbSegment::covers(const ObjPoint& z, double tol) const {
  if (z.z1 < p.z1 - tol || z.z1 > c.z1 + tol) return false;
  if (z.z2 > c.z2 + tol) return false;
  if (is_rectangle()) return z.z2 >= p.z2 - tol;
  if (z.z2 < q.z2 - tol) return false;
  return z.z2 >= slope() * z.z1 + intercept() - tol;
}

std::vector<LbSegment> filter_segment(const LbSegment& s, const ObjPoint& u) {
  // Nothing above/right of the nadir is covered, so a point there removes nothing.
  if (u.z1 >= s.c.z1 - kGeomEps || u.z2 >= s.c.z2 - kGeomEps) return {s};

  std::vector<LbSegment> out;
  const ObjPoint& p = s.p;
  const ObjPoint& q = s.q;
  const ObjPoint& c = s.c;

  if (s.is_rectangle()) {
    if (u.z1 >= p.z1 - kGeomEps)  // left strip survives
      out.emplace_back(p, p, ObjPoint{std::min(u.z1, c.z1), c.z2});
    if (u.z2 >= p.z2 - kGeomEps)  // bottom strip survives
      out.emplace_back(p, p, ObjPoint{c.z1, std::min(u.z2, c.z2)});
    return out;
  }

  const double a = s.slope();
  const double b = s.intercept();

  // Part left of u: {z in s : z1 <= u1}.
  if (u.z1 >= p.z1 - kGeomEps) {
    if (u.z1 >= q.z1 - kGeomEps) {
      out.emplace_back(p, q, ObjPoint{std::min(u.z1, c.z1), c.z2});
    } else if (u.z1 > p.z1 + kGeomEps) {
      out.emplace_back(p, ObjPoint{u.z1, a * u.z1 + b}, ObjPoint{u.z1, c.z2});
    } else {  // u1 == p1: the vertical sliver at p1
      out.emplace_back(p, p, ObjPoint{p.z1, c.z2});
    }
  }

  // Part below u: {z in s : z2 <= u2}. When u dominates part of the line the
  // two parts are disjoint (the paper's split); when u is on/above the line
  // inside the box they overlap in the corner below u, covering the L-shaped
  // remainder with two separately-branchable pieces.
  if (u.z2 >= q.z2 - kGeomEps) {
    if (u.z2 >= p.z2 - kGeomEps) {
      out.emplace_back(p, q, ObjPoint{c.z1, std::min(u.z2, c.z2)});
    } else if (u.z2 > q.z2 + kGeomEps) {
      const double x = (u.z2 - b) / a;
      out.emplace_back(ObjPoint{x, u.z2}, q, ObjPoint{c.z1, u.z2});
    } else {  // u2 == q2: the horizontal sliver at q2
      out.emplace_back(q, q, ObjPoint{c.z1, q.z2});
    }
  }
  return out;
}

LowerBoundSet filter_bound_set(const LowerBoundSet& lb,
                               const std::vector<ObjPoint>& upper, double shift1,
                               double shift2) {
  LowerBoundSet cur = lb;
  for (const ObjPoint& u : upper) {
    const ObjPoint shifted{u.z1 - shift1, u.z2 - shift2};
    LowerBoundSet next;
    next.reserve(cur.size() + 1);
    for (const LbSegment& s : cur) {
      auto pieces = filter_segment(s, shifted);
      next.insert(next.end(), pieces.begin(), pieces.end());
    }
    cur = std::move(next);
    if (cur.empty()) break;
  }
  std::stable_sort(cur.begin(), cur.end(), [](const LbSegment& x, const LbSegment& y) {
    if (x.p.z1 != y.p.z1) return x.p.z1 < y.p.z1;
    return x.c.z1 < y.c.z1;
  });
  return cur;
}

bool segment_covers_grid_point(const LbSegment& s, const Granularity& g) {
  const double f1 = grid_floor(s.c.z1, g.g1);
  const double f2 = grid_floor(s.c.z2, g.g2);
  if (s.is_rectangle())
    return f1 >= s.p.z1 - kGridTol && f2 >= s.p.z2 - kGridTol;
  if (f1 < s.p.z1 - kGridTol) return false;
  if (f2 < s.q.z2 - kGridTol) return false;
  // Closest corner (f1, f2) must lie on or above the line.
  return f2 >= s.slope() * f1 + s.intercept() - kGridTol;
}

bool triangle_skip(const ObjPoint& p, const ObjPoint& q, const Granularity& g) {
  const double a = (q.z2 - p.z2) / (q.z1 - p.z1);
  const double b = p.z2 - a * p.z1;
  // No grid point strictly below the chord iff the grid corner nearest the
  // right angle is already on or above it.
  return grid_ceil(q.z2, g.g2) >= a * grid_ceil(p.z1, g.g1) + b - kGridTol;
}

LowerBoundSet link_nadirs(const std::vector<ObjPoint>& extremes,
                          const ObjPoint& nadir) {
  if (extremes.empty()) return {};
  for (std::size_t i = 0; i + 1 < extremes.size(); ++i) {
    if (!(extremes[i].z1 < extremes[i + 1].z1 && extremes[i].z2 > extremes[i + 1].z2))
      throw std::invalid_argument("link_nadirs: extremes must be sorted and mutually nondominated");
  }
  LowerBoundSet lb;
  if (extremes.size() == 1) {
    lb.emplace_back(extremes[0], extremes[0], nadir);
    return lb;
  }
  for (std::size_t i = 0; i + 1 < extremes.size(); ++i) {
    const bool last = i + 2 == extremes.size();
    ObjPoint c = last ? nadir : ObjPoint{extremes[i + 1].z1, nadir.z2};
    lb.emplace_back(extremes[i], extremes[i + 1], c);
  }
  return lb;
}

std::vector<Portion> disjoint_portions(const LowerBoundSet& lb, double tol) {
  std::vector<Portion> portions;
  std::size_t i = 0;
  while (i < lb.size()) {
    Portion g;
    g.first = i;
    g.nadir = lb[i].c;
    std::size_t j = i + 1;
    while (j < lb.size() && approx_eq(lb[j - 1].q, lb[j].p, tol) &&
           lb[j - 1].c.z1 <= lb[j].p.z1 + tol) {
      g.nadir.z1 = std::max(g.nadir.z1, lb[j].c.z1);
      g.nadir.z2 = std::max(g.nadir.z2, lb[j].c.z2);
      ++j;
    }
    g.last = j;
    portions.push_back(g);
    i = j;
  }
  return portions;
}

}  // namespace biobab
