#ifndef BIOBAB_SEGMENT_HPP
#define BIOBAB_SEGMENT_HPP

#include <vector>

#include "biobab/point.hpp"

namespace biobab {

/// Lower-bound segment: the line piece between extreme points p and q together
/// with a local nadir c. Either p == q (a rectangle lower bound anchored at a
/// single point) or p.z1 < q.z1 and p.z2 > q.z2. The covered region, i.e. the
/// part of objective space where feasible images may still exist, is the
/// polygon p, q, (c.z1, q.z2), c, (p.z1, c.z2); for a rectangle it is the box
/// [p.z1, c.z1] x [p.z2, c.z2].
struct LbSegment {
  ObjPoint p;
  ObjPoint q;
  ObjPoint c;

  LbSegment() = default;
  LbSegment(ObjPoint p_, ObjPoint q_, ObjPoint c_);

  [[nodiscard]] bool is_rectangle() const { return p == q; }
  /// Slope of the segment line, negative for a proper segment.
  [[nodiscard]] double slope() const { return (q.z2 - p.z2) / (q.z1 - p.z1); }
  /// Intercept of the segment line.
  [[nodiscard]] double intercept() const { return p.z2 - slope() * p.z1; }

  /// True if z lies in the covered region (within tol).
  [[nodiscard]] bool covers(const ObjPoint& z, double tol = kGeomEps) const;

  friend bool operator==(const LbSegment&, const LbSegment&) = default;
};

/// A lower-bound set: segments sorted by p.z1.
using LowerBoundSet = std::vector<LbSegment>;

/// Removes from s the open quadrant {z : z1 > u.z1 and z2 > u.z2} dominated by
/// the (already shifted) upper-bound point u. Returns the segments covering
/// exactly the surviving part of s's region: the whole segment when u does not
/// dominate any of it, a nadir-tightened copy when u clips only the box, the
/// two pieces split at the line when u dominates part of the line, and the two
/// L-shape pieces when u lies on or above the line inside the box. Empty when
/// u weakly dominates both p and q.
[[nodiscard]] std::vector<LbSegment> filter_segment(const LbSegment& s,
                                                    const ObjPoint& u);

/// Filters every segment of lb against every archive point shifted by
/// (shift1, shift2); the shift implements integer dominance (0.5 per grid step
/// when enabled, 0 otherwise). Result is sorted by p.z1. Empty means the whole
/// region is dominated and the node can be fathomed.
[[nodiscard]] LowerBoundSet filter_bound_set(const LowerBoundSet& lb,
                                             const std::vector<ObjPoint>& upper,
                                             double shift1, double shift2);

/// True if the covered region contains at least one grid point. For a proper
/// segment this is the closest-corner test: (floor(c1), floor(c2)) must lie in
/// the polygon; for a rectangle, in the box.
[[nodiscard]] bool segment_covers_grid_point(const LbSegment& s,
                                             const Granularity& g);

/// True if no grid point lies strictly below the line through p and q within
/// the right triangle p, (p.z1, q.z2), q; in that case the pair (p, q) is a
/// valid lower-bound segment without solving the weighted subproblem.
/// Requires p.z1 < q.z1 and p.z2 > q.z2.
[[nodiscard]] bool triangle_skip(const ObjPoint& p, const ObjPoint& q,
                                 const Granularity& g);

/// Builds a lower-bound set from extreme points sorted by strictly increasing
/// z1 (and strictly decreasing z2): one segment per consecutive pair, each
/// non-last segment with nadir (q.z1, nadir.z2), the last with the full nadir.
/// A single point yields one rectangle. Throws std::invalid_argument on
/// unsorted or dominated pairs.
[[nodiscard]] LowerBoundSet link_nadirs(const std::vector<ObjPoint>& extremes,
                                        const ObjPoint& nadir);

/// Splits lb into maximal chains of connected segments; consecutive segments
/// s, t are connected iff s.q == t.p and s.c.z1 <= t.p.z1 + tol. Each portion
/// is returned with its local nadir (component-wise max of member nadirs).
struct Portion {
  std::size_t first = 0;  // index range [first, last) into the bound set
  std::size_t last = 0;
  ObjPoint nadir;
};
[[nodiscard]] std::vector<Portion> disjoint_portions(const LowerBoundSet& lb,
                                                     double tol = kGridTol);

}  // namespace biobab

#endif  // BIOBAB_SEGMENT_HPP
