#ifndef BIOBAB_POINT_HPP
#define BIOBAB_POINT_HPP

#include <cmath>
#include <limits>
#include <string>

namespace biobab {

/// Tolerance used when snapping nearly-integral values to the objective grid.
inline constexpr double kGridTol = 1e-6;
/// Tolerance for strict geometric comparisons inside the filter.
inline constexpr double kGeomEps = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A point in (minimization) objective space. Coordinates are finite except
/// for the infinity sentinels used as initial nadir bounds.
struct ObjPoint {
  double z1 = 0.0;
  double z2 = 0.0;

  friend bool operator==(const ObjPoint&, const ObjPoint&) = default;
};

[[nodiscard]] inline bool approx_eq(double a, double b, double tol = kGridTol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= tol;
}

[[nodiscard]] inline bool approx_eq(const ObjPoint& a, const ObjPoint& b,
                                    double tol = kGridTol) {
  return approx_eq(a.z1, b.z1, tol) && approx_eq(a.z2, b.z2, tol);
}

/// u weakly dominates v: u is no worse in both objectives (ties allowed).
[[nodiscard]] inline bool weakly_dominates(const ObjPoint& u, const ObjPoint& v) {
  return u.z1 <= v.z1 && u.z2 <= v.z2;
}

/// u dominates v: no worse in both objectives and strictly better in one.
[[nodiscard]] inline bool dominates(const ObjPoint& u, const ObjPoint& v) {
  return u.z1 <= v.z1 && u.z2 <= v.z2 && (u.z1 < v.z1 || u.z2 < v.z2);
}

/// Per-objective grid step. After model scaling both steps are 1, but the
/// geometry routines stay generic.
struct Granularity {
  double g1 = 1.0;
  double g2 = 1.0;
};

/// Largest grid multiple <= x, snapping values within kGridTol of the grid.
[[nodiscard]] inline double grid_floor(double x, double g) {
  if (std::isinf(x)) return x;
  return g * std::floor(x / g + kGridTol);
}

/// Smallest grid multiple >= x, snapping values within kGridTol of the grid.
[[nodiscard]] inline double grid_ceil(double x, double g) {
  if (std::isinf(x)) return x;
  return g * std::ceil(x / g - kGridTol);
}

[[nodiscard]] inline bool is_on_grid(double x, double g, double tol = kGridTol) {
  if (std::isinf(x)) return false;
  return std::fabs(x - g * std::round(x / g)) <= tol;
}

[[nodiscard]] inline std::string to_string(const ObjPoint& p) {
  return "(" + std::to_string(p.z1) + ", " + std::to_string(p.z2) + ")";
}

}  // namespace biobab

#endif  // BIOBAB_POINT_HPP
