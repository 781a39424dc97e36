#ifndef BIOBAB_SEARCH_HPP
#define BIOBAB_SEARCH_HPP

#include <vector>

#include "biobab/archive.hpp"
#include "biobab/point.hpp"
#include "biobab/scalar.hpp"
#include "biobab/segment.hpp"

namespace biobab {

/// One decision-space branching constraint attached to a search node.
/// VarFix pins a column of a matrix model; ControlPoint and Arc are the
/// route-model branching rules (`from` holds the control point for the
/// former).
struct BranchingDecision {
  enum class Kind { VarFix, ControlPoint, Arc };
  Kind kind = Kind::VarFix;
  int var = -1;
  double value = 0.0;
  int from = -1, to = -1;
  bool forced = false;
};

/// Node of the search tree: objective bounds c (both objectives must be <= c
/// in this region; infinite at the root) plus the accumulated decisions.
struct SearchNode {
  ObjPoint c{kInf, kInf};
  std::vector<BranchingDecision> decisions;
  int depth = 0;
};

/// Image and primal solution of one scalarized solve, collected as branching
/// support.
struct SupportSolution {
  ObjPoint z;
  std::vector<double> x;
};

/// Result of one scalarized solve as seen by the bounding loop.
struct ScalarOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  ObjPoint z{kInf, kInf};
  std::vector<double> x;
};

/// Counters of one search run. lp_count counts scalarized solves issued by
/// the bounding procedure (a lexicographic solve counts as two).
struct SearchStats {
  long lp_count = 0;
  long node_count = 0;
  long osb_branches_root = 0;
  long osb_branches_other = 0;
  int max_osb_depth = 0;
  double cpu_seconds = 0.0;
  bool complete = true;  // false when the time limit cut the run short
};

/// Scalar oracle driven by the bounding procedure. A backend owns the
/// underlying model (matrix or column-generation master) and the archive of
/// integer points; it applies node state, answers scalarized solves over the
/// node's region, harvests every integer solution it encounters into the
/// archive, and generates problem-specific decision branches.
class BoundingBackend {
 public:
  virtual ~BoundingBackend() = default;

  /// Installs the node's branching decisions and objective bounds.
  virtual void enter_node(const SearchNode& node) = 0;

  /// Lexicographic minimum: objective `first`, then the other.
  virtual ScalarOutcome lexmin(int first) = 0;

  /// min w1 f1 + w2 f2 over the node's region. `cutoff` is a value known to
  /// be attained; exact backends may answer CutoffExceeded as soon as no
  /// solution strictly better than it exists.
  virtual ScalarOutcome weighted(double w1, double w2, double cutoff) = 0;

  /// Decision branches for one portion, selected from its supporting
  /// solutions. Empty when no fractional entity exists among the supports.
  virtual std::vector<BranchingDecision> decision_branches(
      const std::vector<SupportSolution>& supports) = 0;

  virtual Archive& archive() = 0;
};

struct BoundResult {
  LowerBoundSet segments;  // empty = node region infeasible
  std::vector<SupportSolution> supports;
  long scalar_solves = 0;
};

/// Dichotomic weighted-sum bounding of the node's region: lexicographic
/// endpoints first, then a work stack of point pairs. A pair is accepted
/// without solving when `lifting` holds and no grid point lies strictly below
/// its chord; otherwise the weighted subproblem either yields a strictly
/// better point (splitting the pair) or confirms the pair. Accepted pairs are
/// chained, collinear interior points merged, and the chain is linked into
/// segments with the node's c as global nadir.
BoundResult bound(BoundingBackend& backend, const SearchNode& node, bool lifting,
                  const Granularity& grid);

/// Enhancement toggles and limits of a search run.
struct EngineConfig {
  bool objective_space_branching = true;
  bool tighten = true;
  bool lift = true;
  bool integer_dominance = true;
  double time_limit_seconds = 7200.0;
  Granularity grid{1.0, 1.0};
};

/// Breadth-first search: bound, filter against the archive (shifted by half a
/// grid step under integer dominance), tighten, drop rectangles whose anchor
/// is weakly dominated by the archive, split into portions (objective-space
/// branching), and branch each portion independently. The archive ends up
/// holding exactly the nondominated set (unless the time limit hits).
SearchStats run_engine(BoundingBackend& backend, const EngineConfig& config);

}  // namespace biobab

#endif  // BIOBAB_SEARCH_HPP
