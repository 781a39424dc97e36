#ifndef BIOBAB_MATRIX_BACKEND_HPP
#define BIOBAB_MATRIX_BACKEND_HPP

#include <vector>

#include "biobab/problems.hpp"
#include "biobab/search.hpp"
#include "biobab/simplex.hpp"

namespace biobab {

/// How the matrix backend answers scalarized solves: over the LP relaxation
/// (bound sets are fractional hulls) or over the integer program itself
/// (every extreme point is an image of an integer solution).
enum class BoundMode { LpRelaxation, IntegerExact };

/// Bounding backend over a scaled two-objective matrix model. Node entry
/// resets all column bounds, applies VarFix decisions, and retargets the two
/// objective-bound rows to the node's c. One warm simplex instance persists
/// across nodes for LP-mode solves; integer solves run the branch-and-bound
/// kernel per call. Every integral solution seen is archived immediately.
class MatrixBackend : public BoundingBackend {
 public:
  MatrixBackend(BiObjectiveModel& bm, BoundMode mode);

  void enter_node(const SearchNode& node) override;
  ScalarOutcome lexmin(int first) override;
  ScalarOutcome weighted(double w1, double w2, double cutoff) override;
  std::vector<BranchingDecision> decision_branches(
      const std::vector<SupportSolution>& supports) override;
  Archive& archive() override { return archive_; }

 private:
  void harvest(const std::vector<double>& x);
  /// Fills z from the primal point; harvests integral LP solutions.
  ScalarOutcome finish(ScalarResult r);

  BiObjectiveModel* bm_;
  BoundMode mode_;
  Archive archive_;
  SimplexSolver solver_;
  std::vector<double> base_lb_, base_ub_;
  double base_rhs_[2];
};

/// Configuration of a matrix-model run: bounding mode plus the engine
/// toggles.
struct BiobabConfig {
  BoundMode mode = BoundMode::LpRelaxation;
  EngineConfig engine;
};

struct BiobabRun {
  ParetoFront front;  // original units
  SearchStats stats;
};

/// Runs the full search on a matrix model and maps the archive back to
/// original units. The model's bounds and row sides are mutated during the
/// search and restored to the root state afterwards.
BiobabRun run_biobab(BiObjectiveModel& bm, const BiobabConfig& config);

}  // namespace biobab

#endif  // BIOBAB_MATRIX_BACKEND_HPP
