#ifndef BIOBAB_MIP_HPP
#define BIOBAB_MIP_HPP

#include <functional>
#include <optional>
#include <vector>

#include "biobab/linear_model.hpp"
#include "biobab/scalar.hpp"
#include "biobab/simplex.hpp"

namespace biobab {

/// Receives every improving integer solution found during a search, before
/// the search finishes; used to harvest points into the nondominated archive.
using IncumbentSink = std::function<void(const std::vector<double>& x, double value)>;

struct MipOptions {
  /// Strict cutoff: only solutions with value < cutoff are searched for. When
  /// none exists the result is CutoffExceeded (the cutoff stems from a known
  /// solution, so feasibility of the model itself is not re-proven).
  std::optional<double> cutoff;
  IncumbentSink incumbent_sink;
};

/// Best-first branch-and-bound over the model's integer variables: nodes are
/// ordered by parent LP bound, branching picks the most fractional variable
/// (ties toward the lowest index). All variables are expected to carry the
/// integrality flag and finite bounds.
ScalarResult solve_mip(const LinearModel& model, const std::vector<double>& objective,
                       const MipOptions& opts = {});

/// Outcome of a two-stage lexicographic solve. `first_value` is the stage-1
/// optimum of objective `first`; `second_value` the stage-2 optimum of the
/// other objective with the first pinned. `x` attains second_value exactly
/// but first_value only up to the pinning band, so lexicographic points must
/// be reported from the values, never re-evaluated from x: the band drift
/// would push a bound-set extreme past genuine images.
struct LexResult {
  SolveStatus status = SolveStatus::Infeasible;
  double first_value = 0.0;
  double second_value = 0.0;
  std::vector<double> x;

  [[nodiscard]] bool optimal() const { return status == SolveStatus::Optimal; }
};

/// Two-stage lexicographic LP minimization: optimize objective `first`, pin
/// its optimum through the matching objective-bound row (1e-6 band), then
/// optimize the other objective on the given solver (kept warm across the
/// stages). The bound row's rhs is restored before returning.
LexResult lexmin_lp(const LinearModel& model, SimplexSolver& solver, int first);

/// Lexicographic MIP counterpart; incumbents from both stages are emitted to
/// the sink. The model's objective-bound row is mutated and restored.
LexResult lexmin_mip(LinearModel& model, int first, const IncumbentSink& sink = {});

}  // namespace biobab

#endif  // BIOBAB_MIP_HPP
