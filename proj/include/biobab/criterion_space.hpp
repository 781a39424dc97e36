#ifndef BIOBAB_CRITERION_SPACE_HPP
#define BIOBAB_CRITERION_SPACE_HPP

#include "biobab/archive.hpp"
#include "biobab/matrix_backend.hpp"
#include "biobab/mip.hpp"
#include "biobab/point.hpp"
#include "biobab/problems.hpp"
#include "biobab/search.hpp"

namespace biobab {

/// Per-objective gcd of the nonzero objective coefficients; 1 when a row is
/// all-zero. This is the largest step by which the corresponding objective
/// can change between distinct integer solutions, hence a valid epsilon.
/// Throws std::invalid_argument on non-integral coefficients.
[[nodiscard]] Granularity compute_epsilon(const LinearModel& model);

/// Which objective the single-direction epsilon-constraint method optimizes
/// first in every iteration.
enum class EpsDirection { Obj1First, Obj2First };

/// Limits shared by the criterion-space searches.
struct CriterionConfig {
  double time_limit_seconds = 7200.0;
};

/// Exact lexicographic oracle used by the criterion-space methods: solves
/// lexmin over the region {f1 <= cap1, f2 <= cap2} (internal units, kInf
/// meaning unrestricted) and harvests every integer solution it encounters
/// into the archive. Callers pass exact cap arithmetic; implementations must
/// still accept solutions within kGridTol of a cap, so points lying exactly
/// on a bound survive solver noise. Implemented by the matrix model below and
/// by the column-generation master for the route problem.
class LexminBackend {
 public:
  virtual ~LexminBackend() = default;

  virtual LexResult lexmin(int first, double cap1, double cap2) = 0;
  virtual Archive& archive() = 0;
};

/// LexminBackend over a two-objective matrix model: caps are applied through
/// the objective-bound rows (never loosening the model's own bounds) and the
/// integer kernel answers the solves. Row sides are restored on destruction.
class MatrixLexmin final : public LexminBackend {
 public:
  explicit MatrixLexmin(BiObjectiveModel& bm);
  ~MatrixLexmin() override;
  MatrixLexmin(const MatrixLexmin&) = delete;
  MatrixLexmin& operator=(const MatrixLexmin&) = delete;

  LexResult lexmin(int first, double cap1, double cap2) override;
  Archive& archive() override { return archive_; }

 private:
  BiObjectiveModel* bm_;
  Archive archive_;
  double base_rhs_[2];
};

// ---------------------------------------------------------------------------
// Search cores. Stats: node_count counts oracle iterations (epsilon-
// constraint: lexicographic solves including the final infeasible one;
// balanced box: rectangles examined), lp_count counts scalarized solves
// (a lexicographic solve is two), complete is false when the time limit hit.
// ---------------------------------------------------------------------------

/// Repeated lexmin of the leading objective, each iteration demanding the
/// other objective to improve by its epsilon, until infeasible. Exactly
/// |front| + 1 iterations.
SearchStats epsilon_constraint_search(LexminBackend& backend, EpsDirection direction,
                                      const Granularity& eps,
                                      const CriterionConfig& config = {});

/// Strictly alternating epsilon-constraint: one solve per direction, both
/// moving bounds applied to every solve, stopping at the first infeasible
/// solve (the bounds crossed in the middle of the front).
SearchStats epsilon_bidirectional_search(LexminBackend& backend, const Granularity& eps,
                                         const CriterionConfig& config = {});

/// Balanced box method: lexicographic endpoint pair, then a queue of
/// rectangles, each split at the halfway line of the second objective. The
/// bottom half is searched in (f1, f2) order, the top half in (f2, f1) order
/// under the f1 cap one epsilon left of the bottom result. Rectangles too
/// thin to hold an interior grid point are never enqueued.
SearchStats balanced_box_search(LexminBackend& backend, const Granularity& eps,
                                const CriterionConfig& config = {});

// ---------------------------------------------------------------------------
// Matrix-model wrappers: epsilon from compute_epsilon, front in original
// units. The model's bound rows are restored afterwards.
// ---------------------------------------------------------------------------

BiobabRun run_epsilon_constraint(BiObjectiveModel& bm, EpsDirection direction,
                                 const CriterionConfig& config = {});
BiobabRun run_epsilon_bidirectional(BiObjectiveModel& bm,
                                    const CriterionConfig& config = {});
BiobabRun run_balanced_box(BiObjectiveModel& bm, const CriterionConfig& config = {});

}  // namespace biobab

#endif  // BIOBAB_CRITERION_SPACE_HPP
