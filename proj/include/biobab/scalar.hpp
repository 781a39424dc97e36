#ifndef BIOBAB_SCALAR_HPP
#define BIOBAB_SCALAR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace biobab {

enum class SolveStatus {
  Optimal,
  Infeasible,
  CutoffExceeded,  // feasible points exist but none beats the cutoff
};

[[nodiscard]] std::string to_string(SolveStatus s);

/// Result of a scalar (single-objective) solve. `x` holds the structural
/// variables only; `duals` (one multiplier per row) and `reduced_costs` are
/// populated by LP solves, `duals` empty otherwise.
struct ScalarResult {
  SolveStatus status = SolveStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> duals;
  std::vector<double> reduced_costs;

  [[nodiscard]] bool optimal() const { return status == SolveStatus::Optimal; }
};

/// Hard numerical failure: the pivot count exceeded 50 * (columns + rows),
/// which at desk scale means cycling or corrupted state, never a long solve.
class IterationLimit : public std::runtime_error {
 public:
  explicit IterationLimit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace biobab

#endif  // BIOBAB_SCALAR_HPP
