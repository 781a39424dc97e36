#ifndef BIOBAB_SIMPLEX_HPP
#define BIOBAB_SIMPLEX_HPP

#include <vector>

#include "biobab/linear_model.hpp"
#include "biobab/scalar.hpp"

namespace biobab {

/// Bounded-variable primal revised simplex over a LinearModel.
///
/// The solver owns working copies of the objective, variable bounds and row
/// right-hand sides so that search nodes can retarget them without touching
/// the model. Column entries are always read from the model; columns appended
/// to the model are picked up on the next solve (nonbasic at their lower
/// bound), which is what the column-generation master relies on. Rows must
/// not be added and existing entries must not change once a solver exists.
///
/// The basis persists across solves. Each solve first restores primal
/// feasibility from the current basis with a composite phase 1 (minimizing
/// total bound violation of basic variables, no artificial columns), then
/// optimizes; after an objective change this usually costs a handful of
/// pivots. B^-1 is kept dense and updated per pivot, with periodic
/// refactorization and a verification pass at apparent optimality.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearModel& model);

  /// Costs per structural column; missing tail entries are zero.
  void set_objective(const std::vector<double>& c);
  void set_rhs(int row, double value) { rhs_[row] = value; }
  [[nodiscard]] double rhs(int row) const { return rhs_[row]; }
  void set_col_bounds(int col, double lb, double ub);
  /// Re-copies every column bound from the model (used per search node).
  void reset_bounds_from_model();

  ScalarResult solve();

  [[nodiscard]] long pivot_count() const { return total_pivots_; }

 private:
  enum class VarState : char { Basic, AtLower, AtUpper };
  enum class StepKind : char { Optimal, Stepped };

  // Internal column layout: [0, m) row slacks, [m, m + ns) structural.
  [[nodiscard]] int num_internal() const { return m_ + ns_; }
  [[nodiscard]] bool is_slack(int j) const { return j < m_; }
  [[nodiscard]] int struct_index(int j) const { return j - m_; }

  void sync_columns();
  [[nodiscard]] double col_dot(int j, const std::vector<double>& v) const;
  void ftran(int j, std::vector<double>& w) const;  // w = B^-1 * A_j
  void btran(const std::vector<double>& cb, std::vector<double>& y) const;
  void refactor();
  void compute_basic_values();
  [[nodiscard]] double total_violation() const;
  void phase1_costs(std::vector<double>& c) const;
  StepKind step(const std::vector<double>& cost, bool phase1);
  void count_pivot(double theta);

  const LinearModel* model_;
  int m_ = 0;   // rows
  int ns_ = 0;  // structural columns currently synced

  std::vector<double> obj_;   // structural costs (phase 2)
  std::vector<double> rhs_;
  std::vector<double> lb_, ub_;      // internal layout
  std::vector<double> xval_;         // internal layout
  std::vector<VarState> state_;      // internal layout
  std::vector<int> basis_;           // size m
  std::vector<double> binv_;         // dense m x m, row-major
  std::vector<std::vector<int>> nz_; // nonzero rows per structural column

  bool basis_ready_ = false;
  bool bland_ = false;
  long solve_pivots_ = 0;
  long degen_pivots_ = 0;
  long pivots_since_refactor_ = 0;
  long total_pivots_ = 0;
};

/// Solves min objective over the model's LP relaxation with a fresh solver.
ScalarResult solve_lp(const LinearModel& model, const std::vector<double>& objective);

}  // namespace biobab

#endif  // BIOBAB_SIMPLEX_HPP
