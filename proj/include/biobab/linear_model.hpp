#ifndef BIOBAB_LINEAR_MODEL_HPP
#define BIOBAB_LINEAR_MODEL_HPP

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace biobab {

enum class RowSense { LessEqual, Equal, GreaterEqual };

/// Dense two-objective linear model: min over x of obj[k] subject to row
/// constraints and variable bounds. Storage is column-major (one dense vector
/// of row coefficients per variable) so columns can be appended while solving,
/// which the column-generation master requires. Rows added after columns
/// extend every column with zeros.
///
/// The two objective-bound rows (obj[k](x) <= rhs) are installed once via
/// install_objective_bounds and updated per search node through their indices;
/// lexicographic solves pin the first-stage objective through the same rows.
class LinearModel {
 public:
  /// Returns the new column's index. Entries default to zero.
  int add_column(double lb, double ub, bool is_integer);
  /// Returns the new row's index.
  int add_row(RowSense sense, double rhs);
  int add_row(const std::vector<std::pair<int, double>>& entries, RowSense sense,
              double rhs);

  void set_entry(int row, int col, double value);
  [[nodiscard]] double entry(int row, int col) const { return cols_[col][row]; }

  void set_objective(int k, const std::vector<double>& coeffs);
  void set_objective_coeff(int k, int col, double value);
  [[nodiscard]] const std::vector<double>& objective(int k) const { return obj_[k]; }

  void set_rhs(int row, double value) { rhs_[row] = value; }
  /// Solvers capture senses at construction; create a new solver afterwards.
  void set_sense(int row, RowSense s) { sense_[row] = s; }
  void set_col_bounds(int col, double lb, double ub);

  [[nodiscard]] int num_cols() const { return static_cast<int>(cols_.size()); }
  [[nodiscard]] int num_rows() const { return static_cast<int>(rhs_.size()); }
  [[nodiscard]] const std::vector<double>& col(int j) const { return cols_[j]; }
  [[nodiscard]] double lower(int j) const { return lb_[j]; }
  [[nodiscard]] double upper(int j) const { return ub_[j]; }
  [[nodiscard]] bool is_integer(int j) const { return integer_[j]; }
  [[nodiscard]] RowSense sense(int row) const { return sense_[row]; }
  [[nodiscard]] double rhs(int row) const { return rhs_[row]; }

  /// Adds the two rows obj[k](x) <= rhs_k and records their indices. Any
  /// column added later must re-install or patch the rows itself.
  void install_objective_bounds(double rhs1, double rhs2);
  [[nodiscard]] int objective_bound_row(int k) const { return obj_bound_row_[k]; }
  [[nodiscard]] bool has_objective_bounds() const { return obj_bound_row_[0] >= 0; }

  [[nodiscard]] double objective_value(int k, const std::vector<double>& x) const;
  [[nodiscard]] double row_activity(int row, const std::vector<double>& x) const;
  /// Largest constraint or bound violation of x.
  [[nodiscard]] double feasibility_residual(const std::vector<double>& x) const;

 private:
  std::vector<std::vector<double>> cols_;  // cols_[j][i] = A(i, j)
  std::vector<double> lb_, ub_;
  std::vector<char> integer_;
  std::vector<RowSense> sense_;
  std::vector<double> rhs_;
  std::array<std::vector<double>, 2> obj_;
  std::array<int, 2> obj_bound_row_{-1, -1};
};

}  // namespace biobab

#endif  // BIOBAB_LINEAR_MODEL_HPP
