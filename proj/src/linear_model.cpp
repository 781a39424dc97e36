#include "biobab/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace biobab {

int LinearModel::add_column(double lb, double ub, bool is_integer) {
  if (lb > ub) throw std::invalid_argument("column bounds crossed");
  cols_.emplace_back(rhs_.size(), 0.0);
  lb_.push_back(lb);
  ub_.push_back(ub);
  integer_.push_back(is_integer ? 1 : 0);
  obj_[0].push_back(0.0);
  obj_[1].push_back(0.0);
  return num_cols() - 1;
}

int LinearModel::add_row(RowSense sense, double rhs) {
  for (auto& col : cols_) col.push_back(0.0);
  sense_.push_back(sense);
  rhs_.push_back(rhs);
  return num_rows() - 1;
}

int LinearModel::add_row(const std::vector<std::pair<int, double>>& entries,
                         RowSense sense, double rhs) {
  const int row = add_row(sense, rhs);
  for (const auto& [col, v] : entries) cols_[col][row] = v;
  return row;
}

void LinearModel::set_entry(int row, int col, double value) {
  cols_[col][row] = value;
}

void LinearModel::set_objective(int k, const std::vector<double>& coeffs) {
  if (coeffs.size() != cols_.size())
    throw std::invalid_argument("objective length mismatch");
  obj_[k] = coeffs;
}

void LinearModel::set_objective_coeff(int k, int col, double value) {
  obj_[k][col] = value;
}

void LinearModel::set_col_bounds(int col, double lb, double ub) {
  if (lb > ub) throw std::invalid_argument("column bounds crossed");
  lb_[col] = lb;
  ub_[col] = ub;
}

void LinearModel::install_objective_bounds(double rhs1, double rhs2) {
  if (has_objective_bounds())
    throw std::logic_error("objective bounds already installed");
  for (int k = 0; k < 2; ++k) {
    const int row = add_row(RowSense::LessEqual, k == 0 ? rhs1 : rhs2);
    for (int j = 0; j < num_cols(); ++j) cols_[j][row] = obj_[k][j];
    obj_bound_row_[k] = row;
  }
}

double LinearModel::objective_value(int k, const std::vector<double>& x) const {
  double v = 0.0;
  for (int j = 0; j < num_cols(); ++j) v += obj_[k][j] * x[j];
  return v;
}

double LinearModel::row_activity(int row, const std::vector<double>& x) const {
  double v = 0.0;
  for (int j = 0; j < num_cols(); ++j) v += cols_[j][row] * x[j];
  return v;
}

double LinearModel::feasibility_residual(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int j = 0; j < num_cols(); ++j) {
    worst = std::max(worst, lb_[j] - x[j]);
    worst = std::max(worst, x[j] - ub_[j]);
  }
  for (int i = 0; i < num_rows(); ++i) {
    const double a = row_activity(i, x);
    switch (sense_[i]) {
      case RowSense::LessEqual: worst = std::max(worst, a - rhs_[i]); break;
      case RowSense::GreaterEqual: worst = std::max(worst, rhs_[i] - a); break;
      case RowSense::Equal: worst = std::max(worst, std::abs(a - rhs_[i])); break;
    }
  }
  return worst;
}

}  // namespace biobab
