#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "biobab/problems.hpp"

namespace biobab {

namespace {

long long vector_gcd(const std::vector<long long>& vals) {
  long long g = 0;
  for (long long v : vals) g = std::gcd(g, std::llabs(v));
  return g == 0 ? 1 : g;
}

/// Installs the two objectives: negates maximized ones, divides out the
/// per-objective gcd (internal granularity becomes 1), and adds the two
/// objective-bound rows with a right-hand side no optimum can exceed.
void finalize_objectives(BiObjectiveModel& bm,
                         const std::array<std::vector<long long>, 2>& original,
                         const std::array<bool, 2>& negated) {
  bm.negated = negated;
  std::array<double, 2> big{1.0, 1.0};
  for (int k = 0; k < 2; ++k) {
    long long g = vector_gcd(original[k]);
    bm.scale[k] = static_cast<double>(g);
    std::vector<double> coeffs(original[k].size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      long long scaled = original[k][j] / g;
      coeffs[j] = static_cast<double>(negated[k] ? -scaled : scaled);
    }
    bm.model.set_objective(k, coeffs);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      big[k] += std::max(coeffs[j] * bm.model.lower(static_cast<int>(j)),
                         coeffs[j] * bm.model.upper(static_cast<int>(j)));
    }
  }
  bm.model.install_objective_bounds(big[0], big[1]);
}

}  // namespace

// ---------------------------------------------------------------------------
// BiObjectiveModel
// ---------------------------------------------------------------------------

ObjPoint BiObjectiveModel::internal_objectives(const std::vector<double>& x) const {
  return {model.objective_value(0, x), model.objective_value(1, x)};
}

ObjPoint BiObjectiveModel::to_original(const ObjPoint& internal) const {
  ObjPoint out{internal.z1 * scale[0], internal.z2 * scale[1]};
  if (negated[0]) out.z1 = -out.z1;
  if (negated[1]) out.z2 = -out.z2;
  return out;
}

std::string BiObjectiveModel::solution_string(const std::vector<double>& x) const {
  std::string out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::llround(x[j]) < 1) continue;
    if (!out.empty()) out += ' ';
    out += j < col_names.size() ? col_names[j] : "c" + std::to_string(j);
  }
  return out.empty() ? "-" : out;
}

// ---------------------------------------------------------------------------
// Model builders
// ---------------------------------------------------------------------------

namespace {

/// Shared facility-location topology: binary y_i and x_ij (all pairs), one
/// assignment equality per location, one linking row per pair. Returns the
/// index of x_ij as assign_col(i, j).
struct FacilityLayout {
  int num_facilities = 0;
  int num_locations = 0;
  [[nodiscard]] int open_col(int i) const { return i; }
  [[nodiscard]] int assign_col(int i, int j) const {
    return num_facilities + i * num_locations + j;
  }
};

FacilityLayout build_facility_topology(BiObjectiveModel& bm, int nv, int nn) {
  FacilityLayout lay{nv, nn};
  for (int i = 0; i < nv; ++i) {
    bm.model.add_column(0.0, 1.0, true);
    bm.col_names.push_back("y" + std::to_string(i));
  }
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nn; ++j) {
      bm.model.add_column(0.0, 1.0, true);
      bm.col_names.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  for (int j = 0; j < nn; ++j) {
    std::vector<std::pair<int, double>> entries;
    for (int i = 0; i < nv; ++i) entries.emplace_back(lay.assign_col(i, j), 1.0);
    bm.model.add_row(entries, RowSense::Equal, 1.0);
  }
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nn; ++j) {
      bm.model.add_row({{lay.assign_col(i, j), 1.0}, {lay.open_col(i), -1.0}},
                       RowSense::LessEqual, 0.0);
    }
  }
  return lay;
}

}  // namespace

BiObjectiveModel build_uboflp(const UboflpInstance& inst) {
  int nv = static_cast<int>(inst.open_cost.size());
  int nn = static_cast<int>(inst.weight.size());
  BiObjectiveModel bm;
  FacilityLayout lay = build_facility_topology(bm, nv, nn);
  std::array<std::vector<long long>, 2> obj;
  obj[0].assign(static_cast<std::size_t>(bm.model.num_cols()), 0);
  obj[1].assign(static_cast<std::size_t>(bm.model.num_cols()), 0);
  for (int i = 0; i < nv; ++i) obj[0][static_cast<std::size_t>(lay.open_col(i))] = inst.open_cost[i];
  for (int i = 0; i < nv; ++i) {
    for (int j : inst.coverage[static_cast<std::size_t>(i)]) {
      obj[1][static_cast<std::size_t>(lay.assign_col(i, j))] = inst.weight[static_cast<std::size_t>(j)];
    }
  }
  finalize_objectives(bm, obj, {false, true});
  return bm;
}

BiObjectiveModel build_ssuflp(const SsuflpInstance& inst) {
  int nv = static_cast<int>(inst.open_cost.size());
  int nn = nv == 0 ? 0 : static_cast<int>(inst.assign_cost[0].size());
  BiObjectiveModel bm;
  FacilityLayout lay = build_facility_topology(bm, nv, nn);
  std::array<std::vector<long long>, 2> obj;
  obj[0].assign(static_cast<std::size_t>(bm.model.num_cols()), 0);
  obj[1].assign(static_cast<std::size_t>(bm.model.num_cols()), 0);
  for (int i = 0; i < nv; ++i) obj[0][static_cast<std::size_t>(lay.open_col(i))] = inst.open_cost[i];
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nn; ++j) {
      obj[1][static_cast<std::size_t>(lay.assign_col(i, j))] =
          inst.assign_cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  finalize_objectives(bm, obj, {false, false});
  return bm;
}

BiObjectiveModel build_set_covering(const SetCoveringInstance& inst) {
  int n = static_cast<int>(inst.cost1.size());
  BiObjectiveModel bm;
  for (int j = 0; j < n; ++j) {
    bm.model.add_column(0.0, 1.0, true);
    bm.col_names.push_back("x" + std::to_string(j));
  }
  for (const auto& cov : inst.covers) {
    std::vector<std::pair<int, double>> entries;
    for (int j : cov) entries.emplace_back(j, 1.0);
    bm.model.add_row(entries, RowSense::GreaterEqual, 1.0);
  }
  finalize_objectives(bm, {inst.cost1, inst.cost2}, {false, false});
  return bm;
}

// ---------------------------------------------------------------------------
// Fronts
// ---------------------------------------------------------------------------

ParetoFront archive_to_front(const Archive& archive, const BiObjectiveModel& bm) {
  ParetoFront out;
  out.reserve(archive.entries().size());
  for (const auto& e : archive.entries()) {
    out.push_back({bm.to_original(e.z), e.solution});
  }
  std::sort(out.begin(), out.end(), [](const FrontPoint& a, const FrontPoint& b) {
    return a.z.z1 != b.z.z1 ? a.z.z1 < b.z.z1 : a.z.z2 < b.z.z2;
  });
  return out;
}

void harvest_solution(Archive& archive, const BiObjectiveModel& bm,
                      std::vector<double> x) {
  for (int j = 0; j < bm.model.num_cols(); ++j) {
    if (bm.model.is_integer(j)) {
      x[static_cast<std::size_t>(j)] = std::round(x[static_cast<std::size_t>(j)]);
    }
  }
  archive.insert(bm.internal_objectives(x), bm.solution_string(x));
}

bool same_front_points(const ParetoFront& a, const ParetoFront& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!approx_eq(a[i].z.z1, b[i].z.z1) || !approx_eq(a[i].z.z2, b[i].z.z2)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

namespace {

ParetoFront front_from_internal(const Archive& archive,
                                const std::array<bool, 2>& negated) {
  ParetoFront out;
  out.reserve(archive.entries().size());
  for (const auto& e : archive.entries()) {
    ObjPoint z = e.z;
    if (negated[0]) z.z1 = -z.z1;
    if (negated[1]) z.z2 = -z.z2;
    out.push_back({z, e.solution});
  }
  std::sort(out.begin(), out.end(), [](const FrontPoint& a, const FrontPoint& b) {
    return a.z.z1 != b.z.z1 ? a.z.z1 < b.z.z1 : a.z.z2 < b.z.z2;
  });
  return out;
}

void check_subset_size(std::size_t dims, const char* what) {
  if (dims > 24) {
    throw SizeLimit(std::string(what) + ": " + std::to_string(dims) +
                    " binary dimensions exceed the brute-force limit of 24");
  }
}

std::string facility_solution(unsigned mask, const std::vector<int>& assigned,
                              int nv) {
  std::string sol;
  for (int i = 0; i < nv; ++i) {
    if (!(mask >> i & 1u)) continue;
    if (!sol.empty()) sol += ' ';
    sol += "y" + std::to_string(i);
  }
  for (std::size_t j = 0; j < assigned.size(); ++j) {
    if (!sol.empty()) sol += ' ';
    sol += "x" + std::to_string(assigned[j]) + "_" + std::to_string(j);
  }
  return sol.empty() ? "-" : sol;
}

}  // namespace

ParetoFront brute_force_front(const UboflpInstance& inst) {
  int nv = static_cast<int>(inst.open_cost.size());
  int nn = static_cast<int>(inst.weight.size());
  check_subset_size(inst.open_cost.size(), "facility subsets");
  std::vector<std::vector<char>> covers(
      static_cast<std::size_t>(nv), std::vector<char>(static_cast<std::size_t>(nn), 0));
  for (int i = 0; i < nv; ++i) {
    for (int j : inst.coverage[static_cast<std::size_t>(i)]) {
      covers[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    }
  }
  Archive archive;
  auto consider = [&](unsigned mask) {
    long long cost = 0;
    int first_open = -1;
    for (int i = 0; i < nv; ++i) {
      if (!(mask >> i & 1u)) continue;
      cost += inst.open_cost[static_cast<std::size_t>(i)];
      if (first_open < 0) first_open = i;
    }
    long long covered = 0;
    std::vector<int> assigned(static_cast<std::size_t>(nn), -1);
    for (int j = 0; j < nn; ++j) {
      for (int i = 0; i < nv; ++i) {
        if ((mask >> i & 1u) && covers[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
          assigned[static_cast<std::size_t>(j)] = i;
          break;
        }
      }
      if (assigned[static_cast<std::size_t>(j)] >= 0) {
        covered += inst.weight[static_cast<std::size_t>(j)];
      } else {
        assigned[static_cast<std::size_t>(j)] = first_open;  // zero-credit slot
      }
    }
    archive.insert({static_cast<double>(cost), -static_cast<double>(covered)},
                   facility_solution(mask, assigned, nv));
  };
  if (nn == 0) consider(0);
  for (unsigned mask = 1; mask < (1u << nv); ++mask) consider(mask);
  return front_from_internal(archive, {false, true});
}

ParetoFront brute_force_front(const SsuflpInstance& inst) {
  int nv = static_cast<int>(inst.open_cost.size());
  int nn = nv == 0 ? 0 : static_cast<int>(inst.assign_cost[0].size());
  check_subset_size(inst.open_cost.size(), "facility subsets");
  Archive archive;
  auto consider = [&](unsigned mask) {
    long long cost = 0;
    for (int i = 0; i < nv; ++i) {
      if (mask >> i & 1u) cost += inst.open_cost[static_cast<std::size_t>(i)];
    }
    long long assign = 0;
    std::vector<int> assigned(static_cast<std::size_t>(nn), -1);
    for (int j = 0; j < nn; ++j) {
      long long best = 0;
      for (int i = 0; i < nv; ++i) {
        if (!(mask >> i & 1u)) continue;
        long long c = inst.assign_cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (assigned[static_cast<std::size_t>(j)] < 0 || c < best) {
          assigned[static_cast<std::size_t>(j)] = i;
          best = c;
        }
      }
      assign += best;
    }
    archive.insert({static_cast<double>(cost), static_cast<double>(assign)},
                   facility_solution(mask, assigned, nv));
  };
  if (nn == 0) consider(0);
  for (unsigned mask = 1; mask < (1u << nv); ++mask) consider(mask);
  return front_from_internal(archive, {false, false});
}

ParetoFront brute_force_front(const SetCoveringInstance& inst) {
  int n = static_cast<int>(inst.cost1.size());
  check_subset_size(inst.cost1.size(), "column subsets");
  std::vector<std::uint32_t> row_mask;
  row_mask.reserve(inst.covers.size());
  for (const auto& cov : inst.covers) {
    std::uint32_t m = 0;
    for (int j : cov) m |= 1u << j;
    row_mask.push_back(m);
  }
  Archive archive;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    bool feasible = true;
    for (std::uint32_t rm : row_mask) {
      if (!(mask & rm)) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    long long c1 = 0, c2 = 0;
    std::string sol;
    for (int j = 0; j < n; ++j) {
      if (!(mask >> j & 1ull)) continue;
      c1 += inst.cost1[static_cast<std::size_t>(j)];
      c2 += inst.cost2[static_cast<std::size_t>(j)];
      if (!sol.empty()) sol += ' ';
      sol += "x" + std::to_string(j);
    }
    archive.insert({static_cast<double>(c1), static_cast<double>(c2)},
                   sol.empty() ? "-" : sol);
  }
  return front_from_internal(archive, {false, false});
}

}  // namespace biobab
