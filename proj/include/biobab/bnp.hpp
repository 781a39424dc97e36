#ifndef BIOBAB_BNP_HPP
#define BIOBAB_BNP_HPP

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "biobab/criterion_space.hpp"
#include "biobab/matrix_backend.hpp"
#include "biobab/problems.hpp"
#include "biobab/search.hpp"
#include "biobab/simplex.hpp"

namespace biobab {

/// Preprocessed route-model data. Vertices are 0 (start depot), 1..n (control
/// points), n+1 (end depot); arcs never enter the start, leave the end, or
/// loop. Arc costs are divided by their gcd g1 and scores by their gcd g2, so
/// both internal objectives live on an integer grid of step 1; travel times
/// stay in raw units (they are a resource, not an objective).
struct BitoptwData {
  int n = 0;
  int fleet = 1;
  Granularity scale;                          // g1 for costs, g2 for scores
  std::vector<std::vector<long long>> cost;   // scaled arc travel cost
  std::vector<std::vector<long long>> time;   // raw arc travel time
  std::vector<long long> score;               // scaled, 0 at both depots
  std::vector<long long> service, open, close;

  [[nodiscard]] int num_vertices() const { return n + 2; }
  [[nodiscard]] int end_vertex() const { return n + 1; }
  [[nodiscard]] bool arc_exists(int i, int j) const {
    return i != j && j != 0 && i != end_vertex();
  }
  [[nodiscard]] long long total_score() const;
};

/// Validates the instance (windows ordered, at most 62 control points so the
/// visited set fits a 64-bit mask) and builds the scaled tables.
[[nodiscard]] BitoptwData build_route_data(const BitoptwInstance& inst);

/// One route column of the path-model master: vertex sequence from start to
/// end depot with its scaled total cost and score. The dummy feasibility
/// column carries no route.
struct Column {
  std::vector<int> route;
  long long cost = 0;
  long long score = 0;
  std::uint64_t mask = 0;  // bit i-1 set iff control point i is visited
  bool active = true;
  bool dummy = false;

  [[nodiscard]] bool visits(int point) const {
    return (mask >> (point - 1)) & 1u;
  }
};

/// Builds the column for a route, accumulating arc costs and vertex scores.
/// Throws std::invalid_argument when the route does not run start to end, is
/// not elementary, uses a nonexistent arc, or violates a time window under
/// forward propagation (service start at j = max(open_j, start_i + service_i
/// + time_ij), which must not exceed close_j).
[[nodiscard]] Column make_column(const BitoptwData& d, const std::vector<int>& route);

/// Forward-labeling state of the pricer. `time` is the service start at
/// `vertex`; `parent` indexes the label arena.
struct Label {
  int vertex = 0;
  long long time = 0;
  double rcost = 0.0;
  std::uint64_t visited = 0;
  int parent = -1;
};

/// Arc reduced costs for scalarization (w1, w2) under the current master
/// duals: entry (i, j) = (w1 - lambda1) * cost(i, j) - (w2 + lambda2) *
/// score(i) - pi[i], where the fleet dual alpha replaces pi[i] on arcs
/// leaving the start. pi is indexed by vertex; lambda1 and lambda2 come from
/// the two objective-bound rows (0 while slack). Nonexistent arcs get +inf.
[[nodiscard]] std::vector<std::vector<double>> reduced_cost_matrix(
    const BitoptwData& d, double w1, double w2, const std::vector<double>& pi,
    double alpha, double lambda1, double lambda2);

/// Branching state the pricer and the column pool must respect.
struct RouteRestrictions {
  std::vector<std::vector<char>> banned_arc;  // 1 = arc unusable
  std::vector<char> forbidden;                // 1 = vertex may not be visited

  explicit RouteRestrictions(int num_vertices)
      : banned_arc(static_cast<std::size_t>(num_vertices),
                   std::vector<char>(static_cast<std::size_t>(num_vertices), 0)),
        forbidden(static_cast<std::size_t>(num_vertices), 0) {}

  /// True when the column uses no banned arc and visits no forbidden vertex.
  [[nodiscard]] bool allows(const Column& col) const;
};

/// Prices out negative-reduced-cost routes by forward labeling from the
/// start depot. Extensions respect time windows, elementarity (via the
/// visited mask) and the restrictions; a label is dropped iff another label
/// at the same vertex is no later, no costlier, and visits a subset of its
/// control points. Returns one column per surviving end-depot label with
/// reduced cost < -1e-6; empty means this scalarization has converged.
[[nodiscard]] std::vector<Column> price(const BitoptwData& d,
                                        const std::vector<std::vector<double>>& rcost,
                                        const RouteRestrictions& restrictions);

/// Column-generation bounding backend over the route master. Rows: one
/// covering row per control point (<= 1; switched to = 1 where branching
/// forces the point and <= 0 where it forbids it), a fleet equality, and the
/// two objective-bound rows installed from the start. Every generated column
/// stays in the pool forever; entering a node only toggles activity against
/// the node's arc bans and point bans and rebuilds the simplex (row senses
/// are frozen per solver instance). A dummy column that satisfies every row
/// is activated only when the active pool is infeasible and is always
/// deactivated before a result is reported: a positive dummy value at
/// convergence means the node region is infeasible. Every integral master
/// solution encountered is harvested into the archive with its exact image.
class ColgenBackend : public BoundingBackend {
 public:
  explicit ColgenBackend(const BitoptwInstance& inst);

  void enter_node(const SearchNode& node) override;
  ScalarOutcome lexmin(int first) override;
  ScalarOutcome weighted(double w1, double w2, double cutoff) override;
  /// Control point with mean visits closest to 0.5 (ties: lowest index);
  /// otherwise the arc with mean flow fractionality closest to 0.5 (ties:
  /// lexicographically smallest). Empty when visits and flows are integral.
  std::vector<BranchingDecision> decision_branches(
      const std::vector<SupportSolution>& supports) override;
  Archive& archive() override { return archive_; }

  /// Adds the column of a concrete route (validated like any priced route) to
  /// the pool if it is not there yet and returns its pool index. Lets callers
  /// warm-start the master with known routes; activation follows the current
  /// node state.
  int ensure_column(const std::vector<int>& route);

  [[nodiscard]] const BitoptwData& data() const { return data_; }
  [[nodiscard]] const std::vector<Column>& pool() const { return pool_; }
  [[nodiscard]] long master_solves() const { return master_solves_; }
  /// True when every active column takes an integral value (the dummy must
  /// be at zero).
  [[nodiscard]] bool is_integral_master(const std::vector<double>& x) const;

 private:
  struct CgResult {
    SolveStatus status = SolveStatus::Infeasible;
    double value = 0.0;
    std::vector<double> x;
    ObjPoint z{kInf, kInf};
  };

  /// Iterates LP solve -> price -> append until no new column prices out,
  /// handling dummy activation/deactivation.
  CgResult cg_solve(double w1, double w2);
  /// Appends a genuinely new route column (entries, bound rows, objective
  /// coefficients); returns -1 when the route is already pooled.
  int append_column(Column col);
  void harvest_if_integral(const std::vector<double>& x);
  [[nodiscard]] int covering_row(int point) const { return point - 1; }

  BitoptwData data_;
  LinearModel model_;
  std::vector<Column> pool_;  // pool_[j] describes model column j; 0 = dummy
  std::map<std::vector<int>, int> route_index_;
  Archive archive_;
  std::unique_ptr<SimplexSolver> solver_;
  RouteRestrictions restrictions_;
  std::vector<char> forced_;
  double base_rhs_[2] = {0.0, 0.0};
  long master_solves_ = 0;
};

/// Maps an internal archive over the route master back to original units
/// (cost re-multiplied by g1, score un-negated and re-multiplied by g2),
/// sorted by cost ascending.
[[nodiscard]] ParetoFront bitoptw_front(const Archive& archive, const BitoptwData& d);

/// Full bi-objective search over the route master; front in original units
/// with the score reported positive.
BiobabRun run_biobab_bitoptw(const BitoptwInstance& inst,
                             const EngineConfig& config = {});

/// Thrown when the time limit interrupts a tree-search stage mid-call: the
/// stage value cannot be certified, but every archived point remains a
/// genuine solution, so callers may still report the partial front.
class SearchTimeout : public std::runtime_error {
 public:
  SearchTimeout() : std::runtime_error("time limit reached during tree search") {}
};

/// Lexicographic oracle over the route master for the criterion-space
/// methods. Each stage runs a breadth-first single-objective tree search
/// with the same bounding, branching and column pool as the bi-objective
/// engine, minus objective-space branching. Per node, one scalarized
/// relaxation value anchors a rectangle segment over the node's caps which
/// is filtered against the half-step-shifted archive; a fully filtered node
/// is fathomed (some archived point within the caps already matches anything
/// the subtree could reach). Integer solutions found anywhere are archived,
/// and archived points within the caps seed the stage incumbent, so stage
/// optima are read off the archive across calls. Throws SearchTimeout when
/// the time limit strikes inside a call.
class ColgenLexmin final : public LexminBackend {
 public:
  explicit ColgenLexmin(ColgenBackend& backend, double time_limit_seconds = 7200.0);

  LexResult lexmin(int first, double cap1, double cap2) override;
  Archive& archive() override { return backend_->archive(); }

  /// Tree totals across all calls: node_count counts tree nodes, lp_count
  /// scalarized master solves (one per node).
  [[nodiscard]] const SearchStats& tree_stats() const { return stats_; }
  [[nodiscard]] bool timed_out() const { return timed_out_; }

 private:
  /// Minimum of objective k over integer solutions within caps; kInf when
  /// none exists (or the time limit struck: timed_out_ is set and the value
  /// is unusable).
  double solve_stage(int k, const ObjPoint& caps);

  ColgenBackend* backend_;
  SearchStats stats_;
  std::chrono::steady_clock::time_point start_;
  double time_limit_seconds_;
  bool timed_out_ = false;
};

// ---------------------------------------------------------------------------
// Criterion-space wrappers over the route master. The reported lp_count and
// node_count are the lexicographic oracle's tree totals (iteration counts of
// the outer method are not meaningful effort measures here); complete is
// false when the time limit struck either layer.
// ---------------------------------------------------------------------------

BiobabRun run_epsilon_constraint_bitoptw(const BitoptwInstance& inst,
                                         EpsDirection direction,
                                         const CriterionConfig& config = {});
BiobabRun run_epsilon_bidirectional_bitoptw(const BitoptwInstance& inst,
                                            const CriterionConfig& config = {});
BiobabRun run_balanced_box_bitoptw(const BitoptwInstance& inst,
                                   const CriterionConfig& config = {});

}  // namespace biobab

#endif  // BIOBAB_BNP_HPP
