#ifndef BIOBAB_PROBLEMS_HPP
#define BIOBAB_PROBLEMS_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "biobab/archive.hpp"
#include "biobab/linear_model.hpp"
#include "biobab/point.hpp"

namespace biobab {

/// Thrown when a brute-force oracle is asked to enumerate more binary
/// dimensions than it is willing to (24).
class SizeLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the instance-text parsers on malformed input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Instance types. All data is integral; index vectors are kept sorted
// ascending so serialization round-trips exactly.
// ---------------------------------------------------------------------------

/// Facility location with uncapacitated facilities and binary coverage:
/// opening facility i costs open_cost[i]; location j yields weight[j] when
/// assigned to a facility whose coverage set contains j. Minimize total
/// opening cost, maximize total covered weight.
struct UboflpInstance {
  std::vector<long long> open_cost;        // per facility
  std::vector<long long> weight;           // per location
  std::vector<std::vector<int>> coverage;  // per facility: covered locations
  bool operator==(const UboflpInstance&) const = default;
};

/// Single-source facility location: assigning location j to facility i costs
/// assign_cost[i][j]. Minimize opening cost and total assignment cost.
struct SsuflpInstance {
  std::vector<long long> open_cost;
  std::vector<std::vector<long long>> assign_cost;  // [facility][location]
  bool operator==(const SsuflpInstance&) const = default;
};

/// Set covering with two cost vectors over the same binary columns.
struct SetCoveringInstance {
  std::vector<long long> cost1, cost2;   // per column
  std::vector<std::vector<int>> covers;  // per row: columns covering it
  bool operator==(const SetCoveringInstance&) const = default;
};

/// One vertex of a team-orienteering instance: integer plane coordinates,
/// service duration, score, and a visit time window [open, close].
struct BitoptwNode {
  long long x = 0, y = 0;
  long long service = 0, score = 0;
  long long open = 0, close = 0;
  bool operator==(const BitoptwNode&) const = default;
};

/// Team orienteering with time windows: nodes[0] is the start depot,
/// nodes.back() the end depot, the rest are control points. Travel cost and
/// travel time between vertices are both floor(100 * Euclidean distance).
struct BitoptwInstance {
  std::vector<BitoptwNode> nodes;
  int fleet = 1;

  [[nodiscard]] int num_points() const { return static_cast<int>(nodes.size()) - 2; }
  [[nodiscard]] long long travel(int i, int j) const;
  bool operator==(const BitoptwInstance&) const = default;
};

// ---------------------------------------------------------------------------
// Text formats. Whitespace-delimited integers; a line whose first non-blank
// character is '#' is a comment; inside a block of index lists a blank line
// denotes an empty list.
//
//   .ubof: "|V| |N|" / open costs / weights / |V| coverage lines
//   .ssuf: "|V| |N|" / open costs / |V| lines of assignment costs
//   .bscp: "m n" / first costs / second costs / m lines of covering columns
//   .btop: "n m"  / n+2 lines "id x y service score open close"
// ---------------------------------------------------------------------------

UboflpInstance parse_ubof(const std::string& text);
SsuflpInstance parse_ssuf(const std::string& text);
SetCoveringInstance parse_bscp(const std::string& text);
BitoptwInstance parse_btop(const std::string& text);

std::string serialize_ubof(const UboflpInstance& inst);
std::string serialize_ssuf(const SsuflpInstance& inst);
std::string serialize_bscp(const SetCoveringInstance& inst);
std::string serialize_btop(const BitoptwInstance& inst);

// ---------------------------------------------------------------------------
// Deterministic generators (identical output for identical arguments).
// Structural knobs: `radius` controls UBOFLP coverage density on a 100x100
// grid; `density_pct` is the per-cell fill probability of the set-covering
// incidence matrix (uncovered rows are repaired afterwards).
// ---------------------------------------------------------------------------

UboflpInstance generate_uboflp(int num_facilities, int num_locations,
                               std::uint32_t seed, int radius = 35);
SsuflpInstance generate_ssuflp(int num_facilities, int num_locations,
                               std::uint32_t seed);
SetCoveringInstance generate_set_covering(int num_rows, int num_cols,
                                          std::uint32_t seed,
                                          int density_pct = 25);
BitoptwInstance generate_bitoptw(int num_points, int fleet, std::uint32_t seed);

// ---------------------------------------------------------------------------
// Matrix model wrapper. The wrapped model is always min-min with integer
// objective coefficients divided by their per-objective gcd, so the internal
// objective grid has granularity 1 in both dimensions. Reported values are
// mapped back to original units (re-multiplied and un-negated).
// ---------------------------------------------------------------------------

struct BiObjectiveModel {
  LinearModel model;
  std::array<double, 2> scale{1.0, 1.0};     // gcd divided out of objective k
  std::array<bool, 2> negated{false, false};  // original objective was maximized
  std::vector<std::string> col_names;

  /// Internal (scaled, min-min) objective values of x.
  [[nodiscard]] ObjPoint internal_objectives(const std::vector<double>& x) const;
  /// Maps an internal objective point to original units.
  [[nodiscard]] ObjPoint to_original(const ObjPoint& internal) const;
  /// Space-separated names of the binary variables set to 1 ("-" if none).
  [[nodiscard]] std::string solution_string(const std::vector<double>& x) const;
};

BiObjectiveModel build_uboflp(const UboflpInstance& inst);
BiObjectiveModel build_ssuflp(const SsuflpInstance& inst);
BiObjectiveModel build_set_covering(const SetCoveringInstance& inst);

// ---------------------------------------------------------------------------
// Fronts in original units.
// ---------------------------------------------------------------------------

struct FrontPoint {
  ObjPoint z;
  std::string solution;
};
using ParetoFront = std::vector<FrontPoint>;

/// Maps an internal archive to original units, sorted by first objective.
ParetoFront archive_to_front(const Archive& archive, const BiObjectiveModel& bm);

/// Rounds the integer columns of x and inserts the resulting image and
/// solution string into the archive (which discards dominated points).
void harvest_solution(Archive& archive, const BiObjectiveModel& bm,
                      std::vector<double> x);

/// True when both fronts contain exactly the same objective points
/// (solutions are ignored: alternative optima are legitimate).
bool same_front_points(const ParetoFront& a, const ParetoFront& b);

/// Exhaustive oracles. Facility problems enumerate facility subsets with the
/// implied optimal assignment; set covering enumerates all column subsets.
/// Throws SizeLimit above 24 enumerated dimensions.
ParetoFront brute_force_front(const UboflpInstance& inst);
ParetoFront brute_force_front(const SsuflpInstance& inst);
ParetoFront brute_force_front(const SetCoveringInstance& inst);

}  // namespace biobab

#endif  // BIOBAB_PROBLEMS_HPP
