#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "biobab/problems.hpp"

namespace biobab {

namespace {

constexpr long long kMaxCount = 1000000;  // sanity cap on declared sizes

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

/// Splits text into (1-based line number, content) pairs, dropping comment
/// lines (first non-blank character '#'). Blank lines are kept: inside a
/// block of index lists they denote an empty list.
class LineReader {
 public:
  explicit LineReader(const std::string& text) {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string::npos) {
        if (pos == text.size()) break;  // terminal newline artifact
        end = text.size();
      }
      std::string line = text.substr(pos, end - pos);
      ++line_no;
      pos = end + 1;
      std::size_t first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] == '#') continue;
      lines_.emplace_back(line_no, std::move(line));
    }
  }

  /// Next data line; throws when the file is exhausted.
  const std::pair<int, std::string>& take(const std::string& what) {
    if (next_ >= lines_.size()) {
      throw ParseError("unexpected end of file while reading " + what);
    }
    return lines_[next_++];
  }

  /// All declared data consumed: anything left must be blank.
  void finish() const {
    for (std::size_t i = next_; i < lines_.size(); ++i) {
      if (!is_blank(lines_[i].second)) {
        throw ParseError("line " + std::to_string(lines_[i].first) +
                         ": unexpected trailing data");
      }
    }
  }

 private:
  std::vector<std::pair<int, std::string>> lines_;
  std::size_t next_ = 0;
};

std::vector<long long> parse_ints(const std::pair<int, std::string>& line) {
  std::vector<long long> out;
  std::istringstream in(line.second);
  std::string tok;
  while (in >> tok) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("line " + std::to_string(line.first) +
                       ": expected integer, got '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<long long> expect_ints(LineReader& reader, std::size_t count,
                                   const std::string& what) {
  const auto& line = reader.take(what);
  auto vals = parse_ints(line);
  if (vals.size() != count) {
    throw ParseError("line " + std::to_string(line.first) + ": expected " +
                     std::to_string(count) + " integers for " + what +
                     ", got " + std::to_string(vals.size()));
  }
  return vals;
}

long long checked_count(long long v, const std::string& what) {
  if (v < 0 || v > kMaxCount) {
    throw ParseError("invalid " + what + " count: " + std::to_string(v));
  }
  return v;
}

/// Parses one line as a sorted duplicate-free index list in [0, bound).
std::vector<int> expect_index_list(LineReader& reader, long long bound,
                                   const std::string& what) {
  const auto& line = reader.take(what);
  auto vals = parse_ints(line);
  std::vector<int> out;
  out.reserve(vals.size());
  for (long long v : vals) {
    if (v < 0 || v >= bound) {
      throw ParseError("line " + std::to_string(line.first) + ": index " +
                       std::to_string(v) + " out of range for " + what);
    }
    out.push_back(static_cast<int>(v));
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw ParseError("line " + std::to_string(line.first) +
                     ": duplicate index in " + what);
  }
  return out;
}

void require_nonnegative(const std::vector<long long>& vals,
                         const std::string& what) {
  for (long long v : vals) {
    if (v < 0) {
      throw ParseError("negative value " + std::to_string(v) + " in " + what);
    }
  }
}

void append_ints(std::ostringstream& out, const std::vector<long long>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i > 0) out << ' ';
    out << vals[i];
  }
  out << '\n';
}

void append_indices(std::ostringstream& out, const std::vector<int>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i > 0) out << ' ';
    out << vals[i];
  }
  out << '\n';
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsers / serializers
// ---------------------------------------------------------------------------

UboflpInstance parse_ubof(const std::string& text) {
  LineReader reader(text);
  auto header = expect_ints(reader, 2, "header");
  long long nv = checked_count(header[0], "facility");
  long long nn = checked_count(header[1], "location");
  UboflpInstance inst;
  inst.open_cost = expect_ints(reader, static_cast<std::size_t>(nv), "opening costs");
  require_nonnegative(inst.open_cost, "opening costs");
  inst.weight = expect_ints(reader, static_cast<std::size_t>(nn), "weights");
  require_nonnegative(inst.weight, "weights");
  inst.coverage.reserve(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    inst.coverage.push_back(expect_index_list(reader, nn, "coverage list"));
  }
  reader.finish();
  return inst;
}

std::string serialize_ubof(const UboflpInstance& inst) {
  std::ostringstream out;
  out << inst.open_cost.size() << ' ' << inst.weight.size() << '\n';
  append_ints(out, inst.open_cost);
  append_ints(out, inst.weight);
  for (const auto& cov : inst.coverage) append_indices(out, cov);
  return out.str();
}

SsuflpInstance parse_ssuf(const std::string& text) {
  LineReader reader(text);
  auto header = expect_ints(reader, 2, "header");
  long long nv = checked_count(header[0], "facility");
  long long nn = checked_count(header[1], "location");
  SsuflpInstance inst;
  inst.open_cost = expect_ints(reader, static_cast<std::size_t>(nv), "opening costs");
  require_nonnegative(inst.open_cost, "opening costs");
  inst.assign_cost.reserve(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    auto row = expect_ints(reader, static_cast<std::size_t>(nn), "assignment costs");
    require_nonnegative(row, "assignment costs");
    inst.assign_cost.push_back(std::move(row));
  }
  reader.finish();
  return inst;
}

std::string serialize_ssuf(const SsuflpInstance& inst) {
  std::ostringstream out;
  std::size_t nn = inst.assign_cost.empty() ? 0 : inst.assign_cost[0].size();
  out << inst.open_cost.size() << ' ' << nn << '\n';
  append_ints(out, inst.open_cost);
  for (const auto& row : inst.assign_cost) append_ints(out, row);
  return out.str();
}

SetCoveringInstance parse_bscp(const std::string& text) {
  LineReader reader(text);
  auto header = expect_ints(reader, 2, "header");
  long long m = checked_count(header[0], "row");
  long long n = checked_count(header[1], "column");
  SetCoveringInstance inst;
  inst.cost1 = expect_ints(reader, static_cast<std::size_t>(n), "first costs");
  inst.cost2 = expect_ints(reader, static_cast<std::size_t>(n), "second costs");
  inst.covers.reserve(static_cast<std::size_t>(m));
  for (long long r = 0; r < m; ++r) {
    auto cov = expect_index_list(reader, n, "covering columns");
    if (cov.empty()) {
      throw ParseError("row " + std::to_string(r) + " has no covering column");
    }
    inst.covers.push_back(std::move(cov));
  }
  reader.finish();
  return inst;
}

std::string serialize_bscp(const SetCoveringInstance& inst) {
  std::ostringstream out;
  out << inst.covers.size() << ' ' << inst.cost1.size() << '\n';
  append_ints(out, inst.cost1);
  append_ints(out, inst.cost2);
  for (const auto& cov : inst.covers) append_indices(out, cov);
  return out.str();
}

BitoptwInstance parse_btop(const std::string& text) {
  LineReader reader(text);
  auto header = expect_ints(reader, 2, "header");
  long long n = checked_count(header[0], "control point");
  long long m = checked_count(header[1], "fleet");
  BitoptwInstance inst;
  inst.fleet = static_cast<int>(m);
  inst.nodes.reserve(static_cast<std::size_t>(n) + 2);
  for (long long i = 0; i < n + 2; ++i) {
    auto vals = expect_ints(reader, 7, "vertex line");
    if (vals[0] != i) {
      throw ParseError("vertex id " + std::to_string(vals[0]) +
                       " out of order (expected " + std::to_string(i) + ")");
    }
    BitoptwNode node{vals[1], vals[2], vals[3], vals[4], vals[5], vals[6]};
    if (node.service < 0 || node.score < 0) {
      throw ParseError("vertex " + std::to_string(i) +
                       ": negative service time or score");
    }
    if (node.open > node.close) {
      throw ParseError("vertex " + std::to_string(i) +
                       ": time window opens after it closes");
    }
    inst.nodes.push_back(node);
  }
  reader.finish();
  return inst;
}

std::string serialize_btop(const BitoptwInstance& inst) {
  std::ostringstream out;
  out << inst.num_points() << ' ' << inst.fleet << '\n';
  for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
    const auto& nd = inst.nodes[i];
    out << i << ' ' << nd.x << ' ' << nd.y << ' ' << nd.service << ' '
        << nd.score << ' ' << nd.open << ' ' << nd.close << '\n';
  }
  return out.str();
}

long long BitoptwInstance::travel(int i, int j) const {
  double dx = static_cast<double>(nodes[i].x - nodes[j].x);
  double dy = static_cast<double>(nodes[i].y - nodes[j].y);
  return static_cast<long long>(std::floor(100.0 * std::sqrt(dx * dx + dy * dy)));
}

// ---------------------------------------------------------------------------
// Generators. All randomness goes through `rng() % k` on a std::mt19937 so
// output is identical across platforms and runs.
// ---------------------------------------------------------------------------

namespace {

class Draw {
 public:
  explicit Draw(std::uint32_t seed) : rng_(seed) {}
  long long operator()(long long k) {  // uniform-ish in [0, k)
    return static_cast<long long>(rng_() % static_cast<std::uint32_t>(k));
  }

 private:
  std::mt19937 rng_;
};

std::vector<std::array<long long, 2>> draw_points(Draw& draw, int count,
                                                  long long grid) {
  std::vector<std::array<long long, 2>> pts(static_cast<std::size_t>(count));
  for (auto& p : pts) {
    p[0] = draw(grid + 1);
    p[1] = draw(grid + 1);
  }
  return pts;
}

}  // namespace

UboflpInstance generate_uboflp(int num_facilities, int num_locations,
                               std::uint32_t seed, int radius) {
  if (num_facilities < 1 || num_locations < 1 || radius < 0) {
    throw std::invalid_argument("generate_uboflp: degenerate size parameters");
  }
  Draw draw(seed);
  auto fxy = draw_points(draw, num_facilities, 100);
  auto lxy = draw_points(draw, num_locations, 100);
  UboflpInstance inst;
  inst.open_cost.reserve(static_cast<std::size_t>(num_facilities));
  for (int i = 0; i < num_facilities; ++i) inst.open_cost.push_back(20 + draw(81));
  inst.weight.reserve(static_cast<std::size_t>(num_locations));
  for (int j = 0; j < num_locations; ++j) inst.weight.push_back(1 + draw(50));
  long long r2 = static_cast<long long>(radius) * radius;
  inst.coverage.resize(static_cast<std::size_t>(num_facilities));
  for (int i = 0; i < num_facilities; ++i) {
    for (int j = 0; j < num_locations; ++j) {
      long long dx = fxy[i][0] - lxy[j][0];
      long long dy = fxy[i][1] - lxy[j][1];
      if (dx * dx + dy * dy <= r2) inst.coverage[i].push_back(j);
    }
  }
  return inst;
}

SsuflpInstance generate_ssuflp(int num_facilities, int num_locations,
                               std::uint32_t seed) {
  if (num_facilities < 1 || num_locations < 1) {
    throw std::invalid_argument("generate_ssuflp: degenerate size parameters");
  }
  Draw draw(seed);
  auto fxy = draw_points(draw, num_facilities, 100);
  auto lxy = draw_points(draw, num_locations, 100);
  SsuflpInstance inst;
  for (int i = 0; i < num_facilities; ++i) inst.open_cost.push_back(50 + draw(151));
  inst.assign_cost.resize(static_cast<std::size_t>(num_facilities));
  for (int i = 0; i < num_facilities; ++i) {
    for (int j = 0; j < num_locations; ++j) {
      long long dist = std::llabs(fxy[i][0] - lxy[j][0]) +
                       std::llabs(fxy[i][1] - lxy[j][1]);
      inst.assign_cost[i].push_back(dist + draw(10));
    }
  }
  return inst;
}

SetCoveringInstance generate_set_covering(int num_rows, int num_cols,
                                          std::uint32_t seed, int density_pct) {
  if (num_rows < 1 || num_cols < 1 || density_pct < 1 || density_pct > 100) {
    throw std::invalid_argument("generate_set_covering: degenerate parameters");
  }
  Draw draw(seed);
  SetCoveringInstance inst;
  for (int j = 0; j < num_cols; ++j) inst.cost1.push_back(1 + draw(100));
  for (int j = 0; j < num_cols; ++j) inst.cost2.push_back(1 + draw(100));
  inst.covers.resize(static_cast<std::size_t>(num_rows));
  for (int r = 0; r < num_rows; ++r) {
    for (int j = 0; j < num_cols; ++j) {
      if (draw(100) < density_pct) inst.covers[r].push_back(j);
    }
    if (inst.covers[r].empty()) {
      inst.covers[r].push_back(static_cast<int>(draw(num_cols)));
    }
  }
  return inst;
}

BitoptwInstance generate_bitoptw(int num_points, int fleet, std::uint32_t seed) {
  if (num_points < 1 || num_points > 60 || fleet < 1) {
    throw std::invalid_argument("generate_bitoptw: degenerate size parameters");
  }
  Draw draw(seed);
  BitoptwInstance inst;
  inst.fleet = fleet;
  BitoptwNode depot{25, 25, 0, 0, 0, 20000};
  inst.nodes.push_back(depot);
  for (int i = 0; i < num_points; ++i) {
    BitoptwNode nd;
    nd.x = draw(51);
    nd.y = draw(51);
    nd.service = 100 + draw(501);
    nd.score = 1 + draw(20);
    nd.open = draw(6000);
    nd.close = nd.open + 1000 + draw(4000);
    inst.nodes.push_back(nd);
  }
  inst.nodes.push_back(depot);
  return inst;
}

}  // namespace biobab
