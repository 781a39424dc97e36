#ifndef BIOBAB_ARCHIVE_HPP
#define BIOBAB_ARCHIVE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "biobab/point.hpp"

namespace biobab {

struct ArchiveEntry {
  ObjPoint z;
  std::string solution;  // printable encoding of one solution achieving z
};

struct InsertResult {
  bool inserted = false;
  std::size_t removed = 0;  // entries dominated by the new point
};

/// Archive of mutually nondominated points (the incumbent upper-bound set),
/// kept sorted by z1 ascending / z2 strictly descending.
class Archive {
 public:
  /// Inserts z unless some entry weakly dominates it (duplicates are
  /// discarded); removes entries dominated by z. Binary search on z1.
  InsertResult insert(const ObjPoint& z, std::string solution);

  [[nodiscard]] bool contains(const ObjPoint& z, double tol = kGridTol) const;
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] const std::vector<ArchiveEntry>& entries() const { return entries_; }
  [[nodiscard]] std::vector<ObjPoint> points() const;

 private:
  std::vector<ArchiveEntry> entries_;
};

}  // namespace biobab

#endif  // BIOBAB_ARCHIVE_HPP
