#include "biobab/archive.hpp"

#include <algorithm>

namespace biobab {

InsertResult Archive::insert(const ObjPoint& z, std::string solution) {
  const double tol = kGridTol;
  auto it = std::upper_bound(entries_.begin(), entries_.end(), z.z1 + tol,
                             [](double v, const ArchiveEntry& e) { return v < e.z.z1; });
  std::size_t lo = static_cast<std::size_t>(it - entries_.begin());
  // Entries left of (or at) z.z1 have the smallest z2 at the back; one check
  // suffices for weak dominance, and catches exact duplicates.
  if (lo > 0 && entries_[lo - 1].z.z2 <= z.z2 + tol) return {false, 0};

  std::size_t start = lo;
  while (start > 0 && entries_[start - 1].z.z1 >= z.z1 - tol) --start;
  std::size_t end = start;
  while (end < entries_.size() && entries_[end].z.z2 >= z.z2 - tol) ++end;
  const std::size_t removed = end - start;
  entries_.erase(entries_.begin() + start, entries_.begin() + end);
  entries_.insert(entries_.begin() + start, ArchiveEntry{z, std::move(solution)});
  return {true, removed};
}

bool Archive::contains(const ObjPoint& z, double tol) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), z.z1 - tol,
                             [](const ArchiveEntry& e, double v) { return e.z.z1 < v; });
  for (; it != entries_.end() && it->z.z1 <= z.z1 + tol; ++it)
    if (approx_eq(it->z, z, tol)) return true;
  return false;
}

std::vector<ObjPoint> Archive::points() const {
  std::vector<ObjPoint> pts;
  pts.reserve(entries_.size());
  for (const auto& e : entries_) pts.push_back(e.z);
  return pts;
}

}  // namespace biobab
