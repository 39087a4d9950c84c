#pragma once

#include <algorithm>
#include <limits>
#include <vector>

namespace frechet {

/* Closed interval [lo, hi] of reals. Any state with lo > hi counts as empty;
   a default-constructed interval is empty. */
struct Interval {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  bool is_empty() const { return !(lo <= hi); }
  double length() const { return is_empty() ? 0.0 : hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& other) const {
    return other.is_empty() || (lo <= other.lo && other.hi <= hi);
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty();
    return a.lo == b.lo && a.hi == b.hi;
  }
};

inline Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

inline bool overlaps(const Interval& a, const Interval& b) {
  return !intersect(a, b).is_empty();
}

/* Smallest interval containing both; empty inputs are ignored. */
inline Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

/* Finite union of closed intervals. Canonical form (as produced by
   normalized): sorted by lo, non-empty, pairwise disjoint and non-touching. */
using IntervalSet = std::vector<Interval>;

inline IntervalSet normalized(IntervalSet set) {
  IntervalSet out;
  std::erase_if(set, [](const Interval& v) { return v.is_empty(); });
  std::sort(set.begin(), set.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& v : set) {
    if (!out.empty() && v.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, v.hi);
    } else {
      out.push_back(v);
    }
  }
  return out;
}

inline bool set_contains(const IntervalSet& set, double v) {
  return std::any_of(set.begin(), set.end(),
                     [v](const Interval& it) { return it.contains(v); });
}

inline IntervalSet set_intersect(const IntervalSet& set, const Interval& w) {
  IntervalSet out;
  for (const Interval& v : set) {
    Interval c = intersect(v, w);
    if (!c.is_empty()) out.push_back(c);
  }
  return out;
}

/* Intersection of two interval unions; inputs need not be normalized. */
inline IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet na = normalized(a), nb = normalized(b), out;
  std::size_t i = 0, j = 0;
  while (i < na.size() && j < nb.size()) {
    Interval c = intersect(na[i], nb[j]);
    if (!c.is_empty()) out.push_back(c);
    if (na[i].hi < nb[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

}  // namespace frechet
