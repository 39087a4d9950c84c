#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "frechet/curve.hpp"
#include "frechet/interval.hpp"
#include "frechet/signatures.hpp"

namespace frechet {

/* Uniform 1D grid. Cell k covers [shift + k*width, shift + (k+1)*width);
   the label map is order-preserving, so two values in the same cell are
   within cell_width of each other and label comparisons respect order. */
struct Grid {
  double cell_width = 1.0;
  double shift = 0.0;

  long long label(double v) const;
  /* Distance from v to the nearest cell boundary. */
  double boundary_distance(double v) const;
};

/* Vertices of P and Q within margin*delta of a grid boundary. Label-based
   matching is only reliable around vertices with a clear buffer to the
   boundaries; the ones listed here have to be routed around instead. */
struct BadnessReport {
  std::vector<std::size_t> bad_p, bad_q;
  std::size_t total() const { return bad_p.size() + bad_q.size(); }
};

BadnessReport badness_report(const Curve& P1d, const Curve& Q1d,
                             const Grid& grid, double margin, double delta);

struct GridShiftResult {
  Grid grid;
  std::size_t bad_count = 0;
  /* Whether bad_count <= margin * (|P| + |Q|) / alpha held at the returned
     shift. The sweep always returns a minimizing shift; clustered vertex
     values make the bound attainable, spread-out ones may not. */
  bool within_bound = false;
};

/* Places the boundaries of a grid with cell width alpha*delta so that as
   few vertices as possible lie within margin*delta of a boundary (circular
   sweep over the forbidden shift arcs of all vertices) and no vertex sits
   exactly on a boundary. */
GridShiftResult compute_shift(const Curve& P1d, const Curve& Q1d, double alpha,
                              double delta, double margin);

/* Successor queries over the vertex values of a fixed 1D curve: the first
   vertex at or after an index whose value lies inside (or outside) a closed
   band, plus value extrema over index ranges. Segment tree with subtree
   min/max; answers are exact. */
class RangeSuccessor {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit RangeSuccessor(std::vector<double> values);

  std::size_t size() const { return vals_.size(); }
  std::size_t num_edges() const { return vals_.size() - 1; }
  double value(std::size_t i) const { return vals_[i]; }
  /* Linear interpolation at an edge-unit parameter, clamped to the curve. */
  double value_at(double g) const;

  std::size_t next_in(double lo, double hi, std::size_t from) const;
  std::size_t next_outside(double lo, double hi, std::size_t from) const;
  /* Min and max vertex value over the inclusive index range [i, j]. */
  std::pair<double, double> minmax(std::size_t i, std::size_t j) const;

 private:
  std::size_t find_leftmost(std::size_t from, bool inside, double lo,
                            double hi) const;

  std::vector<double> vals_;
  std::size_t leaves_ = 1;
  std::vector<double> tmin_, tmax_;
};

/* Earliest parameter y >= from with |Q(y) - p| <= eps, where Q is the curve
   behind rs; none if the band is never reached again. */
std::optional<double> first_point_within(const RangeSuccessor& rs, double p,
                                         double eps, double from);

/* Largest y' >= y1 such that Q[y1, y'] stays entirely within eps of p.
   Q(y1) itself must be within eps of p. */
double maximal_interval_within(const RangeSuccessor& rs, double p, double eps,
                               double y1);

/* Min and max curve value over the parameter range [y1, y2], endpoints
   interpolated. */
std::pair<double, double> value_range(const RangeSuccessor& rs, double y1,
                                      double y2);

/* True iff the 1D segment from e0 to e1 is within Frechet distance delta
   of Q[y1, y2], by feasible-interval propagation along the subcurve. The
   free region of each cell is a convex band, so checking the constraint at
   vertices (plus the two cut endpoints) is exact. */
bool segment_subcurve_decide(double e0, double e1, const RangeSuccessor& rs,
                             double y1, double y2, double delta);

/* Exit set of one directed 1D segment against Q: parameters y' such that
   the segment matches Q[y, y'] for some entrance y. Every entrance point
   must be within delta of e0 (the caller's responsibility). Returns one
   closed interval, possibly empty; it contains every y' admitting a
   matching of cost delta, and only y' admitting one of cost diam + 4*delta,
   where diam is the value diameter of Q over the entrance hull. */
Interval segment_exit_set(double e0, double e1, const RangeSuccessor& rs,
                          Interval entrance, double delta);

/* One extremal run of the cell-label sequence along a signature: the label
   and the first/last signature positions carrying it. */
struct LabelChar {
  long long label = 0;
  std::size_t first = 0, last = 0;
};

/* Reduced label sequence of a signature: consecutive duplicates collapsed
   into runs, non-extremal runs dropped. What remains are the endpoints and
   the alternating local extrema, which is exactly the part of the label
   sequence stable under small perturbations away from cell boundaries. */
struct LabelString {
  std::vector<LabelChar> chars;
};

/* Throws std::invalid_argument if a signature vertex lies exactly on a
   grid boundary (compute_shift rules that out for vertices of the original
   curves). */
LabelString label_curve(const Signature& sig, const Grid& grid);

/* Exact substring equality over two integer strings. Double polynomial
   hashes filter, a direct comparison confirms every hash match, so answers
   are never wrong. */
class SubstringEq {
 public:
  SubstringEq(std::vector<long long> a, std::vector<long long> b);

  /* a[a_from, a_from + a_len) == b[b_from, b_from + b_len). Ranges must be
     in bounds; throws std::out_of_range otherwise. */
  bool equal(std::size_t a_from, std::size_t a_len, std::size_t b_from,
             std::size_t b_len) const;

 private:
  struct HashTable {
    std::vector<std::uint64_t> pre1, pre2;
  };
  HashTable build(const std::vector<long long>& s) const;
  static std::uint64_t range_hash(const std::vector<std::uint64_t>& pre,
                                  const std::vector<std::uint64_t>& pow,
                                  std::size_t from, std::size_t len);

  std::vector<long long> a_, b_;
  std::vector<std::uint64_t> pow1_, pow2_;
  HashTable ha_, hb_;
};

/* Precomputed matching machinery for a fixed pair (P, Q), grid and delta:
   the delta-signature of P, the 2*delta-signature of Q, their reduced label
   strings, substring equality across the two, and successor queries over
   Q's vertices. */
struct LabelMatchContext {
  Grid grid;
  double delta = 0.0;
  Curve q;
  Signature sig_p, sig_q;
  LabelString a, b;
  /* a.chars index of the run covering each sig_p position; npos where the
     run was dropped by the extremal reduction. */
  std::vector<std::size_t> a_char_of_pos;
  /* Parameter extent on Q (edge units) of each b.chars run. */
  std::vector<double> b_run_start, b_run_end;
  SubstringEq eq;
  RangeSuccessor rs;
};

LabelMatchContext make_label_match_context(const Curve& P1d, const Curve& Q1d,
                                           const Grid& grid, double delta);

/* Maximal parameter interval of y' such that the reduced label sequence of
   Q[y, y'] equals that of P between signature positions a_pos and b_pos
   (inclusive). Empty when no y' matches. */
Interval matching_label_interval(const LabelMatchContext& ctx,
                                 std::size_t a_pos, std::size_t b_pos,
                                 double y);

/* Exit set of the subcurve of P between signature positions a_pos and b_pos
   entered at parameter z on Q, valid when every interior signature vertex
   of the window keeps distance > 6*delta from all grid boundaries (throws
   std::invalid_argument otherwise; the window endpoints may be close).
   Single interval, complete at delta and sound at (alpha + 7)*delta, where
   alpha*delta is the grid cell width. */
Interval interior_good_exit_set(const LabelMatchContext& ctx,
                                std::size_t a_pos, std::size_t b_pos, double z,
                                double alpha);

/* (alpha, delta)-exit set of S: contains every right-boundary parameter
   reachable at cost delta from S, and only parameters reachable at cost
   alpha*delta. Routes through exact propagation when alpha < 8 or
   delta == 0. Otherwise picks a grid with cell width (alpha-7)*delta,
   treats signature vertices of P near grid boundaries as checkpoints, and
   chains interior_good_exit_set calls between consecutive checkpoints,
   re-entering each time only through the free space near Q-vertices close
   to the checkpoint value. */
IntervalSet general_exit_set(const Curve& P1d, const Curve& Q1d,
                             const IntervalSet& S, double alpha, double delta);

}  // namespace frechet
