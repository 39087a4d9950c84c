#pragma once

#include <span>
#include <vector>

#include "frechet/curve.hpp"
#include "frechet/interval.hpp"

namespace frechet {

/* Free intervals on the four sides of one free-space cell, as fractions in
   [0,1] along each side. Bottom/top run along the P edge with Q pinned at
   the edge's source/target vertex; left/right run along the Q edge. Under
   the L-infinity norm every side interval is the intersection of one linear
   constraint per coordinate. */
struct CellFreeSpace {
  Interval bottom, top, left, right;
};

CellFreeSpace cell_free_space(std::span<const double> p_from,
                              std::span<const double> p_to,
                              std::span<const double> q_from,
                              std::span<const double> q_to, double delta);

/* True iff the Frechet distance between P and Q is at most delta, by full
   cell-level propagation of reachable intervals. O(n*m) time. */
bool exact_decide(const Curve& P, const Curve& Q, double delta);

/* All points on the right boundary {x = n-1} of the free-space diagram that
   are reachable by a bimonotone path inside the delta-free space from some
   point of S on the left boundary {x = 0}. S and the result are interval
   unions in edge units of Q's parameter (y in [0, m-1]). Portions of S
   outside the free space contribute nothing. */
IntervalSet exact_reachable_right_boundary(const Curve& P, const Curve& Q,
                                           const IntervalSet& S, double delta);

/* Parameter interval {g in [lo_v, hi_v] : C_axis(g) in [band_lo, band_hi]},
   in edge units, for a curve whose `axis` coordinate is monotone over the
   vertex range [lo_v, hi_v]. With perturb = +1 or -1 the result is the
   one-sided limit of that interval as the band is shifted by an
   infinitesimal of the given sign; this makes limit evaluation at critical
   abscissas exact without epsilon tolerances. */
Interval band_params(const Curve& C, std::size_t axis, std::size_t lo_v,
                     std::size_t hi_v, double band_lo, double band_hi,
                     int perturb = 0);

struct BlockExits {
  Interval top, right;
};

/* Exact reachability across one block, the rectangle spanned by a pair of
   coordinate-monotone pieces P[pa..pb] and Q[qa..qb]. Entrances and exits
   are intervals in edge units of the full curves (x in [pa, pb] on the
   bottom/top sides, y in [qa, qb] on the left/right sides). The free space
   inside a block is ortho-convex, so each side meets it in a single
   interval and distinct connected components have disjoint axis
   projections; connectivity between the four side intervals is decided by
   testing vertical free-space cuts for emptiness at critical abscissas, and
   the exits are clipped by bimonotone dominance. Runs in
   O((|P_i| + |Q_j|) log(|P_i| + |Q_j|)) for fixed dimension, independent of
   the number of cells in the block. */
BlockExits block_propagate(const Curve& P, std::size_t pa, std::size_t pb,
                           const Curve& Q, std::size_t qa, std::size_t qb,
                           const Interval& enter_bottom,
                           const Interval& enter_left, double delta);

/* Maximal prefix [0, x*] of C's parameter range on which C stays within
   delta of `anchor`, in edge units; empty if C's start is already too far.
   Used to seed reachability along the diagram's bottom and left boundary. */
Interval free_prefix_against_point(const Curve& C,
                                   std::span<const double> anchor,
                                   double delta);

/* Per-cell snapshot of free-space geometry and the reachable entry
   intervals, for diagnostics and CSV export. */
struct DiagramCell {
  std::size_t i, j;
  CellFreeSpace free;
  Interval reach_bottom, reach_left;
};

std::vector<DiagramCell> diagram_cells(const Curve& P, const Curve& Q,
                                       double delta);

}  // namespace frechet
