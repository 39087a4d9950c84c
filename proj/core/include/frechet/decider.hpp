#pragma once

#include <cstddef>
#include <vector>

#include "frechet/curve.hpp"

namespace frechet {

/* Verdict of an approximate decision at threshold delta. A positive answer
   certifies d_F <= bound_factor * delta, a negative one certifies
   d_F > delta; between the two thresholds either verdict is legitimate.
   The counters expose how much of the diagram the sweep touched, for
   budget checks and run reports. */
struct DecisionOutcome {
  bool yes = false;
  double bound_factor = 1.0;

  std::size_t blocks_visited = 0;       // propagation units processed
  std::size_t max_col_visits = 0;       // worst column of the block grid
  std::size_t max_row_visits = 0;       // worst row of the block grid
  std::size_t entrance_components = 0;  // intervals fed across cut lines (1D)
};

/* Decides d_F(P, Q) <= (1+2*alpha)*delta versus d_F(P, Q) > delta. Both
   curves are simplified at the scale alpha*delta first, then the block
   decomposition of their free-space diagram (one block per pair of
   coordinate-monotone pieces) is swept column by column, propagating
   reachable boundary intervals only through blocks with a nonempty
   entrance. alpha in [1, max(|P|, |Q|)], delta >= 0, equal dimensions. */
DecisionOutcome approx_decide_nd(const Curve& P, const Curve& Q, double alpha,
                                 double delta);

/* Value wrapper around approx_decide_nd: returns v with
   d_F <= v <= (1+eps_search)*(2+4*alpha)*d_F, by geometric search over
   thresholds from the endpoint-gap lower bound up to the
   uniform-parameterization upper bound (downward from the latter when the
   endpoints coincide). Zero distance is detected exactly up front.
   alpha >= 1 (values beyond the vertex count only tighten the guarantee),
   eps_search in (0, 1]. */
double approx_frechet(const Curve& P, const Curve& Q, double alpha,
                      double eps_search);

/* Axis-aligned rectangle of whole cells, [xa, xb] x [ya, yb] in vertex
   indices. ya == yb marks a rectangle whose band left the grid. */
struct ParamRect {
  std::size_t xa = 0, xb = 0, ya = 0, yb = 0;
};

/* Staircase of rectangles, each `width` cells wide and 3*width tall before
   clipping at the grid border, that together cover every cell (i, j) of an
   nx-by-ny cell grid with |i - j| <= width. Consecutive rectangles abut in
   x, so a monotone path through the band crosses one shared vertical edge
   per pair. */
std::vector<ParamRect> rectangle_cover(std::size_t nx, std::size_t ny,
                                       std::size_t width);

/* 1D decider: d_F(P, Q) <= 3*alpha*delta versus d_F(P, Q) > delta. After
   simplification the reachable region is confined to a diagonal band of
   the cell grid; the band is covered with rectangle_cover and reachability
   is carried across the shared vertical edges by chained exit-set calls
   intersected with the free space on each cut line. 1D curves only,
   alpha in [1, n^(1/3)], delta >= 0. */
DecisionOutcome fast_decide_1d(const Curve& P, const Curve& Q, double alpha,
                               double delta);

/* Value wrapper around fast_decide_1d: returns v with
   d_F <= v <= alpha*(1+eps_search)*d_F for alpha >= 6 (the decider runs at
   alpha/6, capped at n^(1/3)); below 6 the slack is too small for the
   3*alpha decider and the bracket is refined with the exact decider
   instead. 1D curves, alpha >= 1, eps_search in (0, 1]. */
double approx_frechet_1d(const Curve& P, const Curve& Q, double alpha,
                         double eps_search);

}  // namespace frechet
