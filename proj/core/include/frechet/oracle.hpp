#pragma once

#include "frechet/curve.hpp"
#include "frechet/freespace.hpp"
#include "frechet/interval.hpp"

namespace frechet {

/* Frechet distance to within +-tol, by bisection over exact_decide between
   the endpoint-distance lower bound and the uniform-parameterization
   matching cost. Theta(n*m) per probe; correctness over speed. */
double exact_frechet(const Curve& P, const Curve& Q, double tol);

/* Cost of the matching that aligns the two curves by uniform arc position,
   max over the merged breakpoints. A valid matching, hence an upper bound
   on the Frechet distance. */
double uniform_matching_cost(const Curve& P, const Curve& Q);

/* Exit-set ground truth: identical to exact_reachable_right_boundary. */
IntervalSet exact_exit_set(const Curve& P, const Curve& Q, const IntervalSet& S,
                           double delta);

/* Smallest eps at which interior vertex i of a 1D curve becomes degenerate
   under truncated smoothing, by direct event simulation: every skeleton
   piece shrinks at rate 2, so the next event is always at half the minimum
   piece length, and all deaths happen at events. Independent of the
   Cartesian-tree implementation it validates. tol only acknowledges the
   accumulated floating-point error of the event arithmetic. */
double brute_death_time(const Curve& P1d, std::size_t i, double tol);

/* Cell-level reachability across one block, the reference for
   block_propagate. Entrances/exits in edge units of the full curves. */
struct BlockExitSets {
  IntervalSet top, right;
};

BlockExitSets brute_block_exits(const Curve& P, std::size_t pa, std::size_t pb,
                                const Curve& Q, std::size_t qa, std::size_t qb,
                                const Interval& enter_bottom,
                                const Interval& enter_left, double delta);

}  // namespace frechet
