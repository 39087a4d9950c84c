#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "frechet/curve.hpp"

namespace frechet {

enum class TreeMode { max, min };

// Heap-ordered binary tree over a value sequence whose in-order traversal
// yields the original index order. Among equal values the later index wins,
// so earlier duplicates end up in the left subtree of the last one. That
// convention matches collapse_degenerate_1d keeping the last vertex of a
// plateau as its representative.
struct CartesianTree {
  static constexpr std::size_t none = static_cast<std::size_t>(-1);

  TreeMode mode = TreeMode::max;
  std::size_t root = none;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;

  std::size_t size() const { return left.size(); }
};

CartesianTree build_cartesian_tree(const std::vector<double>& values,
                                   TreeMode mode);

// Death time of vertex i: the smallest eps at which vertex i stops being a
// proper extremum of the eps-smoothed curve. Endpoints never die (+infinity);
// vertices that are not breakpoints of the monotone-piece decomposition are
// born degenerate and get 0.
struct DeathTimeTable {
  std::vector<double> times;
};

DeathTimeTable death_times(const Curve& curve);

// The eps-smoothing of a 1D curve: every interior extremum moves toward its
// surroundings until it flattens out, endpoints shrink inward, and the vertex
// count is preserved exactly so curves smoothed per axis can be reassembled.
Curve truncated_smoothing(const Curve& curve, double eps);

struct SmoothingParameterResult {
  double epsilon = 0.0;
  // Upper bound (2x the death-time count in (epsilon, epsilon+delta]) on the
  // number of 2*delta-short edges the two smoothed curves have combined.
  std::size_t short_edge_count = 0;
};

// Picks epsilon <= alpha*delta from the death-time multiset (plus zero) such
// that at most n/alpha death times land in (epsilon, epsilon+delta]. The
// median recursion handles typical inputs in linear time; a sliding-window
// sweep over all candidates backs it up when tie clusters defeat it.
SmoothingParameterResult find_parameter(std::vector<double> deaths,
                                        double alpha, double delta,
                                        std::size_t n);

// Smooths each coordinate projection of both curves by a per-axis parameter
// so that every axis has few short monotone pieces left, then reassembles
// the coordinates over the shared vertex indices.
std::pair<Curve, Curve> simplify_nd(const Curve& P, const Curve& Q,
                                    double alpha, double delta);

}  // namespace frechet
