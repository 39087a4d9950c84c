#pragma once

#include <cstddef>
#include <vector>

#include "frechet/curve.hpp"

namespace frechet {

// A sparse subsequence of vertices characterizing a 1D curve up to detours
// of Frechet distance delta: consecutive entries alternate strictly enough
// (interior gaps beyond 2*delta, endpoint gaps beyond delta) while the curve
// between them keeps to their span save for delta-slack at the two ends.
struct Signature {
  double delta = 0.0;
  std::vector<std::size_t> indices;
  std::vector<double> values;

  std::size_t size() const { return indices.size(); }
};

// Checks the four defining properties by direct scans. Also rejects
// structurally broken input (indices not strictly increasing, not spanning
// the whole curve, or values disagreeing with the curve).
bool verify_signature(const Curve& curve, double delta, const Signature& sig);

// Prunes the extremum skeleton event by event: the shallowest removable
// feature goes first, either an interior wiggle pair within 2*delta of each
// other or an extremum within delta of its adjacent endpoint. The result is
// checked against the four properties; on the (never observed) chance the
// greedy order paints itself into a corner, a leftmost-first pass retries.
Signature compute_signature(const Curve& curve, double delta);

}  // namespace frechet
