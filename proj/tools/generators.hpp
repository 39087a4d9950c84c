#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "frechet/curve.hpp"

namespace frechet::cli {

/* Named instance families. All randomness flows from the single seed, so a
   given spec always produces the same curve.
     random-walk      independent uniform steps per axis
     long-edges       every edge moves each axis by more than 2*delta
     spiky            short baseline hops alternating with tall spikes
     adversarial-grid values near multiples of cell_width, the worst case
                      for boundary-avoiding grid placement  */
struct GenSpec {
  std::size_t n = 16;
  std::size_t dim = 1;
  std::uint64_t seed = 0;
  std::string profile = "random-walk";
  double delta = 0.5;       // long-edges: guaranteed piece scale
  double cell_width = 1.0;  // adversarial-grid: cluster spacing
  double jitter = 1e-3;     // adversarial-grid: wobble around multiples
};

extern const std::vector<std::string> kGenProfiles;

Curve generate_curve(const GenSpec& spec);

}  // namespace frechet::cli
