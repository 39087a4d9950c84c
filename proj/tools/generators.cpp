#include "generators.hpp"

#include <random>
#include <stdexcept>

namespace frechet::cli {

const std::vector<std::string> kGenProfiles = {
    "random-walk", "long-edges", "spiky", "adversarial-grid"};

namespace {

Curve random_walk(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> step(-2.5, 2.5);
  std::vector<double> flat(n * dim, 0.0);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 0; k < dim; ++k)
      flat[i * dim + k] = flat[(i - 1) * dim + k] + step(rng);
  return Curve(dim, std::move(flat));
}

Curve long_edges(std::mt19937_64& rng, std::size_t n, std::size_t dim,
                 double delta) {
  std::uniform_real_distribution<double> mag(2.5 * delta, 6.0 * delta);
  std::bernoulli_distribution flip;
  std::vector<double> flat(n * dim, 0.0);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      double step = flip(rng) ? mag(rng) : -mag(rng);
      flat[i * dim + k] = flat[(i - 1) * dim + k] + step;
    }
  return Curve(dim, std::move(flat));
}

Curve spiky(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> base(0.0, 0.5);
  std::uniform_real_distribution<double> amp(2.0, 10.0);
  std::vector<double> flat(n * dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < dim; ++k)
      flat[i * dim + k] = (i % 2 == 0) ? base(rng) : amp(rng);
  return Curve(dim, std::move(flat));
}

Curve adversarial_grid(std::mt19937_64& rng, std::size_t n, std::size_t dim,
                       double width, double jitter) {
  std::uniform_int_distribution<long long> cell(
      0, static_cast<long long>(n / 4 + 2));
  std::uniform_real_distribution<double> wobble(-jitter, jitter);
  std::vector<double> flat(n * dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < dim; ++k)
      flat[i * dim + k] =
          static_cast<double>(cell(rng)) * width + wobble(rng) * width;
  return Curve(dim, std::move(flat));
}

}  // namespace

Curve generate_curve(const GenSpec& spec) {
  if (spec.n < 2)
    throw std::invalid_argument("generate_curve: need at least 2 vertices");
  if (spec.dim < 1)
    throw std::invalid_argument("generate_curve: need at least 1 dimension");
  std::mt19937_64 rng(spec.seed);
  if (spec.profile == "random-walk")
    return random_walk(rng, spec.n, spec.dim);
  if (spec.profile == "long-edges") {
    if (!(spec.delta > 0.0))
      throw std::invalid_argument("generate_curve: long-edges needs delta > 0");
    return long_edges(rng, spec.n, spec.dim, spec.delta);
  }
  if (spec.profile == "spiky") return spiky(rng, spec.n, spec.dim);
  if (spec.profile == "adversarial-grid") {
    if (!(spec.cell_width > 0.0))
      throw std::invalid_argument(
          "generate_curve: adversarial-grid needs cell_width > 0");
    return adversarial_grid(rng, spec.n, spec.dim, spec.cell_width,
                            spec.jitter);
  }
  throw std::invalid_argument("generate_curve: unknown profile \"" +
                              spec.profile + "\"");
}

}  // namespace frechet::cli
