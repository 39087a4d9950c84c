#include "frechet/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "frechet/freespace.hpp"
#include "frechet/oracle.hpp"
#include "test_support.hpp"

using namespace frechet;

namespace {

Curve reversed(const Curve& c) {
  std::vector<double> v(c.coords());
  std::reverse(v.begin(), v.end());
  return Curve::from_values(std::move(v));
}

Curve slice(const Curve& c, std::size_t a, std::size_t b) {
  std::vector<double> v(c.coords().begin() + a, c.coords().begin() + b + 1);
  return Curve::from_values(std::move(v));
}

IntervalSet intersect_sets(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    Interval w = intersect(a[i], b[j]);
    if (!w.is_empty()) out.push_back(w);
    (a[i].hi < b[j].hi ? i : j)++;
  }
  return normalized(std::move(out));
}

/* Points of Q's parameter space lying on some delta-matching of P and Q at
   the column of P-vertex i: forward reach into the column intersected with
   backward reach out of it. */
IntervalSet matched_set_at_column(const Curve& P, const Curve& Q,
                                  std::size_t i, double delta) {
  IntervalSet start{{0.0, 0.0}};
  IntervalSet fwd = exact_reachable_right_boundary(slice(P, 0, i), Q, start,
                                                   delta);
  IntervalSet bwd = exact_reachable_right_boundary(
      reversed(slice(P, i, P.num_vertices() - 1)), reversed(Q), start, delta);
  double m = static_cast<double>(Q.num_edges());
  IntervalSet bwd_mapped;
  for (auto it = bwd.rbegin(); it != bwd.rend(); ++it)
    bwd_mapped.push_back({m - it->hi, m - it->lo});
  return intersect_sets(fwd, normalized(std::move(bwd_mapped)));
}

std::vector<std::size_t> idx(std::initializer_list<std::size_t> v) {
  return std::vector<std::size_t>(v);
}

Signature make_sig(const Curve& c, double delta,
                   std::vector<std::size_t> indices) {
  Signature s;
  s.delta = delta;
  for (std::size_t i : indices) s.values.push_back(c.value(i));
  s.indices = std::move(indices);
  return s;
}

}  // namespace

TEST_CASE("signature of a single peak keeps the peak") {
  Curve P = Curve::from_values({0.0, 10.0, 0.0});
  Signature sig = compute_signature(P, 1.0);
  CHECK(sig.indices == idx({0, 1, 2}));
  CHECK(sig.values == std::vector<double>{0.0, 10.0, 0.0});
  CHECK(verify_signature(P, 1.0, sig));
}

TEST_CASE("monotone curves collapse to their endpoints") {
  Curve P = Curve::from_values({0.0, 1.0, 2.0, 9.0});
  for (double delta : {0.0, 0.5, 100.0}) {
    Signature sig = compute_signature(P, delta);
    CHECK(sig.indices == idx({0, 3}));
    CHECK(verify_signature(P, delta, sig));
  }
}

TEST_CASE("shallow wiggle at a double peak is absorbed") {
  Curve P = Curve::from_values({0.0, 10.0, 9.0, 10.0, 0.0});
  Signature sig = compute_signature(P, 1.0);
  bool first_peak = sig.indices == idx({0, 1, 4});
  bool second_peak = sig.indices == idx({0, 3, 4});
  CHECK((first_peak || second_peak));
  CHECK(verify_signature(P, 1.0, sig));
}

TEST_CASE("delta zero keeps exactly the strict extrema") {
  Curve a = Curve::from_values({0.0, 3.0, 3.0, 1.0, 4.0});
  CHECK(compute_signature(a, 0.0).indices == idx({0, 1, 3, 4}));

  Curve b = Curve::from_values({2.0, 2.0, 5.0, 0.0});
  CHECK(compute_signature(b, 0.0).indices == idx({0, 2, 3}));

  Curve c = Curve::from_values({5.0, 5.0, 5.0});
  CHECK(compute_signature(c, 0.0).indices == idx({0, 2}));
}

TEST_CASE("verifier rejects out-of-range excursions") {
  Curve P = Curve::from_values({0.0, 10.0, 0.0});
  CHECK_FALSE(verify_signature(P, 1.0, make_sig(P, 1.0, {0, 2})));
  // the same two-vertex signature is fine once delta swallows the peak
  CHECK(verify_signature(P, 10.0, make_sig(P, 10.0, {0, 2})));
}

TEST_CASE("verifier rejects short interior edges") {
  Curve P = Curve::from_values({0.0, 10.0, 9.5, 20.0});
  CHECK_FALSE(verify_signature(P, 1.0, make_sig(P, 1.0, {0, 1, 2, 3})));
}

TEST_CASE("verifier rejects structural garbage") {
  Curve P = Curve::from_values({0.0, 10.0, 0.0});
  CHECK_FALSE(verify_signature(P, 1.0, make_sig(P, 1.0, {0, 1})));
  CHECK_FALSE(verify_signature(P, 1.0, make_sig(P, 1.0, {1, 2})));
  Signature stale = make_sig(P, 1.0, {0, 1, 2});
  stale.values[1] = 7.0;  // disagrees with the curve
  CHECK_FALSE(verify_signature(P, 1.0, stale));
}

TEST_CASE("signature vertices near an endpoint obey the tighter rule") {
  // The 6.5 bump dies early under smoothing, yet it exceeds the start value
  // by more than delta and so has to stay in the signature.
  Curve P = Curve::from_values({5.0, 6.5, 0.0, 10.0});
  Signature sig = compute_signature(P, 1.0);
  CHECK(sig.indices == idx({0, 1, 2, 3}));
  CHECK(verify_signature(P, 1.0, sig));

  // With delta = 2 the bump is within reach of the start and goes.
  Signature wide = compute_signature(P, 2.0);
  CHECK(wide.indices == idx({0, 2, 3}));
  CHECK(verify_signature(P, 2.0, wide));
}

TEST_CASE("input validation") {
  Curve P2(2, {0.0, 0.0, 1.0, 1.0});
  CHECK_THROWS_AS(compute_signature(P2, 1.0), std::invalid_argument);
  Curve P = Curve::from_values({0.0, 1.0});
  CHECK_THROWS_AS(compute_signature(P, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(verify_signature(P, -0.5, make_sig(P, 0.0, {0, 1})),
                  std::invalid_argument);
}

TEST_CASE("computed signatures verify on random curves") {
  std::mt19937_64 rng(611);
  for (int trial = 0; trial < 400; ++trial) {
    Curve P = trial % 2 == 0
                  ? test::random_curve(rng, 1, 3 + trial % 37)
                  : test::random_lattice_curve_1d(rng, 3 + trial % 37, 4);
    double deltas[] = {0.0, 0.25, 0.5, 1.0, 2.0, 5.0};
    double delta = deltas[trial % 6];
    Signature sig = compute_signature(P, delta);
    REQUIRE(verify_signature(P, delta, sig));
  }
}

TEST_CASE("signature size is non-increasing in delta") {
  std::mt19937_64 rng(612);
  for (int trial = 0; trial < 60; ++trial) {
    Curve P = trial % 2 == 0 ? test::random_curve(rng, 1, 24)
                             : test::random_lattice_curve_1d(rng, 24, 5);
    std::size_t prev = P.num_vertices() + 1;
    for (double delta : {0.0, 0.3, 0.7, 1.2, 2.5, 6.0}) {
      std::size_t k = compute_signature(P, delta).size();
      CHECK(k <= prev);
      prev = k;
    }
  }
}

TEST_CASE("curve stays within delta of its signature") {
  std::mt19937_64 rng(613);
  for (int trial = 0; trial < 120; ++trial) {
    Curve P = trial % 2 == 0 ? test::random_curve(rng, 1, 4 + trial % 21)
                             : test::random_lattice_curve_1d(rng, 4 + trial % 21, 4);
    double deltas[] = {0.0, 0.5, 1.0, 3.0};
    double delta = deltas[trial % 4];
    Signature sig = compute_signature(P, delta);
    Curve S = Curve::from_values(std::vector<double>(sig.values));
    CHECK(exact_decide(P, S, delta));
  }
}

TEST_CASE("matchings meet signature vertices near a Q vertex") {
  // Whenever d_F(P, Q) <= delta, any matching must send each signature
  // vertex of P to a Q-edge with an endpoint within delta of it. Checked
  // on the full matched set of each signature column: every connected
  // component has to contain a point on such an edge.
  std::mt19937_64 rng(614);
  const double delta = 1.0;
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Curve P = test::random_curve(rng, 1, 8 + trial % 5);
    std::uniform_real_distribution<double> jitter(-delta / 2.0, delta / 2.0);
    std::vector<double> qv(P.coords());
    for (double& x : qv) x += jitter(rng);
    Curve Q = Curve::from_values(std::move(qv));
    REQUIRE(exact_decide(P, Q, delta));

    Signature sig = compute_signature(P, delta);
    for (std::size_t t = 1; t + 1 < sig.size(); ++t) {
      std::size_t i = sig.indices[t];
      double v = sig.values[t];
      IntervalSet matched = matched_set_at_column(P, Q, i, delta);
      REQUIRE(!matched.empty());
      for (const Interval& comp : matched) {
        bool good = false;
        std::size_t j = static_cast<std::size_t>(
            std::max(0.0, std::floor(comp.lo)));
        for (; j < Q.num_edges() && static_cast<double>(j) <= comp.hi; ++j) {
          if (static_cast<double>(j + 1) < comp.lo) continue;
          double gap = std::min(std::abs(Q.value(j) - v),
                                std::abs(Q.value(j + 1) - v));
          if (gap <= delta + 1e-9) {
            good = true;
            break;
          }
        }
        CHECK(good);
        ++checked;
      }
    }
  }
  CHECK(checked > 50);  // the trials actually exercised interior vertices
}
