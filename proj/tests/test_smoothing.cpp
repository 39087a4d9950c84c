#include "frechet/smoothing.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "frechet/oracle.hpp"
#include "test_support.hpp"

using namespace frechet;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_heap_and_order(const CartesianTree& t,
                          const std::vector<double>& vals) {
  // in-order traversal must visit indices in increasing order and every
  // parent must dominate its children according to the mode
  std::vector<std::size_t> inorder;
  std::vector<std::pair<std::size_t, int>> stack{{t.root, 0}};
  while (!stack.empty()) {
    auto [node, state] = stack.back();
    if (state == 0) {
      stack.back().second = 1;
      if (t.left[node] != CartesianTree::none)
        stack.push_back({t.left[node], 0});
    } else if (state == 1) {
      stack.back().second = 2;
      inorder.push_back(node);
      if (t.right[node] != CartesianTree::none)
        stack.push_back({t.right[node], 0});
    } else {
      stack.pop_back();
    }
  }
  REQUIRE(inorder.size() == vals.size());
  for (std::size_t k = 0; k < inorder.size(); ++k) CHECK(inorder[k] == k);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    for (std::size_t child : {t.left[i], t.right[i]}) {
      if (child == CartesianTree::none) continue;
      if (t.mode == TreeMode::max)
        CHECK(vals[i] >= vals[child]);
      else
        CHECK(vals[i] <= vals[child]);
    }
  }
}

std::size_t count_short_pieces(const Curve& c1d, double threshold) {
  auto pieces = monotone_pieces(c1d);
  std::size_t count = 0;
  for (std::size_t k = 0; k + 1 < pieces.vertices.size(); ++k) {
    double span = std::abs(c1d.value(pieces.vertices[k + 1]) -
                           c1d.value(pieces.vertices[k]));
    count += (span <= threshold);
  }
  return count;
}

}  // namespace

TEST_CASE("cartesian tree construction") {
  CartesianTree single = build_cartesian_tree({5}, TreeMode::max);
  CHECK(single.root == 0);
  CHECK(single.left[0] == CartesianTree::none);
  CHECK(single.right[0] == CartesianTree::none);

  CartesianTree t = build_cartesian_tree({1, 3, 2}, TreeMode::max);
  CHECK(t.root == 1);
  CHECK(t.left[1] == 0);
  CHECK(t.right[1] == 2);

  // ascending values chain as right children in min mode
  CartesianTree asc = build_cartesian_tree({1, 2, 3}, TreeMode::min);
  CHECK(asc.root == 0);
  CHECK(asc.right[0] == 1);
  CHECK(asc.right[1] == 2);

  CHECK_THROWS_AS(build_cartesian_tree({}, TreeMode::max),
                  std::invalid_argument);

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    Curve c = test::random_lattice_curve_1d(rng, 12);
    std::vector<double> vals(c.coords().begin(), c.coords().end());
    check_heap_and_order(build_cartesian_tree(vals, TreeMode::max), vals);
    check_heap_and_order(build_cartesian_tree(vals, TreeMode::min), vals);
  }
}

TEST_CASE("death_times on pinned instances") {
  auto times = [](std::initializer_list<double> vals) {
    return death_times(Curve::from_values(vals)).times;
  };
  CHECK(times({0, 10, 0}) == std::vector<double>{kInf, 5, kInf});
  CHECK(times({0, 4, 2, 6}) == std::vector<double>{kInf, 1, 1, kInf});
  CHECK(times({0, 1, 2, 3}) == std::vector<double>{kInf, 0, 0, kInf});
  CHECK(times({0, 5, 5, 0}) == std::vector<double>{kInf, 0, 2.5, kInf});
  CHECK(times({0, 5, 1, 5, 0}) == std::vector<double>{kInf, 2, 2, 2.5, kInf});
  CHECK(times({0, 10, 2, 8, 0}) == std::vector<double>{kInf, 5, 3, 3, kInf});

  Curve c2 = Curve::from_points({{0, 0}, {1, 1}});
  CHECK_THROWS_AS(death_times(c2), std::invalid_argument);
}

TEST_CASE("death_times matches the event simulation") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    Curve c = trial % 2 == 0 ? test::random_lattice_curve_1d(rng, 16)
                             : test::random_curve(rng, 1, 16);
    DeathTimeTable table = death_times(c);
    for (std::size_t i = 1; i + 1 < c.num_vertices(); ++i) {
      double expect = brute_death_time(c, i, 1e-12);
      CHECK(table.times[i] == doctest::Approx(expect).epsilon(1e-9));
    }
  }
  // a larger instance, sampled sparsely to keep the quadratic oracle cheap
  Curve big = test::random_lattice_curve_1d(rng, 64);
  DeathTimeTable table = death_times(big);
  for (std::size_t i = 1; i + 1 < big.num_vertices(); i += 7) {
    double expect = brute_death_time(big, i, 1e-12);
    CHECK(table.times[i] == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("truncated_smoothing on pinned instances") {
  auto smooth = [](std::initializer_list<double> vals, double eps) {
    Curve out = truncated_smoothing(Curve::from_values(vals), eps);
    return std::vector<double>(out.coords().begin(), out.coords().end());
  };
  CHECK(smooth({0, 4, 2, 6}, 0) == std::vector<double>{0, 4, 2, 6});
  CHECK(smooth({0, 4, 2, 6}, 1) == std::vector<double>{1, 3, 3, 5});
  CHECK(smooth({0, 4, 2, 6}, 2) == std::vector<double>{2, 3, 3, 4});
  CHECK(smooth({0, 10, 0}, 7) == std::vector<double>{5, 5, 5});
  CHECK(smooth({0, 10, 2, 8, 0}, 2) == std::vector<double>{2, 8, 4, 6, 2});
  CHECK(smooth({0, 10, 2, 8, 0}, 4) == std::vector<double>{4, 6, 5, 5, 4});
  CHECK(smooth({0, 1, 2, 3}, 1) == std::vector<double>{1, 1, 2, 2});
  CHECK(smooth({0, 10, 9, 10, 0}, 1) == std::vector<double>{1, 9, 9, 9, 1});
  CHECK(smooth({4, 4, 4}, 3) == std::vector<double>{4, 4, 4});

  CHECK_THROWS_AS(truncated_smoothing(Curve::from_values({0, 1}), -0.5),
                  std::invalid_argument);
}

TEST_CASE("smoothing stays pointwise within eps") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> de(0.0, 6.0);
  for (int trial = 0; trial < 30; ++trial) {
    Curve c = trial % 2 == 0 ? test::random_lattice_curve_1d(rng, 10)
                             : test::random_curve(rng, 1, 10);
    double eps = de(rng);
    Curve s = truncated_smoothing(c, eps);
    REQUIRE(s.num_vertices() == c.num_vertices());
    double span = double(c.num_edges());
    for (int g = 0; g <= 200; ++g) {
      double x = span * g / 200;
      CHECK(std::abs(value_at(c, x) - value_at(s, x)) <= eps + 1e-9);
    }
  }
}

TEST_CASE("smoothing composes additively") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> de(0.0, 4.0);
  for (int trial = 0; trial < 30; ++trial) {
    Curve c = trial % 2 == 0 ? test::random_lattice_curve_1d(rng, 9)
                             : test::random_curve(rng, 1, 9);
    double a = de(rng), b = de(rng);
    Curve two_step = truncated_smoothing(truncated_smoothing(c, a), b);
    Curve direct = truncated_smoothing(c, a + b);
    for (std::size_t i = 0; i < c.num_vertices(); ++i)
      CHECK(two_step.value(i) == doctest::Approx(direct.value(i)).epsilon(1e-9));
  }
}

TEST_CASE("smoothing both curves preserves matchings") {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> de(0.0, 3.0);
  double tol = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    Curve P = test::random_curve(rng, 1, 7);
    Curve Q = test::random_curve(rng, 1, 6);
    double eps = de(rng);
    double base = exact_frechet(P, Q, tol);
    double smoothed = exact_frechet(truncated_smoothing(P, eps),
                                    truncated_smoothing(Q, eps), tol);
    CHECK(smoothed <= base + 3 * tol);
    CHECK(base <= smoothed + 2 * eps + 3 * tol);
  }
}

TEST_CASE("find_parameter meets its contract") {
  SmoothingParameterResult r = find_parameter({10, 11, 12, 13}, 4.0, 1.0, 4);
  CHECK(r.epsilon <= 4.0);
  int in_window = 0;
  for (double m : {10.0, 11.0, 12.0, 13.0})
    in_window += (m > r.epsilon && m <= r.epsilon + 1.0);
  CHECK(in_window <= 1);

  CHECK(find_parameter({5, 6}, 2.0, 1.0, 16).epsilon == 0.0);
  CHECK(find_parameter({1, 2, 3}, 2.0, 0.0, 4).epsilon == 0.0);
  CHECK_THROWS_AS(find_parameter({1}, 0.5, 1.0, 4), std::invalid_argument);
}

TEST_CASE("find_parameter survives clustered ties") {
  // the median recursion alone lands every candidate window on a crowd here;
  // the sweep must find the gap above the larger cluster
  std::vector<double> deaths(9, 0.75);
  deaths.insert(deaths.end(), 10, 1.6);
  deaths.insert(deaths.end(), 4, kInf);
  SmoothingParameterResult r = find_parameter(deaths, 3.0, 1.0, 23);
  CHECK(r.epsilon <= 3.0);
  std::size_t count = 0;
  for (double m : deaths) count += (m > r.epsilon && m <= r.epsilon + 1.0);
  CHECK(double(count) <= 23.0 / 3.0);
  CHECK(r.short_edge_count == 2 * count);
}

TEST_CASE("find_parameter postconditions on random multisets") {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> dd(0.05, 2.0);
  std::uniform_int_distribution<int> dn(4, 40);
  std::uniform_int_distribution<int> dv(0, 12);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = dn(rng);
    double delta = dd(rng);
    double alpha = 1.0 + (double(dv(rng)) / 12.0) * (double(n) - 1.0);
    std::vector<double> deaths;
    for (std::size_t i = 0; i < n; ++i)
      deaths.push_back(dv(rng) == 0 ? kInf : dd(rng) * dv(rng));
    SmoothingParameterResult r = find_parameter(deaths, alpha, delta, n);
    CHECK(r.epsilon <= alpha * delta + 1e-12);
    bool member = r.epsilon == 0.0;
    for (double m : deaths) member |= (m == r.epsilon);
    CHECK(member);
    std::size_t count = 0;
    for (double m : deaths)
      count += (m > r.epsilon && m <= r.epsilon + delta);
    CHECK(double(count) <= double(n) / alpha);
  }
}

TEST_CASE("simplify_nd leaves curves alone at zero tolerance") {
  Curve P = Curve::from_points({{0, 1}, {2, 3}, {1, 0}});
  Curve Q = Curve::from_points({{0, 0}, {1, 2}});
  auto [ps, qs] = simplify_nd(P, Q, 2.0, 0.0);
  CHECK(std::equal(ps.coords().begin(), ps.coords().end(), P.coords().begin()));
  CHECK(std::equal(qs.coords().begin(), qs.coords().end(), Q.coords().begin()));

  Curve R = Curve::from_values({0, 1});
  CHECK_THROWS_AS(simplify_nd(P, R, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("simplify_nd thins short pieces and keeps the distance close") {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> dd(0.05, 1.0);
  double tol = 1e-6;
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t dim = 1 + trial % 2;
    Curve P = test::random_curve(rng, dim, 7);
    Curve Q = test::random_curve(rng, dim, 6);
    double delta = dd(rng);
    double alpha = 2.0 + trial % 3;
    std::size_t n = P.num_vertices() + Q.num_vertices();
    auto [ps, qs] = simplify_nd(P, Q, alpha, delta);
    REQUIRE(ps.num_vertices() == P.num_vertices());
    REQUIRE(qs.num_vertices() == Q.num_vertices());

    for (std::size_t axis = 0; axis < dim; ++axis) {
      std::size_t shorts = count_short_pieces(project(ps, axis), 2 * delta) +
                           count_short_pieces(project(qs, axis), 2 * delta);
      CHECK(double(shorts) <= 2.0 * double(n) / alpha);
    }

    double base = exact_frechet(P, Q, tol);
    double simplified = exact_frechet(ps, qs, tol);
    CHECK(simplified <= base + 1e-4);
    CHECK(base <= simplified + 2 * alpha * delta + 1e-4);
  }
}
