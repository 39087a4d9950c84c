#include "frechet/exitsets.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "frechet/freespace.hpp"
#include "frechet/oracle.hpp"
#include "frechet/signatures.hpp"
#include "test_support.hpp"

using namespace frechet;
using frechet::test::random_curve;
using frechet::test::random_lattice_curve_1d;

namespace {

/* Every sufficiently thick component of `a` must sit inside a single
   component of `b`, up to tol on both ends. */
bool covered_by(const IntervalSet& a, const IntervalSet& b, double tol) {
  for (const Interval& x : normalized(a)) {
    double lo = x.lo + tol, hi = x.hi - tol;
    if (lo > hi) continue;
    bool inside = false;
    for (const Interval& y : b)
      if (y.lo - tol <= lo && hi <= y.hi + tol) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

/* Parameters of a 1D curve whose value is within eps of p, by edge walk. */
IntervalSet band_components(const Curve& q, double p, double eps) {
  IntervalSet out;
  for (std::size_t j = 0; j + 1 < q.num_vertices(); ++j) {
    double w0 = q.value(j), w1 = q.value(j + 1);
    Interval t;
    if (w0 == w1) {
      if (std::abs(w0 - p) <= eps) t = {0.0, 1.0};
    } else {
      double t0 = (p - eps - w0) / (w1 - w0);
      double t1 = (p + eps - w0) / (w1 - w0);
      if (t0 > t1) std::swap(t0, t1);
      t = intersect({t0, t1}, {0.0, 1.0});
    }
    if (!t.is_empty())
      out.push_back({static_cast<double>(j) + t.lo,
                     static_cast<double>(j) + t.hi});
  }
  return normalized(out);
}

/* Reference for first_point_within: scan edges left to right and return the
   start of the first in-band stretch at or after `from`. */
std::optional<double> brute_first_within(const std::vector<double>& vals,
                                         double p, double eps, double from) {
  double end = static_cast<double>(vals.size() - 1);
  from = std::clamp(from, 0.0, end);
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    double s0 = std::max(from, static_cast<double>(i));
    double s1 = static_cast<double>(i) + 1.0;
    if (s0 > s1) continue;
    double v0 = vals[i] + (s0 - i) * (vals[i + 1] - vals[i]);
    double v1 = vals[i + 1];
    Interval hit;
    if (v0 == v1) {
      if (std::abs(v0 - p) <= eps) hit = {s0, s1};
    } else {
      double t0 = s0 + (p - eps - v0) / (v1 - v0) * (s1 - s0);
      double t1 = s0 + (p + eps - v0) / (v1 - v0) * (s1 - s0);
      if (t0 > t1) std::swap(t0, t1);
      hit = intersect({t0, t1}, {s0, s1});
    }
    if (!hit.is_empty()) return hit.lo;
  }
  if (vals.size() == 1 && std::abs(vals[0] - p) <= eps) return 0.0;
  return std::nullopt;
}

/* Reference for maximal_interval_within: first parameter at or after y1
   where the curve leaves the band, assuming it starts inside. */
double brute_dwell_end(const std::vector<double>& vals, double p, double eps,
                       double y1) {
  double end = static_cast<double>(vals.size() - 1);
  y1 = std::clamp(y1, 0.0, end);
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    double s0 = std::max(y1, static_cast<double>(i));
    double s1 = static_cast<double>(i) + 1.0;
    if (s0 > s1) continue;
    double v0 = vals[i] + (s0 - i) * (vals[i + 1] - vals[i]);
    double v1 = vals[i + 1];
    if (std::abs(v0 - p) > eps) return s0;
    if (v0 == v1) continue;
    double target = v1 > p + eps ? p + eps : (v1 < p - eps ? p - eps : 0.0);
    if (v1 > p + eps || v1 < p - eps)
      return s0 + (target - v0) / (v1 - v0) * (s1 - s0);
  }
  return end;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n,
                                  double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

/* 1D curve with vertices at cell centers of a unit grid and no plateaus,
   so tiny-delta signatures are exactly the strict extrema. */
Curve cell_centered_curve(std::mt19937_64& rng, std::size_t n, int levels) {
  std::uniform_int_distribution<int> step(1, 3);
  std::bernoulli_distribution flip;
  std::vector<double> vals(n);
  int k = levels / 2;
  vals[0] = k + 0.5;
  for (std::size_t i = 1; i < n; ++i) {
    int s = step(rng);
    if (k + s > levels) k -= s;
    else if (k - s < 0) k += s;
    else k += flip(rng) ? s : -s;
    vals[i] = k + 0.5;
  }
  return Curve::from_values(std::move(vals));
}

/* Equal-adjacent collapse plus endpoint/extremum filtering, mirroring the
   reduction the label matching is specified against. */
std::vector<long long> reduce_seq(const std::vector<long long>& labs) {
  std::vector<long long> runs;
  for (long long l : labs)
    if (runs.empty() || runs.back() != l) runs.push_back(l);
  if (runs.size() <= 2) return runs;
  std::vector<long long> kept{runs.front()};
  for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
    bool rose = runs[r] > runs[r - 1];
    bool falls = runs[r] > runs[r + 1];
    if (rose == falls) kept.push_back(runs[r]);
  }
  kept.push_back(runs.back());
  return kept;
}

}  // namespace

TEST_CASE("grid labels and boundary distances") {
  Grid g{1.0, 0.0};
  CHECK(g.label(0.5) == 0);
  CHECK(g.label(3.5) == 3);
  CHECK(g.label(-0.25) == -1);
  CHECK(g.boundary_distance(0.25) == doctest::Approx(0.25));
  CHECK(g.boundary_distance(0.5) == doctest::Approx(0.5));
  CHECK(g.boundary_distance(3.0) == doctest::Approx(0.0));

  Grid s{2.0, 0.5};
  CHECK(s.label(0.5) == 0);
  CHECK(s.label(0.49) == -1);
  CHECK(s.label(2.4) == 0);
  CHECK(s.label(2.6) == 1);
  CHECK(s.boundary_distance(0.5) == doctest::Approx(0.0));
  CHECK(s.boundary_distance(1.5) == doctest::Approx(1.0));
  CHECK(s.boundary_distance(-0.3) == doctest::Approx(0.8));
}

TEST_CASE("grid shift avoids vertex neighbourhoods when there is room") {
  std::mt19937_64 rng(41);

  SUBCASE("one distinct value is always fully separated") {
    Curve p = Curve::from_values({5.0, 5.0});
    Curve q = Curve::from_values({5.0, 5.0, 5.0});
    GridShiftResult r = compute_shift(p, q, 16.0, 0.1, 7.0);
    CHECK(r.bad_count == 0);
    CHECK(r.within_bound);
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(r.grid.boundary_distance(p.value(i)) > 7.0 * 0.1);
  }

  SUBCASE("values clustered around multiples of the cell width") {
    for (int trial = 0; trial < 40; ++trial) {
      double delta = 0.05 + 0.01 * trial;
      double alpha = trial % 2 == 0 ? 16.0 : 32.0;
      double w = alpha * delta;
      std::uniform_int_distribution<int> cell(0, 9);
      std::uniform_real_distribution<double> jitter(-0.01 * w, 0.01 * w);
      auto cluster = [&](std::size_t n) {
        std::vector<double> v(n);
        for (double& x : v) x = cell(rng) * w + jitter(rng);
        return Curve::from_values(std::move(v));
      };
      Curve p = cluster(10 + trial % 5), q = cluster(12 + trial % 7);
      GridShiftResult r = compute_shift(p, q, alpha, delta, 7.0);
      CAPTURE(trial);
      std::size_t n_total = p.num_vertices() + q.num_vertices();
      CHECK(r.within_bound);
      CHECK(static_cast<double>(r.bad_count) <=
            7.0 * static_cast<double>(n_total) / alpha);
      for (std::size_t i = 0; i < p.num_vertices(); ++i)
        CHECK(r.grid.boundary_distance(p.value(i)) > 0.0);
      for (std::size_t j = 0; j < q.num_vertices(); ++j)
        CHECK(r.grid.boundary_distance(q.value(j)) > 0.0);
    }
  }

  SUBCASE("report flag matches the recount") {
    for (int trial = 0; trial < 20; ++trial) {
      Curve p = Curve::from_values(random_values(rng, 14, 0.0, 10.0));
      Curve q = Curve::from_values(random_values(rng, 17, 0.0, 10.0));
      double alpha = trial % 2 == 0 ? 8.0 : 16.0;
      GridShiftResult r = compute_shift(p, q, alpha, 0.2, 7.0);
      BadnessReport rep = badness_report(p, q, r.grid, 7.0, 0.2);
      CHECK(rep.total() == r.bad_count);
      CHECK(r.within_bound ==
            (static_cast<double>(r.bad_count) <= 7.0 * 31.0 / alpha));
    }
  }

  SUBCASE("arcs covering the whole circle mark everything bad") {
    Curve p = Curve::from_values({0.0, 1.0, 2.0});
    Curve q = Curve::from_values({3.0, 4.0});
    GridShiftResult r = compute_shift(p, q, 8.0, 0.1, 7.0);
    CHECK(r.bad_count == 5);  // 14*delta arcs exceed the 0.8 cell width
    CHECK(!r.within_bound);
  }
}

TEST_CASE("range successor queries agree with linear scans") {
  std::mt19937_64 rng(42);
  std::size_t checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial) % 63;
    std::vector<double> vals = random_values(rng, n, -5.0, 5.0);
    if (trial % 3 == 0)
      for (double& v : vals) v = std::round(v);  // force ties
    RangeSuccessor rs(vals);
    std::uniform_real_distribution<double> pick(-6.0, 6.0);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    for (int q = 0; q < 220; ++q) {
      double a = pick(rng), b = pick(rng);
      double lo = std::min(a, b), hi = std::max(a, b);
      std::size_t from = idx(rng);

      std::size_t want_in = RangeSuccessor::npos;
      for (std::size_t i = from; i < n; ++i)
        if (vals[i] >= lo && vals[i] <= hi) {
          want_in = i;
          break;
        }
      CHECK(rs.next_in(lo, hi, from) == want_in);

      std::size_t want_out = RangeSuccessor::npos;
      for (std::size_t i = from; i < n; ++i)
        if (vals[i] < lo || vals[i] > hi) {
          want_out = i;
          break;
        }
      CHECK(rs.next_outside(lo, hi, from) == want_out);

      std::size_t i = idx(rng), j = idx(rng);
      if (i > j) std::swap(i, j);
      auto [mn, mx] = rs.minmax(i, j);
      CHECK(mn == *std::min_element(vals.begin() + i, vals.begin() + j + 1));
      CHECK(mx == *std::max_element(vals.begin() + i, vals.begin() + j + 1));
      checked += 3;
    }
  }
  CHECK(checked >= 10000);
}

TEST_CASE("first parameter within a band of a value") {
  SUBCASE("rising edge is met where it enters the band") {
    RangeSuccessor rs({0.0, 10.0});
    auto y = first_point_within(rs, 4.0, 1.0, 0.0);
    REQUIRE(y.has_value());
    CHECK(*y == doctest::Approx(0.3));
  }
  SUBCASE("band never reached") {
    RangeSuccessor rs({0.0, 1.0, 0.0});
    CHECK(!first_point_within(rs, 5.0, 1.0, 0.0).has_value());
  }
  SUBCASE("already inside returns the query point") {
    RangeSuccessor rs({0.0, 10.0});
    auto y = first_point_within(rs, 4.0, 1.0, 0.35);
    REQUIRE(y.has_value());
    CHECK(*y == doctest::Approx(0.35));
  }
  SUBCASE("random curves match the edge walk") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pv(-6.0, 6.0);
    std::uniform_real_distribution<double> pe(0.01, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
      std::size_t n = 2 + static_cast<std::size_t>(trial) % 12;
      std::vector<double> vals = random_values(rng, n, -5.0, 5.0);
      RangeSuccessor rs(vals);
      double p = pv(rng), eps = pe(rng);
      double from = std::uniform_real_distribution<double>(
          0.0, static_cast<double>(n - 1))(rng);
      auto got = first_point_within(rs, p, eps, from);
      auto want = brute_first_within(vals, p, eps, from);
      CAPTURE(trial);
      REQUIRE(got.has_value() == want.has_value());
      if (got) CHECK(*got == doctest::Approx(*want).epsilon(1e-9));
    }
  }
}

TEST_CASE("maximal stay within a band of a value") {
  SUBCASE("constant curve inside the band runs to the end") {
    RangeSuccessor rs({3.0, 3.0, 3.0});
    CHECK(maximal_interval_within(rs, 3.0, 1.0, 0.0) == doctest::Approx(2.0));
  }
  SUBCASE("leaves a rising edge at the band border") {
    RangeSuccessor rs({0.0, 10.0});
    CHECK(maximal_interval_within(rs, 1.0, 1.0, 0.0) == doctest::Approx(0.2));
  }
  SUBCASE("survives interior vertices that stay inside") {
    RangeSuccessor rs({0.0, 2.0, 0.0, 9.0});
    CHECK(maximal_interval_within(rs, 1.0, 1.5, 0.0) ==
          doctest::Approx(2.0 + 2.5 / 9.0));
  }
  SUBCASE("random curves match the edge walk") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> pe(0.01, 2.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
      std::size_t n = 2 + static_cast<std::size_t>(trial) % 12;
      std::vector<double> vals = random_values(rng, n, -5.0, 5.0);
      RangeSuccessor rs(vals);
      double y1 = u(rng) * static_cast<double>(n - 1);
      double eps = pe(rng);
      /* keep the precondition: start inside the band */
      double p = rs.value_at(y1) + (u(rng) - 0.5) * eps;
      double got = maximal_interval_within(rs, p, eps, y1);
      double want = brute_dwell_end(vals, p, eps, y1);
      CAPTURE(trial);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
      CHECK(got >= y1);
    }
  }
}

TEST_CASE("segment against subcurve decisions match the free-space oracle") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> ev(0.0, 6.0);
  for (int trial = 0; trial < 250; ++trial) {
    Curve q = random_lattice_curve_1d(rng, 3 + trial % 10);
    RangeSuccessor rs(q.coords());
    double m = static_cast<double>(q.num_edges());
    double y1 = u(rng) * m;
    double y2 = y1 + u(rng) * (m - y1);
    if (y2 - y1 < 1e-6) continue;
    double e0 = ev(rng), e1 = ev(rng);
    double delta = 0.2 + 1.5 * u(rng);
    bool got = segment_subcurve_decide(e0, e1, rs, y1, y2, delta);
    bool want = exact_decide(Curve::from_values({e0, e1}),
                             subcurve(q, param_at_global(q, y1),
                                      param_at_global(q, y2)),
                             delta);
    CAPTURE(trial);
    CHECK(got == want);
  }
}

TEST_CASE("segment exit sets") {
  SUBCASE("terminus reached past the entrance") {
    RangeSuccessor rs({0.0, 4.0});
    Interval e = segment_exit_set(0.0, 4.0, rs, {0.0, 0.0}, 0.5);
    REQUIRE(!e.is_empty());
    CHECK(e.lo == doctest::Approx(0.875));
    CHECK(e.hi == doctest::Approx(1.0));
  }
  SUBCASE("terminus reached inside the entrance") {
    RangeSuccessor rs({2.0, 2.2});
    Interval e = segment_exit_set(2.0, 2.2, rs, {0.0, 1.0}, 0.5);
    REQUIRE(!e.is_empty());
    CHECK(e.lo == doctest::Approx(0.0));
    CHECK(e.hi == doctest::Approx(1.0));
  }
  SUBCASE("empty entrance and unreachable terminus") {
    RangeSuccessor rs({0.0, 1.0, 0.0});
    CHECK(segment_exit_set(0.0, 5.0, rs, {}, 0.5).is_empty());
    CHECK(segment_exit_set(0.0, 5.0, rs, {0.0, 0.5}, 0.5).is_empty());
  }
  SUBCASE("sandwiched between exact exit sets") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int done = 0;
    for (int trial = 0; trial < 400 && done < 220; ++trial) {
      Curve q = random_lattice_curve_1d(rng, 4 + trial % 13);
      RangeSuccessor rs(q.coords());
      double m = static_cast<double>(q.num_edges());
      double delta = 0.3 + 0.4 * u(rng);
      double e0 = rs.value_at(u(rng) * m) + (u(rng) - 0.5) * delta;
      IntervalSet comps = band_components(q, e0, delta);
      if (comps.empty()) continue;
      Interval c = comps[static_cast<std::size_t>(u(rng) * comps.size()) %
                         comps.size()];
      double lo = c.lo + u(rng) * 0.5 * c.length();
      Interval entrance{lo, lo + u(rng) * (c.hi - lo)};
      double e1 = u(rng) * 7.0 - 0.5;

      Interval got = segment_exit_set(e0, e1, rs, entrance, delta);
      Curve seg = Curve::from_values({e0, e1});
      auto [qlo, qhi] = value_range(rs, entrance.lo, entrance.hi);
      IntervalSet complete = exact_exit_set(seg, q, {entrance}, delta);
      IntervalSet sound =
          exact_exit_set(seg, q, {entrance}, (qhi - qlo) + 4.0 * delta);
      CAPTURE(trial);
      CHECK(covered_by(complete, {got}, 1e-7));
      if (!got.is_empty()) CHECK(covered_by({got}, sound, 1e-7));
      ++done;
    }
    CHECK(done >= 220);
  }
}

TEST_CASE("label strings of signatures") {
  Grid g{1.0, 0.0};

  SUBCASE("labels with an interior extremum") {
    Signature sig{0.0, {0, 1, 2}, {0.5, 3.5, 0.5}};
    LabelString ls = label_curve(sig, g);
    REQUIRE(ls.chars.size() == 3);
    CHECK(ls.chars[0].label == 0);
    CHECK(ls.chars[1].label == 3);
    CHECK(ls.chars[2].label == 0);
  }
  SUBCASE("all runs extremal stay put") {
    Signature sig{0.0, {0, 1, 2, 3}, {0.5, 1.5, 0.7, 3.5}};
    LabelString ls = label_curve(sig, g);
    REQUIRE(ls.chars.size() == 4);
    CHECK(ls.chars[0].label == 0);
    CHECK(ls.chars[1].label == 1);
    CHECK(ls.chars[2].label == 0);
    CHECK(ls.chars[3].label == 3);
  }
  SUBCASE("plateaus collapse into one char") {
    Signature sig{0.0, {0, 1, 2}, {0.5, 0.6, 2.5}};
    LabelString ls = label_curve(sig, g);
    REQUIRE(ls.chars.size() == 2);
    CHECK(ls.chars[0].first == 0);
    CHECK(ls.chars[0].last == 1);
    CHECK(ls.chars[1].label == 2);
  }
  SUBCASE("monotone ramps drop out") {
    Signature sig{0.0, {0, 1, 2, 3, 4}, {0.5, 1.5, 2.5, 3.5, 0.5}};
    LabelString ls = label_curve(sig, g);
    REQUIRE(ls.chars.size() == 3);
    CHECK(ls.chars[0].label == 0);
    CHECK(ls.chars[1].label == 3);
    CHECK(ls.chars[1].first == 3);
    CHECK(ls.chars[2].label == 0);
  }
  SUBCASE("values on a boundary are rejected") {
    Signature sig{0.0, {0, 1}, {0.5, 2.0}};
    CHECK_THROWS_AS(label_curve(sig, g), std::invalid_argument);
  }
}

TEST_CASE("substring equality over label alphabets") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> lab(-3, 3);
  std::vector<long long> a(160), b(200);
  for (auto& x : a) x = lab(rng);
  /* seed b with copied stretches of a so true matches exist */
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = lab(rng);
  struct Copy {
    std::size_t from, to, len;
  };
  std::vector<Copy> copies;
  for (int c = 0; c < 6; ++c) {
    std::size_t len = 5 + rng() % 30;
    std::size_t from = rng() % (a.size() - len);
    std::size_t to = rng() % (b.size() - len);
    for (std::size_t k = 0; k < len; ++k) b[to + k] = a[from + k];
    copies.push_back({from, to, len});
  }
  SubstringEq eq(a, b);
  CHECK(eq.equal(5, 0, 9, 0));
  CHECK(!eq.equal(0, 3, 0, 4));
  CHECK_THROWS_AS(eq.equal(150, 20, 0, 20), std::out_of_range);
  std::size_t hits = 0;
  for (int q = 0; q < 6000; ++q) {
    std::size_t i, j, la;
    if (q % 3 == 0) {
      /* probe inside a seeded copy, where equality should hold */
      const Copy& c = copies[static_cast<std::size_t>(q) % copies.size()];
      std::size_t off = rng() % c.len;
      la = rng() % (c.len - off);
      i = c.from + off;
      j = c.to + off;
    } else {
      la = rng() % 30;
      i = rng() % (a.size() - la);
      j = rng() % (b.size() - la);
    }
    bool want = std::equal(a.begin() + i, a.begin() + i + la, b.begin() + j);
    CHECK(eq.equal(i, la, j, la) == want);
    if (want && la > 0) ++hits;
  }
  CHECK(hits > 500);
}

TEST_CASE("label match intervals") {
  Grid g{1.0, 0.0};
  double delta = 0.05;

  SUBCASE("a curve matches itself from the start") {
    Curve p = Curve::from_values({0.5, 4.5, 1.5, 5.5, 2.5});
    LabelMatchContext ctx = make_label_match_context(p, p, g, delta);
    REQUIRE(ctx.sig_p.size() == 5);
    Interval got =
        matching_label_interval(ctx, 0, ctx.sig_p.size() - 1, 0.0);
    REQUIRE(!got.is_empty());
    CHECK(got.hi == doctest::Approx(4.0));
    CHECK(got.lo <= 4.0);
  }

  SUBCASE("entrance label mismatch yields nothing") {
    Curve p = Curve::from_values({0.5, 4.5, 1.5, 5.5, 2.5});
    LabelMatchContext ctx = make_label_match_context(p, p, g, delta);
    CHECK(matching_label_interval(ctx, 0, ctx.sig_p.size() - 1, 1.0)
              .is_empty());
  }

  SUBCASE("dense recomputation over random windows") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int windows = 0;
    for (int trial = 0; trial < 60; ++trial) {
      Curve p = cell_centered_curve(rng, 5 + trial % 4, 8);
      Curve q = cell_centered_curve(rng, 8 + trial % 7, 8);
      LabelMatchContext ctx = make_label_match_context(p, q, g, delta);
      std::size_t k = ctx.sig_p.size();
      std::size_t a = rng() % k, b = rng() % k;
      if (a > b) std::swap(a, b);
      double m = static_cast<double>(q.num_edges());
      double y = u(rng) * m;
      Interval got = matching_label_interval(ctx, a, b, y);
      ++windows;

      /* reduced labels of the window of P's signature */
      std::vector<long long> want_t;
      for (std::size_t pos = a; pos <= b; ++pos)
        want_t.push_back(g.label(ctx.sig_p.values[pos]));
      want_t = reduce_seq(want_t);

      for (int s = 0; s <= 160; ++s) {
        double yp = y + (m - y) * s / 160.0;
        if (g.boundary_distance(value_at(q, yp)) < 1e-6) continue;
        if (!got.is_empty() && (std::abs(yp - got.lo) < 1e-6 ||
                                std::abs(yp - got.hi) < 1e-6))
          continue;
        /* labels of the subcurve's tiny-delta signature: endpoints plus
           strict interior extrema */
        std::vector<long long> seq{g.label(value_at(q, y))};
        for (std::size_t i = 1; i + 1 < q.num_vertices(); ++i) {
          double t = static_cast<double>(i);
          if (t <= y || t >= yp) continue;
          double prev = i == static_cast<std::size_t>(std::ceil(y))
                            ? value_at(q, y)
                            : q.value(i - 1);
          bool up = q.value(i) > prev;
          bool down = q.value(i) > q.value(i + 1);
          if (up == down) seq.push_back(g.label(q.value(i)));
        }
        seq.push_back(g.label(value_at(q, yp)));
        bool want = reduce_seq(seq) == want_t;
        bool have = !got.is_empty() && got.lo <= yp && yp <= got.hi;
        CAPTURE(trial);
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(y);
        CAPTURE(yp);
        CHECK(have == want);
      }
    }
    CHECK(windows == 60);
  }
}

TEST_CASE("exit sets across windows with buffered interiors") {
  double delta = 0.1;
  Grid g{2.0, 1.5};  // cells centered on odd values 0.5, 2.5, ...

  SUBCASE("adjacent positions reduce to one segment") {
    Curve p = Curve::from_values({0.5, 6.5});
    Curve q = Curve::from_values({0.4, 3.0, 6.4});
    LabelMatchContext ctx = make_label_match_context(p, q, g, delta);
    REQUIRE(ctx.sig_p.size() == 2);
    Interval got = interior_good_exit_set(ctx, 0, 1, 0.0, 20.0);
    Interval want =
        segment_exit_set(0.5, 6.5, ctx.rs, {0.0, 0.0}, 2.0 * delta);
    CHECK(got.lo == doctest::Approx(want.lo));
    CHECK(got.hi == doctest::Approx(want.hi));
  }

  SUBCASE("interior vertices near a boundary are rejected") {
    Curve p = Curve::from_values({0.5, 1.55, 0.2});  // 1.55 is 0.05 from 1.5
    Curve q = Curve::from_values({0.5, 1.4, 0.2});
    LabelMatchContext ctx = make_label_match_context(p, q, g, delta);
    REQUIRE(ctx.sig_p.size() == 3);
    CHECK_THROWS_AS(interior_good_exit_set(ctx, 0, 2, 0.0, 20.0),
                    std::invalid_argument);
  }

  SUBCASE("windows sandwich between exact exit sets") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double alpha_eff = g.cell_width / delta;  // 20
    int done = 0;
    for (int trial = 0; trial < 400 && done < 120; ++trial) {
      /* P walks across cell centers, so every interior signature vertex is
         comfortably far from the boundaries of g. */
      std::size_t np = 3 + trial % 2;
      std::vector<double> pv(np);
      std::uniform_int_distribution<int> cell(0, 4);
      pv[0] = 2.0 * cell(rng) + 0.5;
      for (std::size_t i = 1; i < np; ++i) {
        double next = 2.0 * cell(rng) + 0.5;
        if (next == pv[i - 1]) next += 2.0;
        pv[i] = next;
      }
      Curve p = Curve::from_values(std::move(pv));
      Curve q = random_curve(rng, 1, 8 + trial % 8, 12.0);

      std::optional<LabelMatchContext> ctx;
      try {
        ctx.emplace(make_label_match_context(p, q, g, delta));
      } catch (const std::invalid_argument&) {
        continue;  // a Q signature value landed on a boundary
      }
      std::size_t k = ctx->sig_p.size();
      IntervalSet starts =
          band_components(q, ctx->sig_p.values.front(), delta);
      if (starts.empty()) continue;
      double z = starts[0].lo + u(rng) * starts[0].length();

      Interval got;
      try {
        got = interior_good_exit_set(*ctx, 0, k - 1, z, alpha_eff);
      } catch (const std::invalid_argument&) {
        continue;  // interior vertex of the signature was not buffered
      }
      Curve piece = Curve::from_values(
          std::vector<double>(ctx->sig_p.values.begin(),
                              ctx->sig_p.values.end()));
      IntervalSet complete = exact_exit_set(piece, q, {{z, z}}, delta);
      IntervalSet sound = exact_exit_set(piece, q, {{z, z}},
                                         (alpha_eff + 7.0) * delta);
      CAPTURE(trial);
      CHECK(covered_by(complete, {got}, 1e-7));
      if (!got.is_empty()) CHECK(covered_by({got}, sound, 1e-7));
      ++done;
    }
    CHECK(done >= 120);
  }
}

TEST_CASE("general exit sets") {
  SUBCASE("empty entrance set") {
    Curve p = Curve::from_values({0.0, 5.0});
    Curve q = Curve::from_values({0.0, 5.0});
    CHECK(general_exit_set(p, q, {}, 10.0, 0.5).empty());
  }

  SUBCASE("small alpha or zero delta fall back to the exact computation") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
      Curve p = random_lattice_curve_1d(rng, 5 + trial % 6);
      Curve q = random_lattice_curve_1d(rng, 6 + trial % 7);
      double m = static_cast<double>(q.num_edges());
      IntervalSet s{{0.0, m}};
      double delta = trial % 2 == 0 ? 0.7 : 0.0;
      double alpha = trial % 2 == 0 ? 4.0 : 12.0;
      IntervalSet got = general_exit_set(p, q, s, alpha, delta);
      IntervalSet want = exact_exit_set(p, q, s, delta);
      CAPTURE(trial);
      CHECK(covered_by(got, want, 1e-12));
      CHECK(covered_by(want, got, 1e-12));
    }
  }

  SUBCASE("approximate exit sets sandwich the exact ones") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t np = 4 + trial % 45;
      std::size_t nq = 4 + (trial * 7) % 45;
      Curve p = random_lattice_curve_1d(rng, np);
      Curve q = random_lattice_curve_1d(rng, nq);
      double alpha = trial % 2 == 0 ? 8.0 : 12.0;
      double delta = 0.2 + 0.3 * u(rng);
      double m = static_cast<double>(q.num_edges());
      IntervalSet s;
      if (trial % 3 == 0) {
        s.push_back({0.0, m});
      } else {
        double lo = u(rng) * m * 0.5;
        s.push_back({lo, lo + u(rng) * (m - lo)});
      }
      IntervalSet got = general_exit_set(p, q, s, alpha, delta);
      IntervalSet complete = exact_exit_set(p, q, s, delta);
      IntervalSet sound = exact_exit_set(p, q, s, alpha * delta);
      CAPTURE(trial);
      CHECK(covered_by(complete, got, 1e-6));
      CHECK(covered_by(got, sound, 1e-6));
    }
  }

  SUBCASE("wide cells route through the label matching") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double delta = 0.15, alpha = 27.0;
    int nonempty = 0;
    for (int trial = 0; trial < 40; ++trial) {
      /* vertex values clustered near multiples of the cell width, so the
         shifted grid buffers every signature vertex and the whole curve
         becomes a single window */
      double w = (alpha - 7.0) * delta;
      std::uniform_int_distribution<int> cell(0, 5);
      std::uniform_real_distribution<double> jitter(-0.2, 0.2);
      auto clustered = [&](std::size_t n) {
        std::vector<double> v(n);
        int c = cell(rng);
        for (double& x : v) {
          int step = 1 + static_cast<int>(rng() % 2);
          c = std::clamp(c + (rng() % 2 == 0 ? step : -step), 0, 5);
          x = c * w + jitter(rng);
        }
        return Curve::from_values(std::move(v));
      };
      Curve p = clustered(5 + trial % 4);
      Curve q = trial % 2 == 0 ? clustered(10 + trial % 7)
                               : [&] {
                                   /* near-copy of p: subdivide and perturb */
                                   std::vector<double> v;
                                   for (std::size_t i = 0;
                                        i + 1 < p.num_vertices(); ++i) {
                                     v.push_back(p.value(i) +
                                                 (u(rng) - 0.5) * delta);
                                     v.push_back((p.value(i) + p.value(i + 1)) /
                                                     2.0 +
                                                 (u(rng) - 0.5) * delta);
                                   }
                                   v.push_back(p.value(p.num_vertices() - 1) +
                                               (u(rng) - 0.5) * delta);
                                   return Curve::from_values(std::move(v));
                                 }();
      double m = static_cast<double>(q.num_edges());
      IntervalSet s{{0.0, m}};
      IntervalSet got = general_exit_set(p, q, s, alpha, delta);
      IntervalSet complete = exact_exit_set(p, q, s, delta);
      IntervalSet sound = exact_exit_set(p, q, s, alpha * delta);
      CAPTURE(trial);
      CHECK(covered_by(complete, got, 1e-6));
      CHECK(covered_by(got, sound, 1e-6));
      if (!got.empty()) ++nonempty;
    }
    CHECK(nonempty >= 10);
  }

  SUBCASE("rejects curves that are not one dimensional") {
    std::mt19937_64 rng(17);
    Curve p2 = random_curve(rng, 2, 4);
    Curve q = Curve::from_values({0.0, 1.0});
    CHECK_THROWS_AS(general_exit_set(p2, q, {{0.0, 1.0}}, 10.0, 0.5),
                    std::invalid_argument);
  }
}
