#include "frechet/decider.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "frechet/exitsets.hpp"
#include "frechet/freespace.hpp"
#include "frechet/interval.hpp"
#include "frechet/oracle.hpp"
#include "frechet/smoothing.hpp"

namespace frechet {

namespace {

std::size_t short_pieces_1d(const Curve& c, double threshold) {
  MonotonePieceDecomposition pieces = monotone_pieces(c);
  std::size_t count = 0;
  for (std::size_t k = 0; k + 1 < pieces.vertices.size(); ++k) {
    double span = std::abs(c.value(pieces.vertices[k + 1]) -
                           c.value(pieces.vertices[k]));
    if (span <= threshold) ++count;
  }
  return count;
}

/* {y in [ya, yb] : |Q(y) - v| <= delta} as an interval union, one band
   query per edge. Edges of a collapsed curve are its monotone pieces, so
   band_params applies edge by edge. */
IntervalSet free_column(const Curve& q, std::size_t ya, std::size_t yb,
                        double v, double delta) {
  IntervalSet out;
  for (std::size_t j = ya; j < yb; ++j) {
    Interval w = band_params(q, 0, j, j + 1, v - delta, v + delta);
    if (!w.is_empty()) out.push_back(w);
  }
  return normalized(std::move(out));
}

double endpoint_gap(const Curve& P, const Curve& Q) {
  return std::max(linf_dist(P.vertex(0), Q.vertex(0)),
                  linf_dist(P.vertex(P.num_vertices() - 1),
                            Q.vertex(Q.num_vertices() - 1)));
}

/* Top-right corners of exit intervals land exactly on the boundary value
   in exact arithmetic; give rounding a hair of room. */
constexpr double kCornerTol = 1e-9;

}  // namespace

DecisionOutcome approx_decide_nd(const Curve& P, const Curve& Q, double alpha,
                                 double delta) {
  if (P.dim() != Q.dim())
    throw std::invalid_argument("approx_decide_nd: dimension mismatch");
  std::size_t n = std::max(P.num_vertices(), Q.num_vertices());
  if (!(alpha >= 1.0 && alpha <= static_cast<double>(n)))
    throw std::invalid_argument("approx_decide_nd: alpha out of range");
  if (!(delta >= 0.0))
    throw std::invalid_argument("approx_decide_nd: delta must be nonnegative");

  DecisionOutcome out;
  out.bound_factor = 1.0 + 2.0 * alpha;

  auto [ps, qs] = simplify_nd(P, Q, alpha, delta);
  MonotonePieceDecomposition pp = monotone_pieces(ps);
  MonotonePieceDecomposition qp = monotone_pieces(qs);
  std::size_t ni = pp.num_pieces(), nj = qp.num_pieces();

  // A point (x, 0) on the bottom boundary is reachable exactly when P stays
  // within delta of Q's start on the whole prefix [0, x]; same on the left.
  Interval bottom0 = free_prefix_against_point(ps, qs.vertex(0), delta);
  Interval left0 = free_prefix_against_point(qs, ps.vertex(0), delta);
  if (bottom0.is_empty()) return out;  // start vertices already too far apart

  std::vector<Interval> right_prev(nj);
  for (std::size_t j = 0; j < nj; ++j) {
    right_prev[j] =
        intersect(left0, {static_cast<double>(qp.vertices[j]),
                          static_cast<double>(qp.vertices[j + 1])});
  }

  std::vector<std::size_t> row_visits(nj, 0);
  for (std::size_t i = 0; i < ni; ++i) {
    std::size_t pa = pp.vertices[i], pb = pp.vertices[i + 1];
    Interval carry = intersect(bottom0, {static_cast<double>(pa),
                                         static_cast<double>(pb)});
    std::vector<Interval> right_cur(nj);
    std::size_t col_visits = 0;
    for (std::size_t j = 0; j < nj; ++j) {
      Interval enter_bottom = carry;
      Interval enter_left = right_prev[j];
      carry = {};
      if (enter_bottom.is_empty() && enter_left.is_empty()) continue;
      BlockExits ex =
          block_propagate(ps, pa, pb, qs, qp.vertices[j], qp.vertices[j + 1],
                          enter_bottom, enter_left, delta);
      carry = ex.top;
      right_cur[j] = ex.right;
      ++out.blocks_visited;
      ++col_visits;
      ++row_visits[j];
    }
    out.max_col_visits = std::max(out.max_col_visits, col_visits);
    right_prev = std::move(right_cur);
  }
  out.max_row_visits =
      *std::max_element(row_visits.begin(), row_visits.end());

  double corner_y = static_cast<double>(qs.num_vertices() - 1);
  out.yes = right_prev.back().hi >= corner_y - kCornerTol;
  return out;
}

double approx_frechet(const Curve& P, const Curve& Q, double alpha,
                      double eps_search) {
  if (P.dim() != Q.dim())
    throw std::invalid_argument("approx_frechet: dimension mismatch");
  if (!(alpha >= 1.0))
    throw std::invalid_argument("approx_frechet: alpha must be >= 1");
  if (!(eps_search > 0.0 && eps_search <= 1.0))
    throw std::invalid_argument("approx_frechet: eps_search not in (0, 1]");
  if (exact_decide(P, Q, 0.0)) return 0.0;

  std::size_t n = std::max(P.num_vertices(), Q.num_vertices());
  double a = std::min(alpha, static_cast<double>(n));
  double factor = 1.0 + 2.0 * a;
  double step = 1.0 + eps_search;
  double lo = endpoint_gap(P, Q);
  double up = uniform_matching_cost(P, Q);

  if (lo > 0.0) {
    // The distance is at least lo and at most up, so the grid meets a
    // threshold >= d_F (forced accept) before running past up.
    for (double d = lo; d <= up * step; d *= step)
      if (approx_decide_nd(P, Q, a, d).yes) return factor * d;
    return factor * up;
  }
  // Coincident endpoints but positive distance: walk down from the upper
  // bound (always accepted) until the first rejection; the last accepting
  // threshold is then within one grid step of the distance.
  double prev = up;
  for (double d = up / step; d > 0.0; d /= step) {
    if (!approx_decide_nd(P, Q, a, d).yes) return factor * prev;
    prev = d;
  }
  return 0.0;  // threshold underflowed: distance is numerically zero
}

std::vector<ParamRect> rectangle_cover(std::size_t nx, std::size_t ny,
                                       std::size_t width) {
  if (width == 0)
    throw std::invalid_argument("rectangle_cover: width must be positive");
  std::vector<ParamRect> out;
  double w = static_cast<double>(width);
  for (std::size_t xa = 0; xa < nx; xa += width) {
    std::size_t xb = std::min(xa + width, nx);
    double mid = 0.5 * (static_cast<double>(xa) + static_cast<double>(xb));
    double lo = std::clamp(std::floor(mid - 1.5 * w), 0.0,
                           static_cast<double>(ny));
    double hi = std::clamp(std::ceil(mid + 1.5 * w), 0.0,
                           static_cast<double>(ny));
    out.push_back({xa, xb, static_cast<std::size_t>(lo),
                   static_cast<std::size_t>(hi)});
  }
  return out;
}

DecisionOutcome fast_decide_1d(const Curve& P, const Curve& Q, double alpha,
                               double delta) {
  if (P.dim() != 1 || Q.dim() != 1)
    throw std::invalid_argument("fast_decide_1d: curves must be 1D");
  std::size_t n = std::max(P.num_vertices(), Q.num_vertices());
  if (!(alpha >= 1.0 &&
        alpha <= std::cbrt(static_cast<double>(n)) + 1e-9))
    throw std::invalid_argument("fast_decide_1d: alpha out of range");
  if (!(delta >= 0.0))
    throw std::invalid_argument("fast_decide_1d: delta must be nonnegative");

  DecisionOutcome out;
  out.bound_factor = 3.0 * alpha;

  auto [ps, qs] = simplify_nd(P, Q, alpha, delta);
  // Collapsing makes every edge a maximal monotone piece, so cell indices
  // measure pieces and the diagonal band bound applies to the cell grid.
  Curve p = collapse_degenerate_1d(ps);
  Curve q = collapse_degenerate_1d(qs);

  if (std::abs(p.value(0) - q.value(0)) > delta) return out;

  std::size_t shorts =
      short_pieces_1d(p, 2.0 * delta) + short_pieces_1d(q, 2.0 * delta);
  std::size_t band = 2 * shorts + 1;
  std::size_t nx = p.num_edges(), ny = q.num_edges();
  std::vector<ParamRect> cover = rectangle_cover(nx, ny, band);

  IntervalSet S = {{0.0, 0.0}};
  for (std::size_t r = 0; r < cover.size(); ++r) {
    const ParamRect& cur = cover[r];
    // An empty y-span means the band has no cells in these columns, so no
    // path confined to it can cross; with no entrances nothing can either.
    if (cur.ya >= cur.yb || S.empty()) return out;
    ++out.blocks_visited;
    out.entrance_components += S.size();

    Curve pi = subcurve(p, vertex_param(p, cur.xa), vertex_param(p, cur.xb));
    Curve qi = subcurve(q, vertex_param(q, cur.ya), vertex_param(q, cur.yb));
    IntervalSet exits = general_exit_set(pi, qi, S, alpha, delta);

    if (r + 1 == cover.size()) {
      double corner = static_cast<double>(ny) - static_cast<double>(cur.ya);
      for (const Interval& e : exits) {
        if (e.lo <= corner + kCornerTol && e.hi >= corner - kCornerTol) {
          out.yes = true;
          break;
        }
      }
      return out;
    }

    const ParamRect& next = cover[r + 1];
    if (next.ya >= next.yb) return out;
    // Shared vertical edge x = cur.xb sits on a vertex of p; carry across
    // only the exit portions that are free there and inside the next
    // rectangle's rows.
    IntervalSet free_cut =
        free_column(q, next.ya, next.yb, p.value(cur.xb), delta);
    for (Interval& e : exits) {
      e.lo += static_cast<double>(cur.ya);
      e.hi += static_cast<double>(cur.ya);
    }
    S.clear();
    for (const Interval& v : set_intersect(exits, free_cut)) {
      S.push_back({v.lo - static_cast<double>(next.ya),
                   v.hi - static_cast<double>(next.ya)});
    }
  }
  return out;  // not reached: the loop returns at the last rectangle
}

double approx_frechet_1d(const Curve& P, const Curve& Q, double alpha,
                         double eps_search) {
  if (P.dim() != 1 || Q.dim() != 1)
    throw std::invalid_argument("approx_frechet_1d: curves must be 1D");
  if (!(alpha >= 1.0))
    throw std::invalid_argument("approx_frechet_1d: alpha must be >= 1");
  if (!(eps_search > 0.0 && eps_search <= 1.0))
    throw std::invalid_argument(
        "approx_frechet_1d: eps_search not in (0, 1]");
  if (exact_decide(P, Q, 0.0)) return 0.0;

  double n = static_cast<double>(
      std::max(P.num_vertices(), Q.num_vertices()));
  double up = uniform_matching_cost(P, Q);
  double step = 1.0 + eps_search;

  if (alpha >= 6.0) {
    double a = std::min(alpha / 6.0, std::cbrt(n));
    double bound = 3.0 * a;
    double lo = endpoint_gap(P, Q);
    if (lo > 0.0) {
      for (double d = lo; d <= up * step; d *= step)
        if (fast_decide_1d(P, Q, a, d).yes) return bound * d;
      return bound * up;
    }
    double prev = up;
    for (double d = up / step; d > 0.0; d /= step) {
      if (!fast_decide_1d(P, Q, a, d).yes) return bound * prev;
      prev = d;
    }
    return 0.0;
  }

  // alpha < 6 leaves no slack for the 3*alpha decider; refine an exact
  // bracket to relative width eps_search instead. decide(up) always holds,
  // and a rejected threshold exists because the distance is positive.
  if (!(up > 0.0)) return 0.0;
  double hi = up, lo = 0.0;
  for (double d = up * 0.25; d > 0.0; d *= 0.25) {
    if (exact_decide(P, Q, d)) {
      hi = d;
    } else {
      lo = d;
      break;
    }
  }
  if (lo == 0.0) return 0.0;  // distance below floating-point resolution
  while (hi > lo * (1.0 + eps_search)) {
    double mid = std::sqrt(lo * hi);
    if (exact_decide(P, Q, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace frechet
