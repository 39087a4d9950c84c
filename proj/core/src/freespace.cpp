#include "frechet/freespace.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace frechet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

/* Fractions t in [0,1] along the segment a->b whose point lies within delta
   of `fixed` in the L-infinity norm. */
Interval side_interval(std::span<const double> fixed, std::span<const double> a,
                       std::span<const double> b, double delta) {
  Interval out{0.0, 1.0};
  for (std::size_t k = 0; k < fixed.size(); ++k) {
    double d = b[k] - a[k];
    double lo = fixed[k] - delta - a[k];
    double hi = fixed[k] + delta - a[k];
    if (d == 0.0) {
      if (lo > 0.0 || hi < 0.0) return {};
    } else if (d > 0.0) {
      out = intersect(out, {lo / d, hi / d});
    } else {
      out = intersect(out, {hi / d, lo / d});
    }
    if (out.is_empty()) return {};
  }
  return out;
}

void check_pair(const Curve& P, const Curve& Q, double delta) {
  if (P.dim() != Q.dim()) throw std::invalid_argument("dimension mismatch");
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
}

/* One step of cell-level propagation: given the reachable intervals on the
   bottom and left sides (already clipped to the cell's free space), the
   reachable intervals on the top and right sides. Cell free space is
   convex, so a point (x', y') on an outgoing side is reachable iff some
   entry point (x, y) has x <= x' and y <= y'. */
void propagate_cell(const CellFreeSpace& cell, const Interval& B,
                    const Interval& L, Interval& top, Interval& right) {
  if (!L.is_empty())
    top = cell.top;
  else if (!B.is_empty())
    top = intersect(cell.top, {B.lo, kInf});
  else
    top = {};
  if (!B.is_empty())
    right = cell.right;
  else if (!L.is_empty())
    right = intersect(cell.right, {L.lo, kInf});
  else
    right = {};
}

bool is_monotone_range(const Curve& C, std::size_t a, std::size_t b) {
  for (std::size_t axis = 0; axis < C.dim(); ++axis) {
    int dir = 0;
    for (std::size_t i = a; i < b; ++i) {
      int s = sign_of(C.coord(i + 1, axis) - C.coord(i, axis));
      if (s == 0) continue;
      if (dir != 0 && s != dir) return false;
      dir = s;
    }
  }
  return true;
}

/* Edge of C holding the points immediately to the given side of abscissa x
   (edge units), clamped into the vertex range [lo_v, hi_v]. */
std::size_t edge_on_side(double x, int side, std::size_t lo_v,
                         std::size_t hi_v) {
  double f = std::floor(x);
  long long e = static_cast<long long>(f);
  if (side < 0 && x == f) e -= 1;
  e = std::max<long long>(e, static_cast<long long>(lo_v));
  e = std::min<long long>(e, static_cast<long long>(hi_v) - 1);
  return static_cast<std::size_t>(e);
}

/* Emptiness test for the vertical free-space cut
   {y in [qa, qb] : |P(x) - Q(y)| <= delta} at abscissa x, or at its
   one-sided limit x-0 / x+0 when side is -1 / +1. */
bool cut_nonempty(const Curve& P, std::size_t pa, std::size_t pb,
                  const Curve& Q, std::size_t qa, std::size_t qb, double x,
                  int side, double delta) {
  double lo = static_cast<double>(qa), hi = static_cast<double>(qb);
  for (std::size_t axis = 0; axis < P.dim(); ++axis) {
    double v = coord_at(P, axis, x);
    int perturb = 0;
    if (side != 0) {
      std::size_t e = edge_on_side(x, side, pa, pb);
      perturb = side * sign_of(P.coord(e + 1, axis) - P.coord(e, axis));
    }
    Interval y =
        band_params(Q, axis, qa, qb, v - delta, v + delta, perturb);
    if (y.is_empty()) return false;
    lo = std::max(lo, y.lo);
    hi = std::min(hi, y.hi);
    if (lo > hi) return false;
  }
  return true;
}

/* Whether every vertical cut of the block's free space is nonempty for
   x in [x1, x2]. The per-coordinate cut bounds are piecewise linear in x
   with breakpoints only at P vertices and where P_c(x) -+ delta crosses a
   Q_c vertex value, so it suffices to evaluate cuts (and their one-sided
   limits) at those critical abscissas. */
bool cuts_nonempty_on_range(const Curve& P, std::size_t pa, std::size_t pb,
                            const Curve& Q, std::size_t qa, std::size_t qb,
                            double x1, double x2, double delta) {
  if (x1 > x2) std::swap(x1, x2);
  std::vector<double> xs{x1, x2};
  for (double k = std::ceil(x1); k <= x2; k += 1.0)
    if (k > x1 && k < x2) xs.push_back(k);
  for (std::size_t axis = 0; axis < P.dim(); ++axis) {
    for (std::size_t k = qa; k <= qb; ++k) {
      double v = Q.coord(k, axis);
      for (double target : {v - delta, v + delta}) {
        Interval hit = band_params(P, axis, pa, pb, target, target, 0);
        if (hit.is_empty()) continue;
        for (double x : {hit.lo, hit.hi})
          if (x > x1 && x < x2) xs.push_back(x);
      }
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) {
    if (!cut_nonempty(P, pa, pb, Q, qa, qb, x, 0, delta)) return false;
    if (x > x1 && !cut_nonempty(P, pa, pb, Q, qa, qb, x, -1, delta))
      return false;
    if (x < x2 && !cut_nonempty(P, pa, pb, Q, qa, qb, x, +1, delta))
      return false;
  }
  return true;
}

}  // namespace

CellFreeSpace cell_free_space(std::span<const double> p_from,
                              std::span<const double> p_to,
                              std::span<const double> q_from,
                              std::span<const double> q_to, double delta) {
  if (p_from.size() != q_from.size())
    throw std::invalid_argument("dimension mismatch");
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  CellFreeSpace cell;
  cell.bottom = side_interval(q_from, p_from, p_to, delta);
  cell.top = side_interval(q_to, p_from, p_to, delta);
  cell.left = side_interval(p_from, q_from, q_to, delta);
  cell.right = side_interval(p_to, q_from, q_to, delta);
  return cell;
}

bool exact_decide(const Curve& P, const Curve& Q, double delta) {
  check_pair(P, Q, delta);
  const std::size_t ne_p = P.num_edges(), ne_q = Q.num_edges();

  // Reachable prefix of the diagram's bottom boundary.
  std::vector<Interval> bot(ne_p);
  bool alive = linf_dist(P.vertex(0), Q.vertex(0)) <= delta;
  for (std::size_t i = 0; i < ne_p; ++i) {
    Interval f = side_interval(Q.vertex(0), P.vertex(i), P.vertex(i + 1), delta);
    if (alive && f.contains(0.0)) {
      bot[i] = {0.0, f.hi};
      alive = f.hi >= 1.0;
    } else {
      bot[i] = {};
      alive = false;
    }
  }

  bool left_alive = linf_dist(P.vertex(0), Q.vertex(0)) <= delta;
  for (std::size_t j = 0; j < ne_q; ++j) {
    Interval lf = side_interval(P.vertex(0), Q.vertex(j), Q.vertex(j + 1), delta);
    Interval left;
    if (left_alive && lf.contains(0.0)) {
      left = {0.0, lf.hi};
      left_alive = lf.hi >= 1.0;
    } else {
      left_alive = false;
    }
    for (std::size_t i = 0; i < ne_p; ++i) {
      CellFreeSpace cell = cell_free_space(P.vertex(i), P.vertex(i + 1),
                                           Q.vertex(j), Q.vertex(j + 1), delta);
      Interval B = intersect(bot[i], cell.bottom);
      Interval L = intersect(left, cell.left);
      propagate_cell(cell, B, L, bot[i], left);
    }
  }
  return bot[ne_p - 1].contains(1.0);
}

IntervalSet exact_reachable_right_boundary(const Curve& P, const Curve& Q,
                                           const IntervalSet& S,
                                           double delta) {
  check_pair(P, Q, delta);
  IntervalSet entries = normalized(S);
  const std::size_t ne_p = P.num_edges(), ne_q = Q.num_edges();
  std::vector<Interval> bot(ne_p);  // no entry along the bottom boundary
  IntervalSet result;
  bool carry = false;  // reached the top vertex of the previous left side
  for (std::size_t j = 0; j < ne_q; ++j) {
    Interval lf = side_interval(P.vertex(0), Q.vertex(j), Q.vertex(j + 1), delta);
    double jj = static_cast<double>(j);
    double start = kInf;
    if (carry && lf.contains(0.0)) start = 0.0;
    for (const Interval& s : entries) {
      Interval frac = intersect(Interval{s.lo - jj, s.hi - jj}, lf);
      frac = intersect(frac, {0.0, 1.0});
      if (!frac.is_empty()) start = std::min(start, frac.lo);
    }
    Interval left = start <= lf.hi ? Interval{start, lf.hi} : Interval{};
    carry = !left.is_empty() && left.hi >= 1.0;
    for (std::size_t i = 0; i < ne_p; ++i) {
      CellFreeSpace cell = cell_free_space(P.vertex(i), P.vertex(i + 1),
                                           Q.vertex(j), Q.vertex(j + 1), delta);
      Interval B = intersect(bot[i], cell.bottom);
      Interval L = intersect(left, cell.left);
      propagate_cell(cell, B, L, bot[i], left);
    }
    if (!left.is_empty()) result.push_back({jj + left.lo, jj + left.hi});
  }
  return normalized(result);
}

Interval band_params(const Curve& C, std::size_t axis, std::size_t lo_v,
                     std::size_t hi_v, double band_lo, double band_hi,
                     int perturb) {
  assert(lo_v < hi_v && hi_v < C.num_vertices());
  auto val = [&](std::size_t k) { return C.coord(k, axis); };
  auto interp = [&](std::size_t e, double target) {
    return static_cast<double>(e) +
           (target - val(e)) / (val(e + 1) - val(e));
  };
  // first index in [lo_v, hi_v] satisfying a prefix-false/suffix-true
  // predicate, or hi_v + 1 if none
  auto first_sat = [&](auto pred) -> std::size_t {
    if (pred(lo_v)) return lo_v;
    if (!pred(hi_v)) return hi_v + 1;
    std::size_t a = lo_v, b = hi_v;
    while (b - a > 1) {
      std::size_t mid = a + (b - a) / 2;
      (pred(mid) ? b : a) = mid;
    }
    return b;
  };
  // last index satisfying a prefix-true/suffix-false predicate, or
  // lo_v - 1 (as hi_v + 1 sentinel avoided: return pair found/none)
  auto last_sat = [&](auto pred, bool& found) -> std::size_t {
    if (pred(hi_v)) {
      found = true;
      return hi_v;
    }
    if (!pred(lo_v)) {
      found = false;
      return 0;
    }
    std::size_t a = lo_v, b = hi_v;
    while (b - a > 1) {
      std::size_t mid = a + (b - a) / 2;
      (pred(mid) ? a : b) = mid;
    }
    found = true;
    return a;
  };

  bool asc = val(hi_v) >= val(lo_v);
  double y_lo, y_hi;
  if (asc) {
    bool enter_strict = perturb > 0, leave_strict = perturb < 0;
    std::size_t ke = first_sat([&](std::size_t k) {
      return enter_strict ? val(k) > band_lo : val(k) >= band_lo;
    });
    if (ke > hi_v) return {};
    bool found = false;
    std::size_t kl = last_sat(
        [&](std::size_t k) {
          return leave_strict ? val(k) < band_hi : val(k) <= band_hi;
        },
        found);
    if (!found) return {};
    y_lo = ke == lo_v ? static_cast<double>(lo_v) : interp(ke - 1, band_lo);
    y_hi = kl == hi_v ? static_cast<double>(hi_v) : interp(kl, band_hi);
  } else {
    bool enter_strict = perturb < 0, leave_strict = perturb > 0;
    std::size_t ke = first_sat([&](std::size_t k) {
      return enter_strict ? val(k) < band_hi : val(k) <= band_hi;
    });
    if (ke > hi_v) return {};
    bool found = false;
    std::size_t kl = last_sat(
        [&](std::size_t k) {
          return leave_strict ? val(k) > band_lo : val(k) >= band_lo;
        },
        found);
    if (!found) return {};
    y_lo = ke == lo_v ? static_cast<double>(lo_v) : interp(ke - 1, band_hi);
    y_hi = kl == hi_v ? static_cast<double>(hi_v) : interp(kl, band_lo);
  }
  return y_lo <= y_hi ? Interval{y_lo, y_hi} : Interval{};
}

BlockExits block_propagate(const Curve& P, std::size_t pa, std::size_t pb,
                           const Curve& Q, std::size_t qa, std::size_t qb,
                           const Interval& enter_bottom,
                           const Interval& enter_left, double delta) {
  check_pair(P, Q, delta);
  if (pa >= pb || pb >= P.num_vertices() || qa >= qb || qb >= Q.num_vertices())
    throw std::invalid_argument("invalid block vertex range");
  if (!is_monotone_range(P, pa, pb) || !is_monotone_range(Q, qa, qb))
    throw std::invalid_argument("block pieces must be coordinate-monotone");

  // Free interval on a horizontal block side (band search along P against a
  // pinned Q vertex), and on a vertical side (along Q against a P vertex).
  auto side_on_p = [&](std::size_t q_vertex) {
    Interval out{static_cast<double>(pa), static_cast<double>(pb)};
    for (std::size_t axis = 0; axis < P.dim() && !out.is_empty(); ++axis) {
      double v = Q.coord(q_vertex, axis);
      out = intersect(out,
                      band_params(P, axis, pa, pb, v - delta, v + delta, 0));
    }
    return out;
  };
  auto side_on_q = [&](std::size_t p_vertex) {
    Interval out{static_cast<double>(qa), static_cast<double>(qb)};
    for (std::size_t axis = 0; axis < Q.dim() && !out.is_empty(); ++axis) {
      double v = P.coord(p_vertex, axis);
      out = intersect(out,
                      band_params(Q, axis, qa, qb, v - delta, v + delta, 0));
    }
    return out;
  };

  Interval b_free = side_on_p(qa);
  Interval t_free = side_on_p(qb);
  Interval l_free = side_on_q(pa);
  Interval r_free = side_on_q(pb);

  Interval eb = intersect(enter_bottom, b_free);
  Interval el = intersect(enter_left, l_free);
  if (eb.is_empty() && el.is_empty()) return {};

  // x-projections of the components holding each side's free interval; the
  // two vertical sides project to single abscissas.
  Interval bx = b_free;
  Interval tx = t_free;
  Interval lx = l_free.is_empty()
                    ? Interval{}
                    : Interval{static_cast<double>(pa), static_cast<double>(pa)};
  Interval rx = r_free.is_empty()
                    ? Interval{}
                    : Interval{static_cast<double>(pb), static_cast<double>(pb)};

  // Same-component test by the disjoint-projection property: components of
  // an ortho-convex set project to disjoint x-intervals, and maximal
  // nonempty-cut ranges correspond exactly to components.
  auto same_component = [&](const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return false;
    if (overlaps(a, b)) return true;
    double gap_lo = a.hi < b.lo ? a.hi : b.hi;
    double gap_hi = a.hi < b.lo ? b.lo : a.lo;
    return cuts_nonempty_on_range(P, pa, pb, Q, qa, qb, gap_lo, gap_hi, delta);
  };

  BlockExits out;
  if (!el.is_empty() && same_component(lx, tx))
    out.top = t_free;
  else if (!eb.is_empty() && same_component(bx, tx))
    out.top = intersect(t_free, {eb.lo, kInf});
  if (!eb.is_empty() && same_component(bx, rx))
    out.right = r_free;
  else if (!el.is_empty() && same_component(lx, rx))
    out.right = intersect(r_free, {el.lo, kInf});
  return out;
}

Interval free_prefix_against_point(const Curve& C,
                                   std::span<const double> anchor,
                                   double delta) {
  if (C.dim() != anchor.size())
    throw std::invalid_argument("dimension mismatch");
  if (linf_dist(C.vertex(0), anchor) > delta) return {};
  double x_hi = 0.0;
  for (std::size_t e = 0; e < C.num_edges(); ++e) {
    Interval f = side_interval(anchor, C.vertex(e), C.vertex(e + 1), delta);
    if (f.is_empty() || !f.contains(0.0)) break;
    x_hi = static_cast<double>(e) + f.hi;
    if (f.hi < 1.0) break;
  }
  return {0.0, x_hi};
}

std::vector<DiagramCell> diagram_cells(const Curve& P, const Curve& Q,
                                       double delta) {
  check_pair(P, Q, delta);
  const std::size_t ne_p = P.num_edges(), ne_q = Q.num_edges();
  std::vector<DiagramCell> cells;
  cells.reserve(ne_p * ne_q);
  std::vector<Interval> bot(ne_p);
  bool alive = linf_dist(P.vertex(0), Q.vertex(0)) <= delta;
  for (std::size_t i = 0; i < ne_p; ++i) {
    Interval f = side_interval(Q.vertex(0), P.vertex(i), P.vertex(i + 1), delta);
    if (alive && f.contains(0.0)) {
      bot[i] = {0.0, f.hi};
      alive = f.hi >= 1.0;
    } else {
      bot[i] = {};
      alive = false;
    }
  }
  bool left_alive = linf_dist(P.vertex(0), Q.vertex(0)) <= delta;
  for (std::size_t j = 0; j < ne_q; ++j) {
    Interval lf = side_interval(P.vertex(0), Q.vertex(j), Q.vertex(j + 1), delta);
    Interval left;
    if (left_alive && lf.contains(0.0)) {
      left = {0.0, lf.hi};
      left_alive = lf.hi >= 1.0;
    } else {
      left_alive = false;
    }
    for (std::size_t i = 0; i < ne_p; ++i) {
      CellFreeSpace cell = cell_free_space(P.vertex(i), P.vertex(i + 1),
                                           Q.vertex(j), Q.vertex(j + 1), delta);
      Interval B = intersect(bot[i], cell.bottom);
      Interval L = intersect(left, cell.left);
      cells.push_back({i, j, cell, B, L});
      propagate_cell(cell, B, L, bot[i], left);
    }
  }
  return cells;
}

}  // namespace frechet
