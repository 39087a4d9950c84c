#include "frechet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frechet {

namespace {

Point point_at_global(const Curve& c, double g) {
  return eval(c, param_at_global(c, g));
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

/* Indices of the monotone skeleton of a raw 1D value sequence: endpoints
   plus strict extrema, keeping the last vertex of any plateau run. Same
   greedy rule as monotone_pieces, restated here so the oracle does not
   share code with the implementation it checks. */
std::vector<std::size_t> skeleton_of(const std::vector<double>& w) {
  std::vector<std::size_t> keep{0};
  int dir = 0;
  for (std::size_t e = 0; e + 1 < w.size(); ++e) {
    int s = sign_of(w[e + 1] - w[e]);
    if (s == 0) continue;
    if (dir != 0 && s != dir) keep.push_back(e);
    dir = s;
  }
  keep.push_back(w.size() - 1);
  return keep;
}

}  // namespace

double uniform_matching_cost(const Curve& P, const Curve& Q) {
  if (P.dim() != Q.dim()) throw std::invalid_argument("dimension mismatch");
  const double np = static_cast<double>(P.num_edges());
  const double mq = static_cast<double>(Q.num_edges());
  double cost = 0.0;
  for (std::size_t i = 0; i < P.num_vertices(); ++i) {
    Point q = point_at_global(Q, static_cast<double>(i) * mq / np);
    cost = std::max(cost, linf_dist(P.vertex(i), q));
  }
  for (std::size_t j = 0; j < Q.num_vertices(); ++j) {
    Point p = point_at_global(P, static_cast<double>(j) * np / mq);
    cost = std::max(cost, linf_dist(p, Q.vertex(j)));
  }
  return cost;
}

double exact_frechet(const Curve& P, const Curve& Q, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  double lo = std::max(linf_dist(P.vertex(0), Q.vertex(0)),
                       linf_dist(P.vertex(P.num_vertices() - 1),
                                 Q.vertex(Q.num_vertices() - 1)));
  if (exact_decide(P, Q, lo)) return lo;
  double hi = uniform_matching_cost(P, Q);
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // double precision exhausted
    (exact_decide(P, Q, mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

IntervalSet exact_exit_set(const Curve& P, const Curve& Q, const IntervalSet& S,
                           double delta) {
  return exact_reachable_right_boundary(P, Q, S, delta);
}

double brute_death_time(const Curve& P1d, std::size_t i, double tol) {
  (void)tol;
  if (P1d.dim() != 1) throw std::invalid_argument("curve must be 1D");
  if (i == 0 || i + 1 >= P1d.num_vertices())
    throw std::invalid_argument("endpoint death times are infinite");

  std::vector<double> w(P1d.coords());
  std::vector<std::size_t> orig(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) orig[k] = k;

  auto collapse = [&]() {
    std::vector<std::size_t> keep = skeleton_of(w);
    std::vector<double> w2;
    std::vector<std::size_t> o2;
    for (std::size_t k : keep) {
      w2.push_back(w[k]);
      o2.push_back(orig[k]);
    }
    w = std::move(w2);
    orig = std::move(o2);
  };

  collapse();
  double eps = 0.0;
  auto alive = [&]() {
    return std::find(orig.begin(), orig.end(), i) != orig.end();
  };
  if (!alive()) return 0.0;

  while (w.size() > 2) {
    double mlen = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
      mlen = std::min(mlen, std::abs(w[k + 1] - w[k]));
    double step = 0.5 * mlen;
    eps += step;
    // Endpoints slide toward their neighbor, interior extrema toward the
    // curve: every piece shrinks by 2 * step, the minimum ones to length 0.
    std::vector<double> moved(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
      int dir;
      if (k == 0)
        dir = sign_of(w[1] - w[0]);
      else if (k + 1 == w.size())
        dir = sign_of(w[k - 1] - w[k]);
      else
        dir = w[k] > w[k - 1] ? -1 : +1;
      moved[k] = w[k] + dir * step;
    }
    w = std::move(moved);
    collapse();
    if (!alive()) return eps;
  }
  return eps;  // unreachable for interior i: it dies before the skeleton
               // shrinks to the two endpoints
}

BlockExitSets brute_block_exits(const Curve& P, std::size_t pa, std::size_t pb,
                                const Curve& Q, std::size_t qa, std::size_t qb,
                                const Interval& enter_bottom,
                                const Interval& enter_left, double delta) {
  if (P.dim() != Q.dim()) throw std::invalid_argument("dimension mismatch");
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  BlockExitSets out;
  std::vector<Interval> bot(pb - pa);
  for (std::size_t e = pa; e < pb; ++e) {
    double ee = static_cast<double>(e);
    CellFreeSpace cell = cell_free_space(P.vertex(e), P.vertex(e + 1),
                                         Q.vertex(qa), Q.vertex(qa + 1), delta);
    bot[e - pa] = intersect(
        Interval{enter_bottom.lo - ee, enter_bottom.hi - ee}, cell.bottom);
  }
  for (std::size_t j = qa; j < qb; ++j) {
    double jj = static_cast<double>(j);
    CellFreeSpace first = cell_free_space(P.vertex(pa), P.vertex(pa + 1),
                                          Q.vertex(j), Q.vertex(j + 1), delta);
    Interval left = intersect(Interval{enter_left.lo - jj, enter_left.hi - jj},
                              first.left);
    for (std::size_t e = pa; e < pb; ++e) {
      CellFreeSpace cell = cell_free_space(P.vertex(e), P.vertex(e + 1),
                                           Q.vertex(j), Q.vertex(j + 1), delta);
      Interval B = bot[e - pa];
      Interval L = intersect(left, cell.left);
      Interval top, right;
      if (!L.is_empty())
        top = cell.top;
      else if (!B.is_empty())
        top = intersect(cell.top, {B.lo, std::numeric_limits<double>::infinity()});
      if (!B.is_empty())
        right = cell.right;
      else if (!L.is_empty())
        right = intersect(cell.right,
                          {L.lo, std::numeric_limits<double>::infinity()});
      bot[e - pa] = top;
      left = right;
      if (j + 1 == qb && !top.is_empty())
        out.top.push_back({static_cast<double>(e) + top.lo,
                           static_cast<double>(e) + top.hi});
    }
    if (!left.is_empty())
      out.right.push_back({jj + left.lo, jj + left.hi});
  }
  out.top = normalized(out.top);
  out.right = normalized(out.right);
  return out;
}

}  // namespace frechet
