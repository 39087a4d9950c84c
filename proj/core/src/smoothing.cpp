#include "frechet/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace frechet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = CartesianTree::none;

// Breakpoint flags plus max/min classification of the interior breakpoints.
// A plateau's last vertex acts as the extremum; the other plateau vertices
// count as degenerate, mirroring what collapse_degenerate_1d keeps.
struct ExtremumInfo {
  std::vector<char> is_breakpoint;
  std::vector<char> is_max;  // meaningful only where is_breakpoint is set
};

ExtremumInfo classify_extrema(const Curve& curve) {
  const std::size_t n = curve.num_vertices();
  ExtremumInfo info{std::vector<char>(n, 0), std::vector<char>(n, 0)};
  MonotonePieceDecomposition pieces = monotone_pieces(curve);
  for (std::size_t b : pieces.vertices) info.is_breakpoint[b] = 1;
  for (std::size_t k = 1; k + 1 < pieces.vertices.size(); ++k) {
    std::size_t i = pieces.vertices[k];
    std::size_t prev = pieces.vertices[k - 1];
    info.is_max[i] = curve.value(i) > curve.value(prev);
  }
  return info;
}

// Extreme value (min under a max-tree, max under a min-tree) of every
// subtree, filled bottom-up with an explicit post-order stack.
std::vector<double> subtree_reach(const CartesianTree& tree, const Curve& curve,
                                  bool take_min) {
  std::vector<double> reach(tree.size());
  std::vector<std::pair<std::size_t, int>> stack;
  stack.push_back({tree.root, 0});
  while (!stack.empty()) {
    auto [node, state] = stack.back();
    if (state == 0) {
      stack.back().second = 1;
      if (tree.left[node] != kNone) stack.push_back({tree.left[node], 0});
    } else if (state == 1) {
      stack.back().second = 2;
      if (tree.right[node] != kNone) stack.push_back({tree.right[node], 0});
    } else {
      double v = curve.value(node);
      for (std::size_t child : {tree.left[node], tree.right[node]})
        if (child != kNone)
          v = take_min ? std::min(v, reach[child]) : std::max(v, reach[child]);
      reach[node] = v;
      stack.pop_back();
    }
  }
  return reach;
}

// Tracks the first (or, mirrored, last) vertex through the smoothing. The
// endpoint heads for the nearest surviving extremum; whenever that extremum
// dies, the chase retargets the next longer-lived one. Once only the far
// endpoint is left the curve is a single segment and both ends meet halfway
// if the remaining budget allows.
double smoothed_endpoint(const Curve& curve, const std::vector<double>& deaths,
                         const ExtremumInfo& info, double eps, bool from_back) {
  const std::size_t n = curve.num_vertices();
  auto idx = [&](std::size_t k) { return from_back ? n - 1 - k : k; };
  double cur = curve.value(idx(0));
  if (eps == 0) return cur;

  double eps_prime = 0;
  std::size_t k = 1;
  while (k + 1 < n && deaths[idx(k)] <= eps_prime) ++k;
  for (;;) {
    std::size_t i = idx(k);
    if (k + 1 == n) {
      double other =
          eps_prime == 0
              ? curve.value(i)
              : smoothed_endpoint(curve, deaths, info, eps_prime, !from_back);
      double len = std::abs(other - cur);
      if (len <= 2 * (eps - eps_prime)) return (cur + other) / 2;
      return cur + (other > cur ? 1.0 : -1.0) * (eps - eps_prime);
    }
    double pos = info.is_max[i] ? curve.value(i) - eps_prime
                                : curve.value(i) + eps_prime;
    double dir = pos > cur ? 1.0 : (pos < cur ? -1.0 : 0.0);
    if (eps <= deaths[i]) {
      double step = std::min(eps - eps_prime, std::abs(pos - cur));
      return cur + dir * step;
    }
    double step = std::min(deaths[i] - eps_prime, std::abs(pos - cur));
    cur += dir * step;
    eps_prime = deaths[i];
    ++k;
    while (k + 1 < n && deaths[idx(k)] <= eps_prime) ++k;
  }
}

}  // namespace

CartesianTree build_cartesian_tree(const std::vector<double>& values,
                                   TreeMode mode) {
  if (values.empty())
    throw std::invalid_argument("build_cartesian_tree: empty sequence");
  const std::size_t n = values.size();
  CartesianTree tree;
  tree.mode = mode;
  tree.left.assign(n, kNone);
  tree.right.assign(n, kNone);
  std::vector<std::size_t> spine;  // current right spine, root first
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t last = kNone;
    while (!spine.empty()) {
      double top = values[spine.back()];
      bool yields = mode == TreeMode::max ? top <= values[i] : top >= values[i];
      if (!yields) break;
      last = spine.back();
      spine.pop_back();
    }
    tree.left[i] = last;
    if (!spine.empty()) tree.right[spine.back()] = i;
    spine.push_back(i);
  }
  tree.root = spine.front();
  return tree;
}

DeathTimeTable death_times(const Curve& curve) {
  if (curve.dim() != 1)
    throw std::invalid_argument("death_times: expected a 1D curve");
  const std::size_t n = curve.num_vertices();
  DeathTimeTable table{std::vector<double>(n, 0.0)};
  table.times.front() = kInf;
  table.times.back() = kInf;
  if (n == 2) return table;

  ExtremumInfo info = classify_extrema(curve);
  std::vector<double> values(curve.coords().begin(), curve.coords().end());
  CartesianTree tmax = build_cartesian_tree(values, TreeMode::max);
  CartesianTree tmin = build_cartesian_tree(values, TreeMode::min);
  std::vector<double> below = subtree_reach(tmax, curve, true);
  std::vector<double> above = subtree_reach(tmin, curve, false);

  // A maximum flattens once it meets the higher of the two valley floors
  // flanking it. Those floors are exactly the extreme values of its left and
  // right subtrees in the value tree; both exist for interior breakpoints.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!info.is_breakpoint[i]) continue;
    const CartesianTree& tree = info.is_max[i] ? tmax : tmin;
    const std::vector<double>& reach = info.is_max[i] ? below : above;
    double m = kInf;
    for (std::size_t child : {tree.left[i], tree.right[i]})
      if (child != kNone)
        m = std::min(m, std::abs(curve.value(i) - reach[child]));
    table.times[i] = m / 2;
  }
  return table;
}

Curve truncated_smoothing(const Curve& curve, double eps) {
  if (curve.dim() != 1)
    throw std::invalid_argument("truncated_smoothing: expected a 1D curve");
  if (eps < 0)
    throw std::invalid_argument("truncated_smoothing: eps must be >= 0");
  if (eps == 0) return curve;

  const std::size_t n = curve.num_vertices();
  DeathTimeTable table = death_times(curve);
  ExtremumInfo info = classify_extrema(curve);

  std::vector<double> out(n);
  out.front() = smoothed_endpoint(curve, table.times, info, eps, false);
  out.back() = smoothed_endpoint(curve, table.times, info, eps, true);

  // Walk vertices from longest-lived to shortest. The neighbors that outlive
  // vertex i flank it as ancestors in the death-time tree, so their final
  // values are known by the time i is reached; a dead vertex rests where it
  // stopped moving unless the segment between those survivors drags it along.
  CartesianTree order = build_cartesian_tree(table.times, TreeMode::max);
  struct Frame {
    std::size_t node;
    double before, after;
  };
  std::vector<Frame> stack;
  stack.push_back({order.root, 0.0, 0.0});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    double v;
    if (f.node == 0 || f.node + 1 == n) {
      v = out[f.node];
    } else {
      double offset = std::min(eps, table.times[f.node]);
      v = info.is_max[f.node] ? curve.value(f.node) - offset
                              : curve.value(f.node) + offset;
      if (table.times[f.node] <= eps) {
        v = std::max(std::min(f.before, f.after),
                     std::min(v, std::max(f.before, f.after)));
      }
      out[f.node] = v;
    }
    if (order.left[f.node] != kNone)
      stack.push_back({order.left[f.node], f.before, v});
    if (order.right[f.node] != kNone)
      stack.push_back({order.right[f.node], v, f.after});
  }
  return Curve::from_values(out);
}

namespace {

// Deterministic linear-time selection (medians of fives). k is a 0-based
// rank relative to [lo, hi).
double mom_select(std::vector<double>& v, std::size_t lo, std::size_t hi,
                  std::size_t k) {
  for (;;) {
    if (hi - lo <= 10) {
      std::sort(v.begin() + lo, v.begin() + hi);
      return v[lo + k];
    }
    std::size_t write = lo;
    for (std::size_t g = lo; g < hi; g += 5) {
      std::size_t gend = std::min(g + 5, hi);
      std::sort(v.begin() + g, v.begin() + gend);
      std::swap(v[write++], v[g + (gend - g - 1) / 2]);
    }
    double pivot = mom_select(v, lo, write, (write - lo - 1) / 2);

    std::size_t lt = lo, it = lo, gt = hi;
    while (it < gt) {
      if (v[it] < pivot)
        std::swap(v[lt++], v[it++]);
      else if (v[it] > pivot)
        std::swap(v[--gt], v[it]);
      else
        ++it;
    }
    if (k < lt - lo) {
      hi = lt;
    } else if (k < gt - lo) {
      return pivot;
    } else {
      k -= gt - lo;
      lo = gt;
    }
  }
}

}  // namespace

SmoothingParameterResult find_parameter(std::vector<double> deaths,
                                        double alpha, double delta,
                                        std::size_t n) {
  if (!(alpha >= 1.0))
    throw std::invalid_argument("find_parameter: alpha must be at least 1");
  if (delta < 0)
    throw std::invalid_argument("find_parameter: delta must be >= 0");
  if (delta == 0) return {0.0, 0};

  const double quota = static_cast<double>(n) / alpha;
  const double budget = alpha * delta;

  // Median recursion: either everything above half the current budget is
  // irrelevant (the window fits below), or the search shifts past that half.
  // Each round discards at least half the remaining death times.
  double eps = 0.0;
  {
    std::vector<double> m = deaths;
    double a = alpha;
    while (static_cast<double>(m.size()) > quota) {
      std::vector<double> work = m;
      double med = mom_select(work, 0, work.size(), (work.size() - 1) / 2);
      double half = a * delta / 2;
      std::vector<double> next;
      next.reserve(m.size() / 2 + 1);
      if (med > half) {
        for (double x : m)
          if (x <= half) next.push_back(x);
      } else {
        for (double x : m)
          if (x > half) next.push_back(x - half);
        eps += half;
      }
      m = std::move(next);
      a /= 2;
    }
  }

  // The shifts land between death times; snap down onto the largest death
  // time not above them (or zero). No death time sits in the skipped gap, so
  // the window only loses elements.
  {
    double snapped = 0.0;
    for (double x : deaths)
      if (x <= eps) snapped = std::max(snapped, x);
    eps = snapped;
  }

  auto window_count = [&](double at) {
    std::size_t c = 0;
    for (double x : deaths) c += (x > at && x <= at + delta);
    return c;
  };

  std::size_t count = window_count(eps);
  if (static_cast<double>(count) > quota) {
    // The recursion's discard can crowd the final window when ties cluster
    // around the thresholds. A window of the target width placed on the grid
    // 0, delta, 2*delta, ... must be sparse enough for some grid position,
    // and snapping such a position down onto a death time only sheds
    // elements, so the best candidate always meets the quota.
    std::vector<double> sorted;
    sorted.reserve(deaths.size());
    for (double x : deaths)
      if (std::isfinite(x)) sorted.push_back(x);
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> candidates{0.0};
    for (double x : sorted) {
      if (x > budget) break;
      candidates.push_back(x);
    }
    eps = 0.0;
    count = deaths.size() + 1;
    for (double c : candidates) {
      auto first = std::upper_bound(sorted.begin(), sorted.end(), c);
      auto last = std::upper_bound(sorted.begin(), sorted.end(), c + delta);
      std::size_t in_window = static_cast<std::size_t>(last - first);
      if (in_window < count) {
        count = in_window;
        eps = c;
      }
    }
  }
  return {eps, 2 * count};
}

std::pair<Curve, Curve> simplify_nd(const Curve& P, const Curve& Q,
                                    double alpha, double delta) {
  if (P.dim() != Q.dim())
    throw std::invalid_argument("simplify_nd: dimension mismatch");
  if (!(alpha >= 1.0))
    throw std::invalid_argument("simplify_nd: alpha must be at least 1");
  if (delta < 0)
    throw std::invalid_argument("simplify_nd: delta must be >= 0");
  if (delta == 0) return {P, Q};

  const std::size_t d = P.dim();
  const std::size_t n = P.num_vertices() + Q.num_vertices();
  std::vector<double> pc(P.coords().begin(), P.coords().end());
  std::vector<double> qc(Q.coords().begin(), Q.coords().end());
  for (std::size_t axis = 0; axis < d; ++axis) {
    Curve pl = project(P, axis);
    Curve ql = project(Q, axis);
    std::vector<double> m = death_times(pl).times;
    std::vector<double> mq = death_times(ql).times;
    m.insert(m.end(), mq.begin(), mq.end());
    double eps = find_parameter(std::move(m), alpha, delta, n).epsilon;
    Curve ps = truncated_smoothing(pl, eps);
    Curve qs = truncated_smoothing(ql, eps);
    for (std::size_t i = 0; i < P.num_vertices(); ++i)
      pc[i * d + axis] = ps.value(i);
    for (std::size_t i = 0; i < Q.num_vertices(); ++i)
      qc[i * d + axis] = qs.value(i);
  }
  return {Curve(d, std::move(pc)), Curve(d, std::move(qc))};
}

}  // namespace frechet
