#include "frechet/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace frechet {

namespace {

bool in_closed_segment(double v, double a, double b) {
  return v >= std::min(a, b) && v <= std::max(a, b);
}

/* Candidate skeleton: both endpoints plus every interior vertex that is a
   strict extremum once plateau runs are collapsed. Each run is represented
   by its first vertex so ties resolve toward the earlier index, except the
   final run, whose representative has to be the last vertex itself. */
std::vector<std::size_t> extremum_skeleton(const std::vector<double>& w) {
  const std::size_t n = w.size();
  std::vector<std::size_t> runs;  // first index of each distinct-value run
  runs.push_back(0);
  for (std::size_t i = 1; i < n; ++i)
    if (w[i] != w[runs.back()]) runs.push_back(i);

  std::vector<std::size_t> keep;
  keep.push_back(0);
  for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
    double prev = w[runs[r - 1]];
    double cur = w[runs[r]];
    double next = w[runs[r + 1]];
    if ((cur > prev) != (next > cur)) keep.push_back(runs[r]);
  }
  if (keep.back() != n - 1) keep.push_back(n - 1);
  return keep;
}

enum class EventOrder { shallowest_first, leftmost_first };

// Pending removal: an interior pair (a, b) of adjacent skeleton extrema, or
// a lone extremum a next to the endpoint it is too close to (b == a).
struct Event {
  double metric;
  std::size_t a, b;
};

struct EventLater {
  EventOrder order;
  bool operator()(const Event& x, const Event& y) const {
    if (order == EventOrder::shallowest_first) {
      if (x.metric != y.metric) return x.metric > y.metric;
      return x.a > y.a;
    }
    if (x.a != y.a) return x.a > y.a;
    return x.metric > y.metric;
  }
};

std::vector<std::size_t> prune_skeleton(const std::vector<double>& w,
                                        double delta, EventOrder order) {
  const std::vector<std::size_t> skel = extremum_skeleton(w);
  const std::size_t last = w.size() - 1;

  std::vector<std::size_t> prev(w.size(), 0), next(w.size(), 0);
  std::vector<char> alive(w.size(), 0);
  for (std::size_t t = 0; t < skel.size(); ++t) {
    alive[skel[t]] = 1;
    prev[skel[t]] = t > 0 ? skel[t - 1] : skel[t];
    next[skel[t]] = t + 1 < skel.size() ? skel[t + 1] : skel[t];
  }

  std::priority_queue<Event, std::vector<Event>, EventLater> events{
      EventLater{order}};

  auto interior = [&](std::size_t i) { return i != 0 && i != last; };

  auto push_around = [&](std::size_t i) {
    if (!alive[i]) return;
    if (interior(i)) {
      std::size_t r = next[i];
      if (interior(r) && std::abs(w[r] - w[i]) <= 2.0 * delta)
        events.push({0.5 * std::abs(w[r] - w[i]), i, r});
      if (prev[i] == 0 && std::abs(w[i] - w[0]) <= delta)
        events.push({std::abs(w[i] - w[0]), i, i});
      if (next[i] == last && std::abs(w[i] - w[last]) <= delta)
        events.push({std::abs(w[i] - w[last]), i, i});
    }
  };

  auto detach = [&](std::size_t i) {
    alive[i] = 0;
    next[prev[i]] = next[i];
    prev[next[i]] = prev[i];
  };

  // Removing a vertex can leave a neighbor's value inside the segment of
  // its own new neighbors; such a vertex is no longer an extremum of the
  // surviving sequence and has to go too, possibly cascading outward.
  auto collapse_degenerate = [&](std::size_t seam_l, std::size_t seam_r) {
    std::size_t l = seam_l, r = seam_r;
    for (;;) {
      if (interior(l) && in_closed_segment(w[l], w[prev[l]], w[r])) {
        std::size_t p = prev[l];
        detach(l);
        l = p;
        continue;
      }
      if (interior(r) && in_closed_segment(w[r], w[l], w[next[r]])) {
        std::size_t nx = next[r];
        detach(r);
        r = nx;
        continue;
      }
      break;
    }
    push_around(l);
    push_around(prev[l]);
    push_around(r);
  };

  for (std::size_t i : skel) push_around(i);

  while (!events.empty()) {
    Event ev = events.top();
    events.pop();
    if (!alive[ev.a]) continue;
    if (ev.a == ev.b) {  // endpoint-adjacent single
      bool at_front = prev[ev.a] == 0 && std::abs(w[ev.a] - w[0]) <= delta;
      bool at_back =
          next[ev.a] == last && std::abs(w[ev.a] - w[last]) <= delta;
      if (!at_front && !at_back) continue;
      std::size_t l = prev[ev.a], r = next[ev.a];
      detach(ev.a);
      collapse_degenerate(l, r);
    } else {
      if (!alive[ev.b] || next[ev.a] != ev.b) continue;
      if (!interior(ev.a) || !interior(ev.b)) continue;
      std::size_t l = prev[ev.a], r = next[ev.b];
      detach(ev.a);
      detach(ev.b);
      collapse_degenerate(l, r);
    }
  }

  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= last; i = next[i]) {
    out.push_back(i);
    if (i == last) break;
  }
  return out;
}

Signature assemble(const Curve& curve, double delta,
                   std::vector<std::size_t> indices) {
  Signature sig;
  sig.delta = delta;
  sig.values.reserve(indices.size());
  for (std::size_t i : indices) sig.values.push_back(curve.value(i));
  sig.indices = std::move(indices);
  return sig;
}

}  // namespace

bool verify_signature(const Curve& curve, double delta, const Signature& sig) {
  if (curve.dim() != 1) throw std::invalid_argument("curve must be 1D");
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  const std::size_t n = curve.num_vertices();
  const std::size_t k = sig.indices.size();
  if (k < 2 || sig.values.size() != k) return false;
  if (sig.indices.front() != 0 || sig.indices.back() != n - 1) return false;
  for (std::size_t t = 0; t + 1 < k; ++t)
    if (sig.indices[t] >= sig.indices[t + 1]) return false;
  for (std::size_t t = 0; t < k; ++t)
    if (sig.values[t] != curve.value(sig.indices[t])) return false;

  const std::vector<double>& v = sig.values;

  // Non-degeneracy: interior signature vertices stick out of the segment
  // spanned by their signature neighbors.
  for (std::size_t t = 1; t + 1 < k; ++t)
    if (in_closed_segment(v[t], v[t - 1], v[t + 1])) return false;

  // Minimum edge length: interior edges beat 2*delta, the outer two beat
  // delta. A two-vertex signature carries no length requirement.
  if (k > 2) {
    for (std::size_t t = 0; t + 1 < k; ++t) {
      double len = std::abs(v[t + 1] - v[t]);
      bool outer = t == 0 || t + 2 == k;
      if (len <= (outer ? delta : 2.0 * delta)) return false;
    }
  }

  for (std::size_t t = 0; t + 1 < k; ++t) {
    bool slack_front = t == 0;
    bool slack_back = t + 2 == k;

    // Direction preservation: an ascending edge allows backtracking of at
    // most 2*delta between its signature vertices, and symmetrically.
    if (v[t] < v[t + 1]) {
      double run_max = -std::numeric_limits<double>::infinity();
      for (std::size_t i = sig.indices[t]; i <= sig.indices[t + 1]; ++i) {
        run_max = std::max(run_max, curve.value(i));
        if (run_max - curve.value(i) > 2.0 * delta) return false;
      }
    } else if (v[t] > v[t + 1]) {
      double run_min = std::numeric_limits<double>::infinity();
      for (std::size_t i = sig.indices[t]; i <= sig.indices[t + 1]; ++i) {
        run_min = std::min(run_min, curve.value(i));
        if (curve.value(i) - run_min > 2.0 * delta) return false;
      }
    }

    // Range: between signature vertices the curve keeps to their segment,
    // except for delta-slack around the curve endpoints on the outer edges.
    for (std::size_t i = sig.indices[t]; i <= sig.indices[t + 1]; ++i) {
      double x = curve.value(i);
      if (in_closed_segment(x, v[t], v[t + 1])) continue;
      if (slack_front && std::abs(x - v.front()) <= delta) continue;
      if (slack_back && std::abs(x - v.back()) <= delta) continue;
      return false;
    }
  }
  return true;
}

Signature compute_signature(const Curve& curve, double delta) {
  if (curve.dim() != 1) throw std::invalid_argument("curve must be 1D");
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  const std::vector<double>& w = curve.coords();

  Signature sig = assemble(
      curve, delta, prune_skeleton(w, delta, EventOrder::shallowest_first));
  if (verify_signature(curve, delta, sig)) return sig;

  sig = assemble(curve, delta,
                 prune_skeleton(w, delta, EventOrder::leftmost_first));
  if (verify_signature(curve, delta, sig)) return sig;

  throw std::runtime_error("signature pruning failed to converge");
}

}  // namespace frechet
