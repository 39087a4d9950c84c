#include "frechet/exitsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "frechet/freespace.hpp"

namespace frechet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mod_into(double x, double period) {
  double r = std::fmod(x, period);
  return r < 0.0 ? r + period : r;
}

}  // namespace

long long Grid::label(double v) const {
  return static_cast<long long>(std::floor((v - shift) / cell_width));
}

double Grid::boundary_distance(double v) const {
  double t = (v - shift) / cell_width;
  double f = t - std::floor(t);
  return std::min(f, 1.0 - f) * cell_width;
}

BadnessReport badness_report(const Curve& P1d, const Curve& Q1d,
                             const Grid& grid, double margin, double delta) {
  if (P1d.dim() != 1 || Q1d.dim() != 1)
    throw std::invalid_argument("badness_report requires 1D curves");
  double reach = margin * delta;
  BadnessReport rep;
  for (std::size_t i = 0; i < P1d.num_vertices(); ++i)
    if (grid.boundary_distance(P1d.value(i)) <= reach) rep.bad_p.push_back(i);
  for (std::size_t j = 0; j < Q1d.num_vertices(); ++j)
    if (grid.boundary_distance(Q1d.value(j)) <= reach) rep.bad_q.push_back(j);
  return rep;
}

/* A vertex v is too close to a boundary exactly when the shift falls inside
   the arc [v - reach, v + reach] modulo the cell width, so the best shift
   sits in a stretch of the circle covered by the fewest arcs. */
GridShiftResult compute_shift(const Curve& P1d, const Curve& Q1d, double alpha,
                              double delta, double margin) {
  if (P1d.dim() != 1 || Q1d.dim() != 1)
    throw std::invalid_argument("compute_shift requires 1D curves");
  double width = alpha * delta;
  if (!(width > 0.0))
    throw std::invalid_argument("compute_shift requires alpha*delta > 0");

  std::vector<double> vals;
  vals.reserve(P1d.num_vertices() + Q1d.num_vertices());
  for (std::size_t i = 0; i < P1d.num_vertices(); ++i)
    vals.push_back(P1d.value(i));
  for (std::size_t j = 0; j < Q1d.num_vertices(); ++j)
    vals.push_back(Q1d.value(j));

  double reach = margin * delta;
  std::vector<std::pair<double, int>> events;
  for (double v : vals) {
    if (2.0 * reach >= width) continue;  // covers the whole circle
    double a = mod_into(v - reach, width);
    double b = a + 2.0 * reach;
    events.push_back({a, 1});
    if (b <= width) {
      events.push_back({b, -1});
    } else {
      events.push_back({width, -1});
      events.push_back({0.0, 1});
      events.push_back({b - width, -1});
    }
  }
  std::sort(events.begin(), events.end());

  double best_shift = width / 2.0;
  long long best_cover = std::numeric_limits<long long>::max();
  long long cover = 0;
  double prev = 0.0;
  for (const auto& [pos, step] : events) {
    if (pos > prev && cover < best_cover) {
      best_cover = cover;
      best_shift = (prev + pos) / 2.0;
    }
    cover += step;
    prev = pos;
  }
  if (events.empty() || (prev < width && cover < best_cover))
    best_shift = (prev + width) / 2.0;

  /* The midpoint of a minimal stretch should put every vertex strictly off
     the boundaries; nudge if floating point says otherwise. */
  Grid grid{width, best_shift};
  for (int attempt = 0; attempt < 64; ++attempt) {
    grid.shift = mod_into(best_shift + attempt * width * 1e-9, width);
    bool on_boundary = false;
    for (double v : vals)
      if (grid.boundary_distance(v) == 0.0) {
        on_boundary = true;
        break;
      }
    if (!on_boundary) break;
  }

  BadnessReport rep = badness_report(P1d, Q1d, grid, margin, delta);
  std::size_t bad = rep.total();
  double bound = margin * static_cast<double>(vals.size()) / alpha;
  return {grid, bad, static_cast<double>(bad) <= bound};
}

RangeSuccessor::RangeSuccessor(std::vector<double> values)
    : vals_(std::move(values)) {
  if (vals_.empty())
    throw std::invalid_argument("RangeSuccessor requires at least one value");
  while (leaves_ < vals_.size()) leaves_ *= 2;
  tmin_.assign(2 * leaves_, kInf);
  tmax_.assign(2 * leaves_, -kInf);
  for (std::size_t i = 0; i < vals_.size(); ++i)
    tmin_[leaves_ + i] = tmax_[leaves_ + i] = vals_[i];
  for (std::size_t node = leaves_ - 1; node >= 1; --node) {
    tmin_[node] = std::min(tmin_[2 * node], tmin_[2 * node + 1]);
    tmax_[node] = std::max(tmax_[2 * node], tmax_[2 * node + 1]);
  }
}

double RangeSuccessor::value_at(double g) const {
  if (g <= 0.0) return vals_.front();
  if (g >= static_cast<double>(vals_.size() - 1)) return vals_.back();
  std::size_t i = static_cast<std::size_t>(g);
  double t = g - static_cast<double>(i);
  return vals_[i] + t * (vals_[i + 1] - vals_[i]);
}

std::size_t RangeSuccessor::find_leftmost(std::size_t from, bool inside,
                                          double lo, double hi) const {
  if (from >= vals_.size()) return npos;
  struct Frame {
    std::size_t node, nl, nr;
  };
  std::vector<Frame> stack{{1, 0, leaves_}};
  while (!stack.empty()) {
    auto [node, nl, nr] = stack.back();
    stack.pop_back();
    if (nr <= from) continue;
    bool may = inside ? (tmin_[node] <= hi && tmax_[node] >= lo)
                      : (tmin_[node] < lo || tmax_[node] > hi);
    if (!may) continue;
    if (nr - nl == 1) return nl;  // at a leaf the bound test is exact
    std::size_t mid = (nl + nr) / 2;
    stack.push_back({2 * node + 1, mid, nr});
    stack.push_back({2 * node, nl, mid});
  }
  return npos;
}

std::size_t RangeSuccessor::next_in(double lo, double hi,
                                    std::size_t from) const {
  return find_leftmost(from, true, lo, hi);
}

std::size_t RangeSuccessor::next_outside(double lo, double hi,
                                         std::size_t from) const {
  return find_leftmost(from, false, lo, hi);
}

std::pair<double, double> RangeSuccessor::minmax(std::size_t i,
                                                 std::size_t j) const {
  if (i > j || j >= vals_.size())
    throw std::out_of_range("RangeSuccessor::minmax");
  double mn = kInf, mx = -kInf;
  for (std::size_t l = i + leaves_, r = j + leaves_ + 1; l < r;
       l /= 2, r /= 2) {
    if (l & 1) {
      mn = std::min(mn, tmin_[l]);
      mx = std::max(mx, tmax_[l]);
      ++l;
    }
    if (r & 1) {
      --r;
      mn = std::min(mn, tmin_[r]);
      mx = std::max(mx, tmax_[r]);
    }
  }
  return {mn, mx};
}

std::optional<double> first_point_within(const RangeSuccessor& rs, double p,
                                         double eps, double from) {
  double end = static_cast<double>(rs.num_edges());
  from = std::clamp(from, 0.0, end);
  double q0 = rs.value_at(from);
  if (std::abs(q0 - p) <= eps) return from;

  std::size_t start = static_cast<std::size_t>(std::ceil(from));
  std::size_t j;
  double target;
  if (q0 < p - eps) {
    j = rs.next_in(p - eps, kInf, start);
    target = p - eps;
  } else {
    j = rs.next_in(-kInf, p + eps, start);
    target = p + eps;
  }
  if (j == RangeSuccessor::npos) return std::nullopt;

  /* All vertices in [ceil(from), j) are on q0's side of the band, so the
     first band point is where the edge into vertex j crosses the border. */
  double a = std::max(from, static_cast<double>(j) - 1.0);
  double va = rs.value_at(a);
  if (std::abs(va - p) <= eps) return a;
  double y = a + (target - va) / (rs.value(j) - va) *
                     (static_cast<double>(j) - a);
  return std::clamp(y, from, static_cast<double>(j));
}

double maximal_interval_within(const RangeSuccessor& rs, double p, double eps,
                               double y1) {
  double end = static_cast<double>(rs.num_edges());
  y1 = std::clamp(y1, 0.0, end);
  std::size_t start = static_cast<std::size_t>(std::ceil(y1));
  std::size_t j = rs.next_outside(p - eps, p + eps, start);
  if (j == RangeSuccessor::npos) return end;

  double a = std::max(y1, static_cast<double>(j) - 1.0);
  double va = rs.value_at(a);
  double vj = rs.value(j);
  double target = vj > p + eps ? p + eps : p - eps;
  double y = a + (target - va) / (vj - va) * (static_cast<double>(j) - a);
  return std::max(y, y1);
}

std::pair<double, double> value_range(const RangeSuccessor& rs, double y1,
                                      double y2) {
  double a = rs.value_at(y1), b = rs.value_at(y2);
  double mn = std::min(a, b), mx = std::max(a, b);
  std::size_t i = static_cast<std::size_t>(std::ceil(std::max(y1, 0.0)));
  double jf = std::floor(y2);
  if (jf >= static_cast<double>(i)) {
    std::size_t j = std::min(static_cast<std::size_t>(jf), rs.size() - 1);
    auto [lo, hi] = rs.minmax(i, j);
    mn = std::min(mn, lo);
    mx = std::max(mx, hi);
  }
  return {mn, mx};
}

bool segment_subcurve_decide(double e0, double e1, const RangeSuccessor& rs,
                             double y1, double y2, double delta) {
  if (y2 < y1) throw std::invalid_argument("segment_subcurve_decide: y2 < y1");
  if (delta < 0.0) return false;

  /* Positions s on the segment with |e(s) - w| <= delta, clipped to [0,1]. */
  auto band = [&](double w) -> Interval {
    if (e0 == e1)
      return std::abs(e0 - w) <= delta ? Interval{0.0, 1.0} : Interval{};
    double s0 = (w - delta - e0) / (e1 - e0);
    double s1 = (w + delta - e0) / (e1 - e0);
    if (s0 > s1) std::swap(s0, s1);
    return intersect({s0, s1}, {0.0, 1.0});
  };

  double w_first = rs.value_at(y1);
  if (std::abs(e0 - w_first) > delta) return false;
  double lo = 0.0;
  auto advance = [&](double w) {
    Interval in = band(w);
    if (in.is_empty()) return false;
    lo = std::max(lo, in.lo);
    return lo <= in.hi;
  };
  std::size_t first = static_cast<std::size_t>(std::ceil(std::max(y1, 0.0)));
  double last = std::floor(y2);
  for (std::size_t j = first;
       last >= static_cast<double>(first) &&
       j <= static_cast<std::size_t>(last) && j < rs.size();
       ++j)
    if (!advance(rs.value(j))) return false;
  double w_last = rs.value_at(y2);
  return advance(w_last) && std::abs(e1 - w_last) <= delta;
}

Interval segment_exit_set(double e0, double e1, const RangeSuccessor& rs,
                          Interval entrance, double delta) {
  if (entrance.is_empty()) return {};
  double y1 = entrance.lo, y2 = entrance.hi;
  auto hit = first_point_within(rs, e1, delta, y1);
  if (!hit) return {};
  double yp1 = *hit;
  auto [qlo, qhi] = value_range(rs, y1, y2);
  double diam = qhi - qlo;

  if (yp1 <= y2) {
    /* The terminus is reached while still inside the entrance hull. Exits
       extend for as long as Q stays in reach of e(1): reach is limited by
       the segment length for matchings that walk e late, and by the hull
       diameter for matchings that linger near the entrance; either way
       diam + 3*delta caps the cost of the induced matching. */
    double radius = std::min(std::max(std::abs(e1 - e0) + delta, diam + delta),
                             diam + 3.0 * delta);
    return {yp1, maximal_interval_within(rs, e1, radius, yp1)};
  }

  /* Terminus reached only past the entrance: once there, any matching of
     the segment pins Q inside the 3*delta band around e(1). The candidate
     interval still has to be validated as a whole, since Q may stray
     arbitrarily far between y2 and yp1. yp2 sits exactly on the band
     boundary, so the validation threshold gets a rounding allowance to
     keep the comparison off the knife edge. */
  double yp2 = maximal_interval_within(rs, e1, 3.0 * delta, yp1);
  double slack = 1e-12 * (1.0 + std::abs(e1) + diam + delta);
  if (!segment_subcurve_decide(e0, e1, rs, y1, yp2,
                               diam + 3.0 * delta + slack))
    return {};
  return {yp1, yp2};
}

namespace {

/* Collapse equal-adjacent labels into runs, then keep only the endpoints
   and the runs that are local extrema of the run sequence. Positions are
   offset into the caller's signature indexing. */
std::vector<LabelChar> reduce_labels(const std::vector<long long>& labs,
                                     std::size_t offset) {
  std::vector<LabelChar> runs;
  for (std::size_t t = 0; t < labs.size(); ++t) {
    if (!runs.empty() && runs.back().label == labs[t]) {
      runs.back().last = offset + t;
    } else {
      runs.push_back({labs[t], offset + t, offset + t});
    }
  }
  if (runs.size() <= 2) return runs;
  std::vector<LabelChar> kept;
  kept.push_back(runs.front());
  for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
    bool rose = runs[r].label > runs[r - 1].label;
    bool falls = runs[r].label > runs[r + 1].label;
    if (rose == falls) kept.push_back(runs[r]);
  }
  kept.push_back(runs.back());
  return kept;
}

/* First stay of Q inside the given grid cell at or after `from`, as a
   closed parameter interval; empty if the cell is never entered again. */
Interval cell_dwell(const Grid& grid, const RangeSuccessor& rs, long long lab,
                    double from) {
  double center =
      grid.shift + (static_cast<double>(lab) + 0.5) * grid.cell_width;
  auto entry = first_point_within(rs, center, grid.cell_width / 2.0, from);
  if (!entry) return {};
  return {*entry,
          maximal_interval_within(rs, center, grid.cell_width / 2.0, *entry)};
}

}  // namespace

LabelString label_curve(const Signature& sig, const Grid& grid) {
  std::vector<long long> labs(sig.size());
  for (std::size_t t = 0; t < sig.size(); ++t) {
    if (grid.boundary_distance(sig.values[t]) == 0.0)
      throw std::invalid_argument(
          "label_curve: signature vertex on a grid boundary");
    labs[t] = grid.label(sig.values[t]);
  }
  return {reduce_labels(labs, 0)};
}

namespace {

constexpr std::uint64_t kMersenne61 = (1ull << 61) - 1;

std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(z & kMersenne61);
  std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
  std::uint64_t s = lo + hi;
  if (s >= kMersenne61) s -= kMersenne61;
  return s;
}

std::uint64_t addmod61(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s >= kMersenne61) s -= kMersenne61;
  return s;
}

std::uint64_t submod61(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kMersenne61 - b;
}

constexpr std::uint64_t kBase1 = 1226612467;
constexpr std::uint64_t kBase2 = 2069117587;

std::uint64_t encode_symbol(long long x) {
  return static_cast<std::uint64_t>(x) % (kMersenne61 - 2) + 1;
}

}  // namespace

SubstringEq::SubstringEq(std::vector<long long> a, std::vector<long long> b)
    : a_(std::move(a)), b_(std::move(b)) {
  std::size_t n = std::max(a_.size(), b_.size()) + 1;
  pow1_.resize(n);
  pow2_.resize(n);
  pow1_[0] = pow2_[0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    pow1_[i] = mulmod61(pow1_[i - 1], kBase1);
    pow2_[i] = mulmod61(pow2_[i - 1], kBase2);
  }
  ha_ = build(a_);
  hb_ = build(b_);
}

SubstringEq::HashTable SubstringEq::build(
    const std::vector<long long>& s) const {
  HashTable t;
  t.pre1.resize(s.size() + 1);
  t.pre2.resize(s.size() + 1);
  t.pre1[0] = t.pre2[0] = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::uint64_t x = encode_symbol(s[i]);
    t.pre1[i + 1] = addmod61(mulmod61(t.pre1[i], kBase1), x);
    t.pre2[i + 1] = addmod61(mulmod61(t.pre2[i], kBase2), x);
  }
  return t;
}

std::uint64_t SubstringEq::range_hash(const std::vector<std::uint64_t>& pre,
                                      const std::vector<std::uint64_t>& pow,
                                      std::size_t from, std::size_t len) {
  return submod61(pre[from + len], mulmod61(pre[from], pow[len]));
}

bool SubstringEq::equal(std::size_t a_from, std::size_t a_len,
                        std::size_t b_from, std::size_t b_len) const {
  if (a_from + a_len > a_.size() || b_from + b_len > b_.size())
    throw std::out_of_range("SubstringEq::equal: range out of bounds");
  if (a_len != b_len) return false;
  if (a_len == 0) return true;
  if (range_hash(ha_.pre1, pow1_, a_from, a_len) !=
          range_hash(hb_.pre1, pow1_, b_from, b_len) ||
      range_hash(ha_.pre2, pow2_, a_from, a_len) !=
          range_hash(hb_.pre2, pow2_, b_from, b_len))
    return false;
  return std::equal(a_.begin() + a_from, a_.begin() + a_from + a_len,
                    b_.begin() + b_from);
}

LabelMatchContext make_label_match_context(const Curve& P1d, const Curve& Q1d,
                                           const Grid& grid, double delta) {
  if (P1d.dim() != 1 || Q1d.dim() != 1)
    throw std::invalid_argument("label matching requires 1D curves");
  if (delta < 0.0) throw std::invalid_argument("negative delta");

  Signature sp = compute_signature(P1d, delta);
  Signature sq = compute_signature(Q1d, 2.0 * delta);
  LabelString a = label_curve(sp, grid);
  LabelString b = label_curve(sq, grid);

  std::vector<std::size_t> a_of(sp.size(), RangeSuccessor::npos);
  for (std::size_t c = 0; c < a.chars.size(); ++c)
    for (std::size_t pos = a.chars[c].first; pos <= a.chars[c].last; ++pos)
      a_of[pos] = c;

  std::vector<double> bs, be;
  bs.reserve(b.chars.size());
  be.reserve(b.chars.size());
  for (const LabelChar& ch : b.chars) {
    bs.push_back(static_cast<double>(sq.indices[ch.first]));
    be.push_back(static_cast<double>(sq.indices[ch.last]));
  }

  std::vector<long long> a_labels, b_labels;
  for (const LabelChar& ch : a.chars) a_labels.push_back(ch.label);
  for (const LabelChar& ch : b.chars) b_labels.push_back(ch.label);

  return {grid,
          delta,
          Q1d,
          std::move(sp),
          std::move(sq),
          std::move(a),
          std::move(b),
          std::move(a_of),
          std::move(bs),
          std::move(be),
          SubstringEq(std::move(a_labels), std::move(b_labels)),
          RangeSuccessor(Q1d.coords())};
}

Interval matching_label_interval(const LabelMatchContext& ctx,
                                 std::size_t a_pos, std::size_t b_pos,
                                 double y) {
  if (a_pos > b_pos || b_pos >= ctx.sig_p.size())
    throw std::invalid_argument("matching_label_interval: bad window");

  std::vector<long long> labs;
  labs.reserve(b_pos - a_pos + 1);
  for (std::size_t pos = a_pos; pos <= b_pos; ++pos)
    labs.push_back(ctx.grid.label(ctx.sig_p.values[pos]));
  std::vector<LabelChar> t = reduce_labels(labs, a_pos);
  std::size_t r = t.size();

  long long ly = ctx.grid.label(ctx.rs.value_at(y));
  if (ly != t.front().label) return {};
  if (r == 1) return cell_dwell(ctx.grid, ctx.rs, ly, y);

  std::size_t nb = ctx.b.chars.size();
  /* First extremal run of Q's label string still ahead of y. */
  std::size_t j0 =
      std::upper_bound(ctx.b_run_end.begin(), ctx.b_run_end.end(), y) -
      ctx.b_run_end.begin();

  if (r == 2) {
    Interval dwell = cell_dwell(ctx.grid, ctx.rs, t.back().label, y);
    if (dwell.is_empty()) return {};
    /* Extrema ahead of y but before the dwell may only repeat the entrance
       label, then the exit label; anything else inserts a run of its own
       into Q[y, y'] for every candidate y'. */
    bool seen_exit = false;
    for (std::size_t k = j0; k < nb && ctx.b_run_start[k] < dwell.lo; ++k) {
      long long lab = ctx.b.chars[k].label;
      if (lab == t.back().label) {
        seen_exit = true;
      } else if (lab != ly || seen_exit) {
        return {};
      }
    }
    return dwell;
  }

  /* The inner extrema of the window sit, in order, as a contiguous run of
     the full label string of P; match them against the extrema of Q
     starting right after y (merging the first one into the entrance when
     the labels agree). */
  std::size_t len = r - 2;
  std::size_t a_start = ctx.a_char_of_pos[t[1].first];
  if (a_start == RangeSuccessor::npos ||
      ctx.a_char_of_pos[t[r - 2].first] != a_start + len - 1)
    throw std::logic_error(
        "matching_label_interval: window extremum missing from label string");
  std::size_t k0 = j0;
  if (j0 < nb && ctx.b.chars[j0].label == ly) k0 = j0 + 1;
  if (k0 + len > nb) return {};
  if (!ctx.eq.equal(a_start, len, k0, len)) return {};

  double t_end = ctx.b_run_end[k0 + len - 1];
  Interval dwell = cell_dwell(ctx.grid, ctx.rs, t.back().label, t_end);
  if (dwell.is_empty()) return {};
  /* An extremum between the last matched run and the dwell cannot carry
     the exit label (it would start inside the dwell) nor the previous one
     (adjacent runs alternate), so its presence kills every candidate. */
  std::size_t knext = k0 + len;
  if (knext < nb && ctx.b_run_start[knext] < dwell.lo) return {};
  return dwell;
}

Interval interior_good_exit_set(const LabelMatchContext& ctx,
                                std::size_t a_pos, std::size_t b_pos, double z,
                                double alpha) {
  if (a_pos >= b_pos || b_pos >= ctx.sig_p.size())
    throw std::invalid_argument("interior_good_exit_set: bad window");
  if (!(alpha > 0.0))
    throw std::invalid_argument("interior_good_exit_set: alpha must be > 0");
  double delta = ctx.delta;
  const std::vector<double>& v = ctx.sig_p.values;
  for (std::size_t pos = a_pos + 1; pos < b_pos; ++pos)
    if (ctx.grid.boundary_distance(v[pos]) <= 6.0 * delta)
      throw std::invalid_argument(
          "interior_good_exit_set: interior signature vertex too close to a "
          "grid boundary");

  if (b_pos == a_pos + 1)
    return segment_exit_set(v[a_pos], v[b_pos], ctx.rs, {z, z}, 2.0 * delta);

  /* Prefix edge: hand over to the label matching at the earliest point
     near the first interior vertex. Every true crossing lies in the same
     cell and later, so the single entry point loses nothing. */
  Interval pre =
      segment_exit_set(v[a_pos], v[a_pos + 1], ctx.rs, {z, z}, 2.0 * delta);
  if (pre.is_empty()) return {};

  Interval mid = matching_label_interval(ctx, a_pos + 1, b_pos - 1, pre.lo);
  if (mid.is_empty()) return {};

  /* Suffix edge, entered anywhere in the matched interval from its first
     point near the last interior vertex onward. */
  auto h = first_point_within(ctx.rs, v[b_pos - 1], 2.0 * delta, mid.lo);
  if (!h || *h > mid.hi) return {};
  return segment_exit_set(v[b_pos - 1], v[b_pos], ctx.rs, {*h, mid.hi},
                          2.0 * delta);
}

namespace {

/* Parameters of Q whose value is within delta of v, one interval per edge
   crossing, normalized. */
IntervalSet close_params(const Curve& Q, double v, double delta) {
  IntervalSet out;
  for (std::size_t j = 0; j + 1 < Q.num_vertices(); ++j) {
    double w0 = Q.value(j), w1 = Q.value(j + 1);
    Interval t;
    if (w0 == w1) {
      if (std::abs(w0 - v) <= delta) t = {0.0, 1.0};
    } else {
      double t0 = (v - delta - w0) / (w1 - w0);
      double t1 = (v + delta - w0) / (w1 - w0);
      if (t0 > t1) std::swap(t0, t1);
      t = intersect({t0, t1}, {0.0, 1.0});
    }
    if (!t.is_empty())
      out.push_back({static_cast<double>(j) + t.lo,
                     static_cast<double>(j) + t.hi});
  }
  return normalized(out);
}

}  // namespace

IntervalSet general_exit_set(const Curve& P1d, const Curve& Q1d,
                             const IntervalSet& S, double alpha,
                             double delta) {
  if (P1d.dim() != 1 || Q1d.dim() != 1)
    throw std::invalid_argument("general_exit_set requires 1D curves");
  if (delta < 0.0) throw std::invalid_argument("negative delta");
  if (alpha < 1.0) throw std::invalid_argument("alpha must be at least 1");

  double m_edges = static_cast<double>(Q1d.num_edges());
  IntervalSet s = set_intersect(normalized(S), Interval{0.0, m_edges});
  if (s.empty()) return {};
  if (alpha < 8.0 || delta == 0.0)
    return exact_reachable_right_boundary(P1d, Q1d, s, delta);

  double inner_alpha = alpha - 7.0;
  GridShiftResult shifted = compute_shift(P1d, Q1d, inner_alpha, delta, 7.0);
  LabelMatchContext ctx =
      make_label_match_context(P1d, Q1d, shifted.grid, delta);
  const Signature& sp = ctx.sig_p;

  /* Checkpoints: signature vertices without a boundary buffer, plus the two
     endpoints. Between consecutive checkpoints every interior signature
     vertex is buffered, which is what the window construction needs. */
  std::vector<std::size_t> marks;
  for (std::size_t pos = 0; pos < sp.size(); ++pos) {
    bool forced = pos == 0 || pos + 1 == sp.size();
    if (forced || ctx.grid.boundary_distance(sp.values[pos]) <= 6.0 * delta)
      marks.push_back(pos);
  }

  /* Edges of Q incident to a vertex within delta of v. Any delta-matching
     sends each signature vertex of P to a point of Q on such an edge, so
     intersecting with them between windows never drops a real crossing. */
  std::vector<std::pair<double, std::size_t>> qv;
  qv.reserve(Q1d.num_vertices());
  for (std::size_t j = 0; j < Q1d.num_vertices(); ++j)
    qv.push_back({Q1d.value(j), j});
  std::sort(qv.begin(), qv.end());
  auto passages = [&](double v) {
    IntervalSet out;
    auto lo = std::lower_bound(qv.begin(), qv.end(),
                               std::make_pair(v - delta, std::size_t{0}));
    for (auto it = lo; it != qv.end() && it->first <= v + delta; ++it) {
      double j = static_cast<double>(it->second);
      out.push_back({std::max(0.0, j - 1.0), std::min(m_edges, j + 1.0)});
    }
    return normalized(out);
  };

  IntervalSet cur = set_intersect(s, close_params(Q1d, sp.values.front(),
                                                  delta));
  for (std::size_t w = 0; w + 1 < marks.size(); ++w) {
    if (cur.empty()) return {};
    IntervalSet exits;
    for (const Interval& comp : cur) {
      Interval e =
          interior_good_exit_set(ctx, marks[w], marks[w + 1], comp.lo,
                                 inner_alpha);
      if (!e.is_empty()) exits.push_back(e);
    }
    exits = normalized(exits);
    if (w + 2 == marks.size()) return exits;
    double next_value = sp.values[marks[w + 1]];
    cur = set_intersect(set_intersect(exits, passages(next_value)),
                        close_params(Q1d, next_value, delta));
  }
  return {};
}

}  // namespace frechet
