#include "frechet/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace frechet {

Curve::Curve(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw std::invalid_argument("curve dimension must be >= 1");
  if (coords_.size() % dim_ != 0)
    throw std::invalid_argument("coordinate count not a multiple of dimension");
  if (coords_.size() < 2 * dim_)
    throw std::invalid_argument("curve needs at least 2 vertices");
  for (double v : coords_)
    if (!std::isfinite(v))
      throw std::invalid_argument("curve coordinates must be finite");
}

Curve Curve::from_points(const std::vector<Point>& points) {
  if (points.empty()) throw std::invalid_argument("empty point list");
  std::size_t d = points.front().size();
  std::vector<double> flat;
  flat.reserve(points.size() * d);
  for (const Point& p : points) {
    if (p.size() != d)
      throw std::invalid_argument("points of mixed dimension");
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return Curve(d, std::move(flat));
}

Curve Curve::from_values(std::vector<double> values) {
  return Curve(1, std::move(values));
}

Point Curve::point(std::size_t i) const {
  auto v = vertex(i);
  return Point(v.begin(), v.end());
}

CurveParam canonical(const Curve& c, CurveParam p) {
  if (p.edge >= c.num_edges() || p.t < 0.0 || p.t > 1.0)
    throw std::invalid_argument("curve parameter out of range");
  if (p.t == 1.0 && p.edge + 1 < c.num_edges()) return {p.edge + 1, 0.0};
  return p;
}

CurveParam vertex_param(const Curve& c, std::size_t vertex) {
  if (vertex >= c.num_vertices())
    throw std::invalid_argument("vertex index out of range");
  if (vertex == c.num_vertices() - 1) return {c.num_edges() - 1, 1.0};
  return {vertex, 0.0};
}

CurveParam param_at_global(const Curve& c, double g) {
  double n1 = static_cast<double>(c.num_edges());
  if (g <= 0.0) return {0, 0.0};
  if (g >= n1) return {c.num_edges() - 1, 1.0};
  double i = std::floor(g);
  std::size_t edge = static_cast<std::size_t>(i);
  if (edge >= c.num_edges()) edge = c.num_edges() - 1;
  return {edge, g - static_cast<double>(edge)};
}

Point eval(const Curve& c, CurveParam p) {
  if (p.edge >= c.num_edges() || p.t < 0.0 || p.t > 1.0)
    throw std::invalid_argument("curve parameter out of range");
  auto a = c.vertex(p.edge);
  auto b = c.vertex(p.edge + 1);
  Point out(c.dim());
  for (std::size_t k = 0; k < c.dim(); ++k)
    out[k] = (1.0 - p.t) * a[k] + p.t * b[k];
  return out;
}

double coord_at(const Curve& c, std::size_t axis, double g) {
  CurveParam p = param_at_global(c, g);
  double a = c.coord(p.edge, axis);
  double b = c.coord(p.edge + 1, axis);
  return p.t == 0.0 ? a : (1.0 - p.t) * a + p.t * b;
}

double value_at(const Curve& c, double g) { return coord_at(c, 0, g); }

double linf_dist(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw std::invalid_argument("dimension mismatch");
  double d = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k)
    d = std::max(d, std::abs(p[k] - q[k]));
  return d;
}

Curve project(const Curve& c, std::size_t axis) {
  if (axis >= c.dim()) throw std::invalid_argument("axis out of range");
  std::vector<double> vals(c.num_vertices());
  for (std::size_t i = 0; i < c.num_vertices(); ++i) vals[i] = c.coord(i, axis);
  return Curve(1, std::move(vals));
}

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

MonotonePieceDecomposition monotone_pieces(const Curve& c) {
  MonotonePieceDecomposition out;
  out.vertices.push_back(0);
  std::vector<int> dir(c.dim(), 0);
  for (std::size_t e = 0; e < c.num_edges(); ++e) {
    bool reversal = false;
    for (std::size_t k = 0; k < c.dim(); ++k) {
      int s = sign_of(c.coord(e + 1, k) - c.coord(e, k));
      if (s != 0 && dir[k] != 0 && s != dir[k]) {
        reversal = true;
        break;
      }
    }
    if (reversal) {
      out.vertices.push_back(e);
      std::fill(dir.begin(), dir.end(), 0);
    }
    for (std::size_t k = 0; k < c.dim(); ++k) {
      int s = sign_of(c.coord(e + 1, k) - c.coord(e, k));
      if (s != 0 && dir[k] == 0) dir[k] = s;
    }
  }
  out.vertices.push_back(c.num_vertices() - 1);
  return out;
}

Curve collapse_degenerate_1d(const Curve& c) {
  if (c.dim() != 1) throw std::invalid_argument("curve must be 1D");
  auto pieces = monotone_pieces(c);
  std::vector<double> vals;
  vals.reserve(pieces.vertices.size());
  for (std::size_t v : pieces.vertices) vals.push_back(c.value(v));
  return Curve(1, std::move(vals));
}

double subcurve_diameter_1d(const Curve& c, CurveParam a, CurveParam b) {
  if (c.dim() != 1) throw std::invalid_argument("curve must be 1D");
  a = canonical(c, a);
  b = canonical(c, b);
  if (b < a) throw std::invalid_argument("subcurve parameters out of order");
  double va = value_at(c, a.global());
  double vb = value_at(c, b.global());
  double lo = std::min(va, vb), hi = std::max(va, vb);
  for (std::size_t i = a.edge + 1; i <= b.edge; ++i) {
    if (vertex_param(c, i).global() <= a.global()) continue;
    if (vertex_param(c, i).global() >= b.global()) break;
    lo = std::min(lo, c.value(i));
    hi = std::max(hi, c.value(i));
  }
  return hi - lo;
}

Curve subcurve(const Curve& c, CurveParam a, CurveParam b) {
  a = canonical(c, a);
  b = canonical(c, b);
  if (b < a) throw std::invalid_argument("subcurve parameters out of order");
  std::vector<double> flat;
  Point pa = eval(c, a);
  flat.insert(flat.end(), pa.begin(), pa.end());
  for (std::size_t i = a.edge + 1; i < c.num_vertices(); ++i) {
    double g = static_cast<double>(i);
    if (g <= a.global()) continue;
    if (g >= b.global()) break;
    auto v = c.vertex(i);
    flat.insert(flat.end(), v.begin(), v.end());
  }
  Point pb = eval(c, b);
  flat.insert(flat.end(), pb.begin(), pb.end());
  return Curve(c.dim(), std::move(flat));
}

}  // namespace frechet
