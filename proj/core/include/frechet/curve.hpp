#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace frechet {

using Point = std::vector<double>;

/* Polygonal curve in R^d under the L-infinity norm, stored as a flat
   row-major coordinate array. Every curve has at least two vertices; a
   single point is represented by repeating it. Immutable after
   construction. */
class Curve {
 public:
  Curve(std::size_t dim, std::vector<double> coords);

  static Curve from_points(const std::vector<Point>& points);
  static Curve from_values(std::vector<double> values);  // 1D convenience

  std::size_t dim() const { return dim_; }
  std::size_t num_vertices() const { return coords_.size() / dim_; }
  std::size_t num_edges() const { return num_vertices() - 1; }

  std::span<const double> vertex(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  double coord(std::size_t i, std::size_t axis) const {
    return coords_[i * dim_ + axis];
  }
  /* 1D shorthand for coord(i, 0). */
  double value(std::size_t i) const { return coords_[i * dim_]; }
  Point point(std::size_t i) const;
  const std::vector<double>& coords() const { return coords_; }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

/* Position on a curve: parameter t in [0,1] along edge `edge`. The
   canonical form keeps t < 1 everywhere except at the curve's endpoint,
   which is (num_edges()-1, 1). */
struct CurveParam {
  std::size_t edge = 0;
  double t = 0.0;

  /* Edge-unit position in [0, n-1]: vertex i sits at parameter i. */
  double global() const { return static_cast<double>(edge) + t; }

  friend bool operator==(const CurveParam& a, const CurveParam& b) {
    return a.global() == b.global();
  }
  friend auto operator<=>(const CurveParam& a, const CurveParam& b) {
    return a.global() <=> b.global();
  }
};

CurveParam canonical(const Curve& c, CurveParam p);
CurveParam vertex_param(const Curve& c, std::size_t vertex);
/* Inverse of CurveParam::global, clamped into [0, n-1]. */
CurveParam param_at_global(const Curve& c, double g);

Point eval(const Curve& c, CurveParam p);
/* 1D evaluation at an edge-unit parameter. */
double value_at(const Curve& c, double g);
/* One coordinate of the point at an edge-unit parameter. */
double coord_at(const Curve& c, std::size_t axis, double g);

double linf_dist(std::span<const double> p, std::span<const double> q);

Curve project(const Curve& c, std::size_t axis);

/* Breakpoint vertices of the decomposition into maximal subcurves that are
   monotone in every coordinate. Always starts at 0 and ends at n-1; piece k
   spans vertices [vertices[k], vertices[k+1]]. */
struct MonotonePieceDecomposition {
  std::vector<std::size_t> vertices;
  std::size_t num_pieces() const { return vertices.size() - 1; }
};

MonotonePieceDecomposition monotone_pieces(const Curve& c);

/* Drops every 1D vertex that is not a monotone-piece endpoint. The result
   has the same image and Frechet distance 0 to the input; every interior
   vertex is a strict local extremum. */
Curve collapse_degenerate_1d(const Curve& c);

double subcurve_diameter_1d(const Curve& c, CurveParam a, CurveParam b);

/* The subcurve between two parameters as a standalone curve. a == b yields
   the two-vertex point curve. */
Curve subcurve(const Curve& c, CurveParam a, CurveParam b);

}  // namespace frechet
