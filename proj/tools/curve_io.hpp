#pragma once

#include <iosfwd>
#include <string>

#include "frechet/curve.hpp"

namespace frechet::cli {

/* Curve file layout, plain decimal text:
     line 1: dimension d
     line 2: vertex count n
     lines 3..n+2: d space-separated coordinates each
   Coordinates print with enough digits that parse(serialize(c)) == c
   bit-exactly. */

std::string serialize_curve(const Curve& c);

/* `name` tags parse errors; failures mention the 1-based line number. */
Curve parse_curve(std::istream& in, const std::string& name);

Curve read_curve_file(const std::string& path);
void write_curve_file(const std::string& path, const Curve& c);

}  // namespace frechet::cli
