#ifndef REDEILAB_IO_HPP
#define REDEILAB_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "redeilab/geometry.hpp"

namespace redeilab {

/// Textual polynomial format, a_0 first:  p=7; coeffs=[1,0,0,1]
std::string format_polynomial(const Polynomial& P);

struct ParsedPolynomial {
    u64 p = 0;
    std::vector<u64> coeffs;
};
ParsedPolynomial parse_polynomial(std::string_view text);

/// Point file: header line "p=<prime>", then one "x,y" pair per line.
/// Blank lines and lines starting with '#' are ignored. Parse errors carry
/// 1-based line numbers.
struct ParsedPointSet {
    u64 p = 0;
    std::vector<Point> points;
};
ParsedPointSet parse_point_file(std::istream& in);
void write_point_file(std::ostream& out, const PointSet& S);

}  // namespace redeilab

#endif
