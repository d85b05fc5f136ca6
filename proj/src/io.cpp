#include "redeilab/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace redeilab {

namespace {

void skip_ws(std::string_view& s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
}

bool eat(std::string_view& s, std::string_view token) {
    skip_ws(s);
    if (s.substr(0, token.size()) != token) return false;
    s.remove_prefix(token.size());
    return true;
}

u64 parse_u64(std::string_view& s, const char* what) {
    skip_ws(s);
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data())
        throw std::invalid_argument(std::string("expected ") + what);
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    return v;
}

}  // namespace

std::string format_polynomial(const Polynomial& P) {
    std::ostringstream os;
    os << "p=" << P.p() << "; coeffs=[";
    const auto& c = P.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << c[i];
    }
    os << "]";
    return os.str();
}

ParsedPolynomial parse_polynomial(std::string_view text) {
    ParsedPolynomial out;
    std::string_view s = text;
    if (!eat(s, "p")) throw std::invalid_argument("polynomial format: expected 'p='");
    if (!eat(s, "=")) throw std::invalid_argument("polynomial format: expected 'p='");
    out.p = parse_u64(s, "modulus");
    if (!eat(s, ";")) throw std::invalid_argument("polynomial format: expected ';' after modulus");
    if (!eat(s, "coeffs")) throw std::invalid_argument("polynomial format: expected 'coeffs='");
    if (!eat(s, "=")) throw std::invalid_argument("polynomial format: expected 'coeffs='");
    if (!eat(s, "[")) throw std::invalid_argument("polynomial format: expected '['");
    skip_ws(s);
    if (!eat(s, "]")) {
        for (;;) {
            out.coeffs.push_back(parse_u64(s, "coefficient"));
            if (eat(s, ",")) continue;
            if (eat(s, "]")) break;
            throw std::invalid_argument("polynomial format: expected ',' or ']'");
        }
    }
    skip_ws(s);
    if (!s.empty()) throw std::invalid_argument("polynomial format: trailing input");
    return out;
}

ParsedPointSet parse_point_file(std::istream& in) {
    ParsedPointSet out;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = line;
        if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
        skip_ws(s);
        if (s.empty() || s.front() == '#') continue;
        try {
            if (!have_header) {
                if (!eat(s, "p") || !eat(s, "=")) throw std::invalid_argument("expected header 'p=<prime>'");
                out.p = parse_u64(s, "modulus");
                skip_ws(s);
                if (!s.empty()) throw std::invalid_argument("trailing input after header");
                have_header = true;
                continue;
            }
            Point q;
            q.x = parse_u64(s, "x coordinate");
            if (!eat(s, ",")) throw std::invalid_argument("expected ',' between coordinates");
            q.y = parse_u64(s, "y coordinate");
            skip_ws(s);
            if (!s.empty()) throw std::invalid_argument("trailing input after point");
            out.points.push_back(q);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("point file line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_header) throw std::invalid_argument("point file: missing 'p=<prime>' header");
    return out;
}

void write_point_file(std::ostream& out, const PointSet& S) {
    out << "p=" << S.p() << "\n";
    for (const Point& q : S.points()) out << q.x << "," << q.y << "\n";
}

}  // namespace redeilab
