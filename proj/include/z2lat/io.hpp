#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "z2lat/errors.hpp"
#include "z2lat/point_set.hpp"

namespace z2lat {

// Shared set-file format:
//   # d=<d> n=<count>
//   <c1>,<c2>,...,<cd>        one point per line, lexicographic order
// Extra '#' lines are ignored on read.

inline std::string format_point(std::span<const std::int64_t> p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(p[i]);
    }
    return s;
}

inline Point parse_point(std::string_view line) {
    std::vector<std::int64_t> coords;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        std::string_view tok = line.substr(pos, comma == std::string_view::npos ? line.size() - pos
                                                                                : comma - pos);
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw parse_error("bad coordinate '" + std::string(tok) + "'");
        coords.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return Point(std::move(coords));
}

inline void write_set(std::ostream& os, const PointSet& s) {
    os << "# d=" << s.dim() << " n=" << s.size() << "\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        os << format_point(s.row(i)) << "\n";
}

inline PointSet read_set(std::istream& is) {
    std::string line;
    int d = -1;
    std::int64_t declared = -1;
    std::vector<std::int64_t> flat;
    std::size_t count = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (d < 0) {
                int pd = 0;
                long long pn = -1;
                if (std::sscanf(line.c_str(), "# d=%d n=%lld", &pd, &pn) == 2) {
                    d = pd;
                    declared = pn;
                }
            }
            continue;
        }
        Point p = parse_point(line);
        if (d < 0) throw parse_error("point data before '# d=<d> n=<n>' header");
        if (p.dim() != d) throw parse_error("point of dimension " + std::to_string(p.dim()) +
                                            " in a d=" + std::to_string(d) + " file");
        flat.insert(flat.end(), p.c.begin(), p.c.end());
        ++count;
    }
    if (d < 0) throw parse_error("missing '# d=<d> n=<n>' header");
    if (declared >= 0 && static_cast<std::int64_t>(count) != declared)
        throw parse_error("header declares n=" + std::to_string(declared) + " but file has " +
                          std::to_string(count) + " points");
    return PointSet::from_flat(d, std::move(flat));
}

} // namespace z2lat
