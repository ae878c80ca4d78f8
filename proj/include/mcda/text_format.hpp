#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace mcda::detail {

/// 17 significant digits: round-trips any double and keeps written
/// artifacts byte-comparable across runs.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace mcda::detail
