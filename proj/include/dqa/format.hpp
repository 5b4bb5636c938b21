#pragma once

#include <cstdio>
#include <string>

namespace dqa {

/// Fixed 4-decimal rendering used by every CSV surface.
inline std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

inline std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

}  // namespace dqa
