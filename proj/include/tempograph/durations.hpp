#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tempograph {

/// Parses `<int><unit>` durations with units s/m/h/d/w/y (y = 365d).
/// A bare integer is taken as seconds.
inline std::optional<std::int64_t> parse_duration(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::int64_t mult = 1;
    switch (s.back()) {
        case 's': mult = 1; break;
        case 'm': mult = 60; break;
        case 'h': mult = 3600; break;
        case 'd': mult = 86400; break;
        case 'w': mult = 7 * 86400; break;
        case 'y': mult = 365LL * 86400; break;
        default:
            if (s.back() < '0' || s.back() > '9') return std::nullopt;
            mult = 0;  // bare seconds
    }
    std::string_view digits = mult == 0 ? s : s.substr(0, s.size() - 1);
    if (mult == 0) mult = 1;
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || p != digits.data() + digits.size() || v <= 0) return std::nullopt;
    return v * mult;
}

/// Formats a duration back into the shortest exact `<int><unit>` form.
inline std::string format_duration(std::int64_t seconds) {
    struct Unit {
        std::int64_t s;
        char c;
    };
    for (Unit u : {Unit{365LL * 86400, 'y'}, Unit{7 * 86400, 'w'}, Unit{86400, 'd'},
                   Unit{3600, 'h'}, Unit{60, 'm'}}) {
        if (seconds % u.s == 0) return std::to_string(seconds / u.s) + u.c;
    }
    return std::to_string(seconds) + 's';
}

}  // namespace tempograph
