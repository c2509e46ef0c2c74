#ifndef SISHD_FORMAT_HPP
#define SISHD_FORMAT_HPP

#include <array>
#include <charconv>
#include <string>

namespace sishd {

/// Shortest decimal text that parses back to exactly the same double.
inline std::string format_number(double v)
{
    if (v == 0.0) {
        return "0"; // folds -0
    }
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

/// Fixed-point text for human-readable tables.
inline std::string format_fixed(double v, int digits)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
    return {buf.data(), res.ptr};
}

} // namespace sishd

#endif
