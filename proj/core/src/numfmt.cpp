#include "gmid/numfmt.hpp"

#include <array>
#include <charconv>
#include <system_error>

namespace gmid {

namespace {

std::string to_chars_string(double value, std::chars_format fmt) {
    std::array<char, 512> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, fmt);
    if (ec != std::errc{}) {
        // Only reachable for magnitudes far outside anything this tool produces.
        auto [p2, ec2] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
        (void)ec2;
        return std::string(buf.data(), p2);
    }
    return std::string(buf.data(), ptr);
}

} // namespace

std::string format_number(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    (void)ec;
    return std::string(buf.data(), ptr);
}

std::string format_fixed(double value) {
    return to_chars_string(value, std::chars_format::fixed);
}

bool parse_number(std::string_view text, double& out) {
    if (text.empty()) return false;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace gmid
