#include "sievekit/format.hpp"

#include "sievekit/error.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace sievekit {

std::string format_real(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_real(std::string_view text)
{
    text = trim(text);
    if (text == "inf" || text == "+inf")
        return std::numeric_limits<double>::infinity();
    if (text == "-inf")
        return -std::numeric_limits<double>::infinity();
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw DataError("not a real number: '" + std::string(text) + "'");
    return value;
}

unsigned long long parse_unsigned(std::string_view text)
{
    text = trim(text);
    unsigned long long value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw DataError("not a non-negative integer: '" + std::string(text) + "'");
    return value;
}

std::string_view trim(std::string_view text)
{
    constexpr std::string_view ws = " \t\r\n\f\v";
    auto first = text.find_first_not_of(ws);
    if (first == std::string_view::npos)
        return {};
    auto last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view text, char sep)
{
    std::vector<std::string> out;
    while (true) {
        auto pos = text.find(sep);
        auto piece = trim(text.substr(0, pos));
        if (!piece.empty())
            out.emplace_back(piece);
        if (pos == std::string_view::npos)
            break;
        text.remove_prefix(pos + 1);
    }
    return out;
}

} // namespace sievekit
