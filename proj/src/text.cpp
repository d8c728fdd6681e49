#include "graderoute/text.hpp"

#include <cctype>
#include <charconv>
#include <istream>

namespace graderoute {

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

template <typename T>
bool parse_with_from_chars(std::string_view token, T& out) {
    if (token.empty()) {
        return false;
    }
    auto res = std::from_chars(token.data(), token.data() + token.size(), out);
    return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

} // namespace

bool parse_double(std::string_view token, double& out) {
    return parse_with_from_chars(token, out);
}

bool parse_u32(std::string_view token, std::uint32_t& out) {
    return parse_with_from_chars(token, out);
}

bool parse_u64(std::string_view token, std::uint64_t& out) {
    return parse_with_from_chars(token, out);
}

bool parse_i32(std::string_view token, std::int32_t& out) {
    return parse_with_from_chars(token, out);
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i > start) {
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

std::vector<std::string_view> split_on(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

bool LineScanner::next() {
    while (std::getline(in_, line_)) {
        ++line_number_;
        std::size_t i = 0;
        while (i < line_.size() && std::isspace(static_cast<unsigned char>(line_[i]))) {
            ++i;
        }
        if (i == line_.size() || line_[i] == '#') {
            continue;
        }
        return true;
    }
    return false;
}

} // namespace graderoute
