#ifndef GRADEROUTE_TEXT_HPP
#define GRADEROUTE_TEXT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace graderoute {

// Shortest decimal form that parses back to the exact same double.
// Re-saving a loaded file therefore reproduces it byte for byte.
std::string format_double(double value);

// Strict whole-token conversions; return false on any trailing garbage.
bool parse_double(std::string_view token, double& out);
bool parse_u32(std::string_view token, std::uint32_t& out);
bool parse_u64(std::string_view token, std::uint64_t& out);
bool parse_i32(std::string_view token, std::int32_t& out);

std::vector<std::string_view> split_ws(std::string_view line);
std::vector<std::string_view> split_on(std::string_view text, char sep);

// Iterates the lines of a text stream, skipping blanks and '#' comments
// while keeping the 1-based line number for error reporting.
class LineScanner {
public:
    explicit LineScanner(std::istream& in) : in_(in) {}

    // Advances to the next significant line. Returns false at end of input.
    bool next();

    const std::string& line() const { return line_; }
    int line_number() const { return line_number_; }

private:
    std::istream& in_;
    std::string line_;
    int line_number_ = 0;
};

} // namespace graderoute

#endif
