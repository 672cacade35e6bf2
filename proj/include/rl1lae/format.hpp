#ifndef RL1LAE_FORMAT_HPP
#define RL1LAE_FORMAT_HPP

#include <charconv>
#include <string>

namespace rl1lae {

/// Shortest decimal that parses back to the same double ("1", "0.1", "-10").
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace rl1lae

#endif  // RL1LAE_FORMAT_HPP
