#include "cnsp/numfmt.hpp"

#include <array>
#include <charconv>

namespace cnsp {

std::string format_double(double value) {
    std::array<char, 32> buffer{};
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ptr);
}

} // namespace cnsp
