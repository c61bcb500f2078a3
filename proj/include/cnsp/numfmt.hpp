#pragma once

#include <string>

namespace cnsp {

// Shortest round-trip decimal form of a double (std::to_chars), identical
// on every platform, so serialized reports stay byte-stable.
std::string format_double(double value);

} // namespace cnsp
