#pragma once

#include <cstdint>
#include <vector>

namespace permrm {

// Bits are stored one per byte; all lengths in this library are powers of two.
using BitVector = std::vector<std::uint8_t>;
using LlrVector = std::vector<double>;

} // namespace permrm
