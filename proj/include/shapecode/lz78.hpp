#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shapecode/bitio.hpp"

namespace shapecode {

struct Lz78Stats {
    std::size_t token_count = 0;
};

// Self-delimiting LZ78 token stream. Each token is a flag bit followed by a
// dictionary index (width grows with the dictionary) and, for flag 0, an
// 8-bit literal. A flag-1 token carries only the index of the final phrase
// and must close the stream. Empty input encodes to an empty bit sequence.
BitVec lz78_compress(std::span<const std::uint8_t> data, Lz78Stats* stats = nullptr);

std::vector<std::uint8_t> lz78_decompress(const BitVec& bits);

} // namespace shapecode
