#include "shapecode/lz78.hpp"

#include <bit>
#include <unordered_map>

namespace shapecode {

namespace {

// width of the index field when `count` phrases are already in the dictionary
// (possible values 0..count)
int index_width(std::uint64_t count) {
    return count == 0 ? 0 : std::bit_width(count);
}

} // namespace

BitVec lz78_compress(std::span<const std::uint8_t> data, Lz78Stats* stats) {
    std::unordered_map<std::uint64_t, std::uint32_t> trie; // (node<<8 | byte) -> node
    trie.reserve(data.size() / 2 + 16);
    BitVec out;
    std::uint32_t next_id = 1;
    std::uint32_t cur = 0;
    std::uint64_t tokens = 0;
    auto emit_pair = [&](std::uint32_t idx, std::uint8_t sym) {
        out.push_back(false);
        out.append_bits(idx, index_width(tokens));
        out.append_bits(sym, 8);
        tokens++;
    };
    for (std::uint8_t b : data) {
        std::uint64_t key = (static_cast<std::uint64_t>(cur) << 8) | b;
        auto it = trie.find(key);
        if (it != trie.end()) {
            cur = it->second;
        } else {
            emit_pair(cur, b);
            trie.emplace(key, next_id++);
            cur = 0;
        }
    }
    if (cur != 0) {
        out.push_back(true);
        out.append_bits(cur, index_width(tokens));
        tokens++;
    }
    if (stats) stats->token_count = tokens;
    return out;
}

std::vector<std::uint8_t> lz78_decompress(const BitVec& bits) {
    BitReader rd(bits);
    std::vector<std::pair<std::uint32_t, std::uint8_t>> dict; // (parent, byte)
    std::vector<std::uint8_t> out;
    std::vector<std::uint8_t> phrase;
    auto append_phrase = [&](std::uint32_t idx) {
        phrase.clear();
        while (idx != 0) {
            phrase.push_back(dict[idx - 1].second);
            idx = dict[idx - 1].first;
        }
        out.insert(out.end(), phrase.rbegin(), phrase.rend());
    };
    std::uint64_t tokens = 0;
    while (rd.remaining() > 0) {
        bool final_token = rd.read_bit();
        auto idx = static_cast<std::uint32_t>(rd.read_bits(index_width(tokens)));
        if (idx > tokens) throw CorruptStream("lz78: dictionary index out of range");
        if (final_token) {
            if (idx == 0) throw CorruptStream("lz78: empty final phrase");
            append_phrase(idx);
            if (rd.remaining() != 0) throw CorruptStream("lz78: data after final token");
            return out;
        }
        auto sym = static_cast<std::uint8_t>(rd.read_bits(8));
        append_phrase(idx);
        out.push_back(sym);
        dict.emplace_back(idx, sym);
        tokens++;
    }
    return out;
}

} // namespace shapecode
