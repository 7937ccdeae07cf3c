#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shapecode/errors.hpp"

namespace shapecode {

// Growable bit sequence, MSB-first within each byte.
class BitVec {
  public:
    BitVec() = default;

    void push_back(bool bit) {
        if (nbits_ % 8 == 0) bytes_.push_back(0);
        if (bit) bytes_[nbits_ / 8] |= static_cast<std::uint8_t>(0x80u >> (nbits_ % 8));
        nbits_++;
    }

    // append the low `width` bits of value, most significant first
    void append_bits(std::uint64_t value, int width) {
        for (int i = width - 1; i >= 0; i--) push_back((value >> i) & 1u);
    }

    bool bit(std::size_t i) const { return (bytes_[i / 8] >> (7 - (i % 8))) & 1u; }
    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    static BitVec from_bytes(std::span<const std::uint8_t> data, std::size_t nbits) {
        if (data.size() * 8 < nbits) throw InvalidArgument("bit count exceeds byte data");
        BitVec b;
        b.bytes_.assign(data.begin(), data.end());
        b.bytes_.resize((nbits + 7) / 8);
        b.nbits_ = nbits;
        return b;
    }

    bool operator==(const BitVec& o) const {
        if (nbits_ != o.nbits_) return false;
        for (std::size_t i = 0; i < nbits_; i++)
            if (bit(i) != o.bit(i)) return false;
        return true;
    }

  private:
    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

class BitReader {
  public:
    explicit BitReader(const BitVec& bits) : bits_(bits) {}

    std::size_t remaining() const { return bits_.size() - pos_; }

    bool read_bit() {
        if (pos_ >= bits_.size()) throw CorruptStream("bit stream truncated");
        return bits_.bit(pos_++);
    }

    std::uint64_t read_bits(int width) {
        std::uint64_t v = 0;
        for (int i = 0; i < width; i++) v = (v << 1) | (read_bit() ? 1u : 0u);
        return v;
    }

  private:
    const BitVec& bits_;
    std::size_t pos_ = 0;
};

} // namespace shapecode
