#include "shapecode/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "shapecode/lz78.hpp"

namespace shapecode {

namespace {

constexpr char kMagic[4] = {'S', 'H', 'P', 'C'};

int bits_per_symbol(int v) { return std::bit_width(static_cast<unsigned>(v - 1)); }

void put_u64_le(std::vector<std::uint8_t>& out, std::uint64_t x) {
    for (int i = 0; i < 8; i++) out.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
}

std::uint64_t get_u64_le(std::span<const std::uint8_t> in, std::size_t off) {
    std::uint64_t x = 0;
    for (int i = 0; i < 8; i++) x |= static_cast<std::uint64_t>(in[off + i]) << (8 * i);
    return x;
}

int tree_k_bits(const CodeTree& tree) {
    std::uint64_t k = tree.leaf_count();
    if (k < 2 || (k & (k - 1)) != 0)
        throw InvalidArgument("shaping tree must have a power-of-two leaf count");
    return std::bit_width(k) - 1;
}

} // namespace

std::vector<std::uint8_t> ShapedStream::serialize() const {
    std::vector<std::uint8_t> out;
    out.reserve(22 + symbols.size() / 2);
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(version);
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(k_bits));
    put_u64_le(out, tree_hash);
    put_u64_le(out, payload_bits);
    BitVec packed;
    int bps = bits_per_symbol(v);
    for (char s : symbols) packed.append_bits(static_cast<unsigned char>(s), bps);
    out.insert(out.end(), packed.bytes().begin(), packed.bytes().end());
    return out;
}

ShapedStream ShapedStream::deserialize(std::span<const std::uint8_t> data) {
    if (data.size() < 23) throw CorruptStream("shaped stream shorter than header");
    if (std::memcmp(data.data(), kMagic, 4) != 0)
        throw CorruptStream("shaped stream magic mismatch");
    ShapedStream s;
    s.version = data[4];
    if (s.version != 1) throw CorruptStream("unsupported shaped stream version");
    s.v = data[5];
    s.k_bits = data[6];
    if (s.v < 2 || s.k_bits < 1 || s.k_bits > 24)
        throw CorruptStream("shaped stream header fields out of range");
    s.tree_hash = get_u64_le(data, 7);
    s.payload_bits = get_u64_le(data, 15);
    std::span<const std::uint8_t> payload = data.subspan(23);
    int bps = bits_per_symbol(s.v);
    BitVec bits = BitVec::from_bytes(payload, payload.size() * 8);
    BitReader rd(bits);
    std::size_t count = payload.size() * 8 / static_cast<std::size_t>(bps);
    s.symbols.reserve(count);
    for (std::size_t i = 0; i < count; i++) {
        auto sym = rd.read_bits(bps);
        if (sym >= static_cast<std::uint64_t>(s.v))
            throw CorruptStream("shaped stream contains an out-of-range symbol");
        s.symbols.push_back(static_cast<char>(sym));
    }
    return s;
}

ShapedStream shape_encode(const BitVec& bits, const CodeTree& tree) {
    int k_bits = tree_k_bits(tree);
    ShapedStream s;
    s.v = tree.output_alphabet_size();
    s.k_bits = k_bits;
    s.tree_hash = tree.hash();
    s.payload_bits = bits.size();
    std::uint64_t blocks = (bits.size() + static_cast<std::size_t>(k_bits) - 1) /
                           static_cast<std::size_t>(k_bits);
    for (std::uint64_t b = 0; b < blocks; b++) {
        std::uint64_t value = 0;
        for (int i = 0; i < k_bits; i++) {
            std::size_t pos = b * static_cast<std::uint64_t>(k_bits) + static_cast<std::uint64_t>(i);
            bool bit = pos < bits.size() && bits.bit(pos);
            value = (value << 1) | (bit ? 1u : 0u);
        }
        tree.append_leaf_path(value, s.symbols);
    }
    return s;
}

BitVec shape_decode(const ShapedStream& stream, const CodeTree& tree) {
    int k_bits = tree_k_bits(tree);
    if (stream.v != tree.output_alphabet_size() || stream.k_bits != k_bits)
        throw TreeMismatch("shaped stream was produced with a different tree geometry");
    if (stream.tree_hash != tree.hash())
        throw TreeMismatch("shaped stream tree hash does not match");
    std::uint64_t blocks = (stream.payload_bits + static_cast<std::uint64_t>(k_bits) - 1) /
                           static_cast<std::uint64_t>(k_bits);
    CodeTree::Decoded dec = tree.decode(stream.symbols, blocks);
    if (dec.indices.size() < blocks)
        throw CorruptStream("shaped stream truncated: fewer codewords than header promises");
    // residual symbols may only be byte padding: all zero, less than a byte
    int bps = bits_per_symbol(stream.v);
    if (static_cast<std::size_t>(dec.residual.size()) * static_cast<std::size_t>(bps) >= 8)
        throw CorruptStream("shaped stream has trailing data");
    for (char r : dec.residual)
        if (r != 0) throw CorruptStream("shaped stream has nonzero trailing symbols");
    BitVec out;
    for (std::uint64_t b = 0; b < blocks; b++) {
        std::uint64_t value = dec.indices[b];
        int take = k_bits;
        if (b == blocks - 1) {
            auto used = static_cast<int>(stream.payload_bits - b * static_cast<std::uint64_t>(k_bits));
            // verify pad bits are zero
            for (int i = used; i < k_bits; i++)
                if ((value >> (k_bits - 1 - i)) & 1u)
                    throw CorruptStream("nonzero padding in final block");
            take = used;
        }
        for (int i = 0; i < take; i++) out.push_back((value >> (k_bits - 1 - i)) & 1u);
    }
    return out;
}

std::vector<std::uint8_t> pipeline_encode(std::span<const std::uint8_t> data,
                                          const CodeTree& tree) {
    BitVec bits = lz78_compress(data);
    return shape_encode(bits, tree).serialize();
}

std::vector<std::uint8_t> pipeline_decode(std::span<const std::uint8_t> stream,
                                          const CodeTree& tree) {
    ShapedStream s = ShapedStream::deserialize(stream);
    BitVec bits = shape_decode(s, tree);
    return lz78_decompress(bits);
}

PipelineReport pipeline_report(std::span<const std::uint8_t> data, const CostVector& c,
                               int k_bits, double f_target) {
    if (!(f_target > 0.0)) throw InvalidArgument("f_target must be positive");
    PipelineReport r;
    r.source_bits = data.size() * 8;
    BitVec bits = lz78_compress(data);
    r.compressed_bits = bits.size();
    r.compression_ratio_g = r.source_bits ? static_cast<double>(r.compressed_bits) /
                                                static_cast<double>(r.source_bits)
                                          : 1.0;
    r.f_back_target = f_target / r.compression_ratio_g;
    r.back_solution = min_avg_cost(c, 1.0, r.f_back_target); // uniform binary back-end
    CostVector cp = equivalent_cost_vector(r.back_solution.p_hat);
    r.equivalent_costs = cp.costs();
    CodeTree tree = modified_varn_build(k_bits, cp);
    ShapedStream stream = shape_encode(bits, tree);
    r.output_symbols = stream.symbols.size();
    std::vector<double> counts(static_cast<std::size_t>(c.size()), 0.0);
    for (char s : stream.symbols) counts[static_cast<unsigned char>(s)] += 1.0;
    r.shaped_pmf.assign(static_cast<std::size_t>(c.size()), 0.0);
    if (r.output_symbols > 0) {
        double cost = 0.0;
        for (int i = 0; i < c.size(); i++) {
            r.shaped_pmf[static_cast<std::size_t>(i)] =
                counts[static_cast<std::size_t>(i)] / static_cast<double>(r.output_symbols);
            cost += counts[static_cast<std::size_t>(i)] * c[i];
        }
        r.avg_cost_measured = cost / static_cast<double>(r.output_symbols);
    }
    r.f_back_measured = r.compressed_bits ? static_cast<double>(r.output_symbols) /
                                                static_cast<double>(r.compressed_bits)
                                          : 0.0;
    r.overall_expansion = r.compression_ratio_g * r.f_back_measured;
    r.max_pmf_deviation = 0.0;
    for (int i = 0; i < c.size(); i++)
        r.max_pmf_deviation = std::max(
            r.max_pmf_deviation,
            std::abs(r.shaped_pmf[static_cast<std::size_t>(i)] - r.back_solution.p_hat[i]));
    return r;
}

} // namespace shapecode
