#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shapecode/bitio.hpp"
#include "shapecode/model.hpp"
#include "shapecode/optimizer.hpp"
#include "shapecode/varn.hpp"

namespace shapecode {

// Shaped symbol stream with a self-describing header. The wire format is
// fixed: magic "SHPC" | version u8 | v u8 | k_bits u8 | tree hash u64 LE |
// payload bit count u64 LE | packed symbols, ceil(log2 v) bits each,
// MSB-first, zero-padded to a byte boundary. The bit count is the number of
// source bits fed to the shaper, so decoding strips the final block padding
// exactly.
struct ShapedStream {
    std::uint8_t version = 1;
    int v = 0;
    int k_bits = 0;
    std::uint64_t tree_hash = 0;
    std::uint64_t payload_bits = 0;
    Word symbols;

    std::vector<std::uint8_t> serialize() const;
    static ShapedStream deserialize(std::span<const std::uint8_t> data);
};

// Maps k_bits-sized blocks of `bits` (final block zero-padded) onto leaves of
// a tree with exactly 2^k_bits leaves.
ShapedStream shape_encode(const BitVec& bits, const CodeTree& tree);

// Exact inverse, including pad removal. The header must match the tree.
BitVec shape_decode(const ShapedStream& stream, const CodeTree& tree);

// Whole pipeline for files: LZ78 then shaping, and back.
std::vector<std::uint8_t> pipeline_encode(std::span<const std::uint8_t> data,
                                          const CodeTree& tree);
std::vector<std::uint8_t> pipeline_decode(std::span<const std::uint8_t> stream,
                                          const CodeTree& tree);

// Compress-then-shape experiment: measure the compression ratio g, solve the
// rate-constrained optimum at f' = f_target/g for a uniform binary back-end,
// build the equivalent-cost modified Varn tree, shape, and compare the
// achieved statistics with the analytic ones. f_target is in output symbols
// per source bit.
struct PipelineReport {
    double compression_ratio_g = 0.0;  // compressed bits / source bits
    double f_back_target = 0.0;        // f_target / g
    ShapingSolution back_solution;     // analytic optimum at f_back_target
    std::vector<double> equivalent_costs;
    double f_back_measured = 0.0;      // output symbols / compressed bit
    double overall_expansion = 0.0;    // g * f_back_measured
    double avg_cost_measured = 0.0;    // empirical sum N_i C_i / L
    std::vector<double> shaped_pmf;    // empirical N_i / L
    double max_pmf_deviation = 0.0;    // max |empirical - analytic|
    std::uint64_t source_bits = 0;
    std::uint64_t compressed_bits = 0;
    std::uint64_t output_symbols = 0;
};

PipelineReport pipeline_report(std::span<const std::uint8_t> data, const CostVector& c,
                               int k_bits, double f_target);

} // namespace shapecode
