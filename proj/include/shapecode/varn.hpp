#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shapecode/model.hpp"

namespace shapecode {

// Prefix-free code tree over an output alphabet with per-symbol edge costs.
// Leaves are kept in canonical order: ascending (cost, length, path); that
// order defines leaf indices for encoding, decoding and block assignment.
class CodeTree {
  public:
    struct Leaf {
        Word path;
        double cost;
    };

    struct Decoded {
        std::vector<std::uint64_t> indices;
        Word residual;
    };

    static CodeTree from_leaf_paths(std::vector<Word> paths, CostVector costs);
    static CodeTree from_json(const std::string& text);

    int output_alphabet_size() const { return costs_.size(); }
    const CostVector& costs() const { return costs_; }
    const std::vector<Leaf>& leaves() const { return leaves_; }
    std::uint64_t leaf_count() const { return leaves_.size(); }
    double mean_leaf_cost() const;
    double mean_leaf_length() const;

    void append_leaf_path(std::uint64_t leaf_index, Word& out) const;
    // Greedy root-to-leaf parse; trailing partial path comes back as
    // residual. Parsing stops after max_leaves codewords, leaving the rest
    // of the stream in the residual.
    Decoded decode(const Word& symbols,
                   std::uint64_t max_leaves = UINT64_MAX) const;

    // Compact JSON {"v":..,"costs":[..],"leaves":[..]} with text paths sorted
    // lexicographically; byte-stable across runs.
    std::string canonical_json() const;
    std::uint64_t hash() const; // FNV-1a 64 over canonical_json()

  private:
    friend CodeTree varn_build(std::uint64_t, const CostVector&);
    friend CodeTree modified_varn_build(int, const CostVector&);

    struct Node {
        std::vector<std::int32_t> child; // per symbol, -1 if absent
        std::int64_t leaf_index = -1;    // canonical index when leaf
    };

    explicit CodeTree(CostVector costs) : costs_(std::move(costs)) {}
    void index_from_paths(std::vector<Word> paths); // builds nodes_ + leaves_

    CostVector costs_;
    std::vector<Node> nodes_;
    std::vector<Leaf> leaves_;
};

// Minimum-total-cost prefix tree with `codebook_size` equiprobable leaves.
// Binary alphabets use the cheapest-leaf splitting construction; larger
// alphabets an exact search (codebook_size capped at 1024 there).
CodeTree varn_build(std::uint64_t codebook_size, const CostVector& c);

// Appendix-style power-of-two codebook: exhaustive cheapest-leaf tree with
// M = 2^k_bits + delta leaves, then the delta most expensive leaves trimmed.
// Every remaining leaf cost is bounded by log2(M)/mu + max C_i.
CodeTree modified_varn_build(int k_bits, const CostVector& c);

// Deterministic block assignment: i-th lexicographic source block onto the
// i-th canonical leaf.
CodeBook tree_to_codebook(const CodeTree& tree, int u, int q);

} // namespace shapecode
