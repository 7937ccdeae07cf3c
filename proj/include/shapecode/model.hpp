#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shapecode/errors.hpp"

namespace shapecode {

// A word over an output alphabet: one char per symbol, raw values 0,1,2,...
// (not ASCII digits). std::string gives us cheap appends and lexicographic
// comparison in symbol order.
using Word = std::string;

// Text form uses 0-9a-z, so alphabets up to 36 symbols serialize cleanly.
Word word_from_text(std::string_view text);
std::string word_to_text(const Word& word);
double word_cost(const Word& word, const std::vector<double>& costs);

// Probability mass function over a finite alphabet. Inputs off by at most
// 1e-6 from unit mass are renormalized; anything worse is rejected.
class Pmf {
  public:
    explicit Pmf(std::vector<double> probs, double tolerance = 1e-9);

    int size() const { return static_cast<int>(probs_.size()); }
    double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& probs() const { return probs_; }
    double tolerance() const { return tolerance_; }
    bool strictly_positive() const;

  private:
    std::vector<double> probs_;
    double tolerance_;
};

// Per-symbol channel costs, kept in the caller's symbol order. The sorted
// view is exposed as a permutation so the "w.l.o.g. sorted" convention never
// leaks into reported vectors.
class CostVector {
  public:
    explicit CostVector(std::vector<double> costs);

    int size() const { return static_cast<int>(costs_.size()); }
    double operator[](int i) const { return costs_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& costs() const { return costs_; }
    // Symbol indices ordered by (cost, index).
    const std::vector<int>& ascending() const { return ascending_; }
    double min_cost() const { return costs_[static_cast<std::size_t>(ascending_.front())]; }
    double max_cost() const { return costs_[static_cast<std::size_t>(ascending_.back())]; }
    int min_cost_multiplicity() const;

  private:
    std::vector<double> costs_;
    std::vector<int> ascending_;
};

// An i.i.d. source: symbol pmf plus the block length q fed to the encoder.
struct SourceSpec {
    Pmf pmf;
    int block_length;

    SourceSpec(Pmf p, int q);
    int alphabet_size() const { return pmf.size(); }
    double entropy_per_symbol() const;
    std::uint64_t block_count() const;
    double block_probability(std::uint64_t block_index) const;
};

std::vector<int> block_digits(std::uint64_t block_index, int alphabet_size, int block_length);

// Prefix-free mapping from the u^q source blocks (lexicographic index) to
// output words over {0..v-1}.
class CodeBook {
  public:
    CodeBook(int source_alphabet_size, int block_length, int output_alphabet_size,
             std::vector<Word> entries);

    int source_alphabet_size() const { return u_; }
    int block_length() const { return q_; }
    int output_alphabet_size() const { return v_; }
    const std::vector<Word>& entries() const { return entries_; }
    const Word& entry(std::uint64_t block_index) const { return entries_[block_index]; }
    std::uint64_t domain_size() const { return entries_.size(); }

  private:
    int u_, q_, v_;
    std::vector<Word> entries_;
};

double entropy(const Pmf& p);
double kl_divergence(const Pmf& p, const Pmf& q);
bool check_prefix_free(const std::vector<Word>& entries);

struct CodeBookStats {
    double expected_length;              // E(L)
    double expansion_factor;             // f = E(L)/q
    std::vector<double> expected_counts; // E(N_i) per output symbol
};

CodeBookStats codebook_stats(const CodeBook& book, const SourceSpec& src);

// Greedy prefix parse of a symbol stream against a codebook.
struct ParseResult {
    std::vector<std::uint64_t> blocks; // decoded block indices
    Word residual;                     // trailing partial codeword
};

ParseResult parse_codewords(const CodeBook& book, const Word& symbols);

} // namespace shapecode
