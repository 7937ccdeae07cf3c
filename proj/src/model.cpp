#include "shapecode/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace shapecode {

namespace {

constexpr std::string_view kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

} // namespace

Word word_from_text(std::string_view text) {
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        std::size_t pos = kDigits.find(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (pos == std::string_view::npos)
            throw InvalidArgument("invalid symbol character in word: '" + std::string(1, c) + "'");
        w.push_back(static_cast<char>(pos));
    }
    return w;
}

std::string word_to_text(const Word& word) {
    std::string out;
    out.reserve(word.size());
    for (char s : word) {
        auto v = static_cast<unsigned char>(s);
        if (v >= kDigits.size())
            throw InvalidArgument("symbol value too large for text form");
        out.push_back(kDigits[v]);
    }
    return out;
}

double word_cost(const Word& word, const std::vector<double>& costs) {
    double w = 0.0;
    for (char s : word) {
        auto v = static_cast<unsigned char>(s);
        if (v >= costs.size()) throw InvalidArgument("symbol value outside cost vector");
        w += costs[v];
    }
    return w;
}

Pmf::Pmf(std::vector<double> probs, double tolerance)
    : probs_(std::move(probs)), tolerance_(tolerance) {
    if (probs_.empty()) throw InvalidArgument("pmf must be nonempty");
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw InvalidArgument("pmf entries must be finite and nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw InvalidArgument("pmf sums to " + std::to_string(sum) + ", outside renormalization range");
    for (double& p : probs_) p /= sum;
}

bool Pmf::strictly_positive() const {
    return std::all_of(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; });
}

CostVector::CostVector(std::vector<double> costs) : costs_(std::move(costs)) {
    if (costs_.size() < 2) throw InvalidArgument("cost vector needs at least two symbols");
    for (double c : costs_) {
        if (!std::isfinite(c) || c < 0.0)
            throw InvalidArgument("costs must be finite and nonnegative");
    }
    ascending_.resize(costs_.size());
    std::iota(ascending_.begin(), ascending_.end(), 0);
    std::stable_sort(ascending_.begin(), ascending_.end(),
                     [&](int a, int b) { return costs_[static_cast<std::size_t>(a)] < costs_[static_cast<std::size_t>(b)]; });
}

int CostVector::min_cost_multiplicity() const {
    double m = min_cost();
    int n = 0;
    for (double c : costs_)
        if (c == m) n++;
    return n;
}

SourceSpec::SourceSpec(Pmf p, int q) : pmf(std::move(p)), block_length(q) {
    if (q < 1) throw InvalidArgument("block length must be >= 1");
}

double SourceSpec::entropy_per_symbol() const { return entropy(pmf); }

std::uint64_t SourceSpec::block_count() const {
    std::uint64_t n = 1;
    for (int i = 0; i < block_length; i++) {
        n *= static_cast<std::uint64_t>(pmf.size());
        if (n > (std::uint64_t(1) << 40)) throw InvalidArgument("block domain too large");
    }
    return n;
}

double SourceSpec::block_probability(std::uint64_t block_index) const {
    double p = 1.0;
    auto u = static_cast<std::uint64_t>(pmf.size());
    for (int i = 0; i < block_length; i++) {
        p *= pmf[static_cast<int>(block_index % u)];
        block_index /= u;
    }
    return p;
}

std::vector<int> block_digits(std::uint64_t block_index, int alphabet_size, int block_length) {
    std::vector<int> d(static_cast<std::size_t>(block_length));
    auto u = static_cast<std::uint64_t>(alphabet_size);
    for (int i = block_length - 1; i >= 0; i--) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(block_index % u);
        block_index /= u;
    }
    return d;
}

CodeBook::CodeBook(int source_alphabet_size, int block_length, int output_alphabet_size,
                   std::vector<Word> entries)
    : u_(source_alphabet_size), q_(block_length), v_(output_alphabet_size),
      entries_(std::move(entries)) {
    if (u_ < 2) throw InvalidArgument("source alphabet size must be >= 2");
    if (q_ < 1) throw InvalidArgument("block length must be >= 1");
    if (v_ < 2) throw InvalidArgument("output alphabet size must be >= 2");
    std::uint64_t expect = 1;
    for (int i = 0; i < q_; i++) expect *= static_cast<std::uint64_t>(u_);
    if (entries_.size() != expect)
        throw InvalidArgument("codebook domain incomplete: expected " + std::to_string(expect) +
                              " entries, got " + std::to_string(entries_.size()));
    for (const Word& w : entries_) {
        if (w.empty()) throw InvalidArgument("codebook entries must be nonempty");
        for (char s : w)
            if (static_cast<unsigned char>(s) >= static_cast<unsigned>(v_))
                throw InvalidArgument("codebook entry uses symbol outside output alphabet");
    }
    if (!check_prefix_free(entries_))
        throw InvalidArgument("codebook entries are not prefix-free");
}

double entropy(const Pmf& p) {
    double h = 0.0;
    for (double x : p.probs())
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

double kl_divergence(const Pmf& p, const Pmf& q) {
    if (p.size() != q.size()) throw InvalidArgument("kl_divergence: length mismatch");
    double d = 0.0;
    for (int i = 0; i < p.size(); i++) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0)
            throw SupportMismatch("kl_divergence: p has mass where q is zero");
        d += p[i] * std::log2(p[i] / q[i]);
    }
    return d;
}

bool check_prefix_free(const std::vector<Word>& entries) {
    std::vector<const Word*> sorted;
    sorted.reserve(entries.size());
    for (const Word& w : entries) sorted.push_back(&w);
    std::sort(sorted.begin(), sorted.end(), [](const Word* a, const Word* b) { return *a < *b; });
    for (std::size_t i = 0; i + 1 < sorted.size(); i++) {
        const Word& a = *sorted[i];
        const Word& b = *sorted[i + 1];
        if (a.size() <= b.size() && b.compare(0, a.size(), a) == 0) return false;
    }
    return true;
}

CodeBookStats codebook_stats(const CodeBook& book, const SourceSpec& src) {
    if (book.source_alphabet_size() != src.alphabet_size() ||
        book.block_length() != src.block_length)
        throw InvalidArgument("codebook_stats: codebook/source dimension mismatch");
    CodeBookStats st;
    st.expected_counts.assign(static_cast<std::size_t>(book.output_alphabet_size()), 0.0);
    st.expected_length = 0.0;
    for (std::uint64_t b = 0; b < book.domain_size(); b++) {
        double p = src.block_probability(b);
        const Word& w = book.entry(b);
        st.expected_length += p * static_cast<double>(w.size());
        for (char s : w) st.expected_counts[static_cast<unsigned char>(s)] += p;
    }
    st.expansion_factor = st.expected_length / src.block_length;
    return st;
}

ParseResult parse_codewords(const CodeBook& book, const Word& symbols) {
    // trie over entries
    struct Node {
        std::vector<std::int32_t> child;
        std::int64_t block = -1;
    };
    std::vector<Node> trie(1);
    int v = book.output_alphabet_size();
    trie[0].child.assign(static_cast<std::size_t>(v), -1);
    for (std::uint64_t b = 0; b < book.domain_size(); b++) {
        std::size_t n = 0;
        for (char s : book.entry(b)) {
            auto c = static_cast<std::size_t>(static_cast<unsigned char>(s));
            if (trie[n].child[c] < 0) {
                trie[n].child[c] = static_cast<std::int32_t>(trie.size());
                trie.emplace_back();
                trie.back().child.assign(static_cast<std::size_t>(v), -1);
            }
            n = static_cast<std::size_t>(trie[n].child[c]);
        }
        trie[n].block = static_cast<std::int64_t>(b);
    }
    ParseResult out;
    std::size_t n = 0;
    Word partial;
    for (char s : symbols) {
        auto c = static_cast<unsigned char>(s);
        if (c >= static_cast<unsigned>(v)) throw CorruptStream("symbol outside output alphabet");
        std::int32_t nxt = trie[n].child[c];
        if (nxt < 0) throw CorruptStream("stream leaves codeword trie");
        n = static_cast<std::size_t>(nxt);
        partial.push_back(s);
        if (trie[n].block >= 0) {
            out.blocks.push_back(static_cast<std::uint64_t>(trie[n].block));
            n = 0;
            partial.clear();
        }
    }
    out.residual = std::move(partial);
    return out;
}

} // namespace shapecode
