#include "shapecode/metrics.hpp"

#include <cmath>

namespace shapecode {

namespace {

void require_target(const CodeBook& book, const Pmf& target) {
    if (target.size() != book.output_alphabet_size())
        throw InvalidArgument("target pmf length does not match output alphabet");
    if (!target.strictly_positive())
        throw InvalidArgument("target pmf has a zero-probability symbol");
}

} // namespace

Pmf asymptotic_occurrence(const CodeBook& book, const SourceSpec& src) {
    CodeBookStats st = codebook_stats(book, src);
    if (!(st.expected_length > 0.0)) throw InvalidArgument("expected length is zero");
    std::vector<double> p(st.expected_counts.size());
    for (std::size_t i = 0; i < p.size(); i++) p[i] = st.expected_counts[i] / st.expected_length;
    return Pmf(std::move(p));
}

double gef(const CodeBook& book, const SourceSpec& src, const Pmf& target) {
    require_target(book, target);
    CodeBookStats st = codebook_stats(book, src);
    double cross = 0.0; // sum_i p_hat_i log2 target_i, scaled by E(L)
    for (std::size_t i = 0; i < st.expected_counts.size(); i++)
        cross += st.expected_counts[i] * std::log2(target[static_cast<int>(i)]);
    double f = st.expansion_factor;
    double log2v = std::log2(static_cast<double>(book.output_alphabet_size()));
    return -f * (cross / st.expected_length) / log2v;
}

double i_divergence(const CodeBook& book, const SourceSpec& src, const Pmf& target) {
    require_target(book, target);
    double i = 0.0;
    for (std::uint64_t b = 0; b < book.domain_size(); b++) {
        double p = src.block_probability(b);
        if (p == 0.0) continue;
        double log_leaf = 0.0;
        for (char s : book.entry(b)) log_leaf += std::log2(target[static_cast<unsigned char>(s)]);
        i += p * (std::log2(p) - log_leaf);
    }
    return i;
}

double normalized_i_divergence(const CodeBook& book, const SourceSpec& src, const Pmf& target) {
    require_target(book, target);
    CodeBookStats st = codebook_stats(book, src);
    double via_i = i_divergence(book, src, target) / st.expected_length;
    // independent route: sum_i p_hat_i (-log2 target_i) - h/f
    double avg_cost = 0.0;
    for (std::size_t i = 0; i < st.expected_counts.size(); i++)
        avg_cost -= st.expected_counts[i] * std::log2(target[static_cast<int>(i)]);
    avg_cost /= st.expected_length;
    double via_phat = avg_cost - src.entropy_per_symbol() / st.expansion_factor;
    if (std::abs(via_i - via_phat) > 1e-9 * std::max(1.0, std::abs(via_i)))
        throw Error("normalized_i_divergence: dual computations disagree");
    return via_i;
}

double kl_gap(const CodeBook& book, const SourceSpec& src) {
    CodeBookStats st = codebook_stats(book, src);
    if (!(st.expected_length > 0.0)) throw InvalidArgument("expected length is zero");
    Pmf p_hat = asymptotic_occurrence(book, src);
    double h_y = src.block_length * src.entropy_per_symbol() / st.expected_length;
    return entropy(p_hat) - h_y;
}

double serial_kl(const Word& stream, const Pmf& target, int order) {
    if (order < 1 || order > 3) throw InvalidArgument("serial_kl order must be 1, 2 or 3");
    if (stream.size() <= static_cast<std::size_t>(order))
        throw InvalidArgument("stream too short for requested order");
    if (!target.strictly_positive())
        throw InvalidArgument("target pmf has a zero-probability symbol");
    int v = target.size();
    std::size_t patterns = 1;
    for (int i = 0; i < order; i++) patterns *= static_cast<std::size_t>(v);
    std::vector<std::uint64_t> counts(patterns, 0);
    std::size_t windows = stream.size() - static_cast<std::size_t>(order) + 1;
    for (std::size_t i = 0; i < windows; i++) {
        std::size_t idx = 0;
        for (int j = 0; j < order; j++) {
            auto s = static_cast<unsigned char>(stream[i + static_cast<std::size_t>(j)]);
            if (s >= static_cast<unsigned>(v)) throw InvalidArgument("stream symbol outside target alphabet");
            idx = idx * static_cast<std::size_t>(v) + s;
        }
        counts[idx]++;
    }
    double d = 0.0;
    for (std::size_t idx = 0; idx < patterns; idx++) {
        if (counts[idx] == 0) continue; // 0 log 0 = 0
        double emp = static_cast<double>(counts[idx]) / static_cast<double>(windows);
        double ref = 1.0;
        std::size_t rem = idx;
        for (int j = 0; j < order; j++) {
            ref *= target[static_cast<int>(rem % static_cast<std::size_t>(v))];
            rem /= static_cast<std::size_t>(v);
        }
        d += emp * std::log2(emp / ref);
    }
    return d;
}

MetricsReport evaluate(const CodeBook& book, const SourceSpec& src, const Pmf& target,
                       const std::optional<CostVector>& costs, const Word* stream) {
    require_target(book, target);
    MetricsReport r;
    CodeBookStats st = codebook_stats(book, src);
    r.p_hat = asymptotic_occurrence(book, src);
    r.f = st.expansion_factor;
    if (costs) {
        if (costs->size() != book.output_alphabet_size())
            throw InvalidArgument("cost vector length does not match output alphabet");
        double a = 0.0;
        for (int i = 0; i < costs->size(); i++) a += r.p_hat[i] * (*costs)[i];
        r.avg_cost = a;
    } else {
        double a = 0.0;
        for (int i = 0; i < target.size(); i++) a -= r.p_hat[i] * std::log2(target[i]);
        r.avg_cost = a;
    }
    r.total_cost = r.f * r.avg_cost;
    r.gef = gef(book, src, target);
    r.i_div = i_divergence(book, src, target);
    r.norm_i_div = normalized_i_divergence(book, src, target);
    r.kl_gap = kl_gap(book, src);
    if (stream) {
        for (int m = 1; m <= 3; m++) r.serial_kl.push_back(serial_kl(*stream, target, m));
    }
    return r;
}

} // namespace shapecode
