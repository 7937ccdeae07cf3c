#include "shapecode/gsf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shapecode/optimizer.hpp"

namespace shapecode {

namespace {

constexpr std::uint64_t kDomainCap = std::uint64_t(1) << 20;

} // namespace

GsfCode gsf_build(const SourceSpec& src, const CostVector& c) {
    if (!src.pmf.strictly_positive())
        throw InvalidArgument("gsf_build: zero-probability block");
    double mu = solve_mu_capacity(c); // ZeroMinCost when C_1 = 0
    std::uint64_t domain = src.block_count();
    if (domain > kDomainCap)
        throw InvalidArgument("gsf_build: u^q exceeds enumeration cap 2^20");
    int v = c.size();

    // child interval fractions 2^(-mu C_i), cumulative in symbol order
    std::vector<long double> frac(static_cast<std::size_t>(v));
    for (int i = 0; i < v; i++)
        frac[static_cast<std::size_t>(i)] = std::exp2(-static_cast<long double>(mu) * c[i]);

    // blocks sorted by descending probability, lexicographic ascending tie-break
    std::vector<std::uint64_t> order(domain);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> prob(domain);
    for (std::uint64_t b = 0; b < domain; b++) prob[b] = src.block_probability(b);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint64_t a, std::uint64_t b) { return prob[a] > prob[b]; });

    std::vector<Word> entries(domain);
    long double cum = 0.0L;
    // generous cap: each level shrinks width by at least 2^(-mu maxC)
    double max_depth_d = 64.0 + 2.0 * (-std::log2(*std::min_element(prob.begin(), prob.end())) + 2.0) /
                                    (mu * c.min_cost());
    std::uint64_t max_depth = static_cast<std::uint64_t>(std::min(max_depth_d, 1e7));

    for (std::uint64_t b : order) {
        long double p = prob[b];
        long double lo = cum;
        long double hi = cum + p;
        long double mid = cum + p / 2.0L;
        cum = hi;
        // descend following the midpoint until the node interval fits inside
        // the block's interval
        long double a = 0.0L, w = 1.0L;
        Word path;
        while (!(a >= lo && a + w <= hi)) {
            long double r = (mid - a) / w;
            long double acc = 0.0L;
            int pick = v - 1;
            for (int i = 0; i < v; i++) {
                acc += frac[static_cast<std::size_t>(i)];
                if (r < acc) {
                    pick = i;
                    break;
                }
            }
            for (int i = 0; i < pick; i++) a += w * frac[static_cast<std::size_t>(i)];
            w *= frac[static_cast<std::size_t>(pick)];
            path.push_back(static_cast<char>(pick));
            if (path.size() > max_depth) throw Error("gsf_build: interval descent failed");
        }
        entries[b] = std::move(path);
    }
    CodeBook book(src.alphabet_size(), src.block_length, v, std::move(entries));
    return GsfCode{std::move(book), mu, src.block_length};
}

double gsf_total_cost(const GsfCode& code, const SourceSpec& src, const CostVector& c) {
    if (code.book.source_alphabet_size() != src.alphabet_size() ||
        code.book.block_length() != src.block_length ||
        code.book.output_alphabet_size() != c.size())
        throw InvalidArgument("gsf_total_cost: dimension mismatch");
    double t = 0.0;
    for (std::uint64_t b = 0; b < code.book.domain_size(); b++)
        t += src.block_probability(b) * word_cost(code.book.entry(b), c.costs());
    return t / src.block_length;
}

} // namespace shapecode
