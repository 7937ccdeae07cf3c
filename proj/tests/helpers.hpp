#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "shapecode/model.hpp"
#include "shapecode/rng.hpp"
#include "shapecode/varn.hpp"

namespace sctest {

using namespace shapecode;

inline Word W(const char* text) { return word_from_text(text); }

inline Pmf random_pmf(Xoshiro256& rng, int n, double min_p = 0.02) {
    std::vector<double> p(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& x : p) {
        x = min_p + rng.next_double();
        sum += x;
    }
    for (double& x : p) x /= sum;
    return Pmf(std::move(p));
}

inline std::vector<double> random_costs(Xoshiro256& rng, int v, double lo = 0.05,
                                        double hi = 5.0) {
    std::vector<double> c(static_cast<std::size_t>(v));
    for (double& x : c) x = lo + (hi - lo) * rng.next_double();
    return c;
}

// Exhaustive minimum total leaf cost over all prefix trees with k leaves.
// Independent of the library construction: plain recursive enumeration of
// letter allocations, no memoization shared with the implementation.
inline double brute_force_min_tree_cost(std::uint64_t k, const std::vector<double>& costs) {
    if (k == 1) return 0.0;
    int v = static_cast<int>(costs.size());
    double best = 1e300;
    std::vector<std::uint64_t> alloc(static_cast<std::size_t>(v), 0);
    for (;;) {
        std::uint64_t total = 0;
        int used = 0;
        for (std::uint64_t a : alloc) {
            total += a;
            if (a) used++;
        }
        if (total == k && used >= 2) {
            double t = 0.0;
            for (int j = 0; j < v; j++) {
                std::uint64_t a = alloc[static_cast<std::size_t>(j)];
                if (!a) continue;
                t += brute_force_min_tree_cost(a, costs) +
                     static_cast<double>(a) * costs[static_cast<std::size_t>(j)];
                if (t >= best) break;
            }
            best = std::min(best, t);
        }
        int j = 0;
        while (j < v && alloc[static_cast<std::size_t>(j)] == k) {
            alloc[static_cast<std::size_t>(j)] = 0;
            j++;
        }
        if (j == v) break;
        alloc[static_cast<std::size_t>(j)]++;
    }
    return best;
}

// Random prefix tree with exactly `leaves` leaves: repeated expansion of a
// random leaf with a random subset of letters.
inline CodeTree random_tree(Xoshiro256& rng, std::uint64_t leaves, const CostVector& c) {
    int v = c.size();
    std::vector<Word> paths{Word()};
    while (paths.size() < leaves) {
        std::uint64_t need = leaves - paths.size();
        std::size_t pick = static_cast<std::size_t>(rng.next_below(paths.size()));
        Word base = paths[pick];
        paths.erase(paths.begin() + static_cast<std::ptrdiff_t>(pick));
        std::uint64_t max_children = std::min<std::uint64_t>(static_cast<std::uint64_t>(v), need + 1);
        std::uint64_t nchild = 2 + rng.next_below(max_children - 1);
        std::vector<int> letters(static_cast<std::size_t>(v));
        std::iota(letters.begin(), letters.end(), 0);
        for (std::size_t i = letters.size() - 1; i > 0; i--)
            std::swap(letters[i], letters[rng.next_below(i + 1)]);
        for (std::uint64_t i = 0; i < nchild; i++) {
            Word child = base;
            child.push_back(static_cast<char>(letters[i]));
            paths.push_back(std::move(child));
        }
    }
    return CodeTree::from_leaf_paths(std::move(paths), c);
}

// Uniform-source codebook over a random tree whose leaf count is u^q.
struct RandomBook {
    CodeBook book;
    SourceSpec src;
};

inline RandomBook random_uniform_book(Xoshiro256& rng, int u, int q, int v) {
    std::uint64_t k = 1;
    for (int i = 0; i < q; i++) k *= static_cast<std::uint64_t>(u);
    CostVector costs(random_costs(rng, v, 0.2, 3.0));
    CodeTree tree = random_tree(rng, k, costs);
    std::vector<double> uniform(static_cast<std::size_t>(u), 1.0 / u);
    return RandomBook{tree_to_codebook(tree, u, q), SourceSpec(Pmf(uniform), q)};
}

} // namespace sctest
