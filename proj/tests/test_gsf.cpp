#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "shapecode/gsf.hpp"
#include "shapecode/optimizer.hpp"

using namespace shapecode;
using sctest::W;

TEST_CASE("dyadic source with unit costs achieves the matched lengths") {
    SourceSpec src(Pmf({0.5, 0.25, 0.25}), 1);
    CostVector c({1.0, 1.0});
    GsfCode code = gsf_build(src, c);
    CHECK(code.mu == doctest::Approx(1.0).epsilon(1e-10));
    // per-block bound: lengths at most {2,3,3}; this instance lands on {1,2,2}
    CHECK(code.book.entry(0).size() <= 2);
    CHECK(code.book.entry(1).size() <= 3);
    CHECK(code.book.entry(2).size() <= 3);
    double t = gsf_total_cost(code, src, c);
    CHECK(t == doctest::Approx(1.5).epsilon(1e-12)); // equality case
}

TEST_CASE("uniform binary source, unit costs") {
    SourceSpec src(Pmf({0.5, 0.5}), 1);
    GsfCode code = gsf_build(src, CostVector({1.0, 1.0}));
    CHECK(gsf_total_cost(code, src, CostVector({1.0, 1.0})) <= 2.0);
}

TEST_CASE("per-block cost bound holds everywhere") {
    Xoshiro256 rng(51);
    for (int trial = 0; trial < 15; trial++) {
        int u = 2 + static_cast<int>(rng.next_below(3));
        int q = 1 + static_cast<int>(rng.next_below(4));
        int v = 2 + static_cast<int>(rng.next_below(3));
        SourceSpec src(sctest::random_pmf(rng, u, 0.05), q);
        CostVector c(sctest::random_costs(rng, v, 0.2, 3.0));
        GsfCode code = gsf_build(src, c);
        double mu = code.mu;
        for (std::uint64_t b = 0; b < code.book.domain_size(); b++) {
            double w = word_cost(code.book.entry(b), c.costs());
            double p = src.block_probability(b);
            CHECK(w <= -std::log2(p) / mu + 2.0 * c.max_cost() + 1e-9);
        }
    }
}

TEST_CASE("total cost sandwich against the capacity limit") {
    Xoshiro256 rng(52);
    for (int trial = 0; trial < 15; trial++) {
        int u = 2 + static_cast<int>(rng.next_below(3));
        int q = 1 + static_cast<int>(rng.next_below(6));
        if (std::pow(u, q) > (1 << 14)) q = 3;
        SourceSpec src(sctest::random_pmf(rng, u, 0.05), q);
        CostVector c({1.0, 2.0, 3.0});
        GsfCode code = gsf_build(src, c);
        double h = src.entropy_per_symbol();
        double mu = code.mu;
        double t = gsf_total_cost(code, src, c);
        CHECK(t >= h / mu - 1e-9);
        CHECK(t <= h / mu + 2.0 * c.max_cost() / q + 1e-9);
    }
}

TEST_CASE("gap shrinks as the block length grows") {
    SourceSpec base(Pmf({0.4, 0.3, 0.2, 0.1}), 1);
    CostVector c({1.0, 2.0, 3.0});
    double mu = solve_mu_capacity(c);
    double h = base.entropy_per_symbol();
    double gap_q1 = 0.0, gap_q6 = 0.0;
    for (int q : {1, 6}) {
        SourceSpec src(base.pmf, q);
        GsfCode code = gsf_build(src, c);
        double gap = gsf_total_cost(code, src, c) - h / mu;
        CHECK(gap >= -1e-9);
        CHECK(gap <= 2.0 * c.max_cost() / q + 1e-9);
        (q == 1 ? gap_q1 : gap_q6) = gap;
    }
    CHECK(gap_q6 < gap_q1);
}

TEST_CASE("codes are decodable") {
    Xoshiro256 rng(53);
    SourceSpec src(Pmf({0.6, 0.25, 0.15}), 2);
    GsfCode code = gsf_build(src, CostVector({0.8, 1.7, 2.4}));
    std::vector<std::uint64_t> sent;
    Word stream;
    for (int i = 0; i < 5000; i++) {
        std::uint64_t b = rng.next_below(code.book.domain_size());
        sent.push_back(b);
        stream += code.book.entry(b);
    }
    ParseResult pr = parse_codewords(code.book, stream);
    CHECK(pr.blocks == sent);
    CHECK(pr.residual.empty());
}

TEST_CASE("nearly degenerate source costs about the cheapest codeword") {
    SourceSpec src(Pmf({1.0 - 1e-9, 1e-9}), 1);
    CostVector c({1.0, 2.0});
    GsfCode code = gsf_build(src, c);
    double t = gsf_total_cost(code, src, c);
    CHECK(std::abs(t - c.min_cost()) < 0.01);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(gsf_build(SourceSpec(Pmf({1.0, 0.0}), 1), CostVector({1.0, 2.0})),
                    InvalidArgument);
    CHECK_THROWS_AS(gsf_build(SourceSpec(Pmf({0.5, 0.5}), 1), CostVector({0.0, 1.0})),
                    ZeroMinCost);
    CHECK_THROWS_AS(gsf_build(SourceSpec(Pmf({0.25, 0.25, 0.25, 0.25}), 11), CostVector({1.0, 2.0})),
                    InvalidArgument); // 4^11 > 2^20
}
