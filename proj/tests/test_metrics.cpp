#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "shapecode/metrics.hpp"
#include "shapecode/optimizer.hpp"
#include "shapecode/serialize.hpp"
#include "shapecode/varn.hpp"

using namespace shapecode;
using sctest::W;

namespace {

CodeBook example1_book() {
    return CodeBook(2, 2, 2, {W("000"), W("001"), W("01"), W("1")});
}

SourceSpec uniform_binary_q2() { return SourceSpec(Pmf({0.5, 0.5}), 2); }

CodeBook phi1() { return CodeBook(3, 1, 2, {W("0"), W("10"), W("11")}); }
CodeBook phi2() { return CodeBook(3, 1, 2, {W("00"), W("10"), W("11")}); }
SourceSpec ternary_source() { return SourceSpec(Pmf({0.5, 0.25, 0.25}), 1); }

} // namespace

TEST_CASE("asymptotic occurrence probabilities") {
    Pmf p = asymptotic_occurrence(example1_book(), uniform_binary_q2());
    CHECK(std::abs(p[0] - 2.0 / 3) <= 1e-12);
    CHECK(std::abs(p[1] - 1.0 / 3) <= 1e-12);

    CodeBook identity(2, 1, 2, {W("0"), W("1")});
    Pmf pid = asymptotic_occurrence(identity, SourceSpec(Pmf({0.8, 0.2}), 1));
    CHECK(pid[0] == doctest::Approx(0.8).epsilon(1e-15));

    Pmf p1 = asymptotic_occurrence(phi1(), ternary_source());
    CHECK(p1[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p1[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("generalized expansion factor of the two ternary codes") {
    Pmf half({0.5, 0.5});
    CHECK(std::abs(gef(phi1(), ternary_source(), half) - 1.5) <= 1e-12);
    CHECK(std::abs(gef(phi2(), ternary_source(), half) - 2.0) <= 1e-12);
}

TEST_CASE("gef equals f for a uniform target") {
    Xoshiro256 rng(61);
    for (int t = 0; t < 20; t++) {
        int v = 2 + static_cast<int>(rng.next_below(3));
        auto rb = sctest::random_uniform_book(rng, 2, 3, v);
        std::vector<double> u(static_cast<std::size_t>(v), 1.0 / v);
        double f = codebook_stats(rb.book, rb.src).expansion_factor;
        CHECK(gef(rb.book, rb.src, Pmf(u)) == doctest::Approx(f).epsilon(1e-12));
    }
}

TEST_CASE("i-divergence vanishes for a distribution-matched dyadic code") {
    CodeBook huffman(3, 1, 2, {W("0"), W("10"), W("11")});
    CHECK(std::abs(i_divergence(huffman, ternary_source(), Pmf({0.5, 0.5}))) <= 1e-12);
}

TEST_CASE("i-divergence / gef identity on uniform-source codebooks") {
    Xoshiro256 rng(62);
    for (int t = 0; t < 50; t++) {
        int u = 2 + static_cast<int>(rng.next_below(3));
        int q = 1 + static_cast<int>(rng.next_below(3));
        int v = 2 + static_cast<int>(rng.next_below(3));
        auto rb = sctest::random_uniform_book(rng, u, q, v);
        Pmf target = sctest::random_pmf(rng, v, 0.05);
        double K = std::pow(static_cast<double>(u), q);
        double h = std::log2(static_cast<double>(u));
        double log2v = std::log2(static_cast<double>(v));
        double lhs = i_divergence(rb.book, rb.src, target);
        double rhs = (gef(rb.book, rb.src, target) - h / log2v) * std::log2(K) * log2v /
                     std::log2(static_cast<double>(u));
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("normalized i-divergence identities and values") {
    // optimal DM code: zero divergence
    CodeBook huffman(3, 1, 2, {W("0"), W("10"), W("11")});
    CHECK(std::abs(normalized_i_divergence(huffman, ternary_source(), Pmf({0.5, 0.5}))) <= 1e-12);

    // Example 1 against its own occurrence distribution: equals the kl gap
    Pmf target({2.0 / 3, 1.0 / 3});
    double nid = normalized_i_divergence(example1_book(), uniform_binary_q2(), target);
    CHECK(std::abs(nid - 0.0294) <= 1e-4);
    CHECK(nid == doctest::Approx(kl_gap(example1_book(), uniform_binary_q2())).epsilon(1e-12));

    // identity code on a biased source, uniform target
    CodeBook identity(2, 1, 2, {W("0"), W("1")});
    SourceSpec biased(Pmf({0.9, 0.1}), 1);
    CHECK(std::abs(normalized_i_divergence(identity, biased, Pmf({0.5, 0.5})) - 0.531) <= 1e-3);
}

TEST_CASE("kl gap values and nonnegativity") {
    CHECK(std::abs(kl_gap(example1_book(), uniform_binary_q2()) - 0.0294) <= 1e-4);

    CodeBook identity(2, 1, 2, {W("0"), W("1")});
    CHECK(std::abs(kl_gap(identity, SourceSpec(Pmf({0.5, 0.5}), 1))) <= 1e-12);

    Xoshiro256 rng(63);
    for (int t = 0; t < 40; t++) {
        auto rb = sctest::random_uniform_book(rng, 2, 2 + static_cast<int>(rng.next_below(3)),
                                              2 + static_cast<int>(rng.next_below(3)));
        CHECK(kl_gap(rb.book, rb.src) >= -1e-12);
        // Theorem-12 form: f >= h / H(p_hat)
        double f = codebook_stats(rb.book, rb.src).expansion_factor;
        double h = rb.src.entropy_per_symbol();
        CHECK(f >= h / entropy(asymptotic_occurrence(rb.book, rb.src)) - 1e-9);
        // GEF lower bound for an arbitrary positive target
        Pmf target = sctest::random_pmf(rng, rb.book.output_alphabet_size(), 0.05);
        CHECK(gef(rb.book, rb.src, target) >=
              h / std::log2(static_cast<double>(rb.book.output_alphabet_size())) - 1e-9);
    }
}

TEST_CASE("varn code kl gap shrinks with codebook size") {
    CostVector c = equivalent_cost_vector(Pmf({2.0 / 3, 1.0 / 3}));
    double first = -1.0, last = -1.0, first_nid = -1.0, last_nid = -1.0;
    for (std::uint64_t K : {4, 16, 64, 256, 1024}) {
        int q = static_cast<int>(std::log2(static_cast<double>(K)));
        CodeBook book = tree_to_codebook(varn_build(K, c), 2, q);
        SourceSpec src(Pmf({0.5, 0.5}), q);
        double gap = kl_gap(book, src);
        double nid = normalized_i_divergence(book, src, Pmf({2.0 / 3, 1.0 / 3}));
        if (first < 0) { first = gap; first_nid = nid; }
        last = gap;
        last_nid = nid;
    }
    CHECK(last < first);
    CHECK(last_nid < first_nid);
}

TEST_CASE("huffman output of a dyadic source looks uniform") {
    CodeBook huffman(3, 1, 2, {W("0"), W("10"), W("11")});
    Pmf p = asymptotic_occurrence(huffman, ternary_source());
    CHECK(std::abs(p[0] - 0.5) <= 1e-12);
    CHECK(std::abs(kl_gap(huffman, ternary_source())) <= 1e-12);
}

TEST_CASE("serial kl of simple streams") {
    Word alternating;
    for (int i = 0; i < 1000; i++) alternating.push_back(static_cast<char>(i % 2));
    CHECK(std::abs(serial_kl(alternating, Pmf({0.5, 0.5}), 1)) <= 1e-12);

    Word zeros(5000, '\0');
    CHECK(serial_kl(zeros, Pmf({2.0 / 3, 1.0 / 3}), 1) ==
          doctest::Approx(std::log2(1.5)).epsilon(1e-9));

    CHECK_THROWS_AS(serial_kl(zeros, Pmf({2.0 / 3, 1.0 / 3}), 4), InvalidArgument);
    CHECK_THROWS_AS(serial_kl(W("01"), Pmf({0.5, 0.5}), 2), InvalidArgument);
    CHECK_THROWS_AS(serial_kl(zeros, Pmf({1.0, 0.0}), 1), InvalidArgument);
}

TEST_CASE("serial kl decreases with codebook size on simulated streams") {
    Pmf target({2.0 / 3, 1.0 / 3});
    CostVector c = equivalent_cost_vector(target);
    double i1_small = 0, i1_big = 0;
    for (std::uint64_t K : {16, 1024}) {
        CodeTree t = varn_build(K, c);
        Xoshiro256 rng = Xoshiro256::derived(99, K);
        Word stream;
        for (int i = 0; i < 30000; i++) t.append_leaf_path(rng.next_below(K), stream);
        (K == 16 ? i1_small : i1_big) = serial_kl(stream, target, 1);
    }
    CHECK(i1_big < i1_small);
}

TEST_CASE("evaluate produces the fixed json field set") {
    Pmf target({2.0 / 3, 1.0 / 3});
    Word stream;
    CodeTree t = varn_build(16, equivalent_cost_vector(target));
    Xoshiro256 rng(64);
    for (int i = 0; i < 5000; i++) t.append_leaf_path(rng.next_below(16), stream);
    CodeBook book = tree_to_codebook(t, 2, 4);
    MetricsReport r = evaluate(book, SourceSpec(Pmf({0.5, 0.5}), 4), target, std::nullopt, &stream);
    CHECK(r.serial_kl.size() == 3);
    CHECK(r.total_cost == doctest::Approx(r.f * r.avg_cost).epsilon(1e-12));

    nlohmann::json j = to_json(r);
    for (const char* key : {"p_hat", "f", "avg_cost", "total_cost", "gef", "i_div", "norm_i_div",
                            "kl_gap", "serial_kl"})
        CHECK(j.contains(key));

    // with explicit costs, avg_cost switches to those costs
    MetricsReport rc = evaluate(book, SourceSpec(Pmf({0.5, 0.5}), 4), target,
                                CostVector({1.0, 2.0}), nullptr);
    Pmf ph = asymptotic_occurrence(book, SourceSpec(Pmf({0.5, 0.5}), 4));
    CHECK(rc.avg_cost == doctest::Approx(ph[0] * 1.0 + ph[1] * 2.0).epsilon(1e-12));
}

TEST_CASE("empirical stream frequencies match lemma-4 occurrence within noise") {
    Pmf source({0.5, 0.25, 0.25});
    CodeBook book = phi1();
    SourceSpec src(source, 1);
    Pmf expect = asymptotic_occurrence(book, src);
    Xoshiro256 rng(65);
    PmfSampler sampler(source);
    Word stream;
    while (stream.size() < 1000000) stream += book.entry(static_cast<std::uint64_t>(sampler.sample(rng)));
    double zeros = static_cast<double>(std::count(stream.begin(), stream.end(), '\0'));
    double emp = zeros / static_cast<double>(stream.size());
    double se = std::sqrt(expect[0] * (1 - expect[0]) / static_cast<double>(stream.size()));
    CHECK(std::abs(emp - expect[0]) <= 3.0 * se);
}
