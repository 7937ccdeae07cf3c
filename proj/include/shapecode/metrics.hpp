#pragma once

#include <optional>
#include <vector>

#include "shapecode/model.hpp"

namespace shapecode {

// Long-run output symbol distribution E(N_i)/E(L).
Pmf asymptotic_occurrence(const CodeBook& book, const SourceSpec& src);

// Generalized expansion factor -f sum_i p_hat_i log2 target_i / log2 v.
double gef(const CodeBook& book, const SourceSpec& src, const Pmf& target);

// Informational divergence between true codeword probabilities and the
// product-of-target leaf probabilities.
double i_divergence(const CodeBook& book, const SourceSpec& src, const Pmf& target);

// I / E(L); computed two algebraically independent ways which must agree.
double normalized_i_divergence(const CodeBook& book, const SourceSpec& src, const Pmf& target);

// H(p_hat) - H(Y) = H(p_hat) - q h / E(L), always >= 0.
double kl_gap(const CodeBook& book, const SourceSpec& src);

// Serial test: KL divergence of overlapping order-grams against the product
// target, order in {1,2,3}.
double serial_kl(const Word& stream, const Pmf& target, int order);

struct MetricsReport {
    Pmf p_hat{std::vector<double>{1.0}};
    double f = 0.0;
    double avg_cost = 0.0;
    double total_cost = 0.0;
    double gef = 0.0;
    double i_div = 0.0;
    double norm_i_div = 0.0;
    double kl_gap = 0.0;
    std::vector<double> serial_kl; // orders 1..3 when a stream is supplied
};

// Full evaluation. Costs default to the self-information costs of `target`;
// serial KL values are filled when a stream is given.
MetricsReport evaluate(const CodeBook& book, const SourceSpec& src, const Pmf& target,
                       const std::optional<CostVector>& costs = std::nullopt,
                       const Word* stream = nullptr);

} // namespace shapecode
