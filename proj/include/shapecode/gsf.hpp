#pragma once

#include "shapecode/model.hpp"

namespace shapecode {

// Generalized Shannon-Fano code: interval subdivision of [0,1) where the
// node for output word y has width 2^(-mu W(y)), matched against the source
// blocks' cumulative intervals.
struct GsfCode {
    CodeBook book;
    double mu;
    int block_length;
};

// Build for an arbitrary i.i.d. source (all block probabilities positive,
// u^q <= 2^20) and a positive cost vector. Every block satisfies
// W(phi(x)) <= (-log2 P(x))/mu + 2 max_i C_i.
GsfCode gsf_build(const SourceSpec& src, const CostVector& c);

// Expected cost per source symbol.
double gsf_total_cost(const GsfCode& code, const SourceSpec& src, const CostVector& c);

} // namespace shapecode
