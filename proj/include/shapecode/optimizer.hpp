#pragma once

#include <span>
#include <vector>

#include "shapecode/model.hpp"

namespace shapecode {

// Solution of the fixed-rate cost minimization: the Gibbs distribution
// p_hat_i = 2^(-mu C_i)/N whose entropy matches the rate constraint.
struct ShapingSolution {
    double mu = 0.0;
    double normalizer = 0.0; // N = sum_i 2^(-mu C_i)
    Pmf p_hat{std::vector<double>{1.0}};
    double f = 0.0;          // expansion factor (output symbols per source symbol)
    double avg_cost = 0.0;   // sum_i p_hat_i C_i
    double total_cost = 0.0; // f * avg_cost
    double entropy_h = 0.0;  // H(p_hat)
};

struct CurvePoint {
    double f, mu, normalizer, entropy_h, avg_cost, total_cost;
};

struct OptimalExpansion {
    double f_opt;
    double t_min;
    ShapingSolution solution;
};

struct DmDesign {
    CostVector costs;
    double f_opt;
};

struct MinKlResult {
    double divergence;
    Pmf p_hat;
    double mu;
};

// Unique mu > 0 with sum_i 2^(-mu C_i) = 1; requires min cost > 0.
double solve_mu_capacity(const CostVector& c);

// Minimum average cost at expansion factor f for a source of entropy
// h_source bits/symbol; entropy(p_hat) = h_source/f within 1e-9.
ShapingSolution min_avg_cost(const CostVector& c, double h_source, double f);

// Expansion factor and solution minimizing total cost (requires min cost > 0).
OptimalExpansion optimal_expansion(const CostVector& c, double h_source);

// Theorem-8 transform: costs -log2 p_hat_i, for which the total-cost optimum
// reproduces p_hat at mu = 1.
CostVector equivalent_cost_vector(const Pmf& p_hat);

std::vector<CurvePoint> total_cost_curve(const CostVector& c, double h_source,
                                         std::span<const double> f_grid);

// Total cost at a given finite f; defined for zero-min-cost channels too,
// where no finite optimum exists.
double total_cost_at(const CostVector& c, double h_source, double f);

// Self-information cost design: an optimal code for these costs is an
// optimal distribution matcher for `target`.
DmDesign dm_design(const Pmf& target, double h_source);

// Minimum normalized informational divergence at fixed expansion factor.
double i_min_of_f(const Pmf& target, double h_source, double f);

// Minimum KL divergence from `target` over pmfs whose average
// self-information cost is at most `budget`.
MinKlResult min_kl_under_cost(const Pmf& target, double budget);

// Closed-form derivatives along the mu-parameterized family (numeric
// cross-check targets for the finite-difference tests).
double expansion_derivative_mu(const CostVector& c, double h_source, double mu);  // df/dmu
double total_cost_derivative_mu(const CostVector& c, double h_source, double mu); // dT/dmu
double i_min_derivative_f(const Pmf& target, double h_source, double f);          // dI_min/df

// The Gibbs family at a given mu (N-normalized). Exposed for curve and
// derivative evaluations.
struct GibbsPoint {
    double normalizer;
    std::vector<double> p;
    double entropy_h;
    double avg_cost;
};
GibbsPoint gibbs_point(const CostVector& c, double mu);

} // namespace shapecode
