#include "shapecode/optimizer.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace shapecode {

namespace {

constexpr int kMaxIter = 200;
constexpr double kResidualTol = 1e-13;

// Bisect a strictly decreasing g on [0, inf) for g(mu) = target. The bracket
// is grown by doubling before bisection.
double bisect_decreasing(const std::function<double(double)>& g, double target,
                         const char* what) {
    double lo = 0.0, hi = 1.0;
    double ghi = g(hi);
    int grow = 0;
    while (ghi > target) {
        lo = hi;
        hi *= 2.0;
        ghi = g(hi);
        if (++grow > 80) throw Error(std::string("bisection bracket failed: ") + what);
    }
    for (int it = 0; it < kMaxIter; it++) {
        double mid = 0.5 * (lo + hi);
        double v = g(mid);
        if (std::abs(v - target) <= kResidualTol) return mid;
        if (v > target) lo = mid;
        else hi = mid;
        if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

ShapingSolution make_solution(const CostVector& c, double mu, double f) {
    GibbsPoint gp = gibbs_point(c, mu);
    ShapingSolution sol{mu, gp.normalizer, Pmf(gp.p), f, gp.avg_cost, f * gp.avg_cost, gp.entropy_h};
    return sol;
}

std::vector<double> self_information_costs(const Pmf& target) {
    if (!target.strictly_positive())
        throw InvalidArgument("target distribution has a zero-probability symbol");
    std::vector<double> costs(static_cast<std::size_t>(target.size()));
    for (int i = 0; i < target.size(); i++) costs[static_cast<std::size_t>(i)] = -std::log2(target[i]);
    return costs;
}

} // namespace

GibbsPoint gibbs_point(const CostVector& c, double mu) {
    GibbsPoint gp;
    gp.p.resize(static_cast<std::size_t>(c.size()));
    gp.normalizer = 0.0;
    for (int i = 0; i < c.size(); i++) {
        double w = std::exp2(-mu * c[i]);
        gp.p[static_cast<std::size_t>(i)] = w;
        gp.normalizer += w;
    }
    gp.avg_cost = 0.0;
    for (int i = 0; i < c.size(); i++) {
        gp.p[static_cast<std::size_t>(i)] /= gp.normalizer;
        gp.avg_cost += gp.p[static_cast<std::size_t>(i)] * c[i];
    }
    // H = mu * avg_cost + log2 N, but sum directly for the zero-prob guard
    gp.entropy_h = 0.0;
    for (double p : gp.p)
        if (p > 0.0) gp.entropy_h -= p * std::log2(p);
    return gp;
}

double solve_mu_capacity(const CostVector& c) {
    if (c.min_cost() <= 0.0)
        throw ZeroMinCost("minimum symbol cost is zero: total cost decreases in f, no finite optimum");
    auto kraft = [&](double mu) {
        double s = 0.0;
        for (int i = 0; i < c.size(); i++) s += std::exp2(-mu * c[i]);
        return s;
    };
    return bisect_decreasing(kraft, 1.0, "sum 2^(-mu C) = 1");
}

ShapingSolution min_avg_cost(const CostVector& c, double h_source, double f) {
    if (!(h_source > 0.0)) throw InvalidArgument("source entropy must be positive");
    if (!(f > 0.0)) throw InvalidArgument("expansion factor must be positive");
    double h = h_source / f;
    double log2v = std::log2(static_cast<double>(c.size()));
    double h_min = std::log2(static_cast<double>(c.min_cost_multiplicity()));
    constexpr double kSnap = 1e-11;
    if (h > log2v + kSnap)
        throw InfeasibleRate("target entropy " + std::to_string(h) + " exceeds log2 v = " +
                             std::to_string(log2v) + " (f too small)");
    if (h >= log2v - kSnap)
        return make_solution(c, 0.0, f); // entropy ceiling: uniform
    if (h <= h_min + kSnap)
        throw InfeasibleRate("target entropy " + std::to_string(h) +
                             " at or below the min-cost limit log2(m) = " + std::to_string(h_min));
    auto ent = [&](double mu) { return gibbs_point(c, mu).entropy_h; };
    double mu = bisect_decreasing(ent, h, "H(p_hat) = h");
    return make_solution(c, mu, f);
}

OptimalExpansion optimal_expansion(const CostVector& c, double h_source) {
    if (!(h_source > 0.0)) throw InvalidArgument("source entropy must be positive");
    double mu = solve_mu_capacity(c); // throws ZeroMinCost when C_1 = 0
    GibbsPoint gp = gibbs_point(c, mu);
    double f_opt = h_source / gp.entropy_h;
    double t_min = h_source / mu;
    ShapingSolution sol{mu, gp.normalizer, Pmf(gp.p), f_opt, gp.avg_cost,
                        f_opt * gp.avg_cost, gp.entropy_h};
    return OptimalExpansion{f_opt, t_min, sol};
}

CostVector equivalent_cost_vector(const Pmf& p_hat) {
    return CostVector(self_information_costs(p_hat));
}

std::vector<CurvePoint> total_cost_curve(const CostVector& c, double h_source,
                                         std::span<const double> f_grid) {
    std::vector<CurvePoint> out;
    out.reserve(f_grid.size());
    for (double f : f_grid) {
        ShapingSolution s = min_avg_cost(c, h_source, f);
        out.push_back({s.f, s.mu, s.normalizer, s.entropy_h, s.avg_cost, s.total_cost});
    }
    return out;
}

double total_cost_at(const CostVector& c, double h_source, double f) {
    return min_avg_cost(c, h_source, f).total_cost;
}

DmDesign dm_design(const Pmf& target, double h_source) {
    if (!(h_source > 0.0)) throw InvalidArgument("source entropy must be positive");
    CostVector costs(self_information_costs(target));
    return DmDesign{costs, h_source / entropy(target)};
}

double i_min_of_f(const Pmf& target, double h_source, double f) {
    CostVector costs(self_information_costs(target));
    ShapingSolution s = min_avg_cost(costs, h_source, f);
    return s.avg_cost - h_source / f;
}

MinKlResult min_kl_under_cost(const Pmf& target, double budget) {
    CostVector costs(self_information_costs(target));
    double cheapest = costs.min_cost();
    if (!(budget > cheapest))
        throw InfeasibleRate("cost budget " + std::to_string(budget) +
                             " not above the cheapest symbol cost " + std::to_string(cheapest));
    double at_target = entropy(target); // sum_i P_i (-log2 P_i)
    if (budget >= at_target) return MinKlResult{0.0, target, 1.0};
    // avg cost is strictly decreasing in mu; budget < avg(1), so mu > 1
    auto avg = [&](double mu) { return gibbs_point(costs, mu).avg_cost; };
    double lo = 1.0, hi = 2.0;
    int grow = 0;
    while (avg(hi) > budget) {
        lo = hi;
        hi *= 2.0;
        if (++grow > 80) throw Error("min_kl_under_cost: bracket failed");
    }
    for (int it = 0; it < kMaxIter; it++) {
        double mid = 0.5 * (lo + hi);
        double v = avg(mid);
        if (std::abs(v - budget) <= kResidualTol) { lo = hi = mid; break; }
        if (v > budget) lo = mid;
        else hi = mid;
    }
    double mu = 0.5 * (lo + hi);
    GibbsPoint gp = gibbs_point(costs, mu);
    return MinKlResult{gp.avg_cost - gp.entropy_h, Pmf(gp.p), mu};
}

namespace {

// shared pieces of the Appendix-style closed forms:
// D  = sum_i mu C_i 2^(-mu C_i) + N log2 N
// S2 = sum_{i<j} (C_i - C_j)^2 2^(-mu (C_i + C_j))
struct DerivParts {
    double D;
    double S2;
    double log2N;
};

DerivParts deriv_parts(const CostVector& c, double mu) {
    double N = 0.0, muCsum = 0.0;
    for (int i = 0; i < c.size(); i++) {
        double w = std::exp2(-mu * c[i]);
        N += w;
        muCsum += mu * c[i] * w;
    }
    double log2N = std::log2(N);
    double S2 = 0.0;
    for (int i = 0; i < c.size(); i++)
        for (int j = i + 1; j < c.size(); j++) {
            double d = c[i] - c[j];
            S2 += d * d * std::exp2(-mu * (c[i] + c[j]));
        }
    return DerivParts{muCsum + N * log2N, S2, log2N};
}

} // namespace

double expansion_derivative_mu(const CostVector& c, double h_source, double mu) {
    DerivParts p = deriv_parts(c, mu);
    return mu * std::numbers::ln2 * h_source * p.S2 / (p.D * p.D);
}

double total_cost_derivative_mu(const CostVector& c, double h_source, double mu) {
    DerivParts p = deriv_parts(c, mu);
    return -std::numbers::ln2 * h_source * p.log2N * p.S2 / (p.D * p.D);
}

double i_min_derivative_f(const Pmf& target, double h_source, double f) {
    CostVector costs(self_information_costs(target));
    ShapingSolution s = min_avg_cost(costs, h_source, f);
    if (s.mu <= 0.0) throw InvalidArgument("i_min derivative undefined at mu = 0");
    return h_source / (f * f) * (s.mu - 1.0) / s.mu;
}

} // namespace shapecode
