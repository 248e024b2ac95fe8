#pragma once

#include <vector>

namespace gausscrit {

// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t order() const noexcept { return nodes.size(); }
};

// Newton iteration on P_n from the Chebyshev-like initial guess. Accurate to
// a few ulps for n up to several hundred. Throws ValidationError for n < 1.
GaussLegendreRule gauss_legendre(int n);

// Integrate a callable over [lo, hi] with the given rule.
template <typename F>
double integrate(const GaussLegendreRule& rule, double lo, double hi, F&& fn) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i) {
        sum += rule.weights[i] * fn(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

}  // namespace gausscrit
