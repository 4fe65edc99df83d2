#pragma once

/* Test-side oracles, kept independent of the library's computation paths:
 * a uniform-panel reference for the mixture integral, a u = -ln p
 * substitution rule that integrates betting densities over the whole of
 * (0,1] including tails far below double range, and a Beta sampler. */

#include <cmath>
#include <limits>
#include <vector>

#include "exmart/betting.hpp"
#include "exmart/quadrature.hpp"
#include "exmart/rng.hpp"

namespace testutil {

/* log I(n,S) by composite Gauss-Legendre on uniformly spaced panels --
 * a deliberately different layout from the library's peak-graded one. */
inline double uniform_panel_log_mixture(long n, double S, int panels, int order) {
    const exmart::GaussLegendre& gl = exmart::gauss_legendre(order);
    std::vector<double> terms;
    terms.reserve(static_cast<size_t>(panels) * order);
    for (int i = 0; i < panels; ++i) {
        const double a = static_cast<double>(i) / panels;
        const double b = static_cast<double>(i + 1) / panels;
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (b + a);
        for (int k = 0; k < order; ++k) {
            const double eps = mid + half * gl.x[k];
            const double L = n * std::log(eps) + (eps - 1.0) * S;
            terms.push_back(L + std::log(gl.w[k] * half));
        }
    }
    return exmart::log_sum_exp(terms);
}

/* int_0^1 f(p) dp for a betting function's current state, via the
 * substitution u = -ln p: integral of f(e^-u) e^-u du over (0, 2^30].
 * Panel family: [0, 2^-4], then geometric ratio-2 panels out to 2^30,
 * each split into 9 equal sub-panels with 32-node Gauss-Legendre
 * (roughly 1e4 evaluation nodes in total). Truncation at u = 2^30
 * leaves < 1e-9 of mass even for the fattest tail in the family
 * (the empty-history mixture, ~ 1/(p ln^2 p)). */
inline double integrate_betting_density(const exmart::BettingFunction& f) {
    const exmart::GaussLegendre& gl = exmart::gauss_legendre(32);
    std::vector<double> bounds{0.0};
    for (double u = 0x1.0p-4; u <= 0x1.0p30; u *= 2.0)
        bounds.push_back(u);

    std::vector<double> terms;
    terms.reserve((bounds.size() - 1) * 9 * 32);
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
        for (int sub = 0; sub < 9; ++sub) {
            const double a = bounds[i] + (bounds[i + 1] - bounds[i]) * sub / 9.0;
            const double b = bounds[i] + (bounds[i + 1] - bounds[i]) * (sub + 1) / 9.0;
            const double half = 0.5 * (b - a);
            const double mid = 0.5 * (b + a);
            for (int k = 0; k < 32; ++k) {
                const double u = mid + half * gl.x[k];
                const double ln_f = f.log_density(-u);
                terms.push_back(ln_f - u + std::log(gl.w[k] * half));
            }
        }
    }
    return std::exp(exmart::log_sum_exp(terms));
}

/* Marsaglia-Tsang gamma sampler (shape >= 1) driving a Beta draw. */
inline double gamma_draw(exmart::RngHandle& rng, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
        double x, v;
        do {
            x = rng.next_gaussian();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.next_unit_open();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

inline double beta_draw(exmart::RngHandle& rng, double a, double b) {
    const double x = gamma_draw(rng, a);
    const double y = gamma_draw(rng, b);
    return x / (x + y);
}

inline double beta_pdf(double x, double a, double b) {
    if (x <= 0.0 || x >= 1.0)
        return 0.0;
    const double lb = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lb);
}

}  // namespace testutil
