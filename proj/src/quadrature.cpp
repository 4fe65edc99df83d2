#include "exmart/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace exmart {

/* Newton iteration on the Legendre polynomial recurrence, seeded with the
 * Chebyshev-angle approximation; exploits root symmetry about 0. */
static GaussLegendre compute_gauss_legendre(int order) {
    GaussLegendre gl;
    gl.x.resize(order);
    gl.w.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // evaluate P_order(x) and P'_order(x) by recurrence
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.x[i] = -x;  // roots found from +1 side; store ascending-ish
        gl.w[i] = w;
        gl.x[order - 1 - i] = x;
        gl.w[order - 1 - i] = w;
    }
    if (order % 2 == 1) {
        gl.x[order / 2] = 0.0;  // exact middle root
    }
    return gl;
}

const GaussLegendre& gauss_legendre(int order) {
    if (order < 1)
        throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::map<int, GaussLegendre> cache;
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, compute_gauss_legendre(order)).first;
    return it->second;
}

double log_sum_exp(std::span<const double> v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double t : v)
        m = std::max(m, t);
    if (!std::isfinite(m))
        return m;
    double s = 0.0;
    for (double t : v)
        s += std::exp(t - m);
    return m + std::log(s);
}

/* Panel boundaries for I(n,S): cluster around the maximum of the
 * log-integrand L(eps) = n ln eps + (eps-1) S. The peak sits at
 * e0 = min(1, n/|S|); its width is e0/sqrt(n) from the curvature, or
 * 1/(n+S) from the linear slope when the peak clips at eps = 1. */
static std::vector<double> mixture_panels(long n, double S, int n_panels) {
    double eps_star = 1.0;
    if (S < 0.0)
        eps_star = std::min(1.0, static_cast<double>(n) / (-S));
    double sigma = (n > 0) ? eps_star / std::sqrt(static_cast<double>(n)) : 1.0;
    double scale = sigma;
    const double slope1 = static_cast<double>(n) + S;  // L'(1) when peak clips
    if (eps_star >= 1.0 && slope1 > 0.0)
        scale = std::min(sigma, 1.0 / slope1);
    scale = std::clamp(scale, 1e-12, 1.0);

    static const double mults[] = {-250, -100, -40, -15, -6, -2, 0, 2, 6, 15, 40, 100, 250};
    std::set<double> pts{0.0, 1.0};
    for (double m : mults) {
        const double t = eps_star + m * scale;
        if (t > 0.0 && t < 1.0)
            pts.insert(t);
    }
    std::vector<double> b(pts.begin(), pts.end());
    // bisect the widest panel until we have exactly n_panels of them
    while (static_cast<int>(b.size()) - 1 < n_panels) {
        size_t widest = 0;
        double gap = 0.0;
        for (size_t i = 0; i + 1 < b.size(); ++i) {
            if (b[i + 1] - b[i] > gap) {
                gap = b[i + 1] - b[i];
                widest = i;
            }
        }
        b.insert(b.begin() + widest + 1, 0.5 * (b[widest] + b[widest + 1]));
    }
    return b;
}

double log_mixture_integral(long n, double S) {
    if (n < 0)
        throw std::invalid_argument("log_mixture_integral: n must be >= 0");
    if (!(S <= 0.0))
        throw std::invalid_argument("log_mixture_integral: S must be <= 0");
    constexpr int kPanels = 16;
    constexpr int kOrder = 32;
    const GaussLegendre& gl = gauss_legendre(kOrder);
    const std::vector<double> b = mixture_panels(n, S, kPanels);

    std::vector<double> terms;
    terms.reserve(kPanels * kOrder);
    for (size_t i = 0; i + 1 < b.size(); ++i) {
        const double half = 0.5 * (b[i + 1] - b[i]);
        const double mid = 0.5 * (b[i + 1] + b[i]);
        for (int k = 0; k < kOrder; ++k) {
            const double eps = mid + half * gl.x[k];
            double L;
            if (eps <= 0.0) {
                L = (n == 0) ? (eps - 1.0) * S : -std::numeric_limits<double>::infinity();
            } else {
                L = n * std::log(eps) + (eps - 1.0) * S;
            }
            terms.push_back(L + std::log(gl.w[k] * half));
        }
    }
    return log_sum_exp(terms);
}

}  // namespace exmart
