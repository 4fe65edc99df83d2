#pragma once

/* Gauss-Legendre quadrature and the log-space evaluation of the
 * mixture-martingale integral I(n,S) = int_0^1 eps^n exp((eps-1)S) deps.
 * The integrand is smooth and unimodal but catastrophically scaled for
 * n, |S| ~ 1e4, so everything is accumulated as log-sum-exp. */

#include <span>
#include <vector>

namespace exmart {

struct GaussLegendre {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;  // weights, sum to 2
};

/* Nodes/weights for the given order, computed once and cached. */
const GaussLegendre& gauss_legendre(int order);

/* log of I(n, S) for integer n >= 0 and S <= 0 (S = sum of ln p_i).
 * Composite Gauss-Legendre, 16 panels x 32 nodes = 512 evaluations,
 * with panel boundaries graded around the integrand's peak. */
double log_mixture_integral(long n, double S);

/* max-shifted log of sum(exp(v)) over a span; -inf on empty input. */
double log_sum_exp(std::span<const double> v);

}  // namespace exmart
