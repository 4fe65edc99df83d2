#pragma once

/* Randomized conformal p-values computed online: after each example the
 * rank of its nonconformity score within all scores so far (itself
 * included) becomes
 *     p_n = (#{alpha_i > alpha_n} + theta_n * #{alpha_i = alpha_n}) / n,
 * with theta_n drawn uniformly from (0,1). Since alpha_n always ties
 * itself, p_n >= theta_n / n > 0. */

#include <span>
#include <vector>

#include "exmart/core.hpp"
#include "exmart/rng.hpp"

namespace exmart {

struct PValueRecord {
    long index = 0;      // 1-based step number
    double p = 0.0;      // in (0, 1]
    double theta = 0.0;  // tie-breaking draw used at this step
    ExtNonNegReal alpha; // the new example's nonconformity score
};

/* One p-value from the current score multiset; the last element of
 * `alphas` is the newest score. Single linear scan. */
double next_pvalue(std::span<const ExtNonNegReal> alphas, double theta);

/* Full pipeline: push each example into a NonconformityState, draw theta,
 * emit the p-value. Draw order (one theta after each push) is part of the
 * reproducibility contract. */
std::vector<PValueRecord> process_stream(std::span<const LabeledExample> examples,
                                         RngHandle& rng);

}  // namespace exmart
