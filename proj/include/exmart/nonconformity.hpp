#pragma once

/* 1-NN nonconformity scores over the full multiset of observed examples:
 * alpha_i = (distance to nearest same-label neighbor) /
 *           (distance to nearest different-label neighbor),
 * with degenerate neighbor sets resolved by ext_ratio conventions.
 *
 * The incremental path stores two scalars per example (d_same, d_diff);
 * 1-NN minima over a growing multiset never increase, so a new arrival
 * can only lower them. One push costs exactly n-1 distance evaluations. */

#include <cstdint>
#include <span>
#include <vector>

#include "exmart/core.hpp"

namespace exmart {

class NonconformityState {
  public:
    /* Insert a new example; returns the current scores alpha_1..alpha_n
     * (valid until the next push). */
    std::span<const ExtNonNegReal> push(const LabeledExample& z);

    size_t size() const { return labels_.size(); }
    /* Total pairwise distance computations so far (cost instrumentation). */
    uint64_t distance_evaluations() const { return distance_evals_; }

  private:
    size_t dim_ = 0;
    std::vector<double> features_;  // flat n x dim
    std::vector<int> labels_;
    std::vector<double> d_same_;  // +inf when no same-label neighbor exists
    std::vector<double> d_diff_;
    std::vector<ExtNonNegReal> scores_;
    uint64_t distance_evals_ = 0;
};

/* O(n^2 d) reference implementation over a whole prefix at once. */
std::vector<ExtNonNegReal> batch_scores(std::span<const LabeledExample> examples);

}  // namespace exmart
