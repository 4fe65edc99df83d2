#include "exmart/nonconformity.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace exmart {

static constexpr double kInf = std::numeric_limits<double>::infinity();

std::span<const ExtNonNegReal> NonconformityState::push(const LabeledExample& z) {
    const size_t n_old = labels_.size();
    if (n_old == 0) {
        dim_ = z.features.size();
    } else if (z.features.size() != dim_) {
        throw std::invalid_argument("NonconformityState::push: dimension mismatch");
    }

    double same_min = kInf;
    double diff_min = kInf;
    for (size_t i = 0; i < n_old; ++i) {
        const double d = euclidean_distance(
            std::span<const double>(features_.data() + i * dim_, dim_), z.features);
        ++distance_evals_;
        if (labels_[i] == z.label) {
            same_min = std::min(same_min, d);
            d_same_[i] = std::min(d_same_[i], d);
        } else {
            diff_min = std::min(diff_min, d);
            d_diff_[i] = std::min(d_diff_[i], d);
        }
    }

    features_.insert(features_.end(), z.features.begin(), z.features.end());
    labels_.push_back(z.label);
    d_same_.push_back(same_min);
    d_diff_.push_back(diff_min);

    scores_.resize(n_old + 1);
    for (size_t i = 0; i <= n_old; ++i) {
        const ExtNonNegReal num = std::isinf(d_same_[i]) ? ExtNonNegReal::inf() : ExtNonNegReal(d_same_[i]);
        const ExtNonNegReal den = std::isinf(d_diff_[i]) ? ExtNonNegReal::inf() : ExtNonNegReal(d_diff_[i]);
        scores_[i] = ext_ratio(num, den);
    }
    return scores_;
}

std::vector<ExtNonNegReal> batch_scores(std::span<const LabeledExample> examples) {
    const size_t n = examples.size();
    if (n == 0)
        throw std::invalid_argument("batch_scores: need at least one example");
    const size_t dim = examples[0].features.size();
    for (const auto& e : examples)
        if (e.features.size() != dim)
            throw std::invalid_argument("batch_scores: dimension mismatch");

    std::vector<double> d_same(n, kInf), d_diff(n, kInf);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            const double d = euclidean_distance(examples[i].features, examples[j].features);
            if (examples[i].label == examples[j].label) {
                d_same[i] = std::min(d_same[i], d);
                d_same[j] = std::min(d_same[j], d);
            } else {
                d_diff[i] = std::min(d_diff[i], d);
                d_diff[j] = std::min(d_diff[j], d);
            }
        }
    }
    std::vector<ExtNonNegReal> scores(n);
    for (size_t i = 0; i < n; ++i) {
        const ExtNonNegReal num = std::isinf(d_same[i]) ? ExtNonNegReal::inf() : ExtNonNegReal(d_same[i]);
        const ExtNonNegReal den = std::isinf(d_diff[i]) ? ExtNonNegReal::inf() : ExtNonNegReal(d_diff[i]);
        scores[i] = ext_ratio(num, den);
    }
    return scores;
}

}  // namespace exmart
