#include "exmart/pvalue.hpp"

#include <stdexcept>

#include "exmart/nonconformity.hpp"

namespace exmart {

double next_pvalue(std::span<const ExtNonNegReal> alphas, double theta) {
    if (alphas.empty())
        throw std::invalid_argument("next_pvalue: empty score multiset");
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("next_pvalue: theta must lie in (0,1)");
    const ExtNonNegReal a_n = alphas.back();
    long gt = 0, eq = 0;
    for (const ExtNonNegReal& a : alphas) {
        if (a > a_n)
            ++gt;
        else if (a == a_n)
            ++eq;
    }
    return (static_cast<double>(gt) + theta * static_cast<double>(eq)) /
           static_cast<double>(alphas.size());
}

std::vector<PValueRecord> process_stream(std::span<const LabeledExample> examples,
                                         RngHandle& rng) {
    std::vector<PValueRecord> out;
    out.reserve(examples.size());
    NonconformityState state;
    for (size_t i = 0; i < examples.size(); ++i) {
        const auto scores = state.push(examples[i]);
        const double theta = rng.next_unit_open();
        PValueRecord rec;
        rec.index = static_cast<long>(i) + 1;
        rec.theta = theta;
        rec.alpha = scores.back();
        rec.p = next_pvalue(scores, theta);
        out.push_back(rec);
    }
    return out;
}

}  // namespace exmart
