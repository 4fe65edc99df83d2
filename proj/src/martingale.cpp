#include "exmart/martingale.hpp"

#include <cmath>
#include <stdexcept>

namespace exmart {

MartingaleTracker::MartingaleTracker(std::string name, std::vector<double> thresholds)
    : name_(std::move(name)), thresholds_(std::move(thresholds)) {
    for (double t : thresholds_)
        if (!(t >= 1.0))
            throw std::invalid_argument("MartingaleTracker: thresholds must be >= 1");
    crossings_.resize(thresholds_.size());
    // S_0 = 1 counts as a step-0 observation: a threshold of exactly 1
    // is already crossed before any betting happens.
    for (size_t i = 0; i < thresholds_.size(); ++i)
        if (thresholds_[i] == 1.0)
            crossings_[i] = 0;
}

void MartingaleTracker::step(double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw std::invalid_argument("MartingaleTracker::step: factor must be positive and finite");
    step_ln(std::log(factor));
}

void MartingaleTracker::step_ln(double ln_factor) {
    if (!std::isfinite(ln_factor))
        throw std::invalid_argument("MartingaleTracker::step_ln: ln factor must be finite");
    ++steps_;
    log10_value_ += ln_factor / 2.302585092994045684;  // ln 10
    if (log10_value_ > log10_max_)
        log10_max_ = log10_value_;
    for (size_t i = 0; i < thresholds_.size(); ++i)
        if (!crossings_[i] && log10_value_ >= std::log10(thresholds_[i]))
            crossings_[i] = steps_;
}

std::vector<StrategyTrajectory> run_martingales(
    std::span<const std::unique_ptr<BettingFunction>> strategies,
    std::span<const PValueRecord> pvalues,
    std::span<const double> thresholds) {
    std::vector<StrategyTrajectory> out;
    out.reserve(strategies.size());
    for (const auto& s : strategies)
        out.push_back(StrategyTrajectory{
            MartingaleTracker(s->name(), std::vector<double>(thresholds.begin(), thresholds.end())),
            {}});
    for (auto& t : out)
        t.log10_values.reserve(pvalues.size());

    // every strategy sees the identical p-value sequence
    for (const PValueRecord& rec : pvalues) {
        for (size_t k = 0; k < strategies.size(); ++k) {
            out[k].tracker.step_ln(strategies[k]->bet_ln(rec.p));
            out[k].log10_values.push_back(out[k].tracker.log10_value());
        }
    }
    return out;
}

}  // namespace exmart
