#pragma once

/* Martingale accumulation. S_0 = 1; each step multiplies by a betting
 * factor. Running value and maximum are kept in log10 (reported magnitudes
 * span 1e-2 .. 1e17), and threshold crossings are recorded at their first
 * step and never removed. */

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exmart/betting.hpp"
#include "exmart/pvalue.hpp"

namespace exmart {

class MartingaleTracker {
  public:
    MartingaleTracker(std::string name, std::vector<double> thresholds);

    /* Multiply by a positive finite factor. */
    void step(double factor);
    /* Same, factor given as a natural log (never over/underflows). */
    void step_ln(double ln_factor);

    const std::string& name() const { return name_; }
    double log10_value() const { return log10_value_; }
    double log10_max() const { return log10_max_; }
    long steps() const { return steps_; }
    std::span<const double> thresholds() const { return thresholds_; }
    /* First step where the running value reached thresholds()[i], if any. */
    std::optional<long> first_crossing(size_t i) const { return crossings_[i]; }

  private:
    std::string name_;
    std::vector<double> thresholds_;
    std::vector<std::optional<long>> crossings_;
    double log10_value_ = 0.0;
    double log10_max_ = 0.0;
    long steps_ = 0;
};

struct StrategyTrajectory {
    MartingaleTracker tracker;
    std::vector<double> log10_values;  // one entry per p-value consumed
};

/* Drive every strategy over the same p-value sequence. Strategies are
 * consumed (their state advances); trackers and per-step log10 values
 * come back in input order. */
std::vector<StrategyTrajectory> run_martingales(
    std::span<const std::unique_ptr<BettingFunction>> strategies,
    std::span<const PValueRecord> pvalues,
    std::span<const double> thresholds);

}  // namespace exmart
