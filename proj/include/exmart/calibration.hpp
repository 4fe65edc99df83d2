#pragma once

/* Synthetic Gaussian-mixture streams (optionally with a distribution
 * changepoint) and the statistical oracles used by the test suite:
 * Kolmogorov-Smirnov uniformity and average log betting growth. */

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "exmart/betting.hpp"
#include "exmart/core.hpp"

namespace exmart {

struct ClassParams {
    std::vector<double> mean;
    double stddev = 1.0;  // isotropic
};

struct Changepoint {
    long step = 0;  // 0-based index of the first example drawn post-change
    std::vector<ClassParams> post;
};

struct SynthConfig {
    long n_examples = 0;
    int n_classes = 2;
    int dim = 1;
    std::vector<ClassParams> classes;
    std::optional<Changepoint> changepoint;
    uint64_t seed = 0;
};

/* Axis-aligned helper: class c has mean sep * e_{c mod dim}. */
SynthConfig make_synth_config(long n, int n_classes, int dim, double sep,
                              double stddev, uint64_t seed);

/* Adds a changepoint where every class mean moves `shift` standard
 * deviations toward the origin along its own axis (the two class
 * populations drift closer together). */
void add_mean_shift_changepoint(SynthConfig& config, long step, double shift);

/* Labels drawn uniformly, features Gaussian around the class mean;
 * deterministic per seed. */
std::vector<LabeledExample> synth_stream(const SynthConfig& config);

struct KsResult {
    double d = 0.0;        // sup |F_hat - p|
    double p_value = 1.0;  // asymptotic
};

/* One-sample Kolmogorov-Smirnov test against U[0,1]. */
KsResult ks_uniform(std::span<const double> pvalues);

/* (1/n) sum ln f_i(p_i), replaying the stream through a fresh strategy. */
double avg_log_growth(std::span<const double> pvalues, BettingFunction& strategy);

}  // namespace exmart
