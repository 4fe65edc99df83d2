#pragma once

/* Dataset ingestion, deterministic shuffling, and experiment orchestration.
 * Input CSV: UTF-8, comma-separated, optional header row; one column holds
 * the categorical label (addressed by header name or zero-based index),
 * every other column must parse as a finite real feature.
 *
 * A run writes: a trajectory CSV (index,p_value,theta,log10_<strategy>...),
 * a summary JSON (final/max log10 and threshold crossings per strategy),
 * and -- when a plugin strategy is present -- the final fitted betting
 * function sampled on a 201-point grid. All outputs are deterministic
 * functions of (dataset bytes, config). */

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exmart/core.hpp"

namespace exmart {

struct Dataset {
    std::vector<LabeledExample> examples;   // file order
    std::vector<std::string> label_names;   // label id -> original token
};

/* label_col: decimal integer => zero-based column index (a header row is
 * auto-detected and skipped); anything else => column name, header required. */
Dataset load_csv(const std::string& path, const std::string& label_col);

/* Seeded Fisher-Yates permutation, in place. */
void shuffle_examples(std::vector<LabeledExample>& examples, uint64_t seed);

struct RunConfig {
    std::string data_path;
    std::string label_col;
    std::vector<std::string> strategies;  // specs: "power:0.5", "mixture", ...
    uint64_t seed = 0;                    // mandatory; no wall-clock default
    bool shuffle = false;
    uint64_t shuffle_seed = 0;
    std::vector<double> thresholds{20.0, 100.0};
    long max_examples = 0;  // 0 = no cutoff; applied after the shuffle
    std::string trajectory_path = "trajectory.csv";
    std::string summary_path = "summary.json";
    std::string density_path = "betting_density.csv";
};

struct StrategySummary {
    double final_log10 = 0.0;
    double max_log10 = 0.0;
    std::map<double, std::optional<long>> crossings;  // threshold -> first step
};

struct RunSummary {
    long n_examples = 0;
    std::vector<std::pair<std::string, StrategySummary>> strategies;
};

RunSummary run_experiment(const RunConfig& config);

}  // namespace exmart
