#include "exmart/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "exmart/betting.hpp"
#include "exmart/martingale.hpp"
#include "exmart/pvalue.hpp"
#include "exmart/rng.hpp"

namespace exmart {

static std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

static std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ','))
        out.push_back(trim(field));
    if (!line.empty() && line.back() == ',')
        out.push_back("");
    return out;
}

/* Strict finite-real parse: the whole token must be consumed. */
static bool parse_real(const std::string& tok, double& out) {
    if (tok.empty())
        return false;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
        return false;
    return std::isfinite(out);
}

static bool parse_index(const std::string& tok, size_t& out) {
    if (tok.empty())
        return false;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

Dataset load_csv(const std::string& path, const std::string& label_col) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_csv: cannot open '" + path + "'");

    std::vector<std::vector<std::string>> rows;
    std::string line;
    size_t lineno = 0;
    std::vector<size_t> linenos;  // original file line per kept row
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (trim(line).empty())
            continue;  // skip blank lines
        rows.push_back(split_csv_line(line));
        linenos.push_back(lineno);
    }
    if (rows.empty())
        throw std::runtime_error("load_csv: '" + path + "' holds no data");

    const size_t n_cols = rows[0].size();
    for (size_t r = 0; r < rows.size(); ++r)
        if (rows[r].size() != n_cols)
            throw std::runtime_error("load_csv: line " + std::to_string(linenos[r]) +
                                     " has " + std::to_string(rows[r].size()) +
                                     " columns, expected " + std::to_string(n_cols));

    size_t label_idx = 0;
    size_t first_data = 0;
    if (parse_index(label_col, label_idx)) {
        if (label_idx >= n_cols)
            throw std::runtime_error("load_csv: label index " + label_col +
                                     " out of range for " + std::to_string(n_cols) + " columns");
        // header detection: the first row is a header iff its non-label
        // fields do not all parse as finite reals
        bool all_numeric = true;
        for (size_t c = 0; c < n_cols && all_numeric; ++c) {
            double v;
            if (c != label_idx && !parse_real(rows[0][c], v))
                all_numeric = false;
        }
        if (n_cols > 1 && !all_numeric)
            first_data = 1;
    } else {
        // label addressed by name: the first row must be a header
        const auto& header = rows[0];
        auto it = std::find(header.begin(), header.end(), label_col);
        if (it == header.end())
            throw std::runtime_error("load_csv: no column named '" + label_col + "'");
        label_idx = static_cast<size_t>(it - header.begin());
        first_data = 1;
    }
    if (first_data >= rows.size())
        throw std::runtime_error("load_csv: '" + path + "' holds a header but no data rows");

    Dataset ds;
    std::unordered_map<std::string, int> label_ids;
    ds.examples.reserve(rows.size() - first_data);
    for (size_t r = first_data; r < rows.size(); ++r) {
        LabeledExample ex;
        ex.features.reserve(n_cols - 1);
        for (size_t c = 0; c < n_cols; ++c) {
            if (c == label_idx)
                continue;
            double v;
            if (!parse_real(rows[r][c], v))
                throw std::runtime_error("load_csv: line " + std::to_string(linenos[r]) +
                                         ", column " + std::to_string(c) +
                                         ": '" + rows[r][c] + "' is not a finite real");
            ex.features.push_back(v);
        }
        const std::string& tok = rows[r][label_idx];
        auto [it, inserted] = label_ids.try_emplace(tok, static_cast<int>(ds.label_names.size()));
        if (inserted)
            ds.label_names.push_back(tok);
        ex.label = it->second;
        ds.examples.push_back(std::move(ex));
    }
    return ds;
}

void shuffle_examples(std::vector<LabeledExample>& examples, uint64_t seed) {
    RngHandle rng(seed);
    for (size_t i = examples.size(); i > 1; --i) {
        const size_t j = rng.next_below(i);
        std::swap(examples[i - 1], examples[j]);
    }
}

static std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

static std::string fmt_threshold(double t) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

RunSummary run_experiment(const RunConfig& config) {
    if (config.strategies.empty())
        throw std::invalid_argument("run_experiment: at least one strategy required");
    for (double t : config.thresholds)
        if (!(t >= 1.0))
            throw std::invalid_argument("run_experiment: thresholds must be >= 1");

    Dataset ds = load_csv(config.data_path, config.label_col);
    if (config.shuffle)
        shuffle_examples(ds.examples, config.shuffle_seed);
    if (config.max_examples > 0 &&
        static_cast<size_t>(config.max_examples) < ds.examples.size())
        ds.examples.resize(config.max_examples);

    RngHandle rng(config.seed);
    const std::vector<PValueRecord> pvalues = process_stream(ds.examples, rng);

    std::vector<std::unique_ptr<BettingFunction>> strategies;
    strategies.reserve(config.strategies.size());
    for (const auto& spec : config.strategies)
        strategies.push_back(make_strategy(spec));

    const auto trajectories = run_martingales(strategies, pvalues, config.thresholds);

    // trajectory CSV
    std::ofstream tr(config.trajectory_path);
    if (!tr)
        throw std::runtime_error("run_experiment: cannot write '" + config.trajectory_path + "'");
    tr << "index,p_value,theta";
    for (const auto& t : trajectories)
        tr << ",log10_" << t.tracker.name();
    tr << "\n";
    for (size_t i = 0; i < pvalues.size(); ++i) {
        tr << pvalues[i].index << ',' << fmt9(pvalues[i].p) << ',' << fmt9(pvalues[i].theta);
        for (const auto& t : trajectories)
            tr << ',' << fmt9(t.log10_values[i]);
        tr << "\n";
    }
    tr.close();

    // summary JSON
    RunSummary summary;
    summary.n_examples = static_cast<long>(pvalues.size());
    nlohmann::json jstrategies = nlohmann::json::object();
    for (const auto& t : trajectories) {
        StrategySummary ss;
        ss.final_log10 = t.tracker.log10_value();
        ss.max_log10 = t.tracker.log10_max();
        nlohmann::json jcross = nlohmann::json::object();
        for (size_t k = 0; k < config.thresholds.size(); ++k) {
            const auto cross = t.tracker.first_crossing(k);
            ss.crossings[config.thresholds[k]] = cross;
            if (cross)
                jcross[fmt_threshold(config.thresholds[k])] = *cross;
            else
                jcross[fmt_threshold(config.thresholds[k])] = nullptr;
        }
        jstrategies[t.tracker.name()] = {
            {"final_log10", ss.final_log10},
            {"max_log10", ss.max_log10},
            {"crossings", jcross},
        };
        summary.strategies.emplace_back(t.tracker.name(), std::move(ss));
    }
    nlohmann::json jsummary = {
        {"strategies", jstrategies},
        {"n_examples", summary.n_examples},
        {"seed", config.seed},
        {"shuffled", config.shuffle},
    };
    std::ofstream sm(config.summary_path);
    if (!sm)
        throw std::runtime_error("run_experiment: cannot write '" + config.summary_path + "'");
    sm << jsummary.dump(2) << "\n";
    sm.close();

    // final plug-in betting function on a 201-point grid
    for (size_t k = 0; k < strategies.size(); ++k) {
        auto* plugin = dynamic_cast<const PluginBetting*>(strategies[k].get());
        if (!plugin)
            continue;
        const KdeModel model = fit_kde(plugin->past());
        std::ofstream dn(config.density_path);
        if (!dn)
            throw std::runtime_error("run_experiment: cannot write '" + config.density_path + "'");
        dn << "p,density\n";
        for (int i = 0; i <= 200; ++i) {
            const double p = static_cast<double>(i) / 200.0;
            dn << fmt9(p) << ',' << fmt9(kde_density(model, p)) << "\n";
        }
        break;
    }
    return summary;
}

}  // namespace exmart
