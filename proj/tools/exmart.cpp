/* exmart: online exchangeability testing from the command line.
 *
 * Subcommands:
 *   test          run conformal p-values + martingales over a CSV dataset
 *   synth         generate a synthetic Gaussian-mixture stream as CSV
 *   betting-dump  fit the plug-in betting function on a dataset's p-value
 *                 history and emit it on a 201-point grid
 *
 * Exit codes: 0 success, 2 validation/config failure. Threshold alarms are
 * data, not errors; they never change the exit code. */

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "exmart/betting.hpp"
#include "exmart/calibration.hpp"
#include "exmart/io.hpp"
#include "exmart/pvalue.hpp"
#include "exmart/rng.hpp"

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

int cmd_test(const exmart::RunConfig& cfg) {
    const exmart::RunSummary summary = exmart::run_experiment(cfg);
    std::cout << "examples: " << summary.n_examples << "\n";
    for (const auto& [name, s] : summary.strategies) {
        std::cout << name << ": final log10 = " << fmt9(s.final_log10)
                  << ", max log10 = " << fmt9(s.max_log10);
        for (const auto& [threshold, step] : s.crossings) {
            std::cout << ", >=" << threshold << " at ";
            if (step)
                std::cout << *step;
            else
                std::cout << "never";
        }
        std::cout << "\n";
    }
    return 0;
}

struct SynthArgs {
    std::string out;
    long n = 0;
    int classes = 2;
    int dim = 10;
    double sep = 3.0;
    double stddev = 1.0;
    uint64_t seed = 0;
    long changepoint = 0;  // 0 = none
    double shift = 2.0;
};

int cmd_synth(const SynthArgs& a) {
    exmart::SynthConfig cfg =
        exmart::make_synth_config(a.n, a.classes, a.dim, a.sep, a.stddev, a.seed);
    if (a.changepoint > 0)
        exmart::add_mean_shift_changepoint(cfg, a.changepoint, a.shift);
    const auto examples = exmart::synth_stream(cfg);

    std::ofstream out(a.out);
    if (!out)
        throw std::runtime_error("synth: cannot write '" + a.out + "'");
    for (int d = 0; d < a.dim; ++d)
        out << 'f' << d << ',';
    out << "label\n";
    for (const auto& ex : examples) {
        for (double v : ex.features)
            out << fmt9(v) << ',';
        out << ex.label << "\n";
    }
    std::cout << "wrote " << examples.size() << " examples to " << a.out << "\n";
    return 0;
}

struct DumpArgs {
    std::string data;
    std::string label_col;
    std::string out = "betting_density.csv";
    uint64_t seed = 0;
    bool shuffle = false;
    uint64_t shuffle_seed = 0;
    long max_examples = 0;
};

int cmd_betting_dump(const DumpArgs& a) {
    exmart::Dataset ds = exmart::load_csv(a.data, a.label_col);
    if (a.shuffle)
        exmart::shuffle_examples(ds.examples, a.shuffle_seed);
    if (a.max_examples > 0 && static_cast<size_t>(a.max_examples) < ds.examples.size())
        ds.examples.resize(a.max_examples);

    exmart::RngHandle rng(a.seed);
    const auto records = exmart::process_stream(ds.examples, rng);
    std::vector<double> ps;
    ps.reserve(records.size());
    for (const auto& r : records)
        ps.push_back(r.p);
    const exmart::KdeModel model = exmart::fit_kde(ps);

    std::ofstream out(a.out);
    if (!out)
        throw std::runtime_error("betting-dump: cannot write '" + a.out + "'");
    out << "p,density\n";
    for (int i = 0; i <= 200; ++i) {
        const double p = static_cast<double>(i) / 200.0;
        out << fmt9(p) << ',' << fmt9(exmart::kde_density(model, p)) << "\n";
    }
    std::cout << "wrote betting function over " << ps.size() << " p-values to " << a.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online exchangeability (i.i.d.) testing via conformal "
                 "p-values and exchangeability martingales"};
    app.require_subcommand(1);

    // --- test ---
    exmart::RunConfig run_cfg;
    bool have_shuffle_seed = false;
    auto* test = app.add_subcommand("test", "Run martingales over a CSV dataset");
    test->add_option("--data", run_cfg.data_path, "Input CSV")->required();
    test->add_option("--label", run_cfg.label_col,
                     "Label column: header name or zero-based index")->required();
    test->add_option("--strategy", run_cfg.strategies,
                     "Betting strategy (repeatable): constant, power:<eps>, "
                     "mixture, plugin, plugin:<stride>")
        ->required();
    test->add_option("--seed", run_cfg.seed, "RNG seed for the theta draws")->required();
    test->add_flag("--shuffle", run_cfg.shuffle, "Shuffle examples before testing");
    auto* ss = test->add_option("--shuffle-seed", run_cfg.shuffle_seed,
                                "Seed for the shuffle (defaults to --seed)");
    test->add_option("--threshold", run_cfg.thresholds,
                     "Alarm threshold (repeatable; default 20 100)");
    test->add_option("--max-examples", run_cfg.max_examples,
                     "Process at most this many examples (after any shuffle)");
    test->add_option("--out-trajectory", run_cfg.trajectory_path, "Trajectory CSV path");
    test->add_option("--out-summary", run_cfg.summary_path, "Summary JSON path");
    test->add_option("--out-density", run_cfg.density_path,
                     "Plug-in betting function CSV path (written when a plugin strategy runs)");
    test->callback([&] { have_shuffle_seed = ss->count() > 0; });

    // --- synth ---
    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic Gaussian-mixture stream");
    synth->add_option("--out", synth_args.out, "Output CSV")->required();
    synth->add_option("--n", synth_args.n, "Number of examples")->required();
    synth->add_option("--classes", synth_args.classes, "Number of classes (default 2)");
    synth->add_option("--dim", synth_args.dim, "Feature dimension (default 10)");
    synth->add_option("--sep", synth_args.sep, "Class mean separation (default 3)");
    synth->add_option("--std", synth_args.stddev, "Isotropic stddev (default 1)");
    synth->add_option("--seed", synth_args.seed, "RNG seed")->required();
    synth->add_option("--changepoint", synth_args.changepoint,
                      "Switch distribution at this step (0 = none)");
    synth->add_option("--shift", synth_args.shift,
                      "Changepoint mean shift in stddev units (default 2)");

    // --- betting-dump ---
    DumpArgs dump_args;
    bool have_dump_shuffle_seed = false;
    auto* dump = app.add_subcommand("betting-dump",
                                    "Emit the fitted plug-in betting function grid");
    dump->add_option("--data", dump_args.data, "Input CSV")->required();
    dump->add_option("--label", dump_args.label_col,
                     "Label column: header name or zero-based index")->required();
    dump->add_option("--seed", dump_args.seed, "RNG seed for the theta draws")->required();
    dump->add_flag("--shuffle", dump_args.shuffle, "Shuffle examples before testing");
    auto* dss = dump->add_option("--shuffle-seed", dump_args.shuffle_seed,
                                 "Seed for the shuffle (defaults to --seed)");
    dump->add_option("--max-examples", dump_args.max_examples,
                     "Process at most this many examples");
    dump->add_option("--out", dump_args.out, "Output CSV (default betting_density.csv)");
    dump->callback([&] { have_dump_shuffle_seed = dss->count() > 0; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0; bad usage exits 2
    }

    try {
        if (test->parsed()) {
            if (!have_shuffle_seed)
                run_cfg.shuffle_seed = run_cfg.seed;
            return cmd_test(run_cfg);
        }
        if (synth->parsed())
            return cmd_synth(synth_args);
        if (dump->parsed()) {
            if (!have_dump_shuffle_seed)
                dump_args.shuffle_seed = dump_args.seed;
            return cmd_betting_dump(dump_args);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
