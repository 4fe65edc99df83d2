#include "exmart/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "exmart/rng.hpp"

namespace exmart {

SynthConfig make_synth_config(long n, int n_classes, int dim, double sep,
                              double stddev, uint64_t seed) {
    if (n < 1 || n_classes < 1 || dim < 1)
        throw std::invalid_argument("make_synth_config: n, classes, dim must be >= 1");
    if (!(stddev > 0.0))
        throw std::invalid_argument("make_synth_config: stddev must be > 0");
    SynthConfig cfg;
    cfg.n_examples = n;
    cfg.n_classes = n_classes;
    cfg.dim = dim;
    cfg.seed = seed;
    cfg.classes.resize(n_classes);
    for (int c = 0; c < n_classes; ++c) {
        cfg.classes[c].mean.assign(dim, 0.0);
        cfg.classes[c].mean[c % dim] = sep;
        cfg.classes[c].stddev = stddev;
    }
    return cfg;
}

void add_mean_shift_changepoint(SynthConfig& config, long step, double shift) {
    Changepoint cp;
    cp.step = step;
    cp.post = config.classes;
    for (int c = 0; c < config.n_classes; ++c) {
        const int axis = c % config.dim;
        const double delta = shift * config.classes[c].stddev;
        const double m = cp.post[c].mean[axis];
        // move toward the origin along the class axis
        cp.post[c].mean[axis] = m - (m >= 0.0 ? delta : -delta);
    }
    config.changepoint = cp;
}

static void validate_config(const SynthConfig& cfg) {
    if (cfg.n_examples < 1)
        throw std::invalid_argument("synth_stream: n_examples must be >= 1");
    if (static_cast<int>(cfg.classes.size()) != cfg.n_classes)
        throw std::invalid_argument("synth_stream: class parameter count mismatch");
    auto check = [&](const std::vector<ClassParams>& cls) {
        for (const auto& cp : cls) {
            if (static_cast<int>(cp.mean.size()) != cfg.dim)
                throw std::invalid_argument("synth_stream: mean dimension mismatch");
            if (!(cp.stddev > 0.0))
                throw std::invalid_argument("synth_stream: stddev must be > 0");
        }
    };
    check(cfg.classes);
    if (cfg.changepoint) {
        if (cfg.changepoint->step <= 1 || cfg.changepoint->step >= cfg.n_examples)
            throw std::invalid_argument("synth_stream: changepoint must lie inside (1, n)");
        if (static_cast<int>(cfg.changepoint->post.size()) != cfg.n_classes)
            throw std::invalid_argument("synth_stream: post-change class count mismatch");
        check(cfg.changepoint->post);
    }
}

std::vector<LabeledExample> synth_stream(const SynthConfig& cfg) {
    validate_config(cfg);
    RngHandle rng(cfg.seed);
    std::vector<LabeledExample> out;
    out.reserve(cfg.n_examples);
    for (long i = 0; i < cfg.n_examples; ++i) {
        const bool post = cfg.changepoint && i >= cfg.changepoint->step;
        const auto& params = post ? cfg.changepoint->post : cfg.classes;
        const int label = static_cast<int>(rng.next_below(cfg.n_classes));
        LabeledExample ex;
        ex.label = label;
        ex.features.resize(cfg.dim);
        for (int d = 0; d < cfg.dim; ++d)
            ex.features[d] = params[label].mean[d] + params[label].stddev * rng.next_gaussian();
        out.push_back(std::move(ex));
    }
    return out;
}

/* Asymptotic Kolmogorov distribution Q(lambda) = P(sup > lambda), using the
 * alternating series for large lambda and the theta-function form for small
 * lambda (each converges in a handful of terms on its side of ~1.18). */
static double kolmogorov_q(double lambda) {
    if (lambda <= 0.0)
        return 1.0;
    if (lambda < 1.18) {
        const double t = M_PI * M_PI / (8.0 * lambda * lambda);
        const double s = std::exp(-t) + std::exp(-9.0 * t) + std::exp(-25.0 * t) +
                         std::exp(-49.0 * t);
        return 1.0 - std::sqrt(2.0 * M_PI) / lambda * s;
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16)
            break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_uniform(std::span<const double> pvalues) {
    if (pvalues.empty())
        throw std::invalid_argument("ks_uniform: empty sample");
    std::vector<double> x(pvalues.begin(), pvalues.end());
    for (double v : x)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("ks_uniform: values must lie in [0,1]");
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - x[i]);
        d = std::max(d, x[i] - static_cast<double>(i) / n);
    }
    KsResult r;
    r.d = d;
    r.p_value = kolmogorov_q(std::sqrt(n) * d);
    return r;
}

double avg_log_growth(std::span<const double> pvalues, BettingFunction& strategy) {
    if (pvalues.empty())
        throw std::invalid_argument("avg_log_growth: empty p-value sequence");
    double sum = 0.0;
    for (double p : pvalues)
        sum += strategy.bet_ln(p);
    return sum / static_cast<double>(pvalues.size());
}

}  // namespace exmart
