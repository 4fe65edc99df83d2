#include "exmart/betting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "exmart/quadrature.hpp"

namespace exmart {

static constexpr double kNegInf = -std::numeric_limits<double>::infinity();
static constexpr double kLnSqrt2Pi = 0.9189385332046727418;  // ln sqrt(2 pi)

static double phi_cdf(double z) {
    return 0.5 * std::erfc(-z * M_SQRT1_2);
}

/* ---- KDE --------------------------------------------------------------- */

double silverman_bandwidth(std::span<const double> sample) {
    const size_t m = sample.size();
    if (m == 0)
        throw std::invalid_argument("silverman_bandwidth: empty sample");
    const double scale = 0.9 * std::pow(static_cast<double>(m), -0.2);

    double spread = 0.0;
    if (m >= 2) {
        double mean = 0.0;
        for (double x : sample)
            mean += x;
        mean /= static_cast<double>(m);
        double ss = 0.0;
        for (double x : sample)
            ss += (x - mean) * (x - mean);
        const double sd = std::sqrt(ss / static_cast<double>(m - 1));

        // quartiles by linear interpolation of order statistics (type 7)
        std::vector<double> s(sample.begin(), sample.end());
        std::sort(s.begin(), s.end());
        auto quantile = [&](double q) {
            const double pos = q * static_cast<double>(m - 1);
            const size_t lo = static_cast<size_t>(pos);
            const size_t hi = std::min(lo + 1, m - 1);
            return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
        };
        const double iqr = quantile(0.75) - quantile(0.25);
        spread = std::min(sd, iqr / 1.34);
    }
    if (spread > 0.0)
        return scale * spread;
    // constant (or single-point) sample: no scale information
    return std::max(1e-3, scale * std::abs(sample[0]));
}

KdeModel fit_kde(std::span<const double> past) {
    KdeModel model;
    if (past.empty()) {
        model.uniform_sentinel = true;
        return model;
    }
    model.centers.reserve(3 * past.size());
    for (double p : past) {
        model.centers.push_back(-p);       // reflected at 0
        model.centers.push_back(p);
        model.centers.push_back(2.0 - p);  // reflected at 1
    }
    model.h = silverman_bandwidth(model.centers);
    double z = 0.0;
    for (double c : model.centers)
        z += phi_cdf((1.0 - c) / model.h) - phi_cdf((0.0 - c) / model.h);
    model.z = z / static_cast<double>(model.centers.size());
    return model;
}

double kde_log_density(const KdeModel& model, double p) {
    if (p < 0.0 || p > 1.0)
        return kNegInf;
    if (model.uniform_sentinel)
        return 0.0;
    const double inv2h2 = 1.0 / (2.0 * model.h * model.h);
    double m = kNegInf;
    for (double c : model.centers)
        m = std::max(m, -(p - c) * (p - c) * inv2h2);
    double s = 0.0;
    for (double c : model.centers)
        s += std::exp(-(p - c) * (p - c) * inv2h2 - m);
    return m + std::log(s) - std::log(static_cast<double>(model.centers.size())) -
           kLnSqrt2Pi - std::log(model.h) - std::log(model.z);
}

double kde_density(const KdeModel& model, double p) {
    if (p < 0.0 || p > 1.0)
        return 0.0;
    return std::exp(kde_log_density(model, p));
}

/* ---- closed-form pieces ------------------------------------------------ */

double power_bet(double p, double eps) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("power_bet: p must lie in (0,1]");
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("power_bet: eps must lie in (0,1]");
    return eps * std::exp((eps - 1.0) * std::log(p));
}

double mixture_increment(long n, double S_prev, double p_new) {
    if (n < 1)
        throw std::invalid_argument("mixture_increment: n must be >= 1");
    if (!(p_new > 0.0 && p_new <= 1.0))
        throw std::invalid_argument("mixture_increment: p must lie in (0,1]");
    if (!(S_prev <= 0.0))
        throw std::invalid_argument("mixture_increment: S_prev must be <= 0");
    const double log_num = log_mixture_integral(n, S_prev + std::log(p_new));
    const double log_den = log_mixture_integral(n - 1, S_prev);
    return std::exp(log_num - log_den);
}

/* ---- streaming strategies ---------------------------------------------- */

double BettingFunction::bet_ln(double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("bet: p must lie in (0,1]");
    const double lf = log_density(std::log(p));
    absorb(p);
    return lf;
}

double BettingFunction::bet(double p) {
    return std::exp(bet_ln(p));
}

double ConstantBetting::log_density(double ln_p) const {
    return ln_p <= 0.0 ? 0.0 : kNegInf;
}

std::unique_ptr<BettingFunction> ConstantBetting::clone_fresh() const {
    return std::make_unique<ConstantBetting>();
}

PowerBetting::PowerBetting(double eps) : eps_(eps) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("PowerBetting: eps must lie in (0,1]");
}

std::string PowerBetting::name() const {
    char buf[40];
    std::snprintf(buf, sizeof buf, "power_%g", eps_);
    return buf;
}

double PowerBetting::log_density(double ln_p) const {
    if (ln_p > 0.0)
        return kNegInf;
    return std::log(eps_) + (eps_ - 1.0) * ln_p;
}

std::unique_ptr<BettingFunction> PowerBetting::clone_fresh() const {
    return std::make_unique<PowerBetting>(eps_);
}

double MixtureBetting::log_density(double ln_p) const {
    if (ln_p > 0.0)
        return kNegInf;
    return log_mixture_integral(n_ + 1, s_ + ln_p) - log_i_;
}

void MixtureBetting::absorb(double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("MixtureBetting::absorb: p must lie in (0,1]");
    s_ += std::log(p);
    ++n_;
    log_i_ = log_mixture_integral(n_, s_);
}

std::unique_ptr<BettingFunction> MixtureBetting::clone_fresh() const {
    return std::make_unique<MixtureBetting>();
}

PluginBetting::PluginBetting(long stride) : stride_(stride) {
    if (stride < 1)
        throw std::invalid_argument("PluginBetting: stride must be >= 1");
    model_.uniform_sentinel = true;
}

double PluginBetting::log_density(double ln_p) const {
    return kde_log_density(model_, std::exp(ln_p));
}

void PluginBetting::absorb(double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("PluginBetting::absorb: p must lie in (0,1]");
    past_.push_back(p);
    // refit at sizes 1, 1+stride, 1+2*stride, ... so the KDE exists from
    // the first past value onward
    if ((static_cast<long>(past_.size()) - 1) % stride_ == 0)
        model_ = fit_kde(past_);
}

std::unique_ptr<BettingFunction> PluginBetting::clone_fresh() const {
    return std::make_unique<PluginBetting>(stride_);
}

std::unique_ptr<BettingFunction> make_strategy(const std::string& spec) {
    if (spec == "constant")
        return std::make_unique<ConstantBetting>();
    if (spec == "mixture")
        return std::make_unique<MixtureBetting>();
    if (spec == "plugin")
        return std::make_unique<PluginBetting>();
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string head = spec.substr(0, colon);
        const std::string arg = spec.substr(colon + 1);
        try {
            size_t used = 0;
            if (head == "power") {
                const double eps = std::stod(arg, &used);
                if (used != arg.size())
                    throw std::invalid_argument("trailing characters");
                return std::make_unique<PowerBetting>(eps);
            }
            if (head == "plugin") {
                const long stride = std::stol(arg, &used);
                if (used != arg.size())
                    throw std::invalid_argument("trailing characters");
                return std::make_unique<PluginBetting>(stride);
            }
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("make_strategy: bad argument in '" + spec + "'");
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("make_strategy: bad argument in '" + spec + "'");
        }
    }
    throw std::invalid_argument("make_strategy: unknown strategy '" + spec + "'");
}

}  // namespace exmart
