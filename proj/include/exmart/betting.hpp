#pragma once

/* Betting functions: nonnegative densities on [0,1] integrating to 1,
 * one factor per p-value. Four strategies ship:
 *   constant        f(p) = 1
 *   power(eps)      f(p) = eps * p^(eps-1),  eps in (0,1]
 *   simple mixture  the increment of M_n = int_0^1 prod eps p_i^(eps-1) deps
 *   plugin          Gaussian KDE fitted on the strictly-past p-values,
 *                   boundary-corrected by reflection at 0 and 1
 * Factors are produced in log form so downstream accumulation never
 * overflows or underflows. */

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace exmart {

/* ---- kernel density model (plugin strategy) ---------------------------- */

struct KdeModel {
    std::vector<double> centers;  // extended sample {-p_i, p_i, 2-p_i}, size 3m
    double h = 0.0;               // bandwidth
    double z = 1.0;               // mass of the kernel mixture inside [0,1]
    bool uniform_sentinel = false;  // empty history: density == 1 on [0,1]
};

/* Silverman's rule of thumb h = 0.9 min(sd, IQR/1.34) m^(-1/5) over the
 * given sample (callers pass the extended 3m-point sample). sd uses the
 * m-1 denominator; quartiles use linear interpolation of order statistics
 * (the convention numpy/R call type 7). Degenerate samples (constant, or
 * a single point) fall back to h = max(1e-3, 0.9 |x_1| m^(-1/5)). */
double silverman_bandwidth(std::span<const double> sample);

/* Fit on past p-values; empty history yields the uniform sentinel. The
 * normalizer z is analytic: the average over centers c of
 * Phi((1-c)/h) - Phi((0-c)/h). */
KdeModel fit_kde(std::span<const double> past);

/* Density at p: (1/(3m h z)) sum_c phi((p-c)/h), zero outside [0,1]. */
double kde_density(const KdeModel& model, double p);
/* Same value in log form (log-sum-exp over centers); -inf outside [0,1]. */
double kde_log_density(const KdeModel& model, double p);

/* ---- closed-form pieces ------------------------------------------------ */

/* eps * p^(eps-1) for eps in (0,1], p in (0,1]. */
double power_bet(double p, double eps);

/* M_n / M_{n-1} where M_n = I(n, S_prev + ln p_new) and
 * I(n,S) = int_0^1 eps^n exp((eps-1)S) deps, M_0 = 1. */
double mixture_increment(long n, double S_prev, double p_new);

/* ---- streaming strategy interface -------------------------------------- */

class BettingFunction {
  public:
    virtual ~BettingFunction() = default;

    virtual std::string name() const = 0;
    /* ln f(p) at p = exp(ln_p), under the state built from strictly-past
     * p-values. Taking ln p (not p) lets integration oracles probe the
     * deep left tail where p itself underflows; -inf outside (0,1]. */
    virtual double log_density(double ln_p) const = 0;
    /* Fold one observed p-value into the state. */
    virtual void absorb(double p) = 0;
    virtual std::unique_ptr<BettingFunction> clone_fresh() const = 0;

    /* One betting step: factor from the past-only state, then absorb.
     * Strictly-past discipline holds by construction. */
    double bet_ln(double p);
    double bet(double p);
};

class ConstantBetting final : public BettingFunction {
  public:
    std::string name() const override { return "constant"; }
    double log_density(double ln_p) const override;
    void absorb(double) override {}
    std::unique_ptr<BettingFunction> clone_fresh() const override;
};

class PowerBetting final : public BettingFunction {
  public:
    explicit PowerBetting(double eps);
    std::string name() const override;
    double log_density(double ln_p) const override;
    void absorb(double) override {}
    std::unique_ptr<BettingFunction> clone_fresh() const override;
    double eps() const { return eps_; }

  private:
    double eps_;
};

class MixtureBetting final : public BettingFunction {
  public:
    MixtureBetting() = default;
    std::string name() const override { return "mixture"; }
    double log_density(double ln_p) const override;
    void absorb(double p) override;
    std::unique_ptr<BettingFunction> clone_fresh() const override;
    long count() const { return n_; }
    double log_sum() const { return s_; }

  private:
    long n_ = 0;
    double s_ = 0.0;        // sum of ln p over absorbed values
    double log_i_ = 0.0;    // cached log I(n_, s_); I(0,0) = 1
};

class PluginBetting final : public BettingFunction {
  public:
    /* stride k >= 1: refit the KDE on every k-th absorb, reusing the last
     * model in between (any measurable function of the past is a legal
     * betting function, so validity is unaffected). Default refits every
     * step. */
    explicit PluginBetting(long stride = 1);
    std::string name() const override { return "plugin"; }
    double log_density(double ln_p) const override;
    void absorb(double p) override;
    std::unique_ptr<BettingFunction> clone_fresh() const override;
    const KdeModel& model() const { return model_; }
    std::span<const double> past() const { return past_; }

  private:
    long stride_;
    std::vector<double> past_;
    KdeModel model_;  // starts as the uniform sentinel
};

/* Build a strategy from a CLI-style spec: "constant", "mixture", "plugin",
 * "plugin:<stride>", or "power:<eps>". Throws on anything else. */
std::unique_ptr<BettingFunction> make_strategy(const std::string& spec);

}  // namespace exmart
