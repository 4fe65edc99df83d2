#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "exmart/martingale.hpp"
#include "exmart/rng.hpp"
#include "helpers.hpp"

using exmart::MartingaleTracker;

TEST_CASE("tracker accumulates in log10") {
    MartingaleTracker t("demo", {20.0, 100.0});
    t.step(1.0);
    CHECK(t.log10_value() == 0.0);
    CHECK(t.steps() == 1);

    t.step(10.0);
    t.step(10.0);
    CHECK(t.log10_value() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(t.log10_max() == doctest::Approx(2.0).epsilon(1e-12));

    t.step(0.1);
    CHECK(t.log10_value() == doctest::Approx(1.0).epsilon(1e-12));
    // the maximum never decays
    CHECK(t.log10_max() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("tracker records first crossings only") {
    MartingaleTracker t("demo", {100.0});
    t.step(50.0);          // 50 < 100: no alarm
    CHECK_FALSE(t.first_crossing(0).has_value());
    t.step(4.0);           // 200 >= 100: alarm at step 2
    REQUIRE(t.first_crossing(0).has_value());
    CHECK(*t.first_crossing(0) == 2);
    t.step(1e-6);          // dropping below never clears the alarm
    t.step(1e6);           // nor does re-crossing move it
    CHECK(*t.first_crossing(0) == 2);

    // exact hit counts as a crossing
    MartingaleTracker u("demo", {100.0});
    u.step(100.0);
    REQUIRE(u.first_crossing(0).has_value());
    CHECK(*u.first_crossing(0) == 1);
}

TEST_CASE("tracker threshold one is crossed at step zero") {
    MartingaleTracker t("demo", {1.0, 20.0});
    REQUIRE(t.first_crossing(0).has_value());
    CHECK(*t.first_crossing(0) == 0);
    CHECK_FALSE(t.first_crossing(1).has_value());
}

TEST_CASE("tracker validation") {
    CHECK_THROWS_AS(MartingaleTracker("x", {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(MartingaleTracker("x", {-3.0}), std::invalid_argument);
    MartingaleTracker t("x", {20.0});
    CHECK_THROWS_AS(t.step(0.0), std::invalid_argument);
    CHECK_THROWS_AS(t.step(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(t.step(std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(t.step(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(t.step_ln(std::nan("")), std::invalid_argument);
}

TEST_CASE("tracker survives magnitudes far beyond double range") {
    MartingaleTracker t("x", {20.0});
    // 4000 factors of e^10 -> value e^40000, hopeless in linear scale
    for (int i = 0; i < 4000; ++i)
        t.step_ln(10.0);
    CHECK(t.log10_value() == doctest::Approx(40000.0 / std::log(10.0)));
    for (int i = 0; i < 8000; ++i)
        t.step_ln(-10.0);
    CHECK(t.log10_value() == doctest::Approx(-40000.0 / std::log(10.0)));
    CHECK(t.log10_max() == doctest::Approx(40000.0 / std::log(10.0)));
}

TEST_CASE("run_martingales drives every strategy over the same stream") {
    // synthetic p-value records; only .p matters here
    exmart::RngHandle rng(450);
    std::vector<exmart::PValueRecord> recs(300);
    for (size_t i = 0; i < recs.size(); ++i) {
        recs[i].index = static_cast<long>(i + 1);
        recs[i].p = rng.next_unit_open();
        recs[i].theta = 0.5;
    }

    std::vector<std::unique_ptr<exmart::BettingFunction>> strategies;
    strategies.push_back(exmart::make_strategy("constant"));
    strategies.push_back(exmart::make_strategy("power:1"));
    strategies.push_back(exmart::make_strategy("mixture"));
    const std::vector<double> thresholds{20.0, 100.0};

    const auto out = exmart::run_martingales(strategies, recs, thresholds);
    REQUIRE(out.size() == 3);
    for (const auto& tr : out) {
        CHECK(tr.log10_values.size() == recs.size());
        CHECK(tr.tracker.steps() == static_cast<long>(recs.size()));
        CHECK(tr.tracker.log10_value() == tr.log10_values.back());
    }

    // the constant strategy never moves
    CHECK(out[0].tracker.log10_value() == 0.0);
    CHECK(out[0].tracker.log10_max() == 0.0);
    CHECK_FALSE(out[0].tracker.first_crossing(0).has_value());

    // power with eps = 1 is the constant bet, bit for bit
    for (size_t i = 0; i < recs.size(); ++i)
        CHECK(out[1].log10_values[i] == out[0].log10_values[i]);

    // mixture trajectory against the independent uniform-panel quadrature
    double s = 0.0;
    for (size_t i = 0; i < recs.size(); ++i) {
        s += std::log(recs[i].p);
        const double ref_log10 =
            testutil::uniform_panel_log_mixture(static_cast<long>(i + 1), s, 100, 32) /
            std::log(10.0);
        CHECK(out[2].log10_values[i] == doctest::Approx(ref_log10).epsilon(1e-9));
    }
}
