#pragma once

/* Core domain types shared by every module: labeled examples, the
 * extended nonnegative reals used by nonconformity ratios, and the
 * Euclidean metric. */

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace exmart {

struct LabeledExample {
    std::vector<double> features;  // finite reals, same dimension across a stream
    int label = 0;                 // categorical id
};

/* Nonnegative real extended with a single INF element. INF is greater
 * than every finite value; NaN is rejected at construction so it can
 * never propagate out of ratio arithmetic. */
class ExtNonNegReal {
  public:
    ExtNonNegReal() = default;
    ExtNonNegReal(double v) : v_(v) {
        if (std::isnan(v) || v < 0.0)
            throw std::invalid_argument("ExtNonNegReal: value must be >= 0 or INF");
    }
    static ExtNonNegReal inf() { return ExtNonNegReal(std::numeric_limits<double>::infinity()); }

    double value() const { return v_; }
    bool is_inf() const { return std::isinf(v_); }
    bool is_finite() const { return !std::isinf(v_); }

    friend bool operator==(ExtNonNegReal a, ExtNonNegReal b) { return a.v_ == b.v_; }
    friend auto operator<=>(ExtNonNegReal a, ExtNonNegReal b) { return a.v_ <=> b.v_; }

  private:
    double v_ = 0.0;
};

/* Ratio on the extended nonnegative reals, total by convention:
 *   finite/finite>0 -> quotient     finite>0/0 -> INF
 *   INF/finite      -> INF          finite/INF -> 0
 *   INF/INF         -> 1            0/0        -> 1
 * The two ambiguous cases map to 1 ("neutrally strange"). */
inline ExtNonNegReal ext_ratio(ExtNonNegReal num, ExtNonNegReal den) {
    if (num.is_inf())
        return den.is_inf() ? ExtNonNegReal(1.0) : ExtNonNegReal::inf();
    if (den.is_inf())
        return ExtNonNegReal(0.0);
    if (den.value() == 0.0)
        return num.value() == 0.0 ? ExtNonNegReal(1.0) : ExtNonNegReal::inf();
    return ExtNonNegReal(num.value() / den.value());
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("euclidean_distance: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace exmart
