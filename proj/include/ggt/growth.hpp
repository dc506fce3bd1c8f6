// Growth-rate estimates and truncated Poincare series.
//
// Convention: an estimate reported "at radius R" consumes a SphereTable of
// radius R + 1. upper_n = ln(B_n)/n is a certified upper bound for the growth
// rate for every n (Fekete, by submultiplicativity of B), so inf_upper is the
// certified side of a bracket. ratio_n = ln(B_{n+1}/B_n) is the one-step
// estimator; it consumes the sphere beyond the reporting radius and is
// heuristic only — finite data cannot certify a lower bound.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "ggt/cayley.hpp"
#include "ggt/csv.hpp"
#include "ggt/errors.hpp"
#include "ggt/numeric.hpp"

namespace ggt {

struct GrowthEstimate {
    int report_radius = 0;      // table radius minus one
    std::vector<double> upper;  // index n in [1, report_radius]; [0] unused (NaN)
    std::vector<double> ratio;  // index n in [0, report_radius]
    double inf_upper = 0.0;     // certified: growth rate <= inf_upper
    double extrapolated = 0.0;  // heuristic: ratio at the reporting radius
};

inline GrowthEstimate growth_rate_estimate(const SphereTable& t) {
    if (t.radius < 2)
        throw precondition_error("growth estimate needs a table of radius >= 2");
    GrowthEstimate est;
    est.report_radius = t.radius - 1;
    std::size_t r = static_cast<std::size_t>(est.report_radius);
    est.upper.assign(r + 1, std::numeric_limits<double>::quiet_NaN());
    est.ratio.assign(r + 1, 0.0);
    for (std::size_t n = 1; n <= r; ++n)
        est.upper[n] = std::log(static_cast<double>(t.cum[n])) / static_cast<double>(n);
    for (std::size_t n = 0; n <= r; ++n)
        est.ratio[n] = std::log(static_cast<double>(t.cum[n + 1]) /
                                static_cast<double>(t.cum[n]));
    est.inf_upper = est.upper[1];
    for (std::size_t n = 1; n <= r; ++n)
        est.inf_upper = std::min(est.inf_upper, est.upper[n]);
    if (r == 0) est.inf_upper = 0.0;
    est.extrapolated = est.ratio[r];
    return est;
}

struct PoincareValue {
    double series;      // sum of b_n e^{-sn} over the whole table
    double cumulative;  // sum of B_n e^{-sn}
};

/// Truncated Poincare series at exponent s > 0, over the full table radius.
/// The finite Abel identity
///   cumulative * (1 - e^{-s}) = series - B_R e^{-s(R+1)}
/// holds to 1e-12 at desk scale.
inline PoincareValue poincare_truncated(const SphereTable& t, double s) {
    if (!(s > 0.0)) throw precondition_error("Poincare exponent must be positive");
    KahanSum p, pc;
    for (int n = 0; n <= t.radius; ++n) {
        double w = std::exp(-s * n);
        p.add(static_cast<double>(t.b[static_cast<std::size_t>(n)]) * w);
        pc.add(static_cast<double>(t.cum[static_cast<std::size_t>(n)]) * w);
    }
    return {p.value(), pc.value()};
}

struct CriticalBracket {
    double lo_heuristic;  // ratio estimator; NOT certified
    double hi_certified;  // Fekete upper bound
    int report_radius;
};

inline CriticalBracket critical_bracket(const SphereTable& t) {
    if (t.radius < 5)
        throw precondition_error("critical bracket needs reporting radius >= 4");
    GrowthEstimate est = growth_rate_estimate(t);
    return {est.extrapolated, est.inf_upper, est.report_radius};
}

/// CSV with columns n, b_n, B_n, upper_n, ratio_n for n up to the reporting
/// radius (upper_0 is left blank).
inline std::string growth_csv(const SphereTable& t, const GrowthEstimate& est) {
    CsvWriter csv;
    csv.field(std::string("n"));
    csv.field(std::string("b_n"));
    csv.field(std::string("B_n"));
    csv.field(std::string("upper_n"));
    csv.field(std::string("ratio_n"));
    csv.endrow();
    for (int n = 0; n <= est.report_radius; ++n) {
        std::size_t i = static_cast<std::size_t>(n);
        csv.field(n);
        csv.field(t.b[i]);
        csv.field(t.cum[i]);
        csv.field(n == 0 ? std::string() : format_double(est.upper[i]));
        csv.field(format_double(est.ratio[i]));
        csv.endrow();
    }
    return csv.str();
}

}  // namespace ggt
