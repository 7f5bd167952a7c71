#pragma once

#include "fintower/spectral.hpp"
#include "fintower/tower.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fintower {

/// One named metric or norm evaluation; exact is set when the quantity is a
/// rational computed without floats.
struct MetricValue {
    std::string name;
    double value = 0.0;
    std::optional<Rational> exact;
};

/// Rank metric rho(x, y) = rank(x - y) / 2^n, exact.  Takes values in
/// {k / 2^n : 0 <= k <= 2^n} and is a translation-invariant metric.
Rational rank_metric(const TowerElement& x, const TowerElement& y);
Rational rank_metric_to_zero(const TowerElement& x);

/// Measure-topology gauge from the singular profile s_1 >= ... >= s_N:
///   d(x) = min over 0 <= k <= N of max(s_{k+1}, k / N)
/// with s_{N+1} = 0: the smallest eps such that x is within eps outside a
/// spectral set of trace at most eps.
double measure_distance_to_zero(const TowerElement& x);
double measure_distance(const TowerElement& x, const TowerElement& y);

/// ||x||_p = (trace_normalized |x|^p)^(1/p); requires p >= 1.
double lp_norm(const TowerElement& x, double p);

/// trace_normalized log(1 + |x|); the metric gauge of the measure topology
/// in its additive form.
double log_norm(const TowerElement& x);

/// The standard summary used by the command line: log, l1, l2, l4, measure
/// gauge, and exact rank metric to zero.
std::vector<MetricValue> norm_summary(const TowerElement& x);

}  // namespace fintower
