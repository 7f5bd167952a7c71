#include "fintower/metrics.hpp"

#include "fintower/regular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fintower {

Rational rank_metric(const TowerElement& x, const TowerElement& y) {
    return rank_metric_to_zero(x - y);
}

Rational rank_metric_to_zero(const TowerElement& x) {
    const std::size_t rank = rank_exact(x.matrix());
    return make_rational(Integer(rank), Integer(1) << static_cast<unsigned>(x.level()));
}

double measure_distance_to_zero(const TowerElement& x) {
    const SingularProfile profile = singular_values(x.matrix());
    const std::size_t n = profile.dim();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= n; ++k) {
        const double tail = k < n ? profile.values[k] : 0.0;
        const double cand = std::max(tail, static_cast<double>(k) /
                                               static_cast<double>(n));
        best = std::min(best, cand);
    }
    return best;
}

double measure_distance(const TowerElement& x, const TowerElement& y) {
    return measure_distance_to_zero(x - y);
}

double lp_norm(const TowerElement& x, double p) {
    if (!(p >= 1.0)) {
        throw std::domain_error("lp norm requires p >= 1, got " +
                                std::to_string(p));
    }
    const SingularProfile profile = singular_values(x.matrix());
    double sum = 0.0;
    for (const double s : profile.values) {
        sum += std::pow(s, p);
    }
    return std::pow(sum / static_cast<double>(profile.dim()), 1.0 / p);
}

double log_norm(const TowerElement& x) {
    const SingularProfile profile = singular_values(x.matrix());
    double sum = 0.0;
    for (const double s : profile.values) {
        sum += std::log1p(s);
    }
    return sum / static_cast<double>(profile.dim());
}

std::vector<MetricValue> norm_summary(const TowerElement& x) {
    std::vector<MetricValue> out;
    out.push_back({"log", log_norm(x), std::nullopt});
    out.push_back({"l1", lp_norm(x, 1.0), std::nullopt});
    out.push_back({"l2", lp_norm(x, 2.0), std::nullopt});
    out.push_back({"l4", lp_norm(x, 4.0), std::nullopt});
    out.push_back({"measure", measure_distance_to_zero(x), std::nullopt});
    const Rational rho = rank_metric_to_zero(x);
    out.push_back({"rank", rho.convert_to<double>(), rho});
    return out;
}

}  // namespace fintower
