#include "hpart/stats.hpp"

#include "hpart/errors.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace hpart {

double chi_square_sf(double x, double df) {
    if (!(df > 0.0)) throw InvalidArgument("chi_square_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

double chi_square_cdf(double x, double df) {
    if (!(df > 0.0)) throw InvalidArgument("chi_square_cdf: df must be positive");
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p(0.5 * df, 0.5 * x);
}

double chi_square_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("chi_square_quantile: p must lie in (0, 1)");
    return boost::math::quantile(boost::math::chi_squared_distribution<double>(df), p);
}

double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw InvalidArgument("ks_distance: empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

}  // namespace hpart
