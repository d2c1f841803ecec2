#pragma once

#include <functional>
#include <span>

namespace hpart {

/// Upper tail P(X >= x) of chi-square with @p df degrees of freedom.
[[nodiscard]] double chi_square_sf(double x, double df);

/// Quantile of chi-square with @p df degrees of freedom.
[[nodiscard]] double chi_square_quantile(double p, double df);

/// Chi-square CDF.
[[nodiscard]] double chi_square_cdf(double x, double df);

/// Kolmogorov-Smirnov distance between an empirical sample and a continuous CDF.
[[nodiscard]] double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf);

}  // namespace hpart
