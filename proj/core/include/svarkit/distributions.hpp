#pragma once

namespace svarkit {

double normal_cdf(double x);

/// Upper tail P(X > x) for X ~ chi-square(df).
double chi_square_sf(double x, double df);

/// Quantile q of chi-square(df).
double chi_square_quantile(double q, double df);

}  // namespace svarkit
