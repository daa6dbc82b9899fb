#include "svarkit/distributions.hpp"

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace svarkit {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double chi_square_sf(double x, double df) {
    if (!(x > 0.0)) return 1.0;
    return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

double chi_square_quantile(double q, double df) {
    return boost::math::quantile(boost::math::chi_squared(df), q);
}

}  // namespace svarkit
