#pragma once

// Least-squares extraction of scaling shapes from sweep outputs.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "hierpin/common.hpp"

namespace hierpin {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

namespace detail {

inline LineFit least_squares(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t m = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= (double)m;
    my /= (double)m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    require(sxx > 0.0, "fit: x values must not be all equal");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double e = ys[i] - (f.intercept + f.slope * xs[i]);
        ss_res += e * e;
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
    return f;
}

}  // namespace detail

struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
};

// y = prefactor * x^exponent via regression of log y on log x
inline PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys) {
    require(xs.size() == ys.size() && xs.size() >= 3, "fit_power_law: need >= 3 points");
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        require(xs[i] > 0.0 && ys[i] > 0.0, "fit_power_law: inputs must be positive");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    const LineFit f = detail::least_squares(lx, ly);
    return PowerLawFit{f.slope, std::exp(f.intercept), f.r_squared};
}

struct DoubleLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// regression of log(-log h) on log beta; slope -2 matches h ~ exp(-c/beta^2),
// slope -1 matches h ~ exp(-c/beta)
inline DoubleLogFit fit_double_log(std::span<const double> betas, std::span<const double> hs) {
    require(betas.size() == hs.size() && betas.size() >= 3, "fit_double_log: need >= 3 points");
    std::vector<double> lx(betas.size()), ly(hs.size());
    for (std::size_t i = 0; i < betas.size(); ++i) {
        require(betas[i] > 0.0, "fit_double_log: beta values must be positive");
        require(hs[i] > 0.0 && hs[i] < 1.0, "fit_double_log: h values must lie in (0,1)");
        lx[i] = std::log(betas[i]);
        ly[i] = std::log(-std::log(hs[i]));
    }
    const LineFit f = detail::least_squares(lx, ly);
    return DoubleLogFit{f.slope, f.intercept, f.r_squared};
}

}  // namespace hierpin
