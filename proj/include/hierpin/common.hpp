#pragma once

// Shared numeric helpers. Everything downstream assumes these are total on
// finite inputs and never lose the dominant term.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hierpin {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// log(e^x + e^y) without overflow; tolerates -inf on either side.
inline double log_sum_exp(double x, double y) {
    if (x == -kInf) return y;
    if (y == -kInf) return x;
    const double m = x > y ? x : y;
    const double d = (x > y ? y : x) - m;
    return m + std::log1p(std::exp(d));
}

// log(e^x - e^y) for x >= y. Used by variance bookkeeping.
inline double log_diff_exp(double x, double y) {
    if (y == -kInf) return x;
    if (x < y) throw std::domain_error("log_diff_exp: negative difference");
    return x + std::log1p(-std::exp(y - x));
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 0.0) {
    const double d = std::fabs(a - b);
    const double scale = std::fmax(std::fabs(a), std::fabs(b));
    return d <= std::fmax(abs_floor, rel * scale);
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace hierpin
