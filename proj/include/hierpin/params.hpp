#pragma once

// Model parameters for the diamond hierarchical pinning lattice.
// Each edge is replaced by b branches of s edges per generation; s is an
// integer >= 2, b is real > 1 (the recursion makes sense for non-integer b).

#include <cmath>
#include <string>
#include <vector>

#include "hierpin/common.hpp"

namespace hierpin {

struct ModelParams {
    int s = 2;        // edges per branch
    double b = 2.0;   // branching number, real > 1
    double beta = 0;  // disorder strength
    double h = 0;     // pinning potential per contact
};

enum class Regime { relevant, marginal, irrelevant, alpha_zero };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::relevant: return "relevant";
        case Regime::marginal: return "marginal";
        case Regime::irrelevant: return "irrelevant";
        case Regime::alpha_zero: return "alpha-zero";
    }
    return "?";
}

inline std::vector<std::string> validate(const ModelParams& p) {
    std::vector<std::string> bad;
    if (p.s < 2) bad.push_back("s must be an integer >= 2");
    if (!(p.b > 1.0)) bad.push_back("b must be > 1");
    if (!(p.beta >= 0.0)) bad.push_back("beta must be >= 0");
    if (!std::isfinite(p.h)) bad.push_back("h must be finite");
    return bad;
}

inline void check_params(const ModelParams& p) {
    auto bad = validate(p);
    if (!bad.empty()) {
        std::string msg = "invalid model parameters:";
        for (const auto& m : bad) msg += " " + m + ";";
        throw std::invalid_argument(msg);
    }
}

// b = sqrt(s) is detected within a relative tolerance; the label never feeds
// back into the arithmetic.
inline Regime regime(int s, double b) {
    require(s >= 2 && b > 1.0, "regime: need s >= 2 and b > 1");
    const double root = std::sqrt((double)s);
    if (std::fabs(b - root) <= 1e-12 * root) return Regime::marginal;
    if (b < root) return Regime::relevant;
    if (b < (double)s) return Regime::irrelevant;
    return Regime::alpha_zero;
}

// pure-system exponent parameter: alpha = (log s - log b) / log s
inline double alpha_exponent(int s, double b) {
    return (std::log((double)s) - std::log(b)) / std::log((double)s);
}

}  // namespace hierpin
