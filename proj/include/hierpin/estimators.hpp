#pragma once

// Replica-based estimators. Samples inside one pool are correlated by
// resampling, so confidence intervals always come from the spread of
// independent replica means. The free-energy estimator s^{-n} E log R_n
// carries a deterministic O(s^{-n}) bias; bias_envelope() returns a rigorous
// bound on it for consistency checks against certified points.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hierpin/common.hpp"
#include "hierpin/pool.hpp"

namespace hierpin {

struct EstimateCI {
    double mean = 0.0;
    double std_err = 0.0;
    int n_samples = 0;  // replicas entering the CI
    int level = 0;
};

namespace detail {

inline void check_ensemble(std::span<const Pool> replicas) {
    if (replicas.size() < 2)
        throw std::invalid_argument("estimator: need >= 2 independent replicas");
    for (const Pool& p : replicas) {
        require(!p.log_samples.empty(), "estimator: empty pool in ensemble");
        require(p.level == replicas[0].level, "estimator: replicas at different levels");
    }
}

inline EstimateCI reduce(const std::vector<double>& vals, int level) {
    const double k = (double)vals.size();
    double m = 0.0;
    for (double v : vals) m += v;
    m /= k;
    double ss = 0.0;
    for (double v : vals) ss += (v - m) * (v - m);
    return EstimateCI{m, std::sqrt(ss / (k * (k - 1.0))), (int)vals.size(), level};
}

}  // namespace detail

// s^{-n} * (pool mean of log R_n), averaged across replicas
inline EstimateCI estimate_free_energy(std::span<const Pool> replicas) {
    detail::check_ensemble(replicas);
    const int level = replicas[0].level;
    const double scale = std::pow((double)replicas[0].params.s, -(double)level);
    std::vector<double> means;
    means.reserve(replicas.size());
    for (const Pool& p : replicas) {
        double acc = 0.0;
        for (double x : p.log_samples) acc += x;
        means.push_back(scale * acc / (double)p.log_samples.size());
    }
    return detail::reduce(means, level);
}

// E[R_n^theta], each replica reduced with a max-shifted exponential so that
// deep delocalized pools do not underflow
inline EstimateCI estimate_fractional_moment(std::span<const Pool> replicas, double theta) {
    detail::check_ensemble(replicas);
    require(theta > 0.0 && theta <= 1.0, "estimate_fractional_moment: theta in (0,1]");
    std::vector<double> vals;
    vals.reserve(replicas.size());
    for (const Pool& p : replicas) {
        double mx = -kInf;
        for (double x : p.log_samples) mx = std::fmax(mx, theta * x);
        double acc = 0.0;
        for (double x : p.log_samples) acc += std::exp(theta * x - mx);
        vals.push_back(std::exp(mx + std::log(acc / (double)p.log_samples.size())));
    }
    return detail::reduce(vals, replicas[0].level);
}

// Rigorous bound on |s^{-n} E log R_n - F| valid whenever F = 0:
// log((b-1)/b) <= E log R_n <= log b/(s-1) + log M(beta) - h.
inline double bias_envelope(const ModelParams& p, const DisorderModel& d, int level) {
    const double lower = -(std::log(p.b - 1.0) - std::log(p.b));
    const double upper = std::log(p.b) / (p.s - 1) + log_mgf(d, p.beta) - p.h;
    return std::pow((double)p.s, -(double)level) * std::fmax(lower, std::fmax(upper, 0.0));
}

}  // namespace hierpin
