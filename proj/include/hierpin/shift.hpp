#pragma once

// Inhomogeneous change of measure on the environment: every omega_j with
// j in V_i is lowered by delta_i >= 0. The Hoelder cost of the change and the
// shifted annealed recursion together bound the fractional moment:
//   E[R_n^theta] <= cost(profile, theta) * (r~_n)^theta.
// The "marginal" profile delta_i = eta s^{(i-n)/2} / sqrt(n) puts more shift
// on the frequently visited coarse sites; its Gaussian cost telescopes to an
// n-independent constant.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hierpin/common.hpp"
#include "hierpin/disorder.hpp"
#include "hierpin/lattice.hpp"
#include "hierpin/params.hpp"

namespace hierpin {

enum class ProfileKind { marginal, homogeneous, custom };

inline const char* to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::marginal: return "marginal";
        case ProfileKind::homogeneous: return "homogeneous";
        case ProfileKind::custom: return "custom";
    }
    return "?";
}

struct ShiftProfile {
    int n = 0;                   // system rank the profile addresses
    std::vector<double> deltas;  // delta_0 .. delta_{n-1}
    ProfileKind kind = ProfileKind::custom;
    double parameter = 0.0;      // eta for marginal, delta for homogeneous

    static ShiftProfile marginal(int n, double eta, int s) {
        require(n >= 1 && eta >= 0.0 && s >= 2, "ShiftProfile::marginal: bad arguments");
        ShiftProfile pr;
        pr.n = n;
        pr.kind = ProfileKind::marginal;
        pr.parameter = eta;
        pr.deltas.resize((std::size_t)n);
        const double ls = std::log((double)s);
        for (int i = 0; i < n; ++i)
            pr.deltas[(std::size_t)i] = eta * std::exp(0.5 * ls * (i - n)) / std::sqrt((double)n);
        return pr;
    }

    static ShiftProfile homogeneous(int n, double delta) {
        require(n >= 1 && delta >= 0.0, "ShiftProfile::homogeneous: bad arguments");
        ShiftProfile pr;
        pr.n = n;
        pr.kind = ProfileKind::homogeneous;
        pr.parameter = delta;
        pr.deltas.assign((std::size_t)n, delta);
        return pr;
    }

    static ShiftProfile custom(std::vector<double> deltas) {
        require(!deltas.empty(), "ShiftProfile::custom: empty profile");
        for (double d : deltas) require(d >= 0.0, "ShiftProfile::custom: deltas must be >= 0");
        ShiftProfile pr;
        pr.n = (int)deltas.size();
        pr.kind = ProfileKind::custom;
        pr.deltas = std::move(deltas);
        return pr;
    }
};

// sum_i |V_i| delta_i^2 (in doubles; |V_i| can exceed 64 bits at large rank)
inline double profile_quadratic_sum(const ShiftProfile& pr, int s) {
    double acc = 0.0;
    for (int i = 0; i < pr.n; ++i)
        acc += vi_size_real(i, pr.n, s) * pr.deltas[(std::size_t)i] * pr.deltas[(std::size_t)i];
    return acc;
}

// Gaussian environment: cost = exp( theta/(2(1-theta)) * sum |V_i| delta_i^2 )
inline double holder_cost_gaussian(const ShiftProfile& pr, int s, double theta) {
    require(theta > 0.0 && theta < 1.0, "holder_cost_gaussian: theta must be in (0,1)");
    return std::exp(theta / (2.0 * (1.0 - theta)) * profile_quadratic_sum(pr, s));
}

// General environment (exponential tilt):
// cost = exp( (1-theta) sum |V_i| [ log M(theta delta_i/(1-theta))
//                                   + theta/(1-theta) log M(-delta_i) ] )
inline double holder_cost_tilt(const DisorderModel& d, const ShiftProfile& pr, int s,
                               double theta) {
    require(theta > 0.0 && theta < 1.0, "holder_cost_tilt: theta must be in (0,1)");
    double acc = 0.0;
    for (int i = 0; i < pr.n; ++i) {
        const double del = pr.deltas[(std::size_t)i];
        acc += vi_size_real(i, pr.n, s) *
               (log_mgf(d, theta * del / (1.0 - theta)) +
                theta / (1.0 - theta) * log_mgf(d, -del));
    }
    return std::exp((1.0 - theta) * acc);
}

// per-step shift factor in the tilted annealed recursion (log scale, per site):
// Gaussian collapses to -beta*delta + h; the general form is
// log M(beta - delta) - log M(beta) - log M(-delta) + h.
inline double shift_log_factor_general(const DisorderModel& d, double beta, double delta,
                                       double h) {
    return log_mgf(d, beta - delta) - log_mgf(d, beta) - log_mgf(d, -delta) + h;
}

inline double shift_log_factor(const DisorderModel& d, double beta, double delta, double h) {
    if (d.kind == DisorderKind::gaussian) return -beta * delta + h;
    return shift_log_factor_general(d, beta, delta, h);
}

// r~_n from r~_0 = 1 with r~_{i+1} = (r~_i^s e^{(s-1) f_i} + (b-1))/b where
// f_i = shift_log_factor(delta_i). Zero profile reproduces r_n exactly.
inline double shifted_annealed_iterate(const ModelParams& p, const DisorderModel& d,
                                       const ShiftProfile& pr) {
    check_params(p);
    const double log_bm1 = std::log(p.b - 1.0);
    const double log_b = std::log(p.b);
    double log_r = 0.0;
    for (int i = 0; i < pr.n; ++i) {
        const double f = shift_log_factor(d, p.beta, pr.deltas[(std::size_t)i], p.h);
        if (f == 0.0 && log_r == 0.0) continue;  // exact fixed point, as in annealed_step
        log_r = log_sum_exp((p.s - 1) * f + p.s * log_r, log_bm1) - log_b;
    }
    return std::exp(log_r);
}

}  // namespace hierpin
