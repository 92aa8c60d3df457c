#pragma once

// Exact deterministic recursions: the annealed partition function
//   r_{n+1} = (exp((s-1)h) r_n^s + (b-1)) / b,   r_0 = 1,
// its excess p_n = r_n - 1, and the relative variance v_n of the quenched
// partition function. r_n grows doubly exponentially in the localized phase,
// so everything r-related is carried as log r_n.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hierpin/common.hpp"
#include "hierpin/disorder.hpp"
#include "hierpin/params.hpp"

namespace hierpin {

// log r_{n+1} from log r_n. The fixed point (h = 0, r = 1) is exact in
// floating point so the flat trajectory never drifts.
inline double annealed_step(double log_r, const ModelParams& p) {
    if (p.h == 0.0 && log_r == 0.0) return 0.0;
    const double w = (p.s - 1) * p.h + p.s * log_r;
    return log_sum_exp(w, std::log(p.b - 1.0)) - std::log(p.b);
}

enum class TraceStatus { flat, diverging, converged_below_one, converged_above_one, running };

inline const char* to_string(TraceStatus st) {
    switch (st) {
        case TraceStatus::flat: return "flat";
        case TraceStatus::diverging: return "diverging";
        case TraceStatus::converged_below_one: return "converged_below_one";
        case TraceStatus::converged_above_one: return "converged_above_one";
        case TraceStatus::running: return "running";
    }
    return "?";
}

struct AnnealedTrace {
    ModelParams params;
    std::vector<double> log_r;  // log_r[n]
    std::vector<double> p;      // r_n - 1, dropped once log_r is huge
    std::vector<double> v;      // relative variance, only when disorder given
    TraceStatus status = TraceStatus::running;
};

// p_{n+1} = ((1+p_n)^s exp((s-1)h) - 1) / b
inline double p_step(double p, const ModelParams& mp) {
    return std::expm1((mp.s - 1) * mp.h + mp.s * std::log1p(p)) / mp.b;
}

// first level with p_n >= 1 (equivalently r_n >= 2)
inline int n1(const ModelParams& mp, int cap = 1'000'000) {
    require(mp.h > 0.0, "n1: requires h > 0 (p_n never reaches 1 otherwise)");
    double p = 0.0;
    for (int n = 1; n <= cap; ++n) {
        p = p_step(p, mp);
        if (p >= 1.0) return n;
    }
    throw std::runtime_error("n1: level cap exceeded");
}

// One exact step of the relative variance
//   v_{n+1} = pre * (exp((s-1) gamma) (1+v_n)^s - 1),
//   pre = r_n^{2s} e^{2(s-1)h} / (r_n^s e^{(s-1)h} + b - 1)^2,
// with the prefactor assembled in log domain. Saturates to +inf (the caller
// treats that as "variance blown up") instead of overflowing.
inline double variance_step(double log_r, double v, const ModelParams& p,
                            const DisorderModel& d) {
    require(v >= 0.0, "variance_step: v must be >= 0");
    const double g = gamma_beta(d, p.beta);
    const double w = p.s * log_r + (p.s - 1) * p.h;
    const double log_pre = 2.0 * (w - log_sum_exp(w, std::log(p.b - 1.0)));
    const double expo = (p.s - 1) * g + p.s * std::log1p(v);
    if (expo > 700.0) return kInf;
    return std::exp(log_pre) * std::expm1(expo);
}

struct IterateOptions {
    int n_max = 200;
    double div_threshold = 700.0;   // stop once log r exceeds this
    double fix_tol = 1e-15;         // |r_{n+1} - r_n| fixed-point tolerance
    bool record_p = true;
    const DisorderModel* disorder = nullptr;  // also track v when given
};

inline AnnealedTrace annealed_iterate(const ModelParams& p, const IterateOptions& opt = {}) {
    check_params(p);
    require(opt.n_max >= 1 && opt.div_threshold > 0.0,
            "annealed_iterate: need n_max >= 1 and div_threshold > 0");
    AnnealedTrace tr;
    tr.params = p;
    tr.log_r.push_back(0.0);
    if (opt.record_p) tr.p.push_back(0.0);
    if (opt.disorder) tr.v.push_back(0.0);
    if (p.h == 0.0) {
        tr.status = TraceStatus::flat;
        for (int n = 1; n <= opt.n_max; ++n) {
            tr.log_r.push_back(0.0);
            if (opt.record_p) tr.p.push_back(0.0);
            if (opt.disorder)
                tr.v.push_back(variance_step(0.0, tr.v.back(), p, *opt.disorder));
        }
        return tr;
    }
    for (int n = 1; n <= opt.n_max; ++n) {
        const double prev = tr.log_r.back();
        const double next = annealed_step(prev, p);
        if (opt.disorder) tr.v.push_back(variance_step(prev, tr.v.back(), p, *opt.disorder));
        tr.log_r.push_back(next);
        if (opt.record_p)
            tr.p.push_back(next < 350.0 ? std::expm1(next) : kInf);
        if (next > opt.div_threshold) {
            tr.status = TraceStatus::diverging;
            return tr;
        }
        if (std::fabs(std::exp(next) - std::exp(prev)) < opt.fix_tol) {
            tr.status = next < 0.0 ? TraceStatus::converged_below_one
                                   : TraceStatus::converged_above_one;
            return tr;
        }
    }
    tr.status = TraceStatus::running;
    return tr;
}

// Annealed free energy F(0,h) = lim s^{-n} log r_n, via the accelerated tail
//   t_n = log r_n + h - log b/(s-1):   s^{-n} t_n increases to F.
// Once log r is large enough that the (b-1) term underflows the iteration is
// exactly affine and the estimate freezes. Returns exactly 0 off the
// divergent phase.
inline double annealed_free_energy(const ModelParams& p0, double rel_tol = 1e-10) {
    ModelParams p = p0;
    p.beta = 0.0;
    check_params(p);
    require(rel_tol > 0.0, "annealed_free_energy: rel_tol must be > 0");
    if (p.h <= 0.0) return 0.0;
    const double shift = p.h - std::log(p.b) / (p.s - 1);
    double log_r = 0.0, prev_est = -kInf;
    double scale = 1.0;  // s^{-n}
    const int cap = 200000;
    for (int n = 1; n <= cap; ++n) {
        const double before = log_r;
        log_r = annealed_step(log_r, p);
        scale /= p.s;
        if (std::fabs(std::exp(log_r) - std::exp(before)) < 1e-15)
            return 0.0;  // pinned below the transition (possible when b >= s)
        const double est = scale * (log_r + shift);
        if (log_r > 50.0 && est > 0.0 && std::fabs(est - prev_est) <= rel_tol * est)
            return est;
        prev_est = est;
    }
    throw std::runtime_error("annealed_free_energy: no convergence within level cap");
}

}  // namespace hierpin
