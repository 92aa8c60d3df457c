#pragma once

// Deterministic verdicts bracketing the quenched critical point.
//
// Delocalization: if a_theta <= 1 and the fractional moment ever drops to
// x_theta, the free energy is zero. The moment is bounded either by the plain
// recursion u_{i+1} <= (u_i^s a_theta^{s-1} + (b-1)^theta)/b^theta or, with a
// shift profile, by holder_cost * (r~_n)^theta.
//
// Localization: the sequence s^{-n}[E log R_n - log b/(s-1) + h - log M(beta)]
// is nondecreasing, so E log R_n > log b/(s-1) + log M(beta) - h at any level
// proves F > 0. E log R_n is bounded below exactly by log r_n when the level
// is deterministic (v_n = 0), and otherwise through Chebyshev:
//   E log R_n >= (1-4v_n)(log r_n - log 2) + 4 v_n log((b-1)/b),
// valid when 4 v_n <= 1 and log r_n - log 2 >= log((b-1)/b).
//
// Certified verdicts are sound up to floating point; a safety margin tightens
// every final comparison, and strict mode replays the winning chain in
// extended precision before certifying.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hierpin/annealed.hpp"
#include "hierpin/common.hpp"
#include "hierpin/disorder.hpp"
#include "hierpin/fractional.hpp"
#include "hierpin/params.hpp"
#include "hierpin/shift.hpp"

namespace hierpin {

struct CertOptions {
    double deloc_margin = 1e-9;  // relative inflation of u_bound
    double loc_margin = 1e-9;    // absolute slack on the energy comparison
    int level_cap = 10000;
    bool strict = false;  // replay the winning inequality chain in long double
};

enum class DelocVerdict { certified_f_zero, inconclusive };
enum class LocVerdict { certified_f_positive, inconclusive };

struct DelocCertificate {
    ModelParams params;
    double theta = 0.0;
    std::optional<ShiftProfile> profile;
    double a_theta_value = kInf;
    std::optional<double> x_theta_value;
    double holder_cost = 1.0;       // 1 in plain mode
    double shifted_r_final = kInf;  // r~_n in profile mode
    double u_bound = kInf;          // best bound on E[R_n^theta]
    int witness_n = -1;
    DelocVerdict verdict = DelocVerdict::inconclusive;
    std::string reason;

    bool certified() const { return verdict == DelocVerdict::certified_f_zero; }
};

struct LocCertificate {
    ModelParams params;
    int witness_n = -1;
    double log_r_at_n = 0.0;
    double v_at_n = 0.0;
    double elog_lower_bound = -kInf;
    double threshold = kInf;  // log b/(s-1) + log M(beta) - h
    bool cheb_weight_valid = false;   // 4 v_n <= 1 at the witness
    bool cheb_order_valid = false;    // log r_n - log 2 >= log((b-1)/b)
    LocVerdict verdict = LocVerdict::inconclusive;
    std::string reason;

    bool certified() const { return verdict == LocVerdict::certified_f_positive; }
};

namespace detail {

inline long double lse_l(long double x, long double y) {
    if (x < y) std::swap(x, y);
    return x + std::log1p(std::exp(y - x));
}

// long double replay of the shifted annealed recursion
inline long double shifted_iterate_l(const ModelParams& p, const DisorderModel& d,
                                     const ShiftProfile& pr) {
    const long double log_bm1 = std::log((long double)p.b - 1.0L);
    const long double log_b = std::log((long double)p.b);
    long double log_r = 0.0L;
    for (int i = 0; i < pr.n; ++i) {
        const long double f = (d.kind == DisorderKind::gaussian)
                                  ? -(long double)p.beta * pr.deltas[(std::size_t)i] + p.h
                                  : (long double)shift_log_factor_general(
                                        d, p.beta, pr.deltas[(std::size_t)i], p.h);
        log_r = lse_l((p.s - 1) * f + p.s * log_r, log_bm1) - log_b;
    }
    return std::exp(log_r);
}

}  // namespace detail

inline DelocCertificate deloc_certify(const ModelParams& p, const DisorderModel& d,
                                      double theta, const ShiftProfile* profile,
                                      const CertOptions& opt = {}) {
    check_params(p);
    require(theta > 0.0 && theta < 1.0, "deloc_certify: theta must be in (0,1)");
    DelocCertificate cert;
    cert.params = p;
    cert.theta = theta;
    if (profile) {
        require(profile->n >= 1, "deloc_certify: profile rank must be >= 1");
        cert.profile = *profile;
    }

    cert.a_theta_value = a_theta(d, p.beta, p.h, theta);
    cert.x_theta_value = x_theta(p.s, p.b, theta);
    if (!(cert.a_theta_value <= 1.0)) {
        cert.reason = "a_theta > 1";
        return cert;
    }
    if (!cert.x_theta_value) {
        cert.reason = "x_theta undefined at this theta";
        return cert;
    }
    const double x = *cert.x_theta_value;

    if (profile) {
        cert.holder_cost = (d.kind == DisorderKind::gaussian)
                               ? holder_cost_gaussian(*profile, p.s, theta)
                               : holder_cost_tilt(d, *profile, p.s, theta);
        cert.shifted_r_final = shifted_annealed_iterate(p, d, *profile);
        cert.u_bound = cert.holder_cost * std::pow(cert.shifted_r_final, theta);
        cert.witness_n = profile->n;
        if (!(cert.u_bound * (1.0 + opt.deloc_margin) <= x)) {
            cert.reason = "u_bound above x_theta";
            return cert;
        }
    } else {
        // plain fractional-moment recursion from u_0 = 1
        const double at = std::pow(cert.a_theta_value, (double)(p.s - 1));
        const double bt = std::pow(p.b, theta);
        const double ct = std::pow(p.b - 1.0, theta);
        double u = 1.0, best = 1.0;
        int hit = -1;
        for (int i = 1; i <= opt.level_cap; ++i) {
            u = (std::pow(u, (double)p.s) * at + ct) / bt;
            best = std::fmin(best, u);
            if (u * (1.0 + opt.deloc_margin) <= x) {
                hit = i;
                break;
            }
            if (u > 1e6) break;  // escaped upward, no absorption ahead
        }
        cert.u_bound = best;
        cert.witness_n = hit;
        if (hit < 0) {
            cert.reason = "fractional moment never reached x_theta";
            return cert;
        }
        cert.u_bound = u;
    }

    if (opt.strict) {
        // replay in extended precision before certifying
        long double ub;
        if (profile) {
            const long double rl = detail::shifted_iterate_l(p, d, *profile);
            ub = (long double)cert.holder_cost * std::pow(rl, (long double)theta);
        } else {
            const long double at = std::pow((long double)cert.a_theta_value, p.s - 1);
            const long double bt = std::pow((long double)p.b, (long double)theta);
            const long double ct = std::pow((long double)p.b - 1.0L, (long double)theta);
            long double u = 1.0L;
            for (int i = 1; i <= cert.witness_n; ++i)
                u = (std::pow(u, (long double)p.s) * at + ct) / bt;
            ub = u;
        }
        if (!(ub * (1.0L + (long double)opt.deloc_margin) <= (long double)x)) {
            cert.reason = "strict-mode replay failed";
            return cert;
        }
    }

    cert.verdict = DelocVerdict::certified_f_zero;
    cert.reason = "ok";
    return cert;
}

inline LocCertificate loc_certify(const ModelParams& p, const DisorderModel& d,
                                  const CertOptions& opt = {}) {
    check_params(p);
    LocCertificate cert;
    cert.params = p;
    cert.threshold = std::log(p.b) / (p.s - 1) + log_mgf(d, p.beta) - p.h;
    const double floor_log = std::log(p.b - 1.0) - std::log(p.b);
    const double log2 = 0.6931471805599453094172321;

    double log_r = 0.0, v = 0.0;
    for (int n = 0; n <= opt.level_cap; ++n) {
        double bound = -kInf;
        bool weight_ok = false, order_ok = false;
        if (v == 0.0) {
            bound = log_r;  // level is deterministic, E log R_n = log r_n
        } else if (std::isfinite(v)) {
            weight_ok = 4.0 * v <= 1.0;
            order_ok = log_r - log2 >= floor_log;
            if (weight_ok && order_ok)
                bound = (1.0 - 4.0 * v) * (log_r - log2) + 4.0 * v * floor_log;
        } else {
            cert.witness_n = n;
            cert.log_r_at_n = log_r;
            cert.v_at_n = v;
            cert.reason = "variance blown up at level " + std::to_string(n);
            return cert;
        }
        if (bound - opt.loc_margin > cert.threshold) {
            cert.witness_n = n;
            cert.log_r_at_n = log_r;
            cert.v_at_n = v;
            cert.elog_lower_bound = bound;
            cert.cheb_weight_valid = v == 0.0 || weight_ok;
            cert.cheb_order_valid = v == 0.0 || order_ok;
            if (opt.strict) {
                // replay the pair recursion in extended precision
                const long double lb1 = std::log((long double)p.b - 1.0L);
                const long double lb = std::log((long double)p.b);
                const long double g = (long double)gamma_beta(d, p.beta);
                long double lr = 0.0L, vv = 0.0L;
                for (int i = 0; i < n; ++i) {
                    const long double w = p.s * lr + (p.s - 1) * (long double)p.h;
                    const long double pre = std::exp(2.0L * (w - detail::lse_l(w, lb1)));
                    const long double nv =
                        pre * std::expm1((p.s - 1) * g + p.s * std::log1p(vv));
                    lr = detail::lse_l(w, lb1) - lb;
                    vv = nv;
                }
                long double sb = -kInf;
                if (vv == 0.0L)
                    sb = lr;
                else if (4.0L * vv <= 1.0L && lr - log2 >= floor_log)
                    sb = (1.0L - 4.0L * vv) * (lr - (long double)log2) +
                         4.0L * vv * (long double)floor_log;
                if (!(sb - (long double)opt.loc_margin > (long double)cert.threshold)) {
                    cert.reason = "strict-mode replay failed";
                    return cert;
                }
            }
            cert.verdict = LocVerdict::certified_f_positive;
            cert.reason = "ok";
            return cert;
        }
        const double nv = variance_step(log_r, v, p, d);
        log_r = annealed_step(log_r, p);
        v = nv;
    }
    cert.reason = "level cap reached without witness";
    cert.log_r_at_n = log_r;
    cert.v_at_n = v;
    return cert;
}

struct Lemma22Result {
    bool pass = false;
    double c5 = 0.0;
    double h = 0.0;
    int n1_level = -1;
    double v_at_n1 = kInf;
    std::string detail;
};

// h = exp(-c5/beta); pass iff the relative variance at the first level with
// p_n >= 1 is still below beta. Stated for the marginal line b = sqrt(s).
inline Lemma22Result lemma22_check(const ModelParams& p0, const DisorderModel& d,
                                   double c5, int cap = 1'000'000) {
    require(p0.beta > 0.0, "lemma22_check: beta must be > 0");
    require(c5 > 0.0, "lemma22_check: c5 must be > 0");
    require(regime(p0.s, p0.b) == Regime::marginal,
            "lemma22_check: only defined on the marginal line b = sqrt(s)");
    Lemma22Result res;
    res.c5 = c5;
    ModelParams p = p0;
    p.h = std::exp(-c5 / p.beta);
    res.h = p.h;
    int nn;
    try {
        nn = n1(p, cap);
    } catch (const std::runtime_error&) {
        res.detail = "n1 cap exceeded";
        return res;
    }
    res.n1_level = nn;
    double log_r = 0.0, v = 0.0;
    for (int i = 0; i < nn; ++i) {
        const double nv = variance_step(log_r, v, p, d);
        log_r = annealed_step(log_r, p);
        v = nv;
        if (!std::isfinite(v)) {
            res.detail = "variance blown up before n1";
            res.v_at_n1 = v;
            return res;
        }
    }
    res.v_at_n1 = v;
    res.pass = v <= p.beta;
    res.detail = res.pass ? "ok" : "v(n1) > beta";
    return res;
}

}  // namespace hierpin
