#pragma once

// Search harnesses over the two certifiers.
//
// deloc_optimize maximizes the h certified delocalized at fixed beta. The
// certifiable set in h is an interval [0, h*] (u_bound grows with h and the
// a_theta constraint caps h), so the outer search is a log-domain bisection
// per parameter triple and the result is the lexicographic-best triple. With
// h_rule = scaling, h is tied to the rank as the finite-size pinning strength
// h = s^{-n} instead of being pushed to its ceiling; the certified value then
// tracks s^{-n_min(beta)} and keeps the marginal-relevance shape.
//
// hc_bracket pairs that lower bound with a bisection on loc_certify for the
// smallest h certified localized, and alarms if the bracket ever inverts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hierpin/certificates.hpp"
#include "hierpin/common.hpp"
#include "hierpin/disorder.hpp"
#include "hierpin/fractional.hpp"
#include "hierpin/params.hpp"
#include "hierpin/shift.hpp"

namespace hierpin {

enum class HRule { maximize, scaling };

struct DelocSearchSpace {
    std::vector<double> theta_grid = {0.5, 0.6, 0.7, 0.8, 0.85, 0.9, 0.95, 0.99};
    std::vector<double> eta_grid = {0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.7, 1.0};
    ProfileKind family = ProfileKind::marginal;
    HRule h_rule = HRule::maximize;
    int n_cap = 400;
    int eval_budget = 1000;   // parameter triples examined
    int bisect_steps = 60;    // per-triple h bisection steps
    double h_rel_tol = 1e-3;  // relative tolerance on certified h
    double h_floor = 1e-300;
};

struct DelocOptimum {
    bool found = false;
    double h_lb = 0.0;
    DelocCertificate best;
    int evaluations = 0;
    bool budget_exhausted = false;
    std::string note;
};

namespace detail {

// profile for a candidate (family, eta, n); homogeneous shifts are scaled
// delta = eta s^{-n/2} so eta plays the same dimensionless role in both
inline ShiftProfile make_profile(ProfileKind family, int n, double eta, int s) {
    if (family == ProfileKind::marginal) return ShiftProfile::marginal(n, eta, s);
    const double delta = eta * std::exp(-0.5 * n * std::log((double)s));
    return ShiftProfile::homogeneous(n, delta);
}

inline std::vector<int> candidate_ranks(double beta, double eta, int n_cap) {
    std::vector<int> ns = {1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384};
    const double scale = 1.0 / (eta * eta * beta * beta);
    for (double c : {0.15, 0.3, 0.5, 1.0}) {
        const double v = c * scale;
        if (v >= 1.0 && v <= 1e9) ns.push_back((int)std::lround(v));
    }
    for (int& n : ns) n = std::min(n, n_cap);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

}  // namespace detail

inline DelocOptimum deloc_optimize(const ModelParams& base, const DisorderModel& d,
                                   const DelocSearchSpace& space,
                                   const CertOptions& copt = {}) {
    ModelParams p = base;
    check_params(ModelParams{p.s, p.b, p.beta, 0.0});
    DelocOptimum out;
    double best_th = 0.0, best_eta = 0.0;
    int best_n = 0;

    // lexicographic tie-break on (h, -theta, eta, n) keeps the result
    // independent of evaluation order
    auto consider = [&](const DelocCertificate& cert, double h, double th, double eta, int n) {
        if (!cert.certified() || h <= 0.0) return;
        const bool wins = !out.found || h > out.h_lb ||
                          (h == out.h_lb &&
                           (th < best_th ||
                            (th == best_th &&
                             (eta < best_eta || (eta == best_eta && n < best_n)))));
        if (wins) {
            out.found = true;
            out.h_lb = h;
            out.best = cert;
            best_th = th;
            best_eta = eta;
            best_n = n;
        }
    };

    for (double th : space.theta_grid) {
        const double h_cap = std::fmin(a_theta_h_cap(d, p.beta, th), 0.99);
        if (!(h_cap > space.h_floor)) continue;
        if (!x_theta(p.s, p.b, th)) continue;
        for (double eta : space.eta_grid) {
            if (space.h_rule == HRule::scaling) {
                // h tied to the rank as the finite-size pinning strength
                // h = s^{-n}; (theta, eta, n) free. Certified h then tracks
                // s^{-n_min(beta)} and keeps the construction's scaling shape.
                for (int n : detail::candidate_ranks(p.beta, eta, space.n_cap)) {
                    const double log_h = -(double)n * std::log((double)p.s);
                    if (log_h < -700.0) continue;
                    if (++out.evaluations > space.eval_budget) {
                        out.budget_exhausted = true;
                        return out;
                    }
                    ModelParams q = p;
                    q.h = std::exp(log_h);
                    if (q.h > h_cap) continue;
                    const ShiftProfile pr = detail::make_profile(space.family, n, eta, p.s);
                    consider(deloc_certify(q, d, th, &pr, copt), q.h, th, eta, n);
                }
                continue;
            }
            for (int n : detail::candidate_ranks(p.beta, eta, space.n_cap)) {
                if (++out.evaluations > space.eval_budget) {
                    out.budget_exhausted = true;
                    return out;
                }
                const ShiftProfile pr = detail::make_profile(space.family, n, eta, p.s);
                auto certified_at = [&](double h) {
                    ModelParams q = p;
                    q.h = h;
                    return deloc_certify(q, d, th, &pr, copt).certified();
                };
                if (!certified_at(space.h_floor)) continue;
                double lo = space.h_floor;        // certified
                double hi = std::fmax(h_cap, lo);  // usually not certified
                if (certified_at(hi)) {
                    lo = hi;
                } else {
                    for (int it = 0; it < space.bisect_steps &&
                                     std::log(hi / lo) > space.h_rel_tol;
                         ++it) {
                        const double mid = std::sqrt(lo * hi);
                        (certified_at(mid) ? lo : hi) = mid;
                    }
                }
                ModelParams q = p;
                q.h = lo;
                consider(deloc_certify(q, d, th, &pr, copt), lo, th, eta, n);
            }
        }
    }
    if (!out.found) {
        out.note = "no certifiable h > 0 in the search space";
        out.best.params = p;
        out.best.reason = out.note;
    }
    return out;
}

struct BracketOptions {
    double h_rel_tol = 1e-3;
    int bisect_steps = 60;
    double h_floor = 1e-300;
};

struct HcBracket {
    double beta = 0.0;
    double h_lb = 0.0;  // largest h certified F = 0
    double h_ub = 0.0;  // smallest h certified F > 0
    bool lb_known = false;
    bool ub_known = false;
    DelocCertificate lb_certificate;
    LocCertificate ub_certificate;
    int soundness_alarms = 0;
    bool budget_exhausted = false;
    std::string note;
};

inline HcBracket hc_bracket(const ModelParams& base, const DisorderModel& d,
                            const DelocSearchSpace& space, const BracketOptions& bopt = {},
                            const CertOptions& copt = {}) {
    HcBracket br;
    br.beta = base.beta;

    DelocOptimum opt = deloc_optimize(base, d, space, copt);
    br.budget_exhausted = opt.budget_exhausted;
    br.h_lb = opt.found ? opt.h_lb : 0.0;
    br.lb_known = true;  // h_lb = 0 is always valid (F(beta,0) = 0)
    br.lb_certificate = opt.best;

    // localization side: bisect the smallest certified h
    auto loc_at = [&](double h) {
        ModelParams q = base;
        q.h = h;
        return loc_certify(q, d, copt);
    };
    std::vector<std::pair<double, bool>> seen;
    auto certified = [&](double h, LocCertificate* keep = nullptr) {
        LocCertificate c = loc_at(h);
        seen.emplace_back(h, c.certified());
        if (keep && c.certified()) *keep = c;
        return c.certified();
    };

    LocCertificate best_loc;
    double hi = std::log(base.b) / (base.s - 1) + log_mgf(d, base.beta) + 1.0;
    if (!certified(hi, &best_loc)) {
        br.note = "localization certificate failed at the guaranteed witness";
        br.soundness_alarms += 1;  // cannot happen if loc_certify is sound
        return br;
    }
    double lo = bopt.h_floor;
    if (certified(lo, &best_loc)) {
        br.h_ub = lo;  // certified all the way down to the floor
        br.ub_known = true;
    } else {
        int steps = 0;
        while (std::log(hi / lo) > bopt.h_rel_tol && steps < bopt.bisect_steps) {
            const double mid = std::sqrt(lo * hi);
            if (certified(mid, &best_loc))
                hi = mid;
            else
                lo = mid;
            ++steps;
        }
        if (std::log(hi / lo) > bopt.h_rel_tol) br.budget_exhausted = true;
        br.h_ub = hi;
        br.ub_known = true;
    }
    br.ub_certificate = best_loc;

    // empirical monotonicity of the loc verdict in h
    double max_uncert = -kInf, min_cert = kInf;
    for (auto& [h, c] : seen)
        (c ? min_cert : max_uncert) = c ? std::fmin(min_cert, h) : std::fmax(max_uncert, h);
    if (max_uncert > min_cert) {
        br.soundness_alarms += 1;
        br.note = "loc verdict not monotone in h";
    }
    if (br.lb_known && br.ub_known && br.h_lb > br.h_ub) {
        br.soundness_alarms += 1;
        br.note = "bracket inverted: h_lb > h_ub";
    }
    return br;
}

}  // namespace hierpin
