#pragma once

// Disorder laws enter every formula through their log moment generating
// function t -> log E[exp(t*omega)]. Built-in kinds have exact closed forms;
// a tabulated kind covers arbitrary zero-mean unit-variance laws for the
// certificate computations (it cannot be sampled).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hierpin/common.hpp"
#include "hierpin/rng.hpp"

namespace hierpin {

enum class DisorderKind { gaussian, binary_pm1, table };

inline const char* to_string(DisorderKind k) {
    switch (k) {
        case DisorderKind::gaussian: return "gaussian";
        case DisorderKind::binary_pm1: return "binary_pm1";
        case DisorderKind::table: return "table";
    }
    return "?";
}

struct DisorderModel {
    DisorderKind kind = DisorderKind::gaussian;

    // table kind only: symmetric grid of t values with log M(t) samples,
    // linearly interpolated inside [ts.front(), ts.back()]
    std::vector<double> ts;
    std::vector<double> vals;

    double domain_lo = -kInf;
    double domain_hi = kInf;

    static DisorderModel gaussian() { return DisorderModel{}; }

    static DisorderModel binary_pm1() {
        DisorderModel d;
        d.kind = DisorderKind::binary_pm1;
        return d;
    }

    // Validates symmetry of the grid, log M(0) = 0, convexity, and the
    // mean-0 / variance-1 normalization by central differences at 0.
    static DisorderModel table(std::vector<double> ts, std::vector<double> vals,
                               double norm_tol = 1e-3) {
        DisorderModel d;
        d.kind = DisorderKind::table;
        const std::size_t m = ts.size();
        require(m == vals.size() && m >= 5, "table disorder: need >= 5 matching grid points");
        for (std::size_t i = 1; i < m; ++i)
            require(ts[i] > ts[i - 1], "table disorder: grid must be strictly increasing");
        const double span = std::fabs(ts.back());
        for (std::size_t i = 0; i < m; ++i)
            require(std::fabs(ts[i] + ts[m - 1 - i]) <= 1e-12 * std::fmax(1.0, span),
                    "table disorder: grid must be symmetric about 0");
        const std::size_t z = m / 2;  // symmetric odd-length grid => ts[z] == 0
        require(std::fabs(ts[z]) <= 1e-12, "table disorder: grid must contain t = 0");
        require(std::fabs(vals[z]) <= 1e-12, "table disorder: log M(0) must be 0");
        for (std::size_t i = 1; i + 1 < m; ++i) {
            const double dl = (vals[i] - vals[i - 1]) / (ts[i] - ts[i - 1]);
            const double dr = (vals[i + 1] - vals[i]) / (ts[i + 1] - ts[i]);
            require(dr - dl >= -1e-9, "table disorder: log M must be convex");
        }
        const double tl = ts[z] - ts[z - 1], tr = ts[z + 1] - ts[z];
        const double mean = (vals[z + 1] - vals[z - 1]) / (tl + tr);
        const double var =
            2.0 * (tl * vals[z + 1] + tr * vals[z - 1]) / (tl * tr * (tl + tr));
        require(std::fabs(mean) <= norm_tol, "table disorder: mean(omega) != 0");
        require(std::fabs(var - 1.0) <= norm_tol, "table disorder: var(omega) != 1");
        d.ts = std::move(ts);
        d.vals = std::move(vals);
        d.domain_lo = d.ts.front();
        d.domain_hi = d.ts.back();
        return d;
    }
};

inline bool in_domain(const DisorderModel& d, double t) {
    return t >= d.domain_lo && t <= d.domain_hi;
}

inline double log_mgf(const DisorderModel& d, double t) {
    if (!std::isfinite(t) || !in_domain(d, t))
        throw std::domain_error("log_mgf: t = " + std::to_string(t) +
                                " outside MGF domain");
    switch (d.kind) {
        case DisorderKind::gaussian:
            return 0.5 * t * t;
        case DisorderKind::binary_pm1: {
            // log cosh t, overflow-safe
            const double a = std::fabs(t);
            return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094172321;
        }
        case DisorderKind::table: {
            auto it = std::upper_bound(d.ts.begin(), d.ts.end(), t);
            std::size_t i = (it == d.ts.begin()) ? 1 : (std::size_t)(it - d.ts.begin());
            if (i >= d.ts.size()) i = d.ts.size() - 1;
            const double w = (t - d.ts[i - 1]) / (d.ts[i] - d.ts[i - 1]);
            return d.vals[i - 1] + w * (d.vals[i] - d.vals[i - 1]);
        }
    }
    throw std::logic_error("log_mgf: unreachable");
}

// gamma(beta) = log M(2 beta) - 2 log M(beta); the per-step relative variance
// injected by one disorder variable. Nonnegative by convexity; table roundoff
// is clamped at zero.
inline double gamma_beta(const DisorderModel& d, double beta) {
    const double g = log_mgf(d, 2.0 * beta) - 2.0 * log_mgf(d, beta);
    return g < 0.0 ? 0.0 : g;
}

// One omega draw addressed by a counter key. Table laws are certificate-only.
inline double sample_omega(const DisorderModel& d, const CounterRng& rng,
                           std::uint64_t w0, std::uint64_t w1, std::uint64_t w2,
                           std::uint64_t w3) {
    switch (d.kind) {
        case DisorderKind::gaussian: return rng.normal(w0, w1, w2, w3);
        case DisorderKind::binary_pm1: return rng.rademacher(w0, w1, w2, w3);
        case DisorderKind::table:
            throw std::invalid_argument(
                "sample_omega: table disorder has no sampler (certificate-only)");
    }
    throw std::logic_error("sample_omega: unreachable");
}

}  // namespace hierpin
