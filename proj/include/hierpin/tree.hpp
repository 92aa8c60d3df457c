#pragma once

// Two independent oracles for the quenched recursion.
//
// tree_eval_log expands the full rank-n recursion with an explicit disorder
// assignment omega_1..omega_{s^n-1} placed in hierarchical order: the block
// spanning [o, o + s^m] consumes the s-1 sites o + k s^{m-1} and recurses into
// its s sub-blocks. exact_tree_sample feeds it i.i.d. counter-addressed draws
// (cost s^n, no pool resampling correlations). enumerate_paths_partition
// averages exp(H) over every directed path explicitly and must agree with the
// recursion to floating-point accuracy.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hierpin/common.hpp"
#include "hierpin/disorder.hpp"
#include "hierpin/params.hpp"
#include "hierpin/pool.hpp"

namespace hierpin {

namespace detail {

template <class OmegaFn>
double tree_eval_rec(const ModelParams& p, const DisorderModel& d, int level,
                     std::uint64_t offset, std::uint64_t stride, double log_bm1,
                     double log_b, double log_m, OmegaFn&& omega) {
    if (level == 0) return 0.0;
    const std::uint64_t child = stride / (std::uint64_t)p.s;
    double acc = 0.0;
    for (int k = 0; k < p.s; ++k)
        acc += tree_eval_rec(p, d, level - 1, offset + (std::uint64_t)k * child,
                             child, log_bm1, log_b, log_m, omega);
    for (int k = 1; k < p.s; ++k) {
        const std::uint64_t site = offset + (std::uint64_t)k * child;
        acc += p.beta * omega(site) - log_m + p.h;
    }
    return log_sum_exp(acc, log_bm1) - log_b;
}

inline std::uint64_t checked_pow(std::uint64_t base, int e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > cap / base) throw std::length_error("lattice too large");
        r *= base;
    }
    return r;
}

}  // namespace detail

// log R_n for the disorder assignment omega(j), j = 1..s^n-1
template <class OmegaFn>
double tree_eval_log(const ModelParams& p, const DisorderModel& d, int n,
                     OmegaFn&& omega) {
    check_params(p);
    require(n >= 0, "tree_eval_log: n must be >= 0");
    const std::uint64_t sn = detail::checked_pow((std::uint64_t)p.s, n, (std::uint64_t)1 << 62);
    return detail::tree_eval_rec(p, d, n, 0, sn, std::log(p.b - 1.0), std::log(p.b),
                                 log_mgf(d, p.beta), omega);
}

// one exact draw of log R_n (no resampling); sample_idx selects the substream
inline double exact_tree_sample(const ModelParams& p, const DisorderModel& d, int n,
                                const CounterRng& base, std::uint64_t sample_idx) {
    const std::uint64_t sn = detail::checked_pow((std::uint64_t)p.s, n, (std::uint64_t)1 << 62);
    if (sn > 10'000'000ULL)
        throw std::length_error("exact_tree_sample: s^n exceeds the 1e7 guard");
    return tree_eval_log(p, d, n, [&](std::uint64_t site) {
        return sample_omega(d, base, kStreamTree, sample_idx, site, 0);
    });
}

// R_n (linear scale) by direct enumeration of all b^{(s^n-1)/(s-1)} directed
// paths. A path is a branch choice at every gadget of the recursive
// construction; it touches wall site j only if it agrees with the wall branch
// at every gadget enclosing j.
inline double enumerate_paths_partition(int n, const ModelParams& p,
                                        const DisorderModel& d,
                                        const std::vector<double>& omega) {
    check_params(p);
    require(n >= 0, "enumerate_paths_partition: n must be >= 0");
    if (n > 2) throw std::length_error("enumerate_paths_partition: n > 2 unsupported");
    const double bint = std::round(p.b);
    if (std::fabs(p.b - bint) > 0.0 || bint < 2.0)
        throw std::invalid_argument("enumerate_paths_partition: b must be an integer >= 2");
    const int b = (int)bint;
    const std::uint64_t sn = detail::checked_pow((std::uint64_t)p.s, n, (std::uint64_t)1 << 32);
    require(omega.size() >= sn - 1, "enumerate_paths_partition: omega too short");

    // gadgets in depth-first order; gadget g at depth dep spans stride s^{n-dep}
    struct Gadget {
        std::uint64_t offset, stride;
        int parent;
    };
    std::vector<Gadget> gadgets;
    std::function<void(std::uint64_t, std::uint64_t, int)> build =
        [&](std::uint64_t off, std::uint64_t stride, int parent) {
            if (stride == 1) return;
            const int self = (int)gadgets.size();
            gadgets.push_back({off, stride, parent});
            const std::uint64_t child = stride / (std::uint64_t)p.s;
            for (int k = 0; k < p.s; ++k)
                build(off + (std::uint64_t)k * child, child, self);
        };
    build(0, sn, -1);

    const std::size_t g_count = gadgets.size();
    double paths = 1.0;
    for (std::size_t g = 0; g < g_count; ++g) {
        paths *= (double)b;
        if (paths > 2e7) throw std::length_error("enumerate_paths_partition: too many paths");
    }

    const double log_m = log_mgf(d, p.beta);
    std::vector<int> choice(g_count, 0);
    double total = 0.0;
    while (true) {
        // on the wall at gadget g iff branch 0 chosen there and at all ancestors
        std::vector<char> on_wall(g_count, 0);
        double energy = 0.0;
        for (std::size_t g = 0; g < g_count; ++g) {
            const bool above = gadgets[g].parent < 0 || on_wall[(std::size_t)gadgets[g].parent];
            on_wall[g] = (char)(above && choice[g] == 0);
            if (on_wall[g]) {
                const std::uint64_t child = gadgets[g].stride / (std::uint64_t)p.s;
                for (int k = 1; k < p.s; ++k) {
                    const std::uint64_t site = gadgets[g].offset + (std::uint64_t)k * child;
                    energy += p.beta * omega[site - 1] + p.h - log_m;
                }
            }
        }
        total += std::exp(energy);
        std::size_t g = 0;
        while (g < g_count && ++choice[g] == b) choice[g++] = 0;
        if (g == g_count) break;
    }
    return total / paths;
}

}  // namespace hierpin
