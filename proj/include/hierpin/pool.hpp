#pragma once

// Population dynamics for the quenched recursion
//   R_{n+1} = ( prod_{j<=s} R_n^(j) * prod_{j<=s-1} A_j + b - 1 ) / b
// carried as log R. A pool holds one population of log R_n samples; stepping
// resamples parents with replacement and draws fresh site weights. Every draw
// is addressed by (replica, level, slot, j), which makes pools bit-reproducible
// independent of scheduling.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hierpin/annealed.hpp"
#include "hierpin/common.hpp"
#include "hierpin/disorder.hpp"
#include "hierpin/params.hpp"
#include "hierpin/rng.hpp"

namespace hierpin {

inline constexpr std::uint64_t kStreamPool = 0x706f6f6cULL;  // draw spaces
inline constexpr std::uint64_t kStreamTree = 0x74726565ULL;

struct RngLineage {
    std::uint64_t seed = 0;
    std::uint64_t replica = 0;
};

// log A = beta*omega - log M(beta) + h, so that E[A] = e^h exactly.
inline double sample_log_A(const DisorderModel& d, double beta, double h,
                           const CounterRng& rng, std::uint64_t w0,
                           std::uint64_t w1, std::uint64_t w2, std::uint64_t w3) {
    return beta * sample_omega(d, rng, w0, w1, w2, w3) - log_mgf(d, beta) + h;
}

struct Pool {
    int level = 0;
    std::vector<double> log_samples;
    ModelParams params;
    DisorderModel disorder;
    RngLineage lineage;
};

inline Pool make_pool0(const ModelParams& p, const DisorderModel& d,
                       std::size_t size, RngLineage lineage) {
    check_params(p);
    require(size >= 1, "make_pool0: pool size must be >= 1");
    Pool pool;
    pool.level = 0;
    pool.log_samples.assign(size, 0.0);  // R_0 = 1
    pool.params = p;
    pool.disorder = d;
    pool.lineage = lineage;
    return pool;
}

inline Pool pool_step(const Pool& in) {
    require(!in.log_samples.empty(), "pool_step: empty pool");
    const ModelParams& p = in.params;
    const CounterRng rng = CounterRng::from_seed(in.lineage.seed, kStreamPool);
    const std::uint64_t rep = in.lineage.replica;
    const std::uint64_t lvl = (std::uint64_t)in.level + 1;
    const std::size_t size = in.log_samples.size();
    const double log_bm1 = std::log(p.b - 1.0);
    const double log_b = std::log(p.b);

    Pool out;
    out.level = in.level + 1;
    out.params = p;
    out.disorder = in.disorder;
    out.lineage = in.lineage;
    out.log_samples.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        double acc = 0.0;
        for (int j = 0; j < p.s; ++j)
            acc += in.log_samples[rng.index(size, rep, lvl, i, (std::uint64_t)j)];
        for (int j = 0; j < p.s - 1; ++j)
            acc += sample_log_A(in.disorder, p.beta, p.h, rng, rep, lvl, i,
                                (std::uint64_t)(p.s + j));
        out.log_samples[i] = log_sum_exp(acc, log_bm1) - log_b;
    }
    return out;
}

inline Pool pool_at_level(const ModelParams& p, const DisorderModel& d,
                          std::size_t size, int level, RngLineage lineage) {
    Pool pool = make_pool0(p, d, size, lineage);
    for (int l = 0; l < level; ++l) pool = pool_step(pool);
    return pool;
}

inline std::vector<Pool> make_ensemble(const ModelParams& p, const DisorderModel& d,
                                       std::size_t size, int level, int replicas,
                                       std::uint64_t seed) {
    require(replicas >= 1, "make_ensemble: need at least one replica");
    std::vector<Pool> pools;
    pools.reserve((std::size_t)replicas);
    for (int r = 0; r < replicas; ++r)
        pools.push_back(pool_at_level(p, d, size, level, RngLineage{seed, (std::uint64_t)r}));
    return pools;
}

}  // namespace hierpin
