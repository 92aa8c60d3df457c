#include "doctest.h"

#include <cmath>
#include <random>

#include "hierpin/annealed.hpp"

using namespace hierpin;

namespace {

// linear-domain reference step, usable while r stays representable
double annealed_step_linear(double r, const ModelParams& p) {
    return (std::exp((p.s - 1) * p.h) * std::pow(r, (double)p.s) + (p.b - 1.0)) / p.b;
}

// stable fixed point of the s=2 recursion: smaller root of e^h r^2 - b r + (b-1) = 0
double fixed_point_s2(double b, double h) {
    const double a = std::exp(h);
    const double d = b * b - 4.0 * a * (b - 1.0);
    return (b - std::sqrt(d)) / (2.0 * a);
}

}  // namespace

TEST_CASE("annealed_step basics") {
    // h = 0 is an exact fixed point at r = 1
    CHECK(annealed_step(0.0, ModelParams{2, std::sqrt(2.0), 0.0, 0.0}) == 0.0);
    // direct evaluation for s=2, b=2, h=0.1: log((e^{0.1}+1)/2)
    const double got = annealed_step(0.0, ModelParams{2, 2.0, 0.0, 0.1});
    CHECK(got == doctest::Approx(std::log((std::exp(0.1) + 1.0) / 2.0)).epsilon(1e-14));
    CHECK(got == doctest::Approx(0.0512494795).epsilon(1e-9));
    // huge inputs do not overflow
    const double big = annealed_step(1e300, ModelParams{4, 2.0, 0.0, 0.5});
    CHECK(std::isfinite(big));
    CHECK(big == doctest::Approx(4e300 + 1.5 - std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("log-domain step matches linear step") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> uh(-1.0, 1.0), ur(0.0, 3.0), ub(1.1, 5.0);
    for (int it = 0; it < 2000; ++it) {
        ModelParams p{2 + (int)(rng() % 4), ub(rng), 0.0, uh(rng)};
        const double r = ur(rng);
        const double lin = annealed_step_linear(r, p);
        if (!(lin < 1e300)) continue;
        CHECK(annealed_step(std::log(r), p) ==
              doctest::Approx(std::log(lin)).epsilon(1e-12));
    }
}

TEST_CASE("annealed_iterate trichotomy") {
    // flat at h = 0
    auto flat = annealed_iterate(ModelParams{2, std::sqrt(2.0), 0.0, 0.0}, {.n_max = 40});
    CHECK(flat.status == TraceStatus::flat);
    for (double lr : flat.log_r) CHECK(lr == 0.0);

    // h < 0: converges to the stable quadratic root below one
    auto conv = annealed_iterate(ModelParams{2, 1.5, 0.0, -0.5}, {.n_max = 10000});
    CHECK(conv.status == TraceStatus::converged_below_one);
    const double want = fixed_point_s2(1.5, -0.5);
    CHECK(want == doctest::Approx(0.3970929837).epsilon(1e-8));
    CHECK(std::exp(conv.log_r.back()) == doctest::Approx(want).epsilon(1e-12));

    // h > 0 diverges for b in (1,s)
    auto div = annealed_iterate(ModelParams{2, std::sqrt(2.0), 0.0, 0.01}, {.n_max = 10000});
    CHECK(div.status == TraceStatus::diverging);
    CHECK(div.log_r.back() > 700.0);

    // b >= s pins a fixed point above one at small h > 0
    auto above = annealed_iterate(ModelParams{2, 3.0, 0.0, 0.05}, {.n_max = 10000});
    CHECK(above.status == TraceStatus::converged_above_one);
    CHECK(std::exp(above.log_r.back()) > 1.0);
}

TEST_CASE("status is monotone along an h grid") {
    // converged below one for h < 0, flat exactly at h = 0, diverging above
    for (double b : {1.3, std::sqrt(2.0), 1.9}) {
        for (double h : {-0.8, -0.2, -0.01, 0.0, 0.01, 0.2, 0.8}) {
            auto tr = annealed_iterate(ModelParams{2, b, 0.0, h}, {.n_max = 100000});
            if (h < 0) CHECK(tr.status == TraceStatus::converged_below_one);
            if (h == 0.0) CHECK(tr.status == TraceStatus::flat);
            if (h > 0) CHECK(tr.status == TraceStatus::diverging);
        }
    }
}

TEST_CASE("trace invariants") {
    // p[n] > 0 for n >= 1 when h > 0; v nonnegative
    DisorderModel g = DisorderModel::gaussian();
    IterateOptions opt;
    opt.n_max = 30;
    opt.disorder = &g;
    auto tr = annealed_iterate(ModelParams{3, 1.6, 0.25, 0.05}, opt);
    REQUIRE(tr.p.size() == tr.log_r.size());
    REQUIRE(tr.v.size() == tr.log_r.size());
    CHECK(tr.p[0] == 0.0);
    CHECK(tr.v[0] == 0.0);
    for (std::size_t n = 1; n < tr.p.size(); ++n) {
        CHECK(tr.p[n] > 0.0);
        CHECK(tr.v[n] >= 0.0);
    }
}

TEST_CASE("annealed free energy") {
    CHECK(annealed_free_energy(ModelParams{4, 2.0, 0.0, 0.0}) == 0.0);
    CHECK(annealed_free_energy(ModelParams{4, 2.0, 0.0, -0.3}) == 0.0);
    const double f = annealed_free_energy(ModelParams{4, 2.0, 0.0, 1e-4});
    CHECK(f > 0.0);
    // F(0,h)/h^{1/alpha} bounded within a fixed band over a decade (alpha = 1/2)
    double lo = kInf, hi = 0.0;
    for (double h = 1e-5; h <= 1.0001e-4; h *= 1.2589254117941673) {
        const double ratio = annealed_free_energy(ModelParams{4, 2.0, 0.0, h}) / (h * h);
        lo = std::fmin(lo, ratio);
        hi = std::fmax(hi, ratio);
    }
    CHECK(hi / lo < 2.0);
    // nondecreasing in h
    double prev = 0.0;
    for (double h : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5}) {
        const double cur = annealed_free_energy(ModelParams{4, 2.0, 0.0, h});
        CHECK(cur >= prev);
        prev = cur;
    }
    // marginal lattice localizes at h = 0.5
    CHECK(annealed_free_energy(ModelParams{2, std::sqrt(2.0), 0.0, 0.5}) > 0.0);
}

TEST_CASE("p recursion and n1") {
    CHECK(p_step(0.0, ModelParams{2, 2.0, 0.0, 0.0}) == 0.0);
    const double p1 = p_step(0.0, ModelParams{2, std::sqrt(2.0), 0.0, 0.01});
    CHECK(p1 == doctest::Approx(std::expm1(0.01) / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(p1 == doctest::Approx(0.0071065413).epsilon(1e-8));

    // growth bound p_n >= (s/b)^{n-1} h/b for h > 0
    for (double h : {0.001, 0.01, 0.1}) {
        for (int s : {2, 3, 4}) {
            for (double bf : {0.65, 0.71, 0.9}) {
                const double b = bf * s;  // spans relevant through irrelevant
                ModelParams p{s, b, 0.0, h};
                double pn = 0.0;
                for (int n = 1; n <= 25 && pn < 1e100; ++n) {
                    pn = p_step(pn, p);
                    CHECK(pn >= std::pow(s / b, n - 1) * h / b * (1.0 - 1e-12));
                }
            }
        }
    }

    // n1 nonincreasing in h
    int prev = 1 << 30;
    for (double h : {1e-4, 1e-3, 1e-2, 0.1, 1.0}) {
        const int n = n1(ModelParams{2, std::sqrt(2.0), 0.0, h});
        CHECK(n <= prev);
        prev = n;
    }
    CHECK_THROWS_AS(n1(ModelParams{2, 1.5, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(n1(ModelParams{2, 1.5, 0.0, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(n1(ModelParams{2, 1.5, 0.0, 1e-9}, 5), std::runtime_error);
}

TEST_CASE("variance_step equals the linear-domain recursion") {
    // Delta_{n+1} = ((Delta_n + r^2)^s e^{(s-1)(gamma+2h)} - r^{2s} e^{2(s-1)h}) / b^2,
    // evaluated directly while everything is representable
    DisorderModel g = DisorderModel::gaussian();
    std::mt19937 rng(4096);
    std::uniform_real_distribution<double> ur(0.2, 4.0), uv(0.0, 2.0), ub(1.1, 4.5),
        uh(-0.5, 0.5), ube(0.0, 0.8);
    for (int it = 0; it < 2000; ++it) {
        ModelParams p{2 + (int)(rng() % 3), ub(rng), ube(rng), uh(rng)};
        const double r = ur(rng), v = uv(rng);
        const double gam = gamma_beta(g, p.beta);
        const double delta = v * r * r;
        const double num = std::pow(delta + r * r, (double)p.s) *
                               std::exp((p.s - 1) * (gam + 2 * p.h)) -
                           std::pow(r, 2.0 * p.s) * std::exp(2.0 * (p.s - 1) * p.h);
        const double r_next = (std::exp((p.s - 1) * p.h) * std::pow(r, (double)p.s) +
                               (p.b - 1.0)) / p.b;
        const double v_next = (num / (p.b * p.b)) / (r_next * r_next);
        if (!(v_next < 1e280)) continue;
        CHECK(variance_step(std::log(r), v, p, g) ==
              doctest::Approx(v_next).epsilon(1e-11));
    }
}

TEST_CASE("variance_step") {
    DisorderModel g = DisorderModel::gaussian();
    // beta = 0 keeps v exactly at zero
    ModelParams p0{2, 2.0, 0.0, 0.3};
    CHECK(variance_step(1.7, 0.0, p0, g) == 0.0);
    // first step at r=1, h=0, s=2, b=sqrt2, beta=0.1: (e^{0.01}-1)/2
    ModelParams p1{2, std::sqrt(2.0), 0.1, 0.0};
    CHECK(variance_step(0.0, 0.0, p1, g) ==
          doctest::Approx(std::expm1(0.01) / 2.0).epsilon(1e-13));
    CHECK(variance_step(0.0, 0.0, p1, g) == doctest::Approx(0.0050250835).epsilon(1e-8));
    // nonnegative, and saturates instead of overflowing
    CHECK(variance_step(0.0, 3.0, ModelParams{2, 1.5, 0.4, 0.1}, g) >= 0.0);
    CHECK(variance_step(0.0, 1e200, ModelParams{4, 2.0, 1.0, 0.0}, g) == kInf);
    CHECK_THROWS_AS(variance_step(0.0, -0.5, p1, g), std::invalid_argument);
}
