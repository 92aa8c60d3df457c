// Acceptance suite: eleven end-to-end checks of the full stack, printed one
// line each. Statistical checks run at fixed seeds; deterministic checks pin
// their tolerances explicitly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hierpin/hierpin.hpp"

using namespace hierpin;

namespace {

int failures = 0;
int total_alarms = 0;
int mc_contradictions = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int id, bool pass, const std::string& detail, double secs) {
    std::printf("[%s] %2d. %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char b[64];
    std::snprintf(b, sizeof(b), "%.6g", v);
    return b;
}

// shared search space for the marginal-relevance runs
DelocSearchSpace marginal_space() {
    DelocSearchSpace space;
    space.theta_grid = {0.82, 0.85, 0.88, 0.9, 0.92, 0.95};
    space.eta_grid = {0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
    space.family = ProfileKind::marginal;
    space.h_rule = HRule::scaling;
    return space;
}

// MC consistency of a certified point: the estimate must be compatible with
// F = 0 (delocalized) or strictly positive (localized) after discounting the
// rigorous finite-level bias envelope.
bool mc_consistent_with_zero(const ModelParams& p, const DisorderModel& d, std::uint64_t seed) {
    const int level = 12;
    auto pools = make_ensemble(p, d, 20000, level, 8, seed);
    const EstimateCI est = estimate_free_energy(pools);
    const double env = bias_envelope(p, d, level);
    return std::fabs(est.mean) <= 3.0 * est.std_err + env;
}

bool mc_strictly_positive(const ModelParams& p, const DisorderModel& d, std::uint64_t seed) {
    const int level = 12;
    auto pools = make_ensemble(p, d, 20000, level, 8, seed);
    const EstimateCI est = estimate_free_energy(pools);
    const double env = bias_envelope(p, d, level);
    return est.mean - 3.0 * est.std_err - env > 0.0;
}

// ---------------------------------------------------------------- criteria

void criterion_1() {
    Timer t;
    bool pass = true;
    std::string detail = "annealed exponent:";
    for (auto [b, inv_alpha] : {std::pair{2.0, 2.0}, std::pair{std::sqrt(2.0), 4.0 / 3.0}}) {
        std::vector<double> hs, fs;
        for (double h = 1e-8; h <= 1.0001e-3; h *= std::pow(10.0, 0.25)) {
            hs.push_back(h);
            fs.push_back(annealed_free_energy(ModelParams{4, b, 0.0, h}));
        }
        const PowerLawFit f = fit_power_law(hs, fs);
        const bool ok = std::fabs(f.exponent - inv_alpha) <= 0.05 * inv_alpha &&
                        f.r_squared > 0.999;
        pass = pass && ok;
        detail += " b=" + fmt(b) + " exp=" + fmt(f.exponent) + " (want " + fmt(inv_alpha) +
                  " +-5%) r2=" + fmt(f.r_squared) + ";";
    }
    pass = pass && t.seconds() < 5.0;
    report(1, pass, detail, t.seconds());
}

void criterion_2() {
    Timer t;
    // h = 0: F = 0 and r_n = 1 exactly
    bool pass = annealed_free_energy(ModelParams{2, 1.5, 0.0, 0.0}) == 0.0;
    auto flat = annealed_iterate(ModelParams{2, 1.5, 0.0, 0.0}, {.n_max = 64});
    pass = pass && flat.status == TraceStatus::flat;
    for (double lr : flat.log_r) pass = pass && lr == 0.0;

    // h = -0.5, (s,b) = (2,1.5): limit equals the stable quadratic root to 1e-6
    const double a = std::exp(-0.5);
    const double root = (1.5 - std::sqrt(1.5 * 1.5 - 4.0 * a * 0.5)) / (2.0 * a);
    auto tr = annealed_iterate(ModelParams{2, 1.5, 0.0, -0.5}, {.n_max = 100000});
    const double lim = std::exp(tr.log_r.back());
    pass = pass && tr.status == TraceStatus::converged_below_one && std::fabs(lim - root) <= 1e-6;
    report(2, pass,
           "trichotomy: flat at h=0; r_inf=" + fmt(lim) + " vs quadratic root " + fmt(root),
           t.seconds());
}

void criterion_3() {
    Timer t;
    auto g = DisorderModel::gaussian();
    bool pass = true;

    // enumeration vs recursion, 100 disorder draws per (n, b)
    std::mt19937 rng(1357);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (int b : {2, 3}) {
        for (int n : {1, 2}) {
            ModelParams p{2, (double)b, 0.35, 0.07};
            const std::size_t sites = ((std::size_t)1 << n) - 1;
            for (int it = 0; it < 100; ++it) {
                std::vector<double> omega(sites);
                for (double& w : omega) w = nd(rng);
                const double direct = enumerate_paths_partition(n, p, g, omega);
                const double rec = std::exp(
                    tree_eval_log(p, g, n, [&](std::uint64_t j) { return omega[j - 1]; }));
                worst = std::fmax(worst, std::fabs(direct - rec) / std::fabs(rec));
            }
        }
    }
    pass = pass && worst <= 1e-12;

    // exact-tree mean of R_n vs r_n within 3 se for n = 1..8
    const CounterRng crng = CounterRng::from_seed(777);
    ModelParams p{2, std::sqrt(2.0), 0.2, 0.1};
    double worst_z = 0.0;
    for (int n = 1; n <= 8; ++n) {
        auto tr = annealed_iterate(p, {.n_max = n, .div_threshold = kInf});
        const double rn = std::exp(tr.log_r[(std::size_t)n]);
        const int draws = 20000;
        double m = 0, m2 = 0;
        for (int i = 0; i < draws; ++i) {
            const double r =
                std::exp(exact_tree_sample(p, g, n, crng, (std::uint64_t)(n * 100000 + i)));
            m += r;
            m2 += r * r;
        }
        m /= draws;
        m2 /= draws;
        const double se = std::sqrt((m2 - m * m) / draws);
        worst_z = std::fmax(worst_z, std::fabs(m - rn) / se);
    }
    pass = pass && worst_z <= 3.0;
    report(3, pass,
           "oracle equivalence: enum vs recursion rel err " + fmt(worst) +
               "; tree-mean worst |z| = " + fmt(worst_z),
           t.seconds());
}

void criterion_4() {
    Timer t;
    auto g = DisorderModel::gaussian();
    const CounterRng crng = CounterRng::from_seed(90210);
    bool pass = true;
    double worst_z = 0.0;
    std::uint64_t stream = 0;
    for (double b : {std::sqrt(2.0), 2.0}) {
        for (double beta : {0.1, 0.3}) {
            ModelParams p{2, b, beta, 0.1};
            IterateOptions opt;
            opt.n_max = 6;
            opt.div_threshold = kInf;
            opt.disorder = &g;
            auto tr = annealed_iterate(p, opt);
            for (int n = 1; n <= 6; ++n) {
                const double rn = std::exp(tr.log_r[(std::size_t)n]);
                const int draws = 100000;
                double m = 0, m2 = 0, m3 = 0, m4 = 0;
                std::vector<double> rs((std::size_t)draws);
                for (int i = 0; i < draws; ++i)
                    rs[(std::size_t)i] = std::exp(
                        exact_tree_sample(p, g, n, crng, stream * 1000000 + (std::uint64_t)i));
                ++stream;
                for (double r : rs) m += r;
                m /= draws;
                for (double r : rs) {
                    const double d = r - m;
                    m2 += d * d;
                    m3 += d * d * d;
                    m4 += d * d * d * d;
                }
                m2 /= draws;
                m4 /= draws;
                const double v_hat = m2 / (rn * rn);
                const double se_var = std::sqrt(std::fmax(m4 - m2 * m2, 0.0) / draws) / (rn * rn);
                const double z = std::fabs(v_hat - tr.v[(std::size_t)n]) / se_var;
                worst_z = std::fmax(worst_z, z);
                pass = pass && z <= 4.0;
            }
        }
    }
    pass = pass && t.seconds() < 120.0;
    report(4, pass, "variance recursion exact: worst |z| = " + fmt(worst_z) + " (<= 4)",
           t.seconds());
}

void criterion_5() {
    Timer t;
    auto g = DisorderModel::gaussian();
    bool pass = true;
    double worst = -kInf;
    const int level = 8;
    int idx = 0;
    for (double beta : {0.2, 0.4, 0.6, 0.8, 1.0}) {
        for (double h : {0.0, 0.1, 0.3, 0.7}) {
            ModelParams p{4, 2.0, beta, h};
            auto pools = make_ensemble(p, g, 20000, level, 8, 5200 + (std::uint64_t)idx++);
            auto est = estimate_free_energy(pools);
            IterateOptions opt;
            opt.n_max = level;
            opt.div_threshold = kInf;
            opt.fix_tol = 0.0;
            auto tr = annealed_iterate(p, opt);
            const double ref = std::pow(4.0, -level) * tr.log_r[(std::size_t)level];
            const double slack = est.mean - ref - 3.0 * est.std_err;  // must be <= 0
            worst = std::fmax(worst, slack);
            pass = pass && slack <= 0.0;
        }
    }
    report(5, pass, "jensen: max(est - annealed - 3se) = " + fmt(worst) + " over 20 points",
           t.seconds());
}

void criterion_6() {
    Timer t;
    auto g = DisorderModel::gaussian();
    bool pass = true;
    double worst_n = 0.0, worst_tilt = 0.0;
    for (int s : {2, 4}) {
        for (double eta : {0.3, 0.5}) {
            for (double th : {0.5, 0.9}) {
                const double closed = std::exp(eta * eta * th * (s - 1) / (2.0 * (1.0 - th) * s));
                for (int n : {5, 20, 50}) {
                    auto pr = ShiftProfile::marginal(n, eta, s);
                    const double cost = holder_cost_gaussian(pr, s, th);
                    worst_n = std::fmax(worst_n, std::fabs(cost - closed));
                    const double tilt = holder_cost_tilt(g, pr, s, th);
                    worst_tilt = std::fmax(worst_tilt, std::fabs(tilt - cost) / cost);
                }
            }
        }
    }
    pass = worst_n <= 1e-10 && worst_tilt <= 1e-12;
    report(6, pass,
           "holder cost: |cost - closed form| = " + fmt(worst_n) +
               " (<=1e-10); gaussian tilt rel dev = " + fmt(worst_tilt) + " (<=1e-12)",
           t.seconds());
}

void criterion_7() {
    Timer t;
    auto g = DisorderModel::gaussian();
    const std::vector<double> betas = {0.4, 0.5, 0.6, 0.8, 1.0};
    DelocSearchSpace space = marginal_space();
    bool pass = true;
    std::vector<double> hlbs, hubs;
    std::vector<HcBracket> brackets;
    for (double beta : betas) {
        ModelParams p{4, 2.0, beta, 0.0};
        HcBracket br = hc_bracket(p, g, space);
        total_alarms += br.soundness_alarms;
        pass = pass && br.h_lb > 0.0 && br.h_lb < br.h_ub;
        hlbs.push_back(br.h_lb);
        hubs.push_back(br.h_ub);
        brackets.push_back(br);
    }
    std::string detail = "marginal relevance:";
    if (pass) {
        const DoubleLogFit flb = fit_double_log(betas, hlbs);
        const DoubleLogFit fub = fit_double_log(betas, hubs);
        const bool lb_ok = flb.slope >= -2.3 && flb.slope <= -1.7;
        const bool gap_ok = fub.slope - flb.slope >= 0.3;
        pass = lb_ok && gap_ok && t.seconds() < 600.0;
        detail += " lb slope=" + fmt(flb.slope) + " in [-2.3,-1.7]; ub slope=" + fmt(fub.slope) +
                  "; gap=" + fmt(fub.slope - flb.slope) + " (>=0.3)";
    } else {
        detail += " missing certificate or inverted bracket";
    }

    // certified points must be consistent with the Monte Carlo oracle
    for (std::size_t i = 0; i < brackets.size(); ++i) {
        ModelParams lo{4, 2.0, betas[i], brackets[i].h_lb};
        if (!mc_consistent_with_zero(lo, g, 910 + (std::uint64_t)i)) ++mc_contradictions;
        ModelParams hi{4, 2.0, betas[i], brackets[i].h_ub};
        if (hi.h >= 0.1 && !mc_strictly_positive(hi, g, 920 + (std::uint64_t)i))
            ++mc_contradictions;
    }
    report(7, pass, detail, t.seconds());
}

void criterion_8() {
    Timer t;
    auto g = DisorderModel::gaussian();
    const std::vector<double> betas = {0.2, 0.3, 0.45, 0.65, 1.0};
    DelocSearchSpace space;
    space.family = ProfileKind::homogeneous;
    bool pass = true;
    std::vector<double> hlbs;
    for (double beta : betas) {
        ModelParams p{4, 1.3, beta, 0.0};
        auto opt = deloc_optimize(p, g, space);
        pass = pass && opt.found && opt.h_lb > 0.0;
        if (opt.found) hlbs.push_back(opt.h_lb);
    }
    std::string detail = "relevant regime (b=1.3, homogeneous):";
    if (pass) {
        const PowerLawFit f = fit_power_law(betas, hlbs);
        pass = f.exponent >= 2.0 && f.exponent <= 3.2;
        detail += " h_lb exponent=" + fmt(f.exponent) + " in [2.0,3.2], r2=" + fmt(f.r_squared);
        // spot-check two certified points against the MC oracle
        if (!mc_consistent_with_zero(ModelParams{4, 1.3, betas.front(), hlbs.front()}, g, 801))
            ++mc_contradictions;
        if (!mc_consistent_with_zero(ModelParams{4, 1.3, betas.back(), hlbs.back()}, g, 802))
            ++mc_contradictions;
    } else {
        detail += " missing certificates";
    }
    report(8, pass, detail, t.seconds());
}

void criterion_9() {
    Timer t;
    auto g = DisorderModel::gaussian();
    bool pass = true;
    std::string detail = "irrelevant regime (b=3, beta=0.2):";
    const int level = 12;
    int idx = 0;
    for (double h : {0.05, 0.1, 0.2}) {
        ModelParams p{4, 3.0, 0.2, h};
        const double fa = annealed_free_energy(ModelParams{4, 3.0, 0.0, h});
        auto pools = make_ensemble(p, g, 100000, level, 16, 31400 + (std::uint64_t)idx++);
        auto est = estimate_free_energy(pools);
        const double rel = std::fabs(est.mean - fa) / fa;
        pass = pass && rel <= 0.15;
        detail += " h=" + fmt(h) + " dev=" + fmt(100.0 * rel) + "%;";
    }
    report(9, pass, detail, t.seconds());
}

void criterion_10() {
    Timer t;
    auto g = DisorderModel::gaussian();
    const std::vector<double> betas = {0.05, 0.1, 0.2, 0.3};
    double found = 0.0;
    for (double c5 : {0.05, 0.075, 0.1, 0.15, 0.2, 0.3, 0.4}) {
        bool all = true;
        for (double beta : betas)
            all = all && lemma22_check(ModelParams{4, 2.0, beta, 0.0}, g, c5).pass;
        if (all) {
            found = c5;
            break;
        }
    }
    report(10, found > 0.0,
           "variance-at-n1 scan: c5=" + fmt(found) + " passes all beta in {0.05..0.3}",
           t.seconds());
}

void criterion_11() {
    Timer t;
    const bool pass = total_alarms == 0 && mc_contradictions == 0;
    report(11, pass,
           "soundness: alarms=" + std::to_string(total_alarms) +
               ", certificate/MC contradictions=" + std::to_string(mc_contradictions),
           t.seconds());
}

}  // namespace

int main() {
    Timer all;
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%d/11 criteria passed (%.1fs total)\n", 11 - failures, all.seconds());
    return failures == 0 ? 0 : 1;
}
