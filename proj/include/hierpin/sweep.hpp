#pragma once

// Experiment plumbing: config parsing (JSON with the "sqrt(s)" and "s^-n"
// numeric keywords), grid sweeps over (beta, h), deterministic CSV emission
// (17 significant digits), and versioned binary pool checkpoints.
//
// Outputs are a pure function of (spec, seed): grid points may be processed
// by any number of worker threads, every point derives its own substreams,
// and rows are assembled in grid order.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "hierpin/annealed.hpp"
#include "hierpin/certificates.hpp"
#include "hierpin/common.hpp"
#include "hierpin/disorder.hpp"
#include "hierpin/estimators.hpp"
#include "hierpin/fit.hpp"
#include "hierpin/lattice.hpp"
#include "hierpin/optimize.hpp"
#include "hierpin/params.hpp"
#include "hierpin/pool.hpp"
#include "hierpin/version.hpp"

namespace hierpin {

enum class Task { annealed, variance, mc, certify_deloc, certify_loc, bracket, green, lemma22 };

inline const char* to_string(Task t) {
    switch (t) {
        case Task::annealed: return "annealed";
        case Task::variance: return "variance";
        case Task::mc: return "mc";
        case Task::certify_deloc: return "certify_deloc";
        case Task::certify_loc: return "certify_loc";
        case Task::bracket: return "bracket";
        case Task::green: return "green";
        case Task::lemma22: return "lemma22";
    }
    return "?";
}

struct McControls {
    std::size_t pool_size = 100000;
    int replicas = 16;
    int level = 20;
};

struct SweepSpec {
    Task task = Task::annealed;
    int s = 2;
    double b = 2.0;
    DisorderModel disorder;
    std::vector<double> beta_grid;
    std::vector<double> h_grid;
    McControls mc;
    DelocSearchSpace search;
    CertOptions cert;
    BracketOptions bracket;
    bool plain_deloc = false;  // certify_deloc without a shift profile
    double c5 = 0.2;           // lemma22 task
    int levels = 60;           // trace length (variance) / rank (green)
    std::uint64_t seed = 0;
    bool seed_set = false;
    nlohmann::json raw;  // canonical source for the spec hash
};

struct RunRecord {
    Task task = Task::annealed;
    std::string spec_hash;
    std::string version = kVersion;
    double wall_seconds = 0.0;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int alarm_count = 0;
    bool budget_exhausted = false;
};

// ---------------------------------------------------------------- formatting

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_int(long long v) { return std::to_string(v); }

// ---------------------------------------------------------------- config

namespace detail {

// numeric field: plain number, "sqrt(s)", or "s^k" / "s^-k"
inline double parse_number_expr(const nlohmann::json& v, int s, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        std::string t = v.get<std::string>();
        t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }),
                t.end());
        if (t == "sqrt(s)") return std::sqrt((double)s);
        if (t.rfind("s^", 0) == 0) {
            try {
                const long k = std::stol(t.substr(2));
                return std::exp((double)k * std::log((double)s));
            } catch (...) {
            }
        }
        throw std::invalid_argument(where + ": unrecognized numeric keyword '" + t + "'");
    }
    throw std::invalid_argument(where + ": expected a number or keyword");
}

inline std::vector<double> parse_grid(const nlohmann::json& v, int s, const std::string& where) {
    if (!v.is_array()) throw std::invalid_argument(where + ": expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(parse_number_expr(e, s, where));
    return out;
}

inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

inline SweepSpec parse_config(const nlohmann::json& j) {
    std::vector<std::string> bad;
    SweepSpec spec;
    spec.raw = j;

    const std::string task = j.value("task", "");
    if (task == "annealed") spec.task = Task::annealed;
    else if (task == "variance") spec.task = Task::variance;
    else if (task == "mc") spec.task = Task::mc;
    else if (task == "certify_deloc") spec.task = Task::certify_deloc;
    else if (task == "certify_loc") spec.task = Task::certify_loc;
    else if (task == "bracket") spec.task = Task::bracket;
    else if (task == "green") spec.task = Task::green;
    else if (task == "lemma22") spec.task = Task::lemma22;
    else bad.push_back("task: must be one of annealed|variance|mc|certify_deloc|certify_loc|bracket|green|lemma22");

    try {
        const auto& m = j.at("model");
        spec.s = m.at("s").get<int>();
        spec.b = detail::parse_number_expr(m.at("b"), spec.s, "model.b");
        if (spec.s < 2) bad.push_back("model.s: must be an integer >= 2");
        if (!(spec.b > 1.0)) bad.push_back("model.b: must be > 1");
    } catch (const std::exception& e) {
        bad.push_back(std::string("model: ") + e.what());
    }

    try {
        const auto& d = j.at("disorder");
        const std::string kind = d.value("kind", "gaussian");
        if (kind == "gaussian") spec.disorder = DisorderModel::gaussian();
        else if (kind == "binary_pm1") spec.disorder = DisorderModel::binary_pm1();
        else if (kind == "table")
            spec.disorder = DisorderModel::table(d.at("ts").get<std::vector<double>>(),
                                                 d.at("log_mgf").get<std::vector<double>>());
        else bad.push_back("disorder.kind: must be gaussian|binary_pm1|table");
    } catch (const std::exception& e) {
        bad.push_back(std::string("disorder: ") + e.what());
    }

    try {
        if (j.contains("beta_grid"))
            spec.beta_grid = detail::parse_grid(j.at("beta_grid"), spec.s, "beta_grid");
        if (j.contains("h_grid"))
            spec.h_grid = detail::parse_grid(j.at("h_grid"), spec.s, "h_grid");
    } catch (const std::exception& e) {
        bad.push_back(e.what());
    }

    if (j.contains("mc")) {
        const auto& m = j.at("mc");
        spec.mc.pool_size = m.value("pool_size", spec.mc.pool_size);
        spec.mc.replicas = m.value("replicas", spec.mc.replicas);
        spec.mc.level = m.value("level", spec.mc.level);
        if (spec.mc.pool_size < 1) bad.push_back("mc.pool_size: must be >= 1");
        if (spec.mc.replicas < 2) bad.push_back("mc.replicas: must be >= 2");
        if (spec.mc.level < 0) bad.push_back("mc.level: must be >= 0");
    }

    if (j.contains("certificates")) {
        const auto& c = j.at("certificates");
        if (c.contains("theta_grid")) spec.search.theta_grid = c.at("theta_grid").get<std::vector<double>>();
        if (c.contains("eta_grid")) spec.search.eta_grid = c.at("eta_grid").get<std::vector<double>>();
        const std::string fam = c.value("family", "marginal");
        if (fam == "marginal") spec.search.family = ProfileKind::marginal;
        else if (fam == "homogeneous") spec.search.family = ProfileKind::homogeneous;
        else bad.push_back("certificates.family: must be marginal|homogeneous");
        const std::string rule = c.value("h_rule", "maximize");
        if (rule == "maximize") spec.search.h_rule = HRule::maximize;
        else if (rule == "scaling") spec.search.h_rule = HRule::scaling;
        else bad.push_back("certificates.h_rule: must be maximize|scaling");
        spec.search.n_cap = c.value("n_cap", spec.search.n_cap);
        spec.search.eval_budget = c.value("eval_budget", spec.search.eval_budget);
        spec.search.bisect_steps = c.value("bisect_steps", spec.search.bisect_steps);
        spec.search.h_rel_tol = c.value("h_rel_tol", spec.search.h_rel_tol);
        spec.cert.deloc_margin = c.value("safety_margin", spec.cert.deloc_margin);
        spec.cert.loc_margin = c.value("safety_margin", spec.cert.loc_margin);
        spec.cert.level_cap = c.value("level_cap", spec.cert.level_cap);
        spec.cert.strict = c.value("strict", false);
        spec.plain_deloc = c.value("plain", false);
        spec.c5 = c.value("c5", spec.c5);
        for (double th : spec.search.theta_grid)
            if (!(th > 0.0 && th < 1.0)) bad.push_back("certificates.theta_grid: theta must be in (0,1)");
        for (double e : spec.search.eta_grid)
            if (!(e > 0.0)) bad.push_back("certificates.eta_grid: eta must be > 0");
    }

    if (j.contains("bracket")) {
        const auto& b = j.at("bracket");
        spec.bracket.h_rel_tol = b.value("h_rel_tol", spec.bracket.h_rel_tol);
        spec.bracket.bisect_steps = b.value("bisect_steps", spec.bracket.bisect_steps);
    }

    spec.levels = j.value("levels", spec.levels);
    if (spec.levels < 1) bad.push_back("levels: must be >= 1");

    if (j.contains("seed")) {
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.seed_set = true;
    }

    // task-specific requirements
    const bool needs_beta = spec.task != Task::annealed && spec.task != Task::green;
    const bool needs_h = spec.task == Task::annealed || spec.task == Task::variance ||
                         spec.task == Task::mc || spec.task == Task::certify_deloc ||
                         spec.task == Task::certify_loc;
    if (needs_beta && spec.beta_grid.empty()) bad.push_back("beta_grid: must be nonempty for this task");
    if (needs_h && spec.h_grid.empty()) bad.push_back("h_grid: must be nonempty for this task");
    if (spec.task == Task::mc && !spec.seed_set) bad.push_back("seed: mandatory for mc tasks");
    if (spec.task == Task::lemma22 && !(spec.c5 > 0.0)) bad.push_back("certificates.c5: must be > 0");

    if (!bad.empty()) {
        std::string msg = "invalid sweep spec:";
        for (const auto& b : bad) msg += "\n  - " + b;
        throw std::invalid_argument(msg);
    }
    return spec;
}

inline SweepSpec load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_config: cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("load_config: " + path + ": " + e.what());
    }
    return parse_config(j);
}

inline std::string spec_hash(const SweepSpec& spec) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  (unsigned long long)detail::fnv1a(spec.raw.dump()));
    return buf;
}

// ---------------------------------------------------------------- sweep

namespace detail {

inline void run_jobs(int njobs, int threads, const std::function<void(int)>& job) {
    if (threads <= 1 || njobs <= 1) {
        for (int i = 0; i < njobs; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < njobs; i = next.fetch_add(1)) {
            if (failed.load()) return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                failed = true;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int nt = std::min(threads, njobs);
    pool.reserve((std::size_t)nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// first certified triple in grid order at fixed (beta, h); otherwise the
// inconclusive certificate with the smallest u_bound / x_theta gap
inline DelocCertificate deloc_feasible(const ModelParams& p, const DisorderModel& d,
                                       const DelocSearchSpace& space, const CertOptions& copt) {
    DelocCertificate fallback;
    fallback.params = p;
    fallback.reason = "no candidate evaluated";
    double best_gap = kInf;
    int evals = 0;
    for (double th : space.theta_grid) {
        for (double eta : space.eta_grid) {
            for (int n : candidate_ranks(p.beta > 0 ? p.beta : 1.0, eta, space.n_cap)) {
                if (++evals > space.eval_budget) return fallback;
                const ShiftProfile pr = make_profile(space.family, n, eta, p.s);
                DelocCertificate c = deloc_certify(p, d, th, &pr, copt);
                if (c.certified()) return c;
                const double gap = c.x_theta_value ? c.u_bound / *c.x_theta_value : kInf;
                if (gap < best_gap) {
                    best_gap = gap;
                    fallback = c;
                }
            }
        }
    }
    return fallback;
}

}  // namespace detail

inline RunRecord run_sweep(const SweepSpec& spec, int threads = 1) {
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.task = spec.task;
    rec.spec_hash = spec_hash(spec);

    ModelParams base{spec.s, spec.b, 0.0, 0.0};
    const DisorderModel& dis = spec.disorder;
    std::vector<std::vector<std::vector<std::string>>> slots;  // per-job rows
    std::atomic<int> alarms{0};
    std::atomic<bool> exhausted{false};

    auto grid_2d = [&](const std::function<std::vector<std::string>(ModelParams)>& fn) {
        const int nb = (int)spec.beta_grid.size(), nh = (int)spec.h_grid.size();
        slots.assign((std::size_t)(nb * nh), {});
        detail::run_jobs(nb * nh, threads, [&](int idx) {
            ModelParams p = base;
            p.beta = spec.beta_grid[(std::size_t)(idx / nh)];
            p.h = spec.h_grid[(std::size_t)(idx % nh)];
            slots[(std::size_t)idx].push_back(fn(p));
        });
    };

    switch (spec.task) {
        case Task::annealed: {
            rec.header = {"s", "b", "h", "status", "n_levels", "log_r_last", "free_energy"};
            const int nh = (int)spec.h_grid.size();
            slots.assign((std::size_t)nh, {});
            detail::run_jobs(nh, threads, [&](int idx) {
                ModelParams p = base;
                p.h = spec.h_grid[(std::size_t)idx];
                IterateOptions opt;
                opt.n_max = 100000;
                opt.record_p = false;
                AnnealedTrace tr = annealed_iterate(p, opt);
                const double f = p.h >= 0.0 ? annealed_free_energy(p) : 0.0;
                slots[(std::size_t)idx].push_back(
                    {fmt_int(p.s), fmt17(p.b), fmt17(p.h), to_string(tr.status),
                     fmt_int((long long)tr.log_r.size() - 1), fmt17(tr.log_r.back()), fmt17(f)});
            });
            break;
        }
        case Task::variance: {
            rec.header = {"s", "b", "beta", "h", "n_levels", "log_r_last", "v_last", "status"};
            grid_2d([&](ModelParams p) {
                IterateOptions opt;
                opt.n_max = spec.levels;
                opt.record_p = false;
                opt.disorder = &dis;
                AnnealedTrace tr = annealed_iterate(p, opt);
                return std::vector<std::string>{
                    fmt_int(p.s), fmt17(p.b), fmt17(p.beta), fmt17(p.h),
                    fmt_int((long long)tr.log_r.size() - 1), fmt17(tr.log_r.back()),
                    fmt17(tr.v.back()), to_string(tr.status)};
            });
            break;
        }
        case Task::mc: {
            rec.header = {"s", "b", "beta", "h", "level", "pool_size", "replicas",
                          "free_energy_estimate", "std_err", "annealed_reference"};
            const int nb = (int)spec.beta_grid.size(), nh = (int)spec.h_grid.size();
            slots.assign((std::size_t)(nb * nh), {});
            detail::run_jobs(nb * nh, threads, [&](int idx) {
                ModelParams p = base;
                p.beta = spec.beta_grid[(std::size_t)(idx / nh)];
                p.h = spec.h_grid[(std::size_t)(idx % nh)];
                const std::uint64_t pt_seed =
                    CounterRng::from_seed(spec.seed, 0x73776565ULL).bits((std::uint64_t)idx, 0, 0, 0);
                auto pools = make_ensemble(p, dis, spec.mc.pool_size, spec.mc.level,
                                           spec.mc.replicas, pt_seed);
                const EstimateCI est = estimate_free_energy(pools);
                IterateOptions opt;
                opt.n_max = spec.mc.level;
                opt.record_p = false;
                opt.div_threshold = kInf;
                opt.fix_tol = 0.0;
                AnnealedTrace tr = annealed_iterate(p, opt);
                const double ref = std::pow((double)p.s, -(double)spec.mc.level) * tr.log_r.back();
                slots[(std::size_t)idx].push_back(
                    {fmt_int(p.s), fmt17(p.b), fmt17(p.beta), fmt17(p.h), fmt_int(spec.mc.level),
                     fmt_int((long long)spec.mc.pool_size), fmt_int(spec.mc.replicas),
                     fmt17(est.mean), fmt17(est.std_err), fmt17(ref)});
            });
            break;
        }
        case Task::certify_deloc: {
            rec.header = {"s", "b", "beta", "h", "theta", "profile", "eta", "n",
                          "a_theta", "x_theta", "holder_cost", "tilde_r_n", "u_bound",
                          "witness_n", "verdict", "reason"};
            grid_2d([&](ModelParams p) {
                DelocCertificate c;
                if (spec.plain_deloc) {
                    c.params = p;
                    c.reason = "no theta certified";
                    for (double th : spec.search.theta_grid) {
                        DelocCertificate cand = deloc_certify(p, dis, th, nullptr, spec.cert);
                        if (cand.certified() || c.witness_n < 0) c = cand;
                        if (c.certified()) break;
                    }
                } else {
                    c = detail::deloc_feasible(p, dis, spec.search, spec.cert);
                }
                const ShiftProfile* pr = c.profile ? &*c.profile : nullptr;
                return std::vector<std::string>{
                    fmt_int(p.s), fmt17(p.b), fmt17(p.beta), fmt17(p.h), fmt17(c.theta),
                    pr ? to_string(pr->kind) : "plain", pr ? fmt17(pr->parameter) : "0",
                    fmt_int(pr ? pr->n : c.witness_n), fmt17(c.a_theta_value),
                    c.x_theta_value ? fmt17(*c.x_theta_value) : "undefined",
                    fmt17(c.holder_cost), fmt17(c.shifted_r_final), fmt17(c.u_bound),
                    fmt_int(c.witness_n),
                    c.certified() ? "certified_F_zero" : "inconclusive", c.reason};
            });
            break;
        }
        case Task::certify_loc: {
            rec.header = {"s", "b", "beta", "h", "witness_n", "log_r_n", "v_n",
                          "elog_lower_bound", "threshold", "verdict", "reason"};
            grid_2d([&](ModelParams p) {
                LocCertificate c = loc_certify(p, dis, spec.cert);
                return std::vector<std::string>{
                    fmt_int(p.s), fmt17(p.b), fmt17(p.beta), fmt17(p.h), fmt_int(c.witness_n),
                    fmt17(c.log_r_at_n), fmt17(c.v_at_n), fmt17(c.elog_lower_bound),
                    fmt17(c.threshold),
                    c.certified() ? "certified_F_positive" : "inconclusive", c.reason};
            });
            break;
        }
        case Task::bracket: {
            rec.header = {"s", "b", "beta", "h_lb", "h_ub", "lb_theta", "lb_eta", "lb_n",
                          "lb_a_theta", "lb_x_theta", "lb_holder_cost", "lb_tilde_r_n",
                          "lb_u_bound", "ub_witness_n", "ub_log_r_n", "ub_v_n", "ub_bound",
                          "ub_threshold", "alarms"};
            const int nb = (int)spec.beta_grid.size();
            slots.assign((std::size_t)nb, {});
            detail::run_jobs(nb, threads, [&](int idx) {
                ModelParams p = base;
                p.beta = spec.beta_grid[(std::size_t)idx];
                HcBracket br = hc_bracket(p, dis, spec.search, spec.bracket, spec.cert);
                alarms += br.soundness_alarms;
                if (br.budget_exhausted) exhausted = true;
                const DelocCertificate& lb = br.lb_certificate;
                const LocCertificate& ub = br.ub_certificate;
                slots[(std::size_t)idx].push_back(
                    {fmt_int(p.s), fmt17(p.b), fmt17(p.beta), fmt17(br.h_lb), fmt17(br.h_ub),
                     fmt17(lb.theta), lb.profile ? fmt17(lb.profile->parameter) : "0",
                     fmt_int(lb.profile ? lb.profile->n : -1), fmt17(lb.a_theta_value),
                     lb.x_theta_value ? fmt17(*lb.x_theta_value) : "undefined",
                     fmt17(lb.holder_cost), fmt17(lb.shifted_r_final), fmt17(lb.u_bound),
                     fmt_int(ub.witness_n), fmt17(ub.log_r_at_n), fmt17(ub.v_at_n),
                     fmt17(ub.elog_lower_bound), fmt17(ub.threshold),
                     fmt_int(br.soundness_alarms)});
            });
            break;
        }
        case Task::green: {
            rec.header = {"s", "b", "n", "i", "green", "vi_index", "vi_count",
                          "expected_contacts"};
            slots.assign(1, {});
            const int n = spec.levels;
            const double ec = expected_contacts(n, base);
            for (int i = 1; i <= n; ++i)
                slots[0].push_back({fmt_int(spec.s), fmt17(spec.b), fmt_int(n), fmt_int(i),
                                    fmt17(green_site(i, spec.b)), fmt_int(n - i),
                                    fmt17(vi_size_real(n - i, n, spec.s)), fmt17(ec)});
            break;
        }
        case Task::lemma22: {
            rec.header = {"s", "b", "beta", "c5", "h", "n1", "v_n1", "pass", "detail"};
            const int nb = (int)spec.beta_grid.size();
            slots.assign((std::size_t)nb, {});
            detail::run_jobs(nb, threads, [&](int idx) {
                ModelParams p = base;
                p.beta = spec.beta_grid[(std::size_t)idx];
                Lemma22Result r = lemma22_check(p, dis, spec.c5);
                slots[(std::size_t)idx].push_back(
                    {fmt_int(p.s), fmt17(p.b), fmt17(p.beta), fmt17(r.c5), fmt17(r.h),
                     fmt_int(r.n1_level), fmt17(r.v_at_n1), r.pass ? "1" : "0", r.detail});
            });
            break;
        }
    }

    for (auto& s : slots)
        for (auto& row : s) rec.rows.push_back(std::move(row));
    rec.alarm_count = alarms.load();
    rec.budget_exhausted = exhausted.load();
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline void emit_csv(const RunRecord& rec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("emit_csv: cannot open " + path);
    for (std::size_t i = 0; i < rec.header.size(); ++i)
        out << rec.header[i] << (i + 1 < rec.header.size() ? "," : "\n");
    for (const auto& row : rec.rows) {
        if (row.size() != rec.header.size())
            throw std::logic_error("emit_csv: row width does not match schema");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
}

// ---------------------------------------------------------------- checkpoints

namespace detail {

inline void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back((char)((v >> (8 * i)) & 0xff));
}
inline void put_f64(std::string& buf, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    put_u64(buf, u);
}
inline std::uint64_t get_u64(const std::string& buf, std::size_t& off) {
    if (off + 8 > buf.size()) throw std::runtime_error("pool checkpoint truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= (std::uint64_t)(unsigned char)buf[off + (std::size_t)i] << (8 * i);
    off += 8;
    return v;
}
inline double get_f64(const std::string& buf, std::size_t& off) {
    const std::uint64_t u = get_u64(buf, off);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

}  // namespace detail

inline constexpr char kPoolMagic[9] = "HPPOOL01";

inline void checkpoint_pool(const Pool& pool, const std::string& path) {
    if (pool.disorder.kind == DisorderKind::table)
        throw std::invalid_argument("checkpoint_pool: table disorder pools are not supported");
    std::string buf;
    buf.append(kPoolMagic, 8);
    detail::put_u64(buf, 1);  // format version
    detail::put_u64(buf, (std::uint64_t)pool.params.s);
    detail::put_f64(buf, pool.params.b);
    detail::put_f64(buf, pool.params.beta);
    detail::put_f64(buf, pool.params.h);
    detail::put_u64(buf, (std::uint64_t)pool.disorder.kind);
    detail::put_u64(buf, pool.lineage.seed);
    detail::put_u64(buf, pool.lineage.replica);
    detail::put_u64(buf, (std::uint64_t)pool.level);
    detail::put_u64(buf, (std::uint64_t)pool.log_samples.size());
    for (double x : pool.log_samples) detail::put_f64(buf, x);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("checkpoint_pool: cannot open " + path);
    out.write(buf.data(), (std::streamsize)buf.size());
}

inline Pool restore_pool(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("restore_pool: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string buf = ss.str();
    if (buf.size() < 8 || std::memcmp(buf.data(), kPoolMagic, 8) != 0)
        throw std::runtime_error("restore_pool: bad magic (not a pool checkpoint)");
    std::size_t off = 8;
    const std::uint64_t ver = detail::get_u64(buf, off);
    if (ver != 1) throw std::runtime_error("restore_pool: unsupported format version");
    Pool pool;
    pool.params.s = (int)detail::get_u64(buf, off);
    pool.params.b = detail::get_f64(buf, off);
    pool.params.beta = detail::get_f64(buf, off);
    pool.params.h = detail::get_f64(buf, off);
    const std::uint64_t kind = detail::get_u64(buf, off);
    if (kind == (std::uint64_t)DisorderKind::gaussian) pool.disorder = DisorderModel::gaussian();
    else if (kind == (std::uint64_t)DisorderKind::binary_pm1) pool.disorder = DisorderModel::binary_pm1();
    else throw std::runtime_error("restore_pool: unknown disorder kind field");
    pool.lineage.seed = detail::get_u64(buf, off);
    pool.lineage.replica = detail::get_u64(buf, off);
    pool.level = (int)detail::get_u64(buf, off);
    const std::uint64_t count = detail::get_u64(buf, off);
    if (buf.size() - off != 8 * count)
        throw std::runtime_error("restore_pool: sample block has wrong length");
    pool.log_samples.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) pool.log_samples[(std::size_t)i] = detail::get_f64(buf, off);
    check_params(pool.params);
    return pool;
}

}  // namespace hierpin
