// vacantset: command-line front end for the vacant-set toolkit.
//
// Subcommands:
//   generate          write a random d-regular graph in the text format
//   check-assumptions regularity / tree-like-ball / spectral-gap report
//   sweep             components of the vacant set over levels and seeds (CSV)
//   uniqueness        assert the giant-vs-logarithmic component dichotomy
//   rates             tree-like target hitting rates at horizon T = n
//   compare-local     local vacant-cluster law vs branching-process band
//   tree              branching-process scalars over a grid of levels (CSV)
//   bridge-test       bridge sampler endpoint and midpoint-law validation
//
// Exit codes: 0 = all assertions passed, 2 = an assertion failed,
// 1 = usage or I/O error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <json.hpp>

#include "vacant/constants.hpp"
#include "vacant/graph.hpp"
#include "vacant/interlace.hpp"
#include "vacant/pim.hpp"
#include "vacant/potential.hpp"
#include "vacant/report.hpp"
#include "vacant/rng.hpp"
#include "vacant/vacancy.hpp"
#include "vacant/vertex_set.hpp"
#include "vacant/walk.hpp"

using nlohmann::json;
using namespace vacant;
namespace C = vacant::constants;

namespace {

// Stream that is either stdout or an opened file.
struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open for writing: " + path);
            os = &file;
        }
    }
    std::ostream& out() { return *os; }
};

RegularGraph graph_from(const std::string& path, int n, int d, std::uint64_t seed,
                        GenerationStats* stats = nullptr) {
    if (!path.empty()) {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("cannot open graph file: " + path);
        return load_graph(f);
    }
    if (n <= 0) throw std::runtime_error("need --n (or a graph file)");
    return generate_random_regular(n, d, seed, stats);
}

int tree_like_vertex(const RegularGraph& g, int radius) {
    for (int v = 0; v < g.n(); ++v)
        if (tree_excess(g, ball(g, v, radius)) == 0) return v;
    return -1;
}

// Split [0, total) into roughly equal chunks, run task(begin, end) on each,
// and merge in chunk order so the result is independent of scheduling.
template <typename Task>
void parallel_chunks(long total, int threads, Task&& task) {
    threads = std::max(1, threads);
    long chunk = (total + threads - 1) / threads;
    std::vector<std::future<void>> futs;
    for (long b = 0; b < total; b += chunk) {
        long e = std::min(total, b + chunk);
        futs.push_back(std::async(std::launch::async, [&task, b, e] { task(b, e); }));
    }
    for (auto& f : futs) f.get();
}

// ---------------------------------------------------------------------------
// generate

int run_generate(int n, int d, std::uint64_t seed, const std::string& out) {
    GenerationStats st;
    auto g = generate_random_regular(n, d, seed, &st);
    Sink sink(out);
    save_graph(g, sink.out());
    std::cerr << "generated n=" << n << " d=" << d << " seed=" << seed
              << " pairing_attempts=" << st.attempts << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// check-assumptions

int run_check(const std::string& graph_path, int n, int d, std::uint64_t seed,
              const std::string& out) {
    auto g = graph_from(graph_path, n, d, seed);
    auto rep = check_assumptions(g, C::alpha1, C::alpha2);
    json j{{"n", rep.n},
           {"d", rep.d},
           {"girth", rep.girth},
           {"regular_connected", rep.a0_ok},
           {"ball_radius", rep.a1_radius},
           {"balls_ok", rep.a1_ok},
           {"ball_violations", rep.a1_violations},
           {"spectral_gap", rep.lambda},
           {"gap_floor", C::alpha2},
           {"gap_ok", rep.a2_ok},
           {"all_ok", rep.all_ok()}};
    Sink sink(out);
    sink.out() << j.dump(2) << "\n";
    return rep.all_ok() ? 0 : 2;
}

// ---------------------------------------------------------------------------
// tree

int run_tree(int d, double u_max, const std::string& out) {
    if (u_max <= 0) throw std::runtime_error("need --u > 0 (grid upper end)");
    Sink sink(out);
    sink.out() << "u,p_u,m_u,v_u,q_extinction,survival_5\n";
    const int steps = 100;
    for (int i = 0; i <= steps; ++i) {
        double u = u_max * i / steps;
        auto par = interlacement_params(d, u);
        sink.out() << u << ',' << par.p_u << ',' << par.m_u << ',' << par.v_u << ','
                   << extinction_probability(d, u) << ',' << generation_survival(d, u, 5)
                   << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
    std::uint64_t seed = 0;
    double u = 0;
    long vacant = 0, c_max = 0, c_sec = 0, comps = 0;
};

int run_sweep(int n, int d, std::vector<double> levels, const std::vector<std::uint64_t>& seeds,
              std::optional<double> gamma, double delta, int threads, const std::string& out) {
    if (levels.empty() || seeds.empty()) throw std::runtime_error("need --u and --seeds");
    for (double u : levels)
        if (u <= 0) throw std::runtime_error("levels must be positive");
    double u_top = *std::max_element(levels.begin(), levels.end());

    std::vector<std::vector<SweepRow>> per_seed(seeds.size());
    parallel_chunks(static_cast<long>(seeds.size()), threads, [&](long b, long e) {
        for (long i = b; i < e; ++i) {
            std::uint64_t seed = seeds[static_cast<std::size_t>(i)];
            auto g = generate_random_regular(n, d, seed);
            std::optional<SegmentBundle> bundle;
            Trajectory tr;
            if (gamma) {
                auto par = derive_params(n, d, u_top, delta, GammaRecipe::plain, gamma);
                RngStream rng(seed, 1);
                bundle = sample_segments(g, std::max(1L, par.count_floor(u_top)), par, rng);
            } else {
                RngStream rng(seed, 1);
                tr = sample_walk_stationary(g, u_top * n, rng);
            }
            for (double u : levels) {
                VacantConfig cfg = gamma ? xi_segments(g, *bundle, u) : vacant_set(g, tr, u);
                auto comp = components(g, cfg);
                per_seed[static_cast<std::size_t>(i)].push_back(
                    {seed, u, static_cast<long>(cfg.vacant.count()), comp.c_max, comp.c_sec,
                     comp.count});
            }
        }
    });

    Sink sink(out);
    sink.out() << "n,d,u,seed,field,vacant,c_max,c_sec,components\n";
    const char* field = gamma ? "segments" : "walk";
    for (const auto& rows : per_seed)
        for (const auto& r : rows)
            sink.out() << n << ',' << d << ',' << r.u << ',' << r.seed << ',' << field << ','
                       << r.vacant << ',' << r.c_max << ',' << r.c_sec << ',' << r.comps << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// uniqueness

int run_uniqueness(int n, int d, double u, const std::vector<std::uint64_t>& seeds, int threads,
                   const std::string& out) {
    if (seeds.empty()) throw std::runtime_error("need --seeds");
    double us = u_star(d);
    if (std::abs(u - us) < C::near_critical_window) {
        std::cerr << "refusing: |u - u_star(" << d << ")| = " << std::abs(u - us) << " < "
                  << C::near_critical_window
                  << " (assertions are disabled in the near-critical window)\n";
        return 1;
    }
    bool giant_side = u < us;
    // Theoretical giant density: per-vertex vacancy times the probability that
    // the root's cluster survives (at least one of the d child subtrees does).
    double rho = 0;
    if (giant_side) {
        InterlacementParams par = interlacement_params(d, u);
        double q = extinction_probability(d, u);
        double dead = std::pow(1.0 - par.p_u + par.p_u * q, d);
        rho = std::exp(-u * (d - 2) / static_cast<double>(d - 1)) * (1.0 - dead);
    }

    std::vector<SweepRow> rows(seeds.size());
    parallel_chunks(static_cast<long>(seeds.size()), threads, [&](long b, long e) {
        for (long i = b; i < e; ++i) {
            std::uint64_t seed = seeds[static_cast<std::size_t>(i)];
            auto g = generate_random_regular(n, d, seed);
            RngStream rng(seed, 1);
            auto tr = sample_walk_stationary(g, u * n, rng);
            auto cfg = vacant_set(g, tr, u);
            auto comp = components(g, cfg);
            rows[static_cast<std::size_t>(i)] = {seed, u, static_cast<long>(cfg.vacant.count()),
                                                 comp.c_max, comp.c_sec, comp.count};
        }
    });

    Sink sink(out);
    sink.out() << "n,d,u,seed,c_max,c_sec,frac_max,frac_sec,pass\n";
    bool all_ok = true;
    // Giant side: largest component at least half its theoretical density, the
    // second one small (fixed fraction, or the log bound when that is larger).
    double sec_cap = std::max(C::second_frac_max * n, C::subcritical_log_factor * std::log(n));
    for (const auto& r : rows) {
        double fmax = static_cast<double>(r.c_max) / n;
        double fsec = static_cast<double>(r.c_sec) / n;
        bool ok = giant_side ? (fmax >= 0.5 * rho && static_cast<double>(r.c_sec) <= sec_cap)
                             : (r.c_max <= C::subcritical_log_factor * std::log(n));
        all_ok = all_ok && ok;
        sink.out() << n << ',' << d << ',' << r.u << ',' << r.seed << ',' << r.c_max << ','
                   << r.c_sec << ',' << fmax << ',' << fsec << ',' << (ok ? 1 : 0) << "\n";
    }
    if (giant_side)
        std::cerr << "theoretical giant density rho = " << rho << "\n";
    std::cerr << (giant_side ? "giant-component" : "logarithmic-component") << " check: "
              << (all_ok ? "pass" : "FAIL") << " over " << seeds.size() << " seeds\n";
    return all_ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// rates

int run_rates(int n, int d, std::uint64_t seed, const std::string& out) {
    auto g = generate_random_regular(n, d, seed);
    int y = tree_like_vertex(g, C::rate_future_depth);
    if (y < 0) {
        std::cerr << "no vertex with a tree-like ball of radius " << C::rate_future_depth
                  << "\n";
        return 1;
    }
    const double T = n;
    VertexSet target(g.n());
    target.insert(y);
    double rate = -(n / T) * std::log(survival_probability(g, target, T));
    double point_target = static_cast<double>(d - 2) / (d - 1);

    int z = g.neighbors(y)[0];
    VertexSet cond_set(g.n());
    cond_set.insert(z);
    double crate = -(n / T) * std::log(conditional_avoid_probability(g, cond_set, y, T));
    double cond_target = static_cast<double>((d - 2) * (d - 2)) / (d * (d - 1));

    bool pass = std::abs(rate - point_target) <= C::rate_tolerance &&
                std::abs(crate - cond_target) <= C::rate_tolerance;
    json j{{"n", n},
           {"d", d},
           {"seed", seed},
           {"target", y},
           {"conditioned_on", z},
           {"rate", rate},
           {"point_target", point_target},
           {"cond_rate", crate},
           {"cond_target", cond_target},
           {"tolerance", C::rate_tolerance},
           {"pass", pass}};
    Sink sink(out);
    sink.out() << j.dump(2) << "\n";
    return pass ? 0 : 2;
}

// ---------------------------------------------------------------------------
// compare-local

int run_compare_local(int n, int d, double u, long replicas, std::uint64_t seed, int threads,
                      int radius, const std::string& out) {
    if (u >= u_star(d)) throw std::runtime_error("compare-local needs u < u_star(d)");
    auto g = generate_random_regular(n, d, seed);
    int y = tree_like_vertex(g, radius);
    if (y < 0) {
        std::cerr << "no vertex with a tree-like ball of radius " << radius << "\n";
        return 1;
    }
    auto B = ball(g, y, radius);
    double eps = derive_epsilon(d, u);
    const int maxk = static_cast<int>(B.count());

    std::vector<std::vector<long>> emp_parts(static_cast<std::size_t>(std::max(1, threads)),
                                             std::vector<long>(maxk + 1, 0));
    RngStream wmaster(seed, 1);
    {
        int nt = std::max(1, threads);
        long chunk = (replicas + nt - 1) / nt;
        std::vector<std::future<void>> futs;
        for (int t = 0; t < nt; ++t) {
            long b = t * chunk, e = std::min(replicas, (t + 1) * chunk);
            if (b >= e) break;
            futs.push_back(std::async(std::launch::async, [&, t, b, e] {
                for (long r = b; r < e; ++r) {
                    RngStream wr = wmaster.split(static_cast<std::uint64_t>(r));
                    auto tr = sample_walk_stationary(g, u * g.n(), wr);
                    auto cfg = vacant_set(g, tr, u);
                    ++emp_parts[static_cast<std::size_t>(t)][local_component(g, cfg, y, B).count()];
                }
            }));
        }
        for (auto& f : futs) f.get();
    }
    std::vector<long> emp(maxk + 1, 0), lo(maxk + 1, 0), hi(maxk + 1, 0);
    for (const auto& part : emp_parts)
        for (int k = 0; k <= maxk; ++k) emp[k] += part[k];

    RngStream lom(seed, 2), him(seed, 3);
    for (long r = 0; r < replicas; ++r) {
        auto slo = sample_cluster(d, u * (1 - eps), lom.split(static_cast<std::uint64_t>(r)),
                                  radius, 1 << 20, RootOffspring::tree);
        ++lo[slo.size_within_depth(radius)];
        auto shi = sample_cluster(d, u * (1 + eps), him.split(static_cast<std::uint64_t>(r)),
                                  radius, 1 << 20, RootOffspring::tree);
        ++hi[shi.size_within_depth(radius)];
    }

    double dev_below = 0, dev_above = 0, ce = 0, cl = 0, ch = 0;
    std::ostringstream csv;
    csv << "size,cdf_low_intensity,cdf_empirical,cdf_high_intensity\n";
    for (int k = 0; k <= maxk; ++k) {
        ce += emp[k] / static_cast<double>(replicas);
        cl += lo[k] / static_cast<double>(replicas);
        ch += hi[k] / static_cast<double>(replicas);
        dev_below = std::max(dev_below, cl - ce);
        dev_above = std::max(dev_above, ce - ch);
        csv << k << ',' << cl << ',' << ce << ',' << ch << "\n";
    }
    if (!out.empty()) {
        Sink sink(out);
        sink.out() << csv.str();
    }
    double dev = std::max(dev_below, dev_above);
    bool pass = dev <= C::local_tv_slack;
    json j{{"n", n},           {"d", d},
           {"u", u},           {"eps", eps},
           {"centre", y},      {"radius", radius},
           {"replicas", replicas}, {"max_band_violation", dev},
           {"slack", C::local_tv_slack}, {"pass", pass}};
    std::cout << j.dump(2) << "\n";
    return pass ? 0 : 2;
}

// ---------------------------------------------------------------------------
// bridge-test

std::vector<double> heat_row(const RegularGraph& g, int x, double t) {
    const int n = g.n();
    std::vector<double> acc(n, 0.0), w(n, 0.0), next(n, 0.0);
    w[x] = 1.0;
    long K = poisson_truncation(t);
    double lp = -t;  // log Poisson(t) weight at m = 0
    for (long m = 0; m <= K; ++m) {
        double wt = std::exp(lp);
        for (int v = 0; v < n; ++v) acc[v] += wt * w[v];
        std::fill(next.begin(), next.end(), 0.0);
        for (int v = 0; v < n; ++v) {
            if (w[v] == 0.0) continue;
            double share = w[v] / g.d();
            const int* nb = g.neighbors(v);
            for (int j = 0; j < g.d(); ++j) next[nb[j]] += share;
        }
        w.swap(next);
        lp += std::log(t) - std::log(static_cast<double>(m + 1));
    }
    return acc;
}

int run_bridge_test(int n, int d, std::uint64_t seed, long replicas, double ell,
                    const std::string& out) {
    auto g = generate_random_regular(n, d, seed);
    const int x = 0, y = 1;
    RngStream master(seed, 2);
    long endpoint_ok = 0;
    std::vector<long> counts(n, 0);
    for (long r = 0; r < replicas; ++r) {
        RngStream br = master.split(static_cast<std::uint64_t>(r));
        auto tr = sample_bridge(g, x, y, ell, br);
        if (tr.states.back() == y) ++endpoint_ok;
        ++counts[static_cast<std::size_t>(tr.state_at(ell / 2))];
    }

    // Exact conditional one-point law at time ell/2 via uniformization; the
    // jump matrix is symmetric, so P_s(v,y) = P_s(y,v).
    auto from_x = heat_row(g, x, ell / 2);
    auto from_y = heat_row(g, y, ell / 2);
    std::vector<double> w(n);
    double tot = 0;
    for (int v = 0; v < n; ++v) {
        w[v] = from_x[v] * from_y[v];
        tot += w[v];
    }
    // Merge states with expected count below 5 so the chi^2 approximation holds.
    double chi2 = 0, small_obs = 0, small_exp = 0;
    int bins = 0;
    for (int v = 0; v < n; ++v) {
        double expd = replicas * w[v] / tot;
        if (expd < 5.0) {
            small_obs += counts[v];
            small_exp += expd;
            continue;
        }
        double diff = counts[v] - expd;
        chi2 += diff * diff / expd;
        ++bins;
    }
    if (small_exp > 0) {
        double diff = small_obs - small_exp;
        chi2 += diff * diff / small_exp;
        ++bins;
    }
    int dof = std::max(1, bins - 1);
    double p = cdf(complement(boost::math::chi_squared(dof), chi2));

    bool pass = endpoint_ok == replicas && p > C::bridge_chi2_p_min;
    json j{{"n", n},
           {"d", d},
           {"seed", seed},
           {"ell", ell},
           {"replicas", replicas},
           {"endpoint_hits", endpoint_ok},
           {"chi2", chi2},
           {"dof", dof},
           {"p_value", p},
           {"p_floor", C::bridge_chi2_p_min},
           {"pass", pass}};
    Sink sink(out);
    sink.out() << j.dump(2) << "\n";
    return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vacant-set simulation and exact-verification toolkit for random walks on "
                 "d-regular graphs"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path,
                   "key=value defaults file (keys: n, d, u, gamma, delta, seeds, replicas, "
                   "variant); explicit flags win");

    int rc = 0;
    auto config = [&]() -> std::optional<ExperimentConfig> {
        if (config_path.empty()) return std::nullopt;
        return load_experiment_config(config_path);
    };

    // generate ------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("generate", "write a random d-regular graph (text format)");
        auto n = std::make_shared<int>(0);
        auto d = std::make_shared<int>(3);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto out = std::make_shared<std::string>();
        auto* on = sub->add_option("--n", *n, "number of vertices");
        auto* od = sub->add_option("--d", *d, "degree");
        auto* os = sub->add_option("--seed", *seed, "generator seed");
        sub->add_option("--out", *out, "output file (default stdout)");
        sub->callback([=, &rc, &config] {
            if (auto cfg = config()) {
                if (!*on) *n = cfg->n;
                if (!*od) *d = cfg->d;
                if (!*os && !cfg->seeds.empty()) *seed = cfg->seeds.front();
            }
            rc = run_generate(*n, *d, *seed, *out);
        });
    }

    // check-assumptions -----------------------------------------------------
    {
        auto* sub = app.add_subcommand("check-assumptions",
                                       "regularity, tree-like-ball and spectral-gap report");
        auto graph = std::make_shared<std::string>();
        auto n = std::make_shared<int>(0);
        auto d = std::make_shared<int>(3);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto out = std::make_shared<std::string>();
        sub->add_option("graph", *graph, "graph file (omit to generate)");
        auto* on = sub->add_option("--n", *n, "number of vertices (when generating)");
        auto* od = sub->add_option("--d", *d, "degree (when generating)");
        auto* os = sub->add_option("--seed", *seed, "generator seed");
        sub->add_option("--out", *out, "output file (default stdout)");
        sub->callback([=, &rc, &config] {
            if (auto cfg = config()) {
                if (!*on) *n = cfg->n;
                if (!*od) *d = cfg->d;
                if (!*os && !cfg->seeds.empty()) *seed = cfg->seeds.front();
            }
            rc = run_check(*graph, *n, *d, *seed, *out);
        });
    }

    // tree ------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "tree", "branching-process scalars over levels 0..u (CSV, 101 rows)");
        auto d = std::make_shared<int>(3);
        auto u = std::make_shared<double>(8.0);
        auto out = std::make_shared<std::string>();
        auto* od = sub->add_option("--d", *d, "degree");
        auto* ou = sub->add_option("--u", *u, "grid upper end");
        sub->add_option("--out", *out, "output file (default stdout)");
        sub->callback([=, &rc, &config] {
            if (auto cfg = config()) {
                if (!*od) *d = cfg->d;
                if (!*ou) *u = cfg->u;
            }
            rc = run_tree(*d, *u, *out);
        });
    }

    // sweep -------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "sweep", "vacant-set component sizes over levels and seeds (CSV)");
        auto n = std::make_shared<int>(0);
        auto d = std::make_shared<int>(3);
        auto us = std::make_shared<std::vector<double>>(
            std::vector<double>{C::sweep_u_low, C::sweep_u_high});
        auto seeds = std::make_shared<std::vector<std::uint64_t>>(
            std::vector<std::uint64_t>{1, 2, 3, 4, 5});
        auto gamma = std::make_shared<double>(0.0);
        auto delta = std::make_shared<double>(0.25);
        auto threads = std::make_shared<int>(1);
        auto out = std::make_shared<std::string>();
        auto* on = sub->add_option("--n", *n, "number of vertices");
        auto* od = sub->add_option("--d", *d, "degree");
        auto* ou = sub->add_option("--u", *us, "levels (repeat or comma-separate)")
                       ->delimiter(',');
        auto* osd = sub->add_option("--seeds", *seeds, "seeds (repeat or comma-separate)")
                        ->delimiter(',');
        auto* og = sub->add_option(
            "--gamma", *gamma, "segment exponent: sweep the segment field instead of the walk");
        auto* odl = sub->add_option("--delta", *delta, "sprinkling exponent (segment field)");
        sub->add_option("--threads", *threads, "worker threads over seeds");
        sub->add_option("--out", *out, "output file (default stdout)");
        sub->callback([=, &rc, &config] {
            std::optional<double> gopt;
            if (auto cfg = config()) {
                if (!*on) *n = cfg->n;
                if (!*od) *d = cfg->d;
                if (!*ou) *us = {cfg->u};
                if (!*osd && !cfg->seeds.empty()) *seeds = cfg->seeds;
                if (!*og && cfg->gamma) gopt = *cfg->gamma;
                if (!*odl) *delta = cfg->delta;
            }
            if (*og) gopt = *gamma;
            rc = run_sweep(*n, *d, *us, *seeds, gopt, *delta, *threads, *out);
        });
    }

    // uniqueness ----------------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "uniqueness", "assert giant-component (u < u_star) or logarithmic-component "
                          "(u > u_star) behaviour over seeds");
        auto n = std::make_shared<int>(0);
        auto d = std::make_shared<int>(3);
        auto u = std::make_shared<double>(C::sweep_u_low);
        auto seeds = std::make_shared<std::vector<std::uint64_t>>(
            std::vector<std::uint64_t>{1, 2, 3, 4, 5});
        auto threads = std::make_shared<int>(1);
        auto out = std::make_shared<std::string>();
        auto* on = sub->add_option("--n", *n, "number of vertices");
        auto* od = sub->add_option("--d", *d, "degree");
        auto* ou = sub->add_option("--u", *u, "level");
        auto* osd = sub->add_option("--seeds", *seeds, "seeds (repeat or comma-separate)")
                        ->delimiter(',');
        sub->add_option("--threads", *threads, "worker threads over seeds");
        sub->add_option("--out", *out, "output file (default stdout)");
        sub->callback([=, &rc, &config] {
            if (auto cfg = config()) {
                if (!*on) *n = cfg->n;
                if (!*od) *d = cfg->d;
                if (!*ou) *u = cfg->u;
                if (!*osd && !cfg->seeds.empty()) *seeds = cfg->seeds;
            }
            rc = run_uniqueness(*n, *d, *u, *seeds, *threads, *out);
        });
    }

    // rates -----------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "rates", "tree-like target hitting rates at horizon T = n (exact solves)");
        auto n = std::make_shared<int>(C::rate_n);
        auto d = std::make_shared<int>(3);
        auto seed = std::make_shared<std::uint64_t>(C::rate_seed);
        auto out = std::make_shared<std::string>();
        auto* on = sub->add_option("--n", *n, "number of vertices");
        auto* od = sub->add_option("--d", *d, "degree");
        auto* os = sub->add_option("--seed", *seed, "graph seed");
        sub->add_option("--out", *out, "output file (default stdout)");
        sub->callback([=, &rc, &config] {
            if (auto cfg = config()) {
                if (!*on) *n = cfg->n;
                if (!*od) *d = cfg->d;
                if (!*os && !cfg->seeds.empty()) *seed = cfg->seeds.front();
            }
            rc = run_rates(*n, *d, *seed, *out);
        });
    }

    // compare-local ------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "compare-local", "local vacant-cluster size law vs the branching-process band");
        auto n = std::make_shared<int>(C::local_n);
        auto d = std::make_shared<int>(3);
        auto u = std::make_shared<double>(C::local_u);
        auto replicas = std::make_shared<long>(C::local_replicas);
        auto seed = std::make_shared<std::uint64_t>(C::local_graph_seed);
        auto threads = std::make_shared<int>(1);
        auto radius = std::make_shared<int>(C::local_radius);
        auto out = std::make_shared<std::string>();
        auto* on = sub->add_option("--n", *n, "number of vertices");
        auto* od = sub->add_option("--d", *d, "degree");
        auto* ou = sub->add_option("--u", *u, "level (must be below u_star)");
        auto* orp = sub->add_option("--replicas", *replicas, "replicas per law");
        auto* os = sub->add_option("--seed", *seed, "master seed");
        sub->add_option("--threads", *threads, "worker threads over walk replicas");
        sub->add_option("--radius", *radius, "comparison ball radius (small n needs a smaller ball)");
        sub->add_option("--out", *out, "CSV of the three size CDFs");
        sub->callback([=, &rc, &config] {
            if (auto cfg = config()) {
                if (!*on) *n = cfg->n;
                if (!*od) *d = cfg->d;
                if (!*ou) *u = cfg->u;
                if (!*orp) *replicas = cfg->replicas;
                if (!*os && !cfg->seeds.empty()) *seed = cfg->seeds.front();
            }
            rc = run_compare_local(*n, *d, *u, *replicas, *seed, *threads, *radius, *out);
        });
    }

    // bridge-test ------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand(
            "bridge-test", "bridge sampler endpoint and midpoint-law validation");
        auto n = std::make_shared<int>(4);
        auto d = std::make_shared<int>(3);
        auto seed = std::make_shared<std::uint64_t>(C::bridge_seed);
        auto replicas = std::make_shared<long>(20000);
        auto ell = std::make_shared<double>(C::bridge_ell);
        auto out = std::make_shared<std::string>();
        auto* on = sub->add_option("--n", *n, "number of vertices");
        auto* od = sub->add_option("--d", *d, "degree");
        auto* os = sub->add_option("--seed", *seed, "master seed");
        auto* orp = sub->add_option("--replicas", *replicas, "bridge samples");
        sub->add_option("--ell", *ell, "bridge time length");
        sub->add_option("--out", *out, "output file (default stdout)");
        sub->callback([=, &rc, &config] {
            if (auto cfg = config()) {
                if (!*on) *n = cfg->n;
                if (!*od) *d = cfg->d;
                if (!*orp) *replicas = cfg->replicas;
                if (!*os && !cfg->seeds.empty()) *seed = cfg->seeds.front();
            }
            rc = run_bridge_test(*n, *d, *seed, *replicas, *ell, *out);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
