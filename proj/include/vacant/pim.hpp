#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "interlace.hpp"
#include "rng.hpp"
#include "walk.hpp"

namespace vacant {

// Parameters of the piecewise independent measure: i.i.d. stationary segments
// of length L = n^gamma glued by bridges of length ell = (ln n)^2.
struct PimParams {
    int n = 0, d = 0;
    double u = 0;
    double eps = 0;    // 0 when gamma was forced or the plain recipe was used
    double beta = 0;
    double gamma = 0;
    double delta = 0;
    double L = 0;      // n^gamma
    double ell = 0;    // (ln n)^2
    double q_sprinkle = 0;  // n^{-2 delta}
    int J = 0;         // floor(ln n), max long-range bridge span

    long count_floor(double level) const {
        return static_cast<long>(std::floor(level * n / (L + ell)));
    }
    long count_ceil(double level) const {
        return static_cast<long>(std::ceil(level * n / (L + ell)));
    }
};

enum class GammaRecipe {
    subcritical,  // eps from the dyadic grid, gamma = v_{u(1+eps)} * beta / 2
    plain         // gamma = beta / 2 (any u)
};

// Largest dyadic eps = 2^{-k} satisfying both
//   u (1+eps) < (u + u_star)/2   and   1/4 + (11/4) eps < u_star / (2 (u + u_star)).
inline double derive_epsilon(int d, double u) {
    double us = u_star(d);
    if (u >= us) throw std::invalid_argument("derive_epsilon: needs u < u_star");
    for (int k = 1; k <= 60; ++k) {
        double eps = std::ldexp(1.0, -k);
        bool c1 = u * (1 + eps) < (u + us) / 2;
        bool c2 = 0.25 + 2.75 * eps < us / (2 * (u + us));
        if (c1 && c2) return eps;
    }
    throw std::runtime_error("derive_epsilon: no admissible dyadic value");
}

inline PimParams derive_params(int n, int d, double u, double delta,
                               GammaRecipe recipe = GammaRecipe::subcritical,
                               std::optional<double> gamma_override = std::nullopt,
                               double alpha1 = 0.2) {
    if (n < 8) throw std::invalid_argument("derive_params: n too small");
    if (u <= 0) throw std::invalid_argument("derive_params: need u > 0");
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("derive_params: delta in (0,1)");
    PimParams p;
    p.n = n;
    p.d = d;
    p.u = u;
    p.delta = delta;
    p.beta = alpha1 / 100.0;
    if (gamma_override) {
        p.gamma = *gamma_override;
    } else if (recipe == GammaRecipe::subcritical) {
        p.eps = derive_epsilon(d, u);  // throws for u >= u_star
        double v_plus = interlacement_params(d, u * (1 + p.eps)).v_u;
        p.gamma = v_plus * p.beta / 2.0;
    } else {
        p.gamma = p.beta / 2.0;
    }
    if (!(p.gamma > 0 && p.gamma < 1))
        throw std::invalid_argument("derive_params: gamma out of (0,1)");
    double ln_n = std::log(static_cast<double>(n));
    p.L = std::pow(static_cast<double>(n), p.gamma);
    p.ell = ln_n * ln_n;
    p.q_sprinkle = std::pow(static_cast<double>(n), -2.0 * delta);
    p.J = static_cast<int>(std::floor(ln_n));
    return p;
}

// ---------------------------------------------------------------------------
// Segment bundle: Y^i are i.i.d. stationary walks of length L; bridges Z^i
// connect the end of Y^i to the start of Y^{i+1} in time ell; long-range
// bridges Z^{i,j} connect the end of Y^i to the start of Y^{i+j}, j <= J.

struct SegmentBundle {
    PimParams params;
    std::vector<Trajectory> segments;
    std::vector<Trajectory> bridges;     // bridges[i]: end of Y^i -> start of Y^{i+1}
    std::vector<Trajectory> longrange;   // index lr(i,j), i in [0, lr_rows), j in [1, J]
    long lr_rows = 0;

    const Trajectory& lr(long i, int j) const {
        if (i < 0 || i >= lr_rows || j < 1 || j > params.J)
            throw std::out_of_range("SegmentBundle: no such long-range bridge");
        return longrange[static_cast<std::size_t>(i) * params.J + (j - 1)];
    }
    int seg_end(long i) const { return segments[i].states.back(); }
    int seg_start(long i) const { return segments[i].states.front(); }
};

inline SegmentBundle sample_segments(const RegularGraph& g, long count, const PimParams& params,
                                     RngStream& rng) {
    if (count < 1) throw std::invalid_argument("sample_segments: need count >= 1");
    SegmentBundle b;
    b.params = params;
    b.segments.reserve(count);
    // tag regions: segments 0x53c00000+i, bridges 0xb2000000+i, long-range
    // 0x4c000000 + 256 i + j; disjoint for any realistic bundle size
    for (long i = 0; i < count; ++i) {
        RngStream sub = rng.split(0x53c00000ull + static_cast<std::uint64_t>(i));
        b.segments.push_back(sample_walk_stationary(g, params.L, sub));
    }
    return b;
}

inline void attach_bridges(const RegularGraph& g, SegmentBundle& b, RngStream& rng) {
    if (b.segments.size() < 2) throw std::invalid_argument("attach_bridges: need >= 2 segments");
    b.bridges.clear();
    for (std::size_t i = 0; i + 1 < b.segments.size(); ++i) {
        RngStream sub = rng.split(0xb2000000ull + i);
        b.bridges.push_back(
            sample_bridge(g, b.seg_end(i), b.seg_start(i + 1), b.params.ell, sub));
    }
}

inline void attach_longrange(const RegularGraph& g, SegmentBundle& b, RngStream& rng) {
    const long S = static_cast<long>(b.segments.size());
    const int J = b.params.J;
    if (S <= J) throw std::invalid_argument("attach_longrange: need more segments than J");
    b.lr_rows = S - J;
    b.longrange.clear();
    b.longrange.reserve(static_cast<std::size_t>(b.lr_rows) * J);
    for (long i = 0; i < b.lr_rows; ++i)
        for (int j = 1; j <= J; ++j) {
            RngStream sub = rng.split(0x4c000000ull + static_cast<std::uint64_t>(i) * 256 + j);
            b.longrange.push_back(
                sample_bridge(g, b.seg_end(i), b.seg_start(i + j), b.params.ell, sub));
        }
}

// Concatenation of k segments and k-1 bridges into one path on
// [0, (k-1)(L+ell) + L]; piece i starts at offset i (L+ell), its bridge at
// offset i (L+ell) + L. Endpoint conditioning makes the junctions seamless.
inline Trajectory concatenate(const SegmentBundle& b) {
    if (b.segments.empty()) throw std::invalid_argument("concatenate: no segments");
    if (b.bridges.size() + 1 != b.segments.size())
        throw std::invalid_argument("concatenate: need exactly one bridge between segments");
    const double L = b.params.L, ell = b.params.ell;
    Trajectory out;
    out.horizon = (b.segments.size() - 1) * (L + ell) + L;
    out.states.push_back(b.segments[0].states.front());
    auto append = [&out](const Trajectory& piece, double offset) {
        // piece.states.front() must equal the current final state
        if (piece.states.front() != out.states.back())
            throw std::logic_error("concatenate: junction mismatch");
        for (std::size_t j = 0; j < piece.times.size(); ++j) {
            out.times.push_back(offset + piece.times[j]);
            out.states.push_back(piece.states[j + 1]);
        }
    };
    for (std::size_t i = 0; i < b.segments.size(); ++i) {
        double off = i * (L + ell);
        append(b.segments[i], off);
        if (i + 1 < b.segments.size()) append(b.bridges[i], off + L);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Vacant fields.

enum class CountVariant { floor_count, ceil_count };

// xi from segment ranges only: complement of the union of the ranges of the
// first m segments, m = floor or ceil of u n / (L + ell).
inline VacantConfig xi_segments(const RegularGraph& g, const SegmentBundle& b, double u_level,
                                CountVariant variant = CountVariant::floor_count) {
    long m = variant == CountVariant::floor_count ? b.params.count_floor(u_level)
                                                  : b.params.count_ceil(u_level);
    if (m > static_cast<long>(b.segments.size()))
        throw std::invalid_argument("xi_segments: insufficient segments for the level");
    VertexSet visited(g.n());
    for (long i = 0; i < m; ++i)
        range_of(g, b.segments[i], 0, b.segments[i].horizon).for_each([&](int v) {
            visited.insert(v);
        });
    VacantConfig cfg;
    cfg.vacant = visited.complement();
    cfg.u_level = u_level;
    cfg.provenance = Provenance::segments;
    return cfg;
}

// xi' additionally removes the ranges of all long-range bridges attached to
// the first M_u = ceil count segments. Pointwise below xi at the same level.
inline VacantConfig xi_prime(const RegularGraph& g, const SegmentBundle& b, double u_level) {
    long M = b.params.count_ceil(u_level);
    if (M > static_cast<long>(b.segments.size()))
        throw std::invalid_argument("xi_prime: insufficient segments for the level");
    if (b.lr_rows < M)
        throw std::invalid_argument("xi_prime: long-range bridges missing below the ceil count");
    VertexSet visited(g.n());
    for (long i = 0; i < M; ++i) {
        range_of(g, b.segments[i], 0, b.segments[i].horizon).for_each([&](int v) {
            visited.insert(v);
        });
        for (int j = 1; j <= b.params.J; ++j)
            range_of(g, b.lr(i, j), 0, b.params.ell).for_each([&](int v) { visited.insert(v); });
    }
    VacantConfig cfg;
    cfg.vacant = visited.complement();
    cfg.u_level = u_level;
    cfg.provenance = Provenance::segments_longrange;
    return cfg;
}

// ---------------------------------------------------------------------------
// Sprinkling: thin the segments of a bundle built at the slightly higher
// level u_n = min(u + n^{-delta}, (u + u_star)/2) by independent
// Bernoulli(q_sprinkle) deletions, then re-glue the kept segments with
// long-range bridges spanning the gaps. On the good event the glued path
// covers [0, u n] and its range is contained in the union behind xi'(u_n).

struct SprinkleResult {
    VacantConfig config;
    bool good_event = false;
    long kept_count = 0;   // I
    long M_u = 0, M_un = 0;
    double u_n = 0;
    std::vector<long> kept;  // k_1 < k_2 < ... (indices below M_un with R_k = 0)
};

inline double sprinkle_level(int n, int d, double u, double delta) {
    double us = u_star(d);
    if (u >= us) throw std::invalid_argument("sprinkle_level: needs u < u_star");
    return std::min(u + std::pow(static_cast<double>(n), -delta), (u + us) / 2.0);
}

inline SprinkleResult sprinkle(const RegularGraph& g, const SegmentBundle& b, double u,
                               RngStream& rng) {
    const PimParams& par = b.params;
    SprinkleResult res;
    res.u_n = sprinkle_level(par.n, par.d, u, par.delta);
    res.M_u = par.count_ceil(u);
    res.M_un = par.count_ceil(res.u_n);
    if (static_cast<long>(b.segments.size()) < res.M_un)
        throw std::invalid_argument("sprinkle: bundle has fewer segments than the ceil count at u_n");
    for (long k = 0; k < res.M_un; ++k)
        if (!rng.bernoulli(par.q_sprinkle)) res.kept.push_back(k);
    res.kept_count = static_cast<long>(res.kept.size());

    res.good_event = res.kept_count >= res.M_u + 1;
    if (res.good_event)
        for (long i = 0; i + 1 < res.M_u + 1; ++i)
            if (res.kept[i + 1] - res.kept[i] > par.J) {
                res.good_event = false;
                break;
            }
    if (!res.good_event) {
        // Placeholder configuration from a constant path: everything vacant
        // except a single vertex. Callers must consult good_event.
        VertexSet visited(g.n());
        visited.insert(0);
        res.config.vacant = visited.complement();
        res.config.u_level = u;
        res.config.provenance = Provenance::sprinkled;
        return res;
    }

    // Glue Y^{k_1}, Z^{k_1 -> k_2}, ..., Y^{k_M}, Z^{k_M -> k_{M+1}} and
    // restrict to [0, u n]. Total piece length M (L + ell) >= u n.
    const double L = par.L, ell = par.ell;
    const double T = u * par.n;
    VertexSet visited(g.n());
    double off = 0;
    bool done = false;
    for (long i = 0; i < res.M_u && !done; ++i) {
        long k = res.kept[i];
        long gap = res.kept[i + 1] - res.kept[i];
        const Trajectory& seg = b.segments[k];
        double upto = std::min(L, T - off);
        range_of(g, seg, 0, upto).for_each([&](int v) { visited.insert(v); });
        off += L;
        if (off >= T) break;
        if (k >= b.lr_rows)
            throw std::invalid_argument("sprinkle: missing long-range bridge for kept index");
        const Trajectory& br = b.lr(k, static_cast<int>(gap));
        upto = std::min(ell, T - off);
        range_of(g, br, 0, upto).for_each([&](int v) { visited.insert(v); });
        off += ell;
        if (off >= T) done = true;
    }
    res.config.vacant = visited.complement();
    res.config.u_level = u;
    res.config.provenance = Provenance::sprinkled;
    return res;
}

// ---------------------------------------------------------------------------
// Monte Carlo agreement check between the true walk measure and the glued
// measure: per-vertex vacancy frequencies at level u from `replicas` samples
// of each, compared in units of the pooled standard error.

struct RNCheckReport {
    int n = 0;
    long replicas = 0;
    double z_threshold = 0;
    double max_abs_z = 0;
    int worst_vertex = -1;
    long flagged = 0;
    std::vector<double> freq_walk, freq_glued;
    bool ok() const { return flagged == 0; }
};

inline RNCheckReport radon_nikodym_check(const RegularGraph& g, double u, const PimParams& par,
                                         long replicas, RngStream& rng, double z_threshold = 3.0) {
    RNCheckReport rep;
    rep.n = g.n();
    rep.replicas = replicas;
    rep.z_threshold = z_threshold;
    const double T = u * g.n();
    // Smallest segment count whose concatenation horizon covers [0, T].
    long count = 1;
    while ((count - 1) * (par.L + par.ell) + par.L < T) ++count;

    std::vector<long> hits_walk(g.n(), 0), hits_glued(g.n(), 0);
    for (long r = 0; r < replicas; ++r) {
        RngStream wrng = rng.split(0xace0ull + 2 * r);  // even tags
        Trajectory tr = sample_walk_stationary(g, T, wrng);
        range_of(g, tr, 0, T).for_each([&](int v) { ++hits_walk[v]; });

        RngStream qrng = rng.split(0xace1ull + 2 * r);  // odd tags, disjoint
        SegmentBundle b = sample_segments(g, count, par, qrng);
        RngStream brng = qrng.split(0xffULL);
        attach_bridges(g, b, brng);
        Trajectory glued = concatenate(b);
        range_of(g, glued, 0, T).for_each([&](int v) { ++hits_glued[v]; });
    }
    rep.freq_walk.resize(g.n());
    rep.freq_glued.resize(g.n());
    for (int v = 0; v < g.n(); ++v) {
        double pw = 1.0 - static_cast<double>(hits_walk[v]) / replicas;
        double pq = 1.0 - static_cast<double>(hits_glued[v]) / replicas;
        rep.freq_walk[v] = pw;
        rep.freq_glued[v] = pq;
        double pooled = (pw + pq) / 2.0;
        double se = std::sqrt(std::max(pooled * (1.0 - pooled) * 2.0 / replicas, 1e-300));
        double z = std::abs(pw - pq) / se;
        if (z > rep.max_abs_z) {
            rep.max_abs_z = z;
            rep.worst_vertex = v;
        }
        if (z > z_threshold) ++rep.flagged;
    }
    return rep;
}

}  // namespace vacant
