#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"
#include "vertex_set.hpp"

namespace vacant {

// Continuous-time walk path: jump chain plus strictly increasing jump times.
// states has one more entry than times; states[k] holds on [times[k-1], times[k]).
struct Trajectory {
    std::vector<int> states;
    std::vector<double> times;
    double horizon = 0;

    std::size_t jumps() const { return times.size(); }

    int state_at(double t) const {
        if (t < 0 || t > horizon) throw std::out_of_range("state_at: time outside horizon");
        auto it = std::upper_bound(times.begin(), times.end(), t);
        return states[static_cast<std::size_t>(it - times.begin())];
    }

    void validate() const {
        if (states.size() != times.size() + 1)
            throw std::logic_error("Trajectory: states/times size mismatch");
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] <= (i ? times[i - 1] : 0.0) || times[i] >= horizon)
                throw std::logic_error("Trajectory: jump times not strictly inside (0, horizon)");
        }
    }
};

inline Trajectory sample_walk(const RegularGraph& g, int start, double T, RngStream& rng) {
    if (start < 0 || start >= g.n()) throw std::invalid_argument("sample_walk: bad start");
    if (!(T >= 0)) throw std::invalid_argument("sample_walk: bad horizon");
    Trajectory tr;
    tr.horizon = T;
    tr.states.push_back(start);
    double t = rng.exponential();
    int cur = start;
    while (t < T) {
        cur = g.neighbors(cur)[rng.below(g.d())];
        tr.states.push_back(cur);
        tr.times.push_back(t);
        t += rng.exponential();
    }
    return tr;
}

// Stationary start: uniform over vertices (the walk is doubly stochastic).
inline Trajectory sample_walk_stationary(const RegularGraph& g, double T, RngStream& rng) {
    return sample_walk(g, static_cast<int>(rng.below(g.n())), T, rng);
}

// Vertices visited during [s, t], including the state occupied at time s.
inline VertexSet range_of(const Trajectory& tr, double s, double t) {
    if (!(0 <= s && s <= t && t <= tr.horizon))
        throw std::invalid_argument("range_of: need 0 <= s <= t <= horizon");
    int n_max = 0;
    for (int v : tr.states) n_max = std::max(n_max, v);
    VertexSet out(n_max + 1);
    auto lo = std::upper_bound(tr.times.begin(), tr.times.end(), s);
    std::size_t idx = static_cast<std::size_t>(lo - tr.times.begin());
    out.insert(tr.states[idx]);
    for (std::size_t k = idx; k < tr.times.size() && tr.times[k] <= t; ++k)
        out.insert(tr.states[k + 1]);
    return out;
}

// Range against a fixed universe size (graph order).
inline VertexSet range_of(const RegularGraph& g, const Trajectory& tr, double s, double t) {
    if (!(0 <= s && s <= t && t <= tr.horizon))
        throw std::invalid_argument("range_of: need 0 <= s <= t <= horizon");
    VertexSet out(g.n());
    auto lo = std::upper_bound(tr.times.begin(), tr.times.end(), s);
    std::size_t idx = static_cast<std::size_t>(lo - tr.times.begin());
    out.insert(tr.states[idx]);
    for (std::size_t k = idx; k < tr.times.size() && tr.times[k] <= t; ++k)
        out.insert(tr.states[k + 1]);
    return out;
}

enum class Provenance { full_walk, segments, segments_longrange, sprinkled };

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::full_walk: return "full_walk";
        case Provenance::segments: return "segments";
        case Provenance::segments_longrange: return "segments_longrange";
        case Provenance::sprinkled: return "sprinkled";
    }
    return "?";
}

// Indicator of unvisited vertices at level u, tagged with how it was built.
struct VacantConfig {
    VertexSet vacant;
    double u_level = 0;
    Provenance provenance = Provenance::full_walk;
};

inline VacantConfig vacant_set(const RegularGraph& g, const Trajectory& tr, double u) {
    double T = u * g.n();
    if (tr.horizon < T) throw std::invalid_argument("vacant_set: trajectory horizon below u*n");
    VacantConfig cfg;
    cfg.vacant = range_of(g, tr, 0.0, T).complement();
    cfg.u_level = u;
    cfg.provenance = Provenance::full_walk;
    return cfg;
}

// ---------------------------------------------------------------------------
// Exact endpoint-conditioned bridge of length ell from x to y.
//
// Jump count K is drawn from P[K=k] proportional to Poisson(ell)(k) P^k(x,y);
// the skeleton is then sampled sequentially with transition weights
// P(w, z) P^{k-j-1}(z, y), and jump times are sorted uniforms on (0, ell).
// The Poisson series is truncated at mean + 12 sqrt(mean) (tail < 1e-12).

inline int poisson_truncation(double mean) {
    return static_cast<int>(std::ceil(mean + 12.0 * std::sqrt(mean))) + 4;
}

inline Trajectory sample_bridge(const RegularGraph& g, int x, int y, double ell, RngStream& rng) {
    if (x < 0 || x >= g.n() || y < 0 || y >= g.n())
        throw std::invalid_argument("sample_bridge: endpoint out of range");
    if (!(ell > 0)) throw std::invalid_argument("sample_bridge: need ell > 0");
    if (ell > 1e6) throw std::invalid_argument("sample_bridge: ell too large");
    const int n = g.n();
    const int K = poisson_truncation(ell);
    const double invd = 1.0 / g.d();

    // Forward vectors from the endpoint: w_m = P^m delta_y. P is symmetric,
    // so w_m(z) = P^m(z, y). Stored for the skeleton pass.
    std::vector<std::vector<double>> w;
    w.reserve(K + 1);
    w.emplace_back(n, 0.0);
    w[0][y] = 1.0;
    for (int m = 1; m <= K; ++m) {
        const auto& prev = w.back();
        std::vector<double> cur(n, 0.0);
        for (int v = 0; v < n; ++v) {
            const int* nb = g.neighbors(v);
            double s = 0;
            for (int i = 0; i < g.d(); ++i) s += prev[nb[i]];
            cur[v] = s * invd;
        }
        w.push_back(std::move(cur));
    }

    // Poisson(ell) weights times endpoint agreement.
    std::vector<double> weight(K + 1, 0.0);
    {
        double lp = -ell;  // log pmf at k=0
        for (int k = 0; k <= K; ++k) {
            if (k > 0) lp += std::log(ell) - std::log(static_cast<double>(k));
            weight[k] = std::exp(lp) * w[k][x];
        }
    }
    double total = 0;
    for (double t : weight) total += t;
    if (!(total > 0))
        throw std::runtime_error("sample_bridge: endpoint unreachable within truncation budget");
    double pick = rng.uniform() * total;
    int k = 0;
    for (; k < K; ++k) {
        pick -= weight[k];
        if (pick <= 0) break;
    }

    Trajectory tr;
    tr.horizon = ell;
    tr.states.reserve(k + 1);
    tr.states.push_back(x);
    int cur = x;
    for (int j = 0; j < k; ++j) {
        const auto& tail = w[k - j - 1];
        const int* nb = g.neighbors(cur);
        double s = 0;
        for (int i = 0; i < g.d(); ++i) s += tail[nb[i]];
        double u = rng.uniform() * s;
        int next = nb[g.d() - 1];
        for (int i = 0; i < g.d(); ++i) {
            u -= tail[nb[i]];
            if (u <= 0) {
                next = nb[i];
                break;
            }
        }
        cur = next;
        tr.states.push_back(cur);
    }
    if (cur != y) throw std::logic_error("sample_bridge: skeleton failed to reach endpoint");
    tr.times.resize(k);
    for (int j = 0; j < k; ++j) tr.times[j] = rng.uniform() * ell;
    std::sort(tr.times.begin(), tr.times.end());
    return tr;
}

// ---------------------------------------------------------------------------
// Jump-count diagnostics for segment/bridge bundles: segments should carry
// between n^gamma/2 and 2 n^gamma jumps, bridges at most (ln n)^3.

struct JumpStats {
    double segment_lo = 0, segment_hi = 0, bridge_hi = 0;
    std::vector<std::size_t> segment_flags;  // indices with N outside (lo, hi)
    std::vector<std::size_t> bridge_flags;   // indices with N > bridge_hi
    std::size_t max_segment_jumps = 0;
    std::size_t min_segment_jumps = 0;
    std::size_t max_bridge_jumps = 0;
    bool all_ok() const { return segment_flags.empty() && bridge_flags.empty(); }
};

inline JumpStats jump_stats(const std::vector<Trajectory>& segments,
                            const std::vector<Trajectory>& bridges, int n, double gamma) {
    JumpStats st;
    double ng = std::pow(static_cast<double>(n), gamma);
    st.segment_lo = ng / 2;
    st.segment_hi = 2 * ng;
    st.bridge_hi = std::pow(std::log(static_cast<double>(n)), 3);
    st.min_segment_jumps = segments.empty() ? 0 : std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < segments.size(); ++i) {
        std::size_t c = segments[i].jumps();
        st.max_segment_jumps = std::max(st.max_segment_jumps, c);
        st.min_segment_jumps = std::min(st.min_segment_jumps, c);
        double cd = static_cast<double>(c);
        if (!(cd > st.segment_lo && cd < st.segment_hi)) st.segment_flags.push_back(i);
    }
    for (std::size_t i = 0; i < bridges.size(); ++i) {
        std::size_t c = bridges[i].jumps();
        st.max_bridge_jumps = std::max(st.max_bridge_jumps, c);
        if (static_cast<double>(c) > st.bridge_hi) st.bridge_flags.push_back(i);
    }
    return st;
}

}  // namespace vacant
