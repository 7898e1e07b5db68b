#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace vacant {

// Critical level of the vacant-set phase transition on d-regular graphs.
inline double u_star(int d) {
    if (d < 3) throw std::invalid_argument("u_star: need d >= 3");
    double dd = d;
    return dd * (dd - 1) * std::log(dd - 1) / ((dd - 2) * (dd - 2));
}

// Per-level quantities of the tree local picture:
//   p_u   child-survival probability exp(-u (d-2)^2 / (d (d-1)))
//   m_u   offspring mean (d-1) p_u
//   v_u   log_{d-1} m_u = 1 - u/u_star
//   f_root, f_other  per-vertex capacity weights on the tree
struct InterlacementParams {
    int d = 0;
    double u = 0;
    double u_star = 0;
    double p_u = 0;
    double m_u = 0;
    double v_u = 0;
    double f_root = 0;
    double f_other = 0;
};

inline InterlacementParams interlacement_params(int d, double u) {
    if (d < 3) throw std::invalid_argument("interlacement_params: need d >= 3");
    if (u < 0) throw std::invalid_argument("interlacement_params: need u >= 0");
    InterlacementParams p;
    double dd = d;
    p.d = d;
    p.u = u;
    p.u_star = u_star(d);
    p.f_root = (dd - 2) / (dd - 1);
    p.f_other = (dd - 2) * (dd - 2) / (dd * (dd - 1));
    p.p_u = std::exp(-u * p.f_other);
    p.m_u = (dd - 1) * p.p_u;
    p.v_u = 1.0 - u / p.u_star;
    return p;
}

// ---------------------------------------------------------------------------
// Cluster sampling. Nodes are encoded as root-paths (child-index sequences,
// the root being the empty path). Offspring are Binomial(d-1, p_u) per node;
// the root is born with probability exp(-u f_root). RootOffspring::tree gives
// the root d slots instead of d-1, matching the degree of the regular tree's
// root (used when comparing against clusters observed around a graph vertex).

enum class RootOffspring { descendant, tree };

struct TreeClusterSample {
    std::vector<std::vector<std::uint8_t>> nodes;  // root-paths, BFS order
    bool size_capped = false;
    bool depth_capped = false;
    int depth_reached = -1;  // -1 when the root is not born

    std::size_t size() const { return nodes.size(); }
    std::size_t size_within_depth(int r) const {
        std::size_t c = 0;
        for (const auto& p : nodes)
            if (static_cast<int>(p.size()) <= r) ++c;
        return c;
    }
};

namespace detail {
inline std::uint64_t path_tag(const std::vector<std::uint8_t>& path) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint8_t b : path) h = (h ^ (b + 1)) * 0x100000001b3ull;
    return h;
}
}  // namespace detail

// Uniforms are read off (stream key, node path) so that running the sampler
// at two levels u < u' with the same stream couples the clusters monotonely:
// p_u' <= p_u implies cluster(u') is a subset of cluster(u).
inline TreeClusterSample sample_cluster(int d, double u, const RngStream& stream, int depth_cap,
                                        std::size_t size_cap,
                                        RootOffspring mode = RootOffspring::descendant) {
    if (depth_cap < 0 || size_cap == 0)
        throw std::invalid_argument("sample_cluster: bad caps");
    InterlacementParams par = interlacement_params(d, u);
    TreeClusterSample out;
    if (stream.uniform_at(0x9d2c5680ull) >= std::exp(-u * par.f_root)) return out;
    std::deque<std::vector<std::uint8_t>> queue;
    queue.push_back({});
    out.nodes.push_back({});
    out.depth_reached = 0;
    while (!queue.empty()) {
        auto path = queue.front();
        queue.pop_front();
        int depth = static_cast<int>(path.size());
        if (depth == depth_cap) {
            out.depth_capped = true;
            continue;
        }
        int slots = (depth == 0 && mode == RootOffspring::tree) ? d : d - 1;
        std::uint64_t base = detail::path_tag(path);
        for (int c = 0; c < slots; ++c) {
            if (stream.uniform_at(base ^ (0xa0761fe3e0ull + c)) < par.p_u) {
                if (out.nodes.size() >= size_cap) {
                    out.size_capped = true;
                    return out;
                }
                auto child = path;
                child.push_back(static_cast<std::uint8_t>(c));
                out.nodes.push_back(child);
                out.depth_reached = std::max(out.depth_reached, depth + 1);
                queue.push_back(std::move(child));
            }
        }
    }
    return out;
}

// Smallest fixed point of phi(s) = (1 - p + p s)^{d-1} in [0, 1]. Returns 1
// when the offspring mean is at most 1 (up to rounding right at criticality).
// phi - id is positive exactly on [0, q) and negative on (q, 1), so bisection
// brackets q to machine precision however close the mean is to 1; the naive
// monotone iteration stalls at the critical point.
inline double extinction_probability(int d, double u, double tol = 1e-15) {
    InterlacementParams par = interlacement_params(d, u);
    if (par.m_u <= 1.0 + 1e-12) return 1.0;
    auto phi = [&](double s) { return std::pow(1.0 - par.p_u + par.p_u * s, d - 1); };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (phi(mid) > mid)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Probability that a line started from one individual survives r generations:
// 1 - phi^{(r)}(0). The root-birth factor exp(-u f_root) is not included.
inline double generation_survival(int d, double u, int r) {
    if (r < 0) throw std::invalid_argument("generation_survival: need r >= 0");
    InterlacementParams par = interlacement_params(d, u);
    double s = 0.0;
    for (int i = 0; i < r; ++i) s = std::pow(1.0 - par.p_u + par.p_u * s, d - 1);
    return 1.0 - s;
}

// ---------------------------------------------------------------------------
// Capacity of a finite connected subtree K of the d-regular tree containing
// the root: cap(K) = sum_x P_x[no return to K]. On the tree each escape
// direction contributes (d-2)/(d-1) per free slot, giving the closed form
//   cap(K) = sum_{x in K} (d - deg_K(x))/d * (d-2)/(d-1).
// For a path of length k this reduces to f_root + k f_other.
inline double tree_capacity(int d, const std::vector<std::vector<std::uint8_t>>& K) {
    if (d < 3) throw std::invalid_argument("tree_capacity: need d >= 3");
    if (K.empty()) throw std::invalid_argument("tree_capacity: empty set");
    std::vector<std::vector<std::uint8_t>> sorted = K;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("tree_capacity: duplicate node");
    if (!sorted.front().empty())
        throw std::invalid_argument("tree_capacity: root (empty path) required");
    auto member = [&](const std::vector<std::uint8_t>& p) {
        return std::binary_search(sorted.begin(), sorted.end(), p);
    };
    for (const auto& p : sorted) {
        if (p.empty()) continue;
        int limit = (p.size() == 1) ? d : d - 1;  // root direction count vs child slots
        if (p.back() >= limit) throw std::invalid_argument("tree_capacity: child index out of range");
        auto parent = p;
        parent.pop_back();
        if (!member(parent)) throw std::invalid_argument("tree_capacity: set not a subtree");
    }
    double esc = (static_cast<double>(d) - 2) / (d - 1);
    double cap = 0;
    for (const auto& p : sorted) {
        int deg = p.empty() ? 0 : 1;  // parent link
        int slots = p.empty() ? d : d - 1;
        for (int c = 0; c < slots; ++c) {
            auto child = p;
            child.push_back(static_cast<std::uint8_t>(c));
            if (member(child)) ++deg;
        }
        cap += (static_cast<double>(d) - deg) / d * esc;
    }
    return cap;
}

// Root-path encoding of a path of length k hanging off the root.
inline std::vector<std::vector<std::uint8_t>> tree_path(int k) {
    std::vector<std::vector<std::uint8_t>> K;
    std::vector<std::uint8_t> p;
    K.push_back(p);
    for (int i = 0; i < k; ++i) {
        p.push_back(0);
        K.push_back(p);
    }
    return K;
}

// ---------------------------------------------------------------------------
// Monte Carlo histogram of |C_o| with an overflow bucket for size-cap hits.

struct ClusterHistogram {
    std::vector<long> counts;  // counts[k] = #samples with |C| = k, k <= max size
    long overflow = 0;         // size-cap hits
    long samples = 0;
};

inline ClusterHistogram cluster_size_histogram(int d, double u, long samples, RngStream& rng,
                                               std::size_t size_cap = 4096, int depth_cap = 1 << 20,
                                               RootOffspring mode = RootOffspring::descendant) {
    ClusterHistogram h;
    h.counts.assign(size_cap + 1, 0);
    h.samples = samples;
    for (long s = 0; s < samples; ++s) {
        RngStream sub = rng.split(static_cast<std::uint64_t>(s) + 1);
        TreeClusterSample cl = sample_cluster(d, u, sub, depth_cap, size_cap, mode);
        if (cl.size_capped)
            ++h.overflow;
        else
            ++h.counts[cl.size()];
    }
    return h;
}

// Exact law of |C_o| for the descendant convention up to kmax, by convolution
// of the total-progeny recursion: a cluster is the root plus B independent
// subcluster copies, B ~ Binomial(d-1, p_u).
inline std::vector<double> cluster_size_pmf(int d, double u, int kmax) {
    if (kmax < 0) throw std::invalid_argument("cluster_size_pmf: need kmax >= 0");
    InterlacementParams par = interlacement_params(d, u);
    int q = d - 1;
    std::vector<double> binom(q + 1);
    for (int j = 0; j <= q; ++j) {
        double c = 1;
        for (int i = 0; i < j; ++i) c = c * (q - i) / (i + 1);
        binom[j] = c * std::pow(par.p_u, j) * std::pow(1 - par.p_u, q - j);
    }
    // t[k] = P[total progeny = k | root alive]; fixed-point iteration of the
    // truncated convolution equation t = delta_1 * Binom-mixture of t^{*j}.
    std::vector<double> t(kmax + 1, 0.0);
    for (int iter = 0; iter < kmax + 2; ++iter) {
        std::vector<double> next(kmax + 1, 0.0);
        for (int k = 1; k <= kmax; ++k) next[k] += binom[0] * (k == 1 ? 1.0 : 0.0);
        std::vector<double> power(kmax + 1, 0.0);
        power[0] = 1.0;
        for (int j = 1; j <= q; ++j) {
            std::vector<double> np(kmax + 1, 0.0);
            for (int a = 0; a <= kmax; ++a) {
                if (power[a] == 0) continue;
                for (int b = 1; a + b <= kmax; ++b) np[a + b] += power[a] * t[b];
            }
            power = std::move(np);
            for (int k = 1; k <= kmax; ++k)
                if (k - 1 >= 0 && k - 1 <= kmax) next[k] += binom[j] * power[k - 1];
        }
        t = std::move(next);
    }
    std::vector<double> pmf(kmax + 1, 0.0);
    double root = std::exp(-u * par.f_root);
    pmf[0] = 1.0 - root;
    for (int k = 1; k <= kmax; ++k) pmf[k] = root * t[k];
    return pmf;
}

}  // namespace vacant
