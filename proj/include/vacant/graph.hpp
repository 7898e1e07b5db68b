#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rng.hpp"
#include "vertex_set.hpp"

namespace vacant {

// log base (d-1); the natural length scale for d-regular graphs.
inline double log_base(int d, double x) {
    if (d < 3) throw std::invalid_argument("log_base: need d >= 3");
    return std::log(x) / std::log(static_cast<double>(d - 1));
}

// Simple connected d-regular graph with a flat adjacency table.
class RegularGraph {
public:
    RegularGraph() : n_(0), d_(0) {}

    // Builds from an undirected edge list and validates d-regularity,
    // simplicity and connectivity.
    RegularGraph(int n, int d, const std::vector<std::pair<int, int>>& edges)
        : n_(n), d_(d), adj_(static_cast<std::size_t>(n) * d, -1) {
        if (n <= 0 || d < 3) throw std::invalid_argument("RegularGraph: need n > 0 and d >= 3");
        if (static_cast<long long>(n) * d % 2 != 0)
            throw std::invalid_argument("RegularGraph: n*d must be even");
        if (n <= d) throw std::invalid_argument("RegularGraph: need n > d");
        if (edges.size() != static_cast<std::size_t>(n) * d / 2)
            throw std::invalid_argument("RegularGraph: edge count must be n*d/2");
        std::vector<int> deg(n, 0);
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw std::invalid_argument("RegularGraph: vertex out of range");
            if (u == v) throw std::invalid_argument("RegularGraph: self-loop");
            if (deg[u] >= d || deg[v] >= d)
                throw std::invalid_argument("RegularGraph: degree exceeds d");
            adj_[static_cast<std::size_t>(u) * d + deg[u]++] = v;
            adj_[static_cast<std::size_t>(v) * d + deg[v]++] = u;
        }
        for (int v = 0; v < n; ++v) {
            int* nb = &adj_[static_cast<std::size_t>(v) * d];
            std::sort(nb, nb + d);
            for (int i = 1; i < d; ++i)
                if (nb[i] == nb[i - 1]) throw std::invalid_argument("RegularGraph: parallel edge");
        }
        if (!bfs_connected()) throw std::invalid_argument("RegularGraph: not connected");
    }

    int n() const { return n_; }
    int d() const { return d_; }

    const int* neighbors(int v) const { return &adj_[static_cast<std::size_t>(v) * d_]; }

    bool has_edge(int u, int v) const {
        const int* nb = neighbors(u);
        return std::binary_search(nb, nb + d_, v);
    }

    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(n_) * d_ / 2);
        for (int v = 0; v < n_; ++v) {
            const int* nb = neighbors(v);
            for (int i = 0; i < d_; ++i)
                if (v < nb[i]) out.emplace_back(v, nb[i]);
        }
        return out;
    }

private:
    bool bfs_connected() const {
        std::vector<char> seen(n_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            const int* nb = neighbors(v);
            for (int i = 0; i < d_; ++i)
                if (!seen[nb[i]]) {
                    seen[nb[i]] = 1;
                    ++cnt;
                    stack.push_back(nb[i]);
                }
        }
        return cnt == n_;
    }

    int n_, d_;
    std::vector<int> adj_;
};

// ---------------------------------------------------------------------------
// Generation: configuration model with full restart on collisions.

struct GenerationStats {
    int attempts = 0;
    int budget = 0;
};

inline RegularGraph generate_random_regular(int n, int d, std::uint64_t seed,
                                            GenerationStats* stats = nullptr) {
    if (d < 3) throw std::invalid_argument("generate_random_regular: need d >= 3");
    if (n <= d) throw std::invalid_argument("generate_random_regular: need n > d");
    if (static_cast<long long>(n) * d % 2 != 0)
        throw std::invalid_argument("generate_random_regular: n*d must be even");
    // Success probability of one pairing attempt tends to exp(-(d*d-1)/4).
    int budget = 10 * static_cast<int>(std::ceil(std::exp((static_cast<double>(d) * d - 1) / 4.0)));
    RngStream stream(seed, 0x67e55044);
    std::vector<int> half(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < d; ++i) half[static_cast<std::size_t>(v) * d + i] = v;
    for (int attempt = 1; attempt <= budget; ++attempt) {
        stream.shuffle(half);
        bool simple = true;
        std::vector<std::pair<int, int>> edges;
        edges.reserve(half.size() / 2);
        std::vector<std::vector<int>> nb(n);
        for (std::size_t i = 0; i + 1 < half.size() && simple; i += 2) {
            int u = half[i], v = half[i + 1];
            if (u == v) {
                simple = false;
                break;
            }
            auto& lu = nb[u];
            if (std::find(lu.begin(), lu.end(), v) != lu.end()) {
                simple = false;
                break;
            }
            lu.push_back(v);
            nb[v].push_back(u);
            edges.emplace_back(u, v);
        }
        if (!simple) continue;
        try {
            RegularGraph g(n, d, edges);
            if (stats) {
                stats->attempts = attempt;
                stats->budget = budget;
            }
            return g;
        } catch (const std::invalid_argument&) {
            continue;  // disconnected pairing; retry within the same budget
        }
    }
    throw std::runtime_error("generate_random_regular: restart budget exhausted");
}

// ---------------------------------------------------------------------------
// Text format: first line "n d", then n*d/2 lines "u v" with u < v, sorted.

inline void save_graph(const RegularGraph& g, std::ostream& os) {
    os << g.n() << ' ' << g.d() << '\n';
    auto edges = g.edge_list();
    std::sort(edges.begin(), edges.end());
    for (auto [u, v] : edges) os << u << ' ' << v << '\n';
}

inline RegularGraph load_graph(std::istream& is) {
    auto fail = [](int line, const std::string& msg) {
        throw std::runtime_error("graph load error at line " + std::to_string(line) + ": " + msg);
    };
    std::string line;
    if (!std::getline(is, line)) fail(1, "missing header");
    std::istringstream head(line);
    long long n = 0, d = 0;
    if (!(head >> n >> d)) fail(1, "header must be 'n d'");
    std::string extra;
    if (head >> extra) fail(1, "trailing tokens in header");
    if (n <= 0 || d < 3 || n * d % 2 != 0) fail(1, "invalid n or d");
    long long m = n * d / 2;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    std::pair<int, int> prev{-1, -1};
    for (long long i = 0; i < m; ++i) {
        int lineno = static_cast<int>(i) + 2;
        if (!std::getline(is, line)) fail(lineno, "unexpected end of file");
        std::istringstream es(line);
        long long u = 0, v = 0;
        if (!(es >> u >> v)) fail(lineno, "edge line must be 'u v'");
        if (es >> extra) fail(lineno, "trailing tokens");
        if (u < 0 || v < 0 || u >= n || v >= n) fail(lineno, "vertex out of range");
        if (u >= v) fail(lineno, "edges must satisfy u < v");
        std::pair<int, int> cur{static_cast<int>(u), static_cast<int>(v)};
        if (!(prev < cur)) fail(lineno, "edges must be strictly ascending");
        prev = cur;
        edges.push_back(cur);
    }
    while (std::getline(is, line))
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
            fail(static_cast<int>(m) + 2, "trailing content after edge list");
    try {
        return RegularGraph(static_cast<int>(n), static_cast<int>(d), edges);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("graph load error: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Balls, distances, tree excess, boundaries.

// BFS distances from x, up to and including radius cap (-1 beyond).
inline std::vector<int> distances_from(const RegularGraph& g, int x, int cap) {
    if (x < 0 || x >= g.n()) throw std::invalid_argument("distances_from: vertex out of range");
    std::vector<int> dist(g.n(), -1);
    std::deque<int> q{x};
    dist[x] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (dist[v] == cap) continue;
        const int* nb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i)
            if (dist[nb[i]] < 0) {
                dist[nb[i]] = dist[v] + 1;
                q.push_back(nb[i]);
            }
    }
    return dist;
}

inline VertexSet ball(const RegularGraph& g, int x, int r) {
    if (r < 0) throw std::invalid_argument("ball: negative radius");
    auto dist = distances_from(g, x, r);
    VertexSet s(g.n());
    for (int v = 0; v < g.n(); ++v)
        if (dist[v] >= 0) s.insert(v);
    return s;
}

// Ball around a set of sources (radius r from the nearest source).
inline VertexSet ball_around(const RegularGraph& g, const std::vector<int>& sources, int r) {
    if (r < 0) throw std::invalid_argument("ball_around: negative radius");
    std::vector<int> dist(g.n(), -1);
    std::deque<int> q;
    VertexSet s(g.n());
    for (int x : sources) {
        if (x < 0 || x >= g.n()) throw std::invalid_argument("ball_around: vertex out of range");
        if (dist[x] < 0) {
            dist[x] = 0;
            q.push_back(x);
            s.insert(x);
        }
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (dist[v] == r) continue;
        const int* nb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i)
            if (dist[nb[i]] < 0) {
                dist[nb[i]] = dist[v] + 1;
                q.push_back(nb[i]);
                s.insert(nb[i]);
            }
    }
    return s;
}

// tx(A) = |E_A| - |A| + 1 for connected A (number of independent cycles).
inline long tree_excess(const RegularGraph& g, const VertexSet& A) {
    if (A.universe() != g.n()) throw std::invalid_argument("tree_excess: universe mismatch");
    if (A.empty()) throw std::invalid_argument("tree_excess: empty set");
    long edges = 0;
    int start = -1;
    A.for_each([&](int v) {
        if (start < 0) start = v;
        const int* nb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i)
            if (A.contains(nb[i])) ++edges;
    });
    edges /= 2;
    // connectivity check within A
    VertexSet seen(g.n());
    std::vector<int> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        const int* nb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i)
            if (A.contains(nb[i]) && !seen.contains(nb[i])) {
                seen.insert(nb[i]);
                stack.push_back(nb[i]);
            }
    }
    if (seen.count() != A.count()) throw std::invalid_argument("tree_excess: set not connected");
    return edges - A.count() + 1;
}

inline long edge_boundary(const RegularGraph& g, const VertexSet& A) {
    if (A.universe() != g.n()) throw std::invalid_argument("edge_boundary: universe mismatch");
    long cnt = 0;
    A.for_each([&](int v) {
        const int* nb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i)
            if (!A.contains(nb[i])) ++cnt;
    });
    return cnt;
}

// Interior boundary: vertices of A with a neighbour outside A.
inline std::vector<int> interior_boundary(const RegularGraph& g, const VertexSet& A) {
    std::vector<int> out;
    A.for_each([&](int v) {
        const int* nb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i)
            if (!A.contains(nb[i])) {
                out.push_back(v);
                return;
            }
    });
    return out;
}

// ---------------------------------------------------------------------------
// Girth: shortest cycle length, by truncated BFS from every vertex.

inline int girth(const RegularGraph& g) {
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(g.n()), parent(g.n());
    for (int s = 0; s < g.n(); ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<int> q{s};
        dist[s] = 0;
        parent[s] = -1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            if (2 * dist[v] + 1 >= best) break;
            const int* nb = g.neighbors(v);
            for (int i = 0; i < g.d(); ++i) {
                int w = nb[i];
                if (w == parent[v]) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    q.push_back(w);
                } else {
                    best = std::min(best, dist[v] + dist[w] + 1);
                }
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Spectral gap of the rate-1 continuous-time walk: 1 - lambda_2 where
// lambda_2 is the second-largest eigenvalue of the one-step matrix P = A/d.

namespace detail {
inline double spectral_gap_dense(const RegularGraph& g) {
    const int n = g.n();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    const double invd = 1.0 / g.d();
    for (int v = 0; v < n; ++v) {
        const int* nb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i) P(v, nb[i]) = invd;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectral gap: eigensolver failed");
    return 1.0 - es.eigenvalues()(n - 2);  // eigenvalues sorted ascending
}

// Power iteration on (P+I)/2 with the constant mode projected out.
inline double spectral_gap_iterative(const RegularGraph& g, double tol, long max_iters,
                                     long* iters_out) {
    const int n = g.n();
    const double invd = 1.0 / g.d();
    std::vector<double> v(n), w(n);
    RngStream rng(0x5eedull, 7);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform() - 0.5;
    auto project = [&](std::vector<double>& x) {
        double mean = 0;
        for (double t : x) mean += t;
        mean /= n;
        for (double& t : x) t -= mean;
    };
    auto normalize = [&](std::vector<double>& x) {
        double nrm = 0;
        for (double t : x) nrm += t * t;
        nrm = std::sqrt(nrm);
        if (nrm == 0) throw std::runtime_error("spectral gap: zero vector");
        for (double& t : x) t /= nrm;
    };
    project(v);
    normalize(v);
    double rho_prev = 2.0;
    for (long it = 1; it <= max_iters; ++it) {
        for (int i = 0; i < n; ++i) {
            const int* nb = g.neighbors(i);
            double s = 0;
            for (int k = 0; k < g.d(); ++k) s += v[nb[k]];
            w[i] = 0.5 * (s * invd + v[i]);
        }
        project(w);
        double rho = 0;
        for (int i = 0; i < n; ++i) rho += v[i] * w[i];
        std::swap(v, w);
        normalize(v);
        if (std::abs(rho - rho_prev) < tol) {
            if (iters_out) *iters_out = it;
            return 1.0 - (2.0 * rho - 1.0);
        }
        rho_prev = rho;
    }
    throw std::runtime_error("spectral gap: power iteration did not converge");
}
}  // namespace detail

inline double spectral_gap(const RegularGraph& g, int dense_limit = 2048, double tol = 1e-10,
                           long max_iters = 100000, long* iters_out = nullptr) {
    if (g.n() <= dense_limit) return detail::spectral_gap_dense(g);
    return detail::spectral_gap_iterative(g, tol, max_iters, iters_out);
}

// ---------------------------------------------------------------------------
// Assumption report: regularity, locally tree-like (at most one cycle in
// balls of radius floor(alpha1 * ld n)), spectral gap above alpha2.

struct AssumptionReport {
    int n = 0, d = 0;
    bool a0_ok = false;
    int a1_radius = 0;
    bool a1_ok = false;
    std::vector<int> a1_violations;  // capped at 32 entries
    double lambda = 0;
    bool a2_ok = false;
    int girth = 0;
    bool all_ok() const { return a0_ok && a1_ok && a2_ok; }
};

inline AssumptionReport check_assumptions(const RegularGraph& g, double alpha1, double alpha2) {
    AssumptionReport rep;
    rep.n = g.n();
    rep.d = g.d();
    rep.a0_ok = true;  // RegularGraph construction enforces regular + connected
    rep.a1_radius = static_cast<int>(std::floor(alpha1 * log_base(g.d(), g.n())));
    rep.a1_ok = true;
    for (int x = 0; x < g.n(); ++x) {
        VertexSet b = ball(g, x, rep.a1_radius);
        if (tree_excess(g, b) > 1) {
            rep.a1_ok = false;
            if (rep.a1_violations.size() < 32) rep.a1_violations.push_back(x);
        }
    }
    rep.lambda = spectral_gap(g);
    rep.a2_ok = rep.lambda > alpha2;
    rep.girth = girth(g);
    return rep;
}

// Count of vertices whose radius-r ball is a tree, with the guaranteed
// lower bound (1 - (d-1)^{-Delta}) * n, Delta = floor(alpha1 * ld n) - r.
struct TreelikeBallCount {
    long count = 0;
    double lower_bound = 0;
    bool satisfies_bound = false;
};

inline TreelikeBallCount count_treelike_balls(const RegularGraph& g, int r, double alpha1 = 0.2) {
    int R = static_cast<int>(std::floor(alpha1 * log_base(g.d(), g.n())));
    if (r > R)
        throw std::invalid_argument("count_treelike_balls: r exceeds the assumption radius");
    TreelikeBallCount out;
    for (int x = 0; x < g.n(); ++x) {
        VertexSet b = ball(g, x, r);
        if (tree_excess(g, b) == 0) ++out.count;
    }
    int delta = R - r;
    out.lower_bound = (1.0 - std::pow(g.d() - 1.0, -delta)) * g.n();
    out.satisfies_bound = static_cast<double>(out.count) >= out.lower_bound;
    return out;
}

// ---------------------------------------------------------------------------
// Sampled isoperimetric profile: min |edge boundary| / |A| over randomly
// grown connected sets with |A| <= n/2. A diagnostic, not a certified minimum.

struct IsoperimetricSample {
    double min_ratio = std::numeric_limits<double>::infinity();
    int argmin_size = 0;
};

inline IsoperimetricSample isoperimetric_profile(const RegularGraph& g, int samples,
                                                 RngStream& rng) {
    IsoperimetricSample out;
    for (int s = 0; s < samples; ++s) {
        int target = 1 + static_cast<int>(rng.below(std::max(1, g.n() / 2)));
        int start = static_cast<int>(rng.below(g.n()));
        VertexSet A(g.n());
        std::vector<int> frontier{start};
        A.insert(start);
        while (A.count() < target && !frontier.empty()) {
            std::size_t pick = rng.below(frontier.size());
            int v = frontier[pick];
            std::vector<int> fresh;
            const int* nb = g.neighbors(v);
            for (int i = 0; i < g.d(); ++i)
                if (!A.contains(nb[i])) fresh.push_back(nb[i]);
            if (fresh.empty()) {
                frontier[pick] = frontier.back();
                frontier.pop_back();
                continue;
            }
            int w = fresh[rng.below(fresh.size())];
            A.insert(w);
            frontier.push_back(w);
        }
        double ratio = static_cast<double>(edge_boundary(g, A)) / A.count();
        if (ratio < out.min_ratio) {
            out.min_ratio = ratio;
            out.argmin_size = A.count();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bottleneck join: remove edge {x,y} from g1 and {x',y'} from g2, then add
// {x,x'} and {y,y'}. Preserves d-regularity and creates a two-edge cut.

inline RegularGraph join_with_bottleneck(const RegularGraph& g1, const RegularGraph& g2,
                                         std::pair<int, int> e1, std::pair<int, int> e2) {
    if (g1.d() != g2.d()) throw std::invalid_argument("join_with_bottleneck: degree mismatch");
    if (!g1.has_edge(e1.first, e1.second))
        throw std::invalid_argument("join_with_bottleneck: e1 not an edge of g1");
    if (!g2.has_edge(e2.first, e2.second))
        throw std::invalid_argument("join_with_bottleneck: e2 not an edge of g2");
    int off = g1.n();
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g1.edge_list())
        if (!(u == std::min(e1.first, e1.second) && v == std::max(e1.first, e1.second)))
            edges.emplace_back(u, v);
    for (auto [u, v] : g2.edge_list())
        if (!(u == std::min(e2.first, e2.second) && v == std::max(e2.first, e2.second)))
            edges.emplace_back(u + off, v + off);
    edges.emplace_back(e1.first, e2.first + off);
    edges.emplace_back(e1.second, e2.second + off);
    return RegularGraph(g1.n() + g2.n(), g1.d(), edges);
}

}  // namespace vacant
