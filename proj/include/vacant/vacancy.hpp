#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "pim.hpp"
#include "vertex_set.hpp"
#include "walk.hpp"

namespace vacant {

// ---------------------------------------------------------------------------
// Connected components of the vacant subgraph (union-find, components are
// labelled by their smallest vertex; occupied vertices get label -1).

struct ComponentSummary {
    std::vector<int> label;
    std::vector<long> sizes_desc;
    long c_max = 0, c_sec = 0;
    long count = 0;
};

inline ComponentSummary components(const RegularGraph& g, const VacantConfig& cfg) {
    if (cfg.vacant.universe() != g.n())
        throw std::invalid_argument("components: universe mismatch");
    const int n = g.n();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> rank(n, 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank[a] < rank[b]) std::swap(a, b);
        parent[b] = a;
        if (rank[a] == rank[b]) ++rank[a];
    };
    cfg.vacant.for_each([&](int v) {
        const int* nb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i)
            if (nb[i] > v && cfg.vacant.contains(nb[i])) unite(v, nb[i]);
    });
    ComponentSummary out;
    out.label.assign(n, -1);
    std::vector<int> smallest(n, -1);
    std::vector<long> size(n, 0);
    cfg.vacant.for_each([&](int v) {
        int r = find(v);
        if (smallest[r] < 0) smallest[r] = v;  // first visit is the smallest (ascending order)
        ++size[r];
    });
    cfg.vacant.for_each([&](int v) { out.label[v] = smallest[find(v)]; });
    for (int r = 0; r < n; ++r)
        if (size[r] > 0) out.sizes_desc.push_back(size[r]);
    std::sort(out.sizes_desc.rbegin(), out.sizes_desc.rend());
    out.count = static_cast<long>(out.sizes_desc.size());
    out.c_max = out.count > 0 ? out.sizes_desc[0] : 0;
    out.c_sec = out.count > 1 ? out.sizes_desc[1] : 0;
    return out;
}

// Component of y inside the vacant set restricted to B.
inline VertexSet local_component(const RegularGraph& g, const VacantConfig& cfg, int y,
                                 const VertexSet& B) {
    VertexSet out(g.n());
    if (!B.contains(y) || !cfg.vacant.contains(y)) return out;
    std::vector<int> stack{y};
    out.insert(y);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        const int* nb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i) {
            int w = nb[i];
            if (B.contains(w) && cfg.vacant.contains(w) && !out.contains(w)) {
                out.insert(w);
                stack.push_back(w);
            }
        }
    }
    return out;
}

// C_x^l: vertices on the interior boundary of B(x,l) reachable from x inside
// the vacant set intersected with B(x,l).
inline std::vector<int> boundary_component(const RegularGraph& g, const VacantConfig& cfg, int x,
                                           int l) {
    if (l < 0) throw std::invalid_argument("boundary_component: negative radius");
    VertexSet B = ball(g, x, l);
    VertexSet comp = local_component(g, cfg, x, B);
    std::vector<int> out;
    comp.for_each([&](int v) {
        const int* nb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i)
            if (!B.contains(nb[i])) {
                out.push_back(v);
                return;
            }
    });
    return out;
}

// ---------------------------------------------------------------------------
// Future of y relative to a finite set A: the connected component of y in
// B(A,r) \ A. Proper when (i) it is a tree, (ii) y has exactly one neighbour
// in A, and (iii) no vertex of the future touches A anywhere else.

struct FutureResult {
    VertexSet fut;
    long tx = 0;
    bool unique_neighbor = false;
    bool no_side_contact = false;
    int ybar = -1;
    bool proper = false;
};

inline FutureResult future_set(const RegularGraph& g, const VertexSet& A, int y, int r) {
    if (A.universe() != g.n()) throw std::invalid_argument("future_set: universe mismatch");
    if (y < 0 || y >= g.n()) throw std::invalid_argument("future_set: bad y");
    if (A.contains(y)) throw std::invalid_argument("future_set: y inside A");
    if (A.empty()) throw std::invalid_argument("future_set: empty A");
    if (r < 1) throw std::invalid_argument("future_set: need r >= 1");
    VertexSet region = ball_around(g, A.to_vector(), r);
    FutureResult res;
    res.fut = VertexSet(g.n());
    if (!region.contains(y)) return res;  // y beyond the horizon: empty, improper
    std::vector<int> stack{y};
    res.fut.insert(y);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        const int* nb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i) {
            int w = nb[i];
            if (region.contains(w) && !A.contains(w) && !res.fut.contains(w)) {
                res.fut.insert(w);
                stack.push_back(w);
            }
        }
    }
    res.tx = tree_excess(g, res.fut);
    int y_neighbors_in_A = 0;
    const int* nb = g.neighbors(y);
    for (int i = 0; i < g.d(); ++i)
        if (A.contains(nb[i])) {
            ++y_neighbors_in_A;
            res.ybar = nb[i];
        }
    res.unique_neighbor = y_neighbors_in_A == 1;
    res.no_side_contact = true;
    res.fut.for_each([&](int v) {
        const int* vb = g.neighbors(v);
        for (int i = 0; i < g.d(); ++i)
            if (A.contains(vb[i]) && vb[i] != res.ybar) res.no_side_contact = false;
    });
    res.proper = res.tx == 0 && res.unique_neighbor && res.no_side_contact;
    return res;
}

// ---------------------------------------------------------------------------
// Vertex classification of a vacant field around x. All radii are explicit:
// the asymptotic recipes (beta ld n etc.) collapse at desk scale, so the
// caller chooses them; make_classify_params applies the standard derivation.

enum class VertexClass { small_cls, proper_cls, bad_cls };

struct ClassifyParams {
    int radius_B = 0;       // component containment radius
    int radius_Bp = 0;      // tree-excess radius (5x by the standard recipe)
    double small_max_size = 0;   // (ld n)^2
    double proper_min_size = 0;  // h n^{v_+ beta}
    int l0 = 0, l1 = 0;          // decay window
    double m_minus = 0;          // growth base in the decay condition
};

inline ClassifyParams make_classify_params(int n, int d, double u, double eps, double beta,
                                           double h) {
    ClassifyParams p;
    double ldn = log_base(d, n);
    p.radius_B = static_cast<int>(std::floor(beta * ldn));
    p.radius_Bp = static_cast<int>(std::floor(5 * beta * ldn));
    p.small_max_size = ldn * ldn;
    InterlacementParams plus = interlacement_params(d, u * (1 + eps));
    InterlacementParams minus = interlacement_params(d, u * (1 - eps));
    p.proper_min_size = h * std::pow(static_cast<double>(n), plus.v_u * beta);
    p.m_minus = minus.m_u;
    double v_minus = minus.v_u;
    p.l0 = v_minus > 0 ? static_cast<int>(std::ceil(10.0 * std::log(std::log(static_cast<double>(n))) / v_minus))
                       : p.radius_B + 1;
    p.l1 = p.radius_B;
    return p;
}

inline VertexClass classify_vertex(const RegularGraph& g, const VacantConfig& cfg, int x,
                                   const ClassifyParams& par) {
    VertexSet Bp = ball(g, x, par.radius_Bp);
    if (tree_excess(g, Bp) != 0) return VertexClass::bad_cls;

    // small: component of x confined to B(x, radius_B) and of size <= (ld n)^2
    bool small = true;
    if (cfg.vacant.contains(x)) {
        VertexSet B = ball(g, x, par.radius_B);
        std::vector<int> stack{x};
        VertexSet comp(g.n());
        comp.insert(x);
        while (!stack.empty() && small) {
            int v = stack.back();
            stack.pop_back();
            const int* nb = g.neighbors(v);
            for (int i = 0; i < g.d(); ++i) {
                int w = nb[i];
                if (!cfg.vacant.contains(w) || comp.contains(w)) continue;
                if (!B.contains(w)) {
                    small = false;  // component escapes the ball
                    break;
                }
                comp.insert(w);
                stack.push_back(w);
                if (comp.count() > par.small_max_size) {
                    small = false;
                    break;
                }
            }
        }
    }
    if (small) return VertexClass::small_cls;

    // proper: big boundary component at radius_B plus controlled growth of
    // all boundary components in the window [l0, l1] around every y in B.
    auto cl_size = [&](int y, int l) {
        return static_cast<long>(boundary_component(g, cfg, y, l).size());
    };
    if (static_cast<double>(cl_size(x, par.radius_B)) < par.proper_min_size)
        return VertexClass::bad_cls;
    VertexSet B = ball(g, x, par.radius_B);
    bool decay_ok = true;
    B.for_each([&](int y) {
        if (!decay_ok) return;
        for (int l = par.l0; l <= par.l1 && decay_ok; ++l)
            if (static_cast<double>(cl_size(y, l)) > std::pow(par.m_minus, 1.25 * l))
                decay_ok = false;
    });
    return decay_ok ? VertexClass::proper_cls : VertexClass::bad_cls;
}

// Census over all vertices plus the count living in mesoscopic components.
struct MesoscopicCensus {
    long small = 0, proper = 0, bad = 0;
    long in_components_at_least = 0;  // vertices in vacant components >= threshold
};

inline MesoscopicCensus mesoscopic_census(const RegularGraph& g, const VacantConfig& cfg,
                                          const ClassifyParams& par, long size_threshold) {
    MesoscopicCensus out;
    for (int x = 0; x < g.n(); ++x) {
        switch (classify_vertex(g, cfg, x, par)) {
            case VertexClass::small_cls: ++out.small; break;
            case VertexClass::proper_cls: ++out.proper; break;
            case VertexClass::bad_cls: ++out.bad; break;
        }
    }
    ComponentSummary cs = components(g, cfg);
    for (long s : cs.sizes_desc)
        if (s >= size_threshold) out.in_components_at_least += s;
    return out;
}

// ---------------------------------------------------------------------------
// Instrumented breadth-first exploration of the vacant cluster against the
// segment field. Vertices move not-explored -> in-queue -> explored-vacant /
// explored-occupied; exploring an occupied vertex ties every segment index
// whose range contains it. The queue-size increments r_k take values in
// {-1, ..., d-2} after the first step (-1 or d-1 at the first step).

enum class ExploreState : std::uint8_t { vacant = 0, occupied = 1 };

struct ExplorationStep {
    int vertex = -1;
    long queue_before = 0;
    int delta = 0;
    ExploreState state = ExploreState::vacant;
    long free_count = 0, tied_count = 0;  // after the step
    bool future_proper = false;           // of F_{E_k}(y_k, r), steps k >= 2
};

enum class ExploreTermination { queue_empty, cap_reached };

struct ExplorationTrace {
    std::vector<ExplorationStep> steps;
    long explored_vacant = 0, explored_occupied = 0;
    ExploreTermination termination = ExploreTermination::queue_empty;
    int future_radius = 0;
    double cap = 0;
};

// Default future radius per the asymptotic recipe; desk-scale runs pass r=2.
inline int default_future_radius(int n, int d) {
    double ldldn = log_base(d, log_base(d, n));
    return std::max(static_cast<int>(std::ceil(7 * ldldn)), 2);
}

inline ExplorationTrace bfs_explore_instrumented(const RegularGraph& g, const SegmentBundle& b,
                                                 long segment_count, int start, double K_cap,
                                                 int future_radius) {
    if (start < 0 || start >= g.n())
        throw std::invalid_argument("bfs_explore_instrumented: bad start");
    if (segment_count < 0 || segment_count > static_cast<long>(b.segments.size()))
        throw std::invalid_argument("bfs_explore_instrumented: bad segment count");
    const int n = g.n();
    // Per-vertex lists of segment indices whose range covers the vertex.
    std::vector<std::vector<int>> visiting(n);
    for (long i = 0; i < segment_count; ++i)
        range_of(g, b.segments[i], 0, b.segments[i].horizon).for_each([&](int v) {
            visiting[v].push_back(static_cast<int>(i));
        });

    ExplorationTrace tr;
    tr.future_radius = future_radius;
    tr.cap = K_cap * log_base(g.d(), n);
    enum : std::uint8_t { NOT_EXPLORED, IN_QUEUE, EXPL_VACANT, EXPL_OCCUPIED };
    std::vector<std::uint8_t> status(n, NOT_EXPLORED);
    std::vector<char> tied(segment_count, 0);
    long tied_count = 0;
    std::deque<int> queue{start};
    status[start] = IN_QUEUE;
    VertexSet explored(n);

    while (!queue.empty()) {
        if (tr.explored_vacant >= tr.cap) {
            tr.termination = ExploreTermination::cap_reached;
            return tr;
        }
        ExplorationStep st;
        st.vertex = queue.front();
        st.queue_before = static_cast<long>(queue.size());
        if (!explored.empty()) {
            FutureResult fr = future_set(g, explored, st.vertex, future_radius);
            st.future_proper = fr.proper;
        }
        queue.pop_front();
        int y = st.vertex;
        if (!visiting[y].empty()) {
            status[y] = EXPL_OCCUPIED;
            ++tr.explored_occupied;
            st.state = ExploreState::occupied;
            for (int i : visiting[y])
                if (!tied[i]) {
                    tied[i] = 1;
                    ++tied_count;
                }
        } else {
            status[y] = EXPL_VACANT;
            ++tr.explored_vacant;
            st.state = ExploreState::vacant;
            const int* nb = g.neighbors(y);
            for (int i = 0; i < g.d(); ++i)
                if (status[nb[i]] == NOT_EXPLORED) {
                    status[nb[i]] = IN_QUEUE;
                    queue.push_back(nb[i]);
                }
        }
        explored.insert(y);
        st.delta = static_cast<int>(queue.size()) - static_cast<int>(st.queue_before);
        st.tied_count = tied_count;
        st.free_count = segment_count - tied_count;
        tr.steps.push_back(st);
    }
    tr.termination = ExploreTermination::queue_empty;
    return tr;
}

}  // namespace vacant
