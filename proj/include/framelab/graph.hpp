#pragma once

// The orthogonality graph on non-degenerate lines: vertices in canonical
// order, adjacency as packed bit rows, exact walk counts by repeated
// matrix-vector products, and the connectivity/diameter census.

#include <cstdint>
#include <map>
#include <ostream>
#include <queue>
#include <vector>

#include "common.hpp"
#include "counts.hpp"
#include "hermitian.hpp"

namespace framelab {

struct OrthGraph {
    HermSpace space;
    std::vector<Line> verts;
    size_t words = 0;
    std::vector<std::uint64_t> bits;  // verts.size() rows of `words` words
    Int degree = 0;                   // common row sum (d_n when non-degenerate)

    size_t size() const { return verts.size(); }

    const std::uint64_t* row(size_t i) const { return bits.data() + i * words; }

    bool adjacent(size_t i, size_t j) const {
        return (row(i)[j >> 6] >> (j & 63)) & 1u;
    }

    unsigned n() const { return space.dim(); }
    unsigned q() const { return space.field().q(); }
};

inline OrthGraph build_graph_space(const HermSpace& sp, size_t max_vertices = 100000) {
    OrthGraph g{sp, enum_lines(sp), 0, {}, 0};
    const size_t V = g.verts.size();
    if (V > max_vertices)
        throw InstanceTooLarge("graph would have " + std::to_string(V) + " vertices");
    g.words = (V + 63) / 64;
    g.bits.assign(V * g.words, 0);
    for (size_t i = 0; i < V; ++i)
        for (size_t j = i + 1; j < V; ++j)
            if (sp.form_eval(g.verts[i].rep, g.verts[j].rep) == 0) {
                g.bits[i * g.words + (j >> 6)] |= std::uint64_t(1) << (j & 63);
                g.bits[j * g.words + (i >> 6)] |= std::uint64_t(1) << (i & 63);
            }
    if (V > 0) {
        std::uint64_t deg0 = 0;
        for (size_t w = 0; w < g.words; ++w) deg0 += std::uint64_t(__builtin_popcountll(g.row(0)[w]));
        g.degree = deg0;
        if (sp.nondegenerate()) {
            for (size_t i = 1; i < V; ++i) {
                std::uint64_t d = 0;
                for (size_t w = 0; w < g.words; ++w) d += std::uint64_t(__builtin_popcountll(g.row(i)[w]));
                if (Int(d) != g.degree) throw Error("graph is not regular");
            }
        }
    }
    return g;
}

inline OrthGraph build_graph(unsigned n, unsigned q, size_t max_vertices = 100000) {
    return build_graph_space(HermSpace(field_new(q), n), max_vertices);
}

// --- connectivity ----------------------------------------------------------

inline std::vector<int> component_ids(const OrthGraph& g) {
    const size_t V = g.size();
    std::vector<int> comp(V, -1);
    int next = 0;
    std::vector<std::uint64_t> frontier(g.words), reach(g.words);
    for (size_t s = 0; s < V; ++s) {
        if (comp[s] != -1) continue;
        std::fill(frontier.begin(), frontier.end(), 0);
        std::fill(reach.begin(), reach.end(), 0);
        frontier[s >> 6] = std::uint64_t(1) << (s & 63);
        reach[s >> 6] = frontier[s >> 6];
        bool grew = true;
        while (grew) {
            std::vector<std::uint64_t> nxt(g.words, 0);
            for (size_t w = 0; w < g.words; ++w) {
                std::uint64_t m = frontier[w];
                while (m) {
                    unsigned b = unsigned(__builtin_ctzll(m));
                    m &= m - 1;
                    size_t v = (w << 6) + b;
                    const std::uint64_t* r = g.row(v);
                    for (size_t u = 0; u < g.words; ++u) nxt[u] |= r[u];
                }
            }
            grew = false;
            for (size_t w = 0; w < g.words; ++w) {
                std::uint64_t fresh = nxt[w] & ~reach[w];
                reach[w] |= fresh;
                frontier[w] = fresh;
                if (fresh) grew = true;
            }
        }
        for (size_t v = 0; v < V; ++v)
            if ((reach[v >> 6] >> (v & 63)) & 1u) comp[v] = next;
        ++next;
    }
    return comp;
}

inline unsigned components(const OrthGraph& g) {
    int mx = -1;
    for (int c : component_ids(g)) mx = std::max(mx, c);
    return unsigned(mx + 1);
}

// Eccentricity-based diameter of each connected component, indexed by
// component id (ids ordered by smallest contained vertex).
inline std::vector<unsigned> diameter(const OrthGraph& g) {
    const size_t V = g.size();
    auto comp = component_ids(g);
    int ncomp = 0;
    for (int c : comp) ncomp = std::max(ncomp, c + 1);
    std::vector<unsigned> diam(ncomp, 0);
    std::vector<std::uint64_t> frontier(g.words), reach(g.words);
    for (size_t s = 0; s < V; ++s) {
        std::fill(frontier.begin(), frontier.end(), 0);
        std::fill(reach.begin(), reach.end(), 0);
        frontier[s >> 6] = std::uint64_t(1) << (s & 63);
        reach[s >> 6] = frontier[s >> 6];
        unsigned dist = 0;
        for (;;) {
            std::vector<std::uint64_t> nxt(g.words, 0);
            for (size_t w = 0; w < g.words; ++w) {
                std::uint64_t m = frontier[w];
                while (m) {
                    unsigned b = unsigned(__builtin_ctzll(m));
                    m &= m - 1;
                    const std::uint64_t* r = g.row((w << 6) + b);
                    for (size_t u = 0; u < g.words; ++u) nxt[u] |= r[u];
                }
            }
            bool grew = false;
            for (size_t w = 0; w < g.words; ++w) {
                std::uint64_t fresh = nxt[w] & ~reach[w];
                reach[w] |= fresh;
                frontier[w] = fresh;
                if (fresh) grew = true;
            }
            if (!grew) break;
            ++dist;
        }
        diam[comp[s]] = std::max(diam[comp[s]], dist);
    }
    return diam;
}

// The classification of connectivity and diameter by (n, q), for
// non-degenerate standard spaces.
struct ConnectivityExpectation {
    bool connected;
    unsigned component_count;     // 1 when connected
    unsigned diameter_connected;  // meaningful when connected
};

inline ConnectivityExpectation connectivity_expected(unsigned n, unsigned q) {
    if (n == 2 && q == 2) return {true, 1, 1};
    if (n == 2) return {false, unsigned(q * (q - 1) / 2), 0};
    if (n == 3 && q == 2) return {false, 4, 0};
    if (n == 3) return {true, 1, iso_count(3, q, 0) > 0 ? 3u : 2u};
    return {true, 1, 2};
}

// --- walk counts -------------------------------------------------------------

struct WalkTable {
    unsigned k = 0;
    std::map<PosClass, Int> values;  // only classes realized by some pair
};

// Exact (A^k)[S][W] per position class; throws if a class is not constant.
inline WalkTable walks_matrix(const OrthGraph& g, unsigned k, size_t max_vertices = 2000) {
    const size_t V = g.size();
    if (V > max_vertices) throw InstanceTooLarge("walk table on too many vertices");
    WalkTable t;
    t.k = k;
    bool small = k == 0 || (k <= 64 && pow_int(g.degree, k) < (Int(1) << 62));
    std::map<PosClass, bool> seen;
    std::vector<std::uint64_t> v64, nv64;
    std::vector<Int> vb, nvb;
    for (size_t s = 0; s < V; ++s) {
        if (small) {
            v64.assign(V, 0);
            v64[s] = 1;
            for (unsigned step = 0; step < k; ++step) {
                nv64.assign(V, 0);
                for (size_t i = 0; i < V; ++i) {
                    std::uint64_t c = v64[i];
                    if (!c) continue;
                    const std::uint64_t* r = g.row(i);
                    for (size_t w = 0; w < g.words; ++w) {
                        std::uint64_t m = r[w];
                        while (m) {
                            unsigned b = unsigned(__builtin_ctzll(m));
                            m &= m - 1;
                            nv64[(w << 6) + b] += c;
                        }
                    }
                }
                v64.swap(nv64);
            }
        } else {
            vb.assign(V, 0);
            vb[s] = 1;
            for (unsigned step = 0; step < k; ++step) {
                nvb.assign(V, 0);
                for (size_t i = 0; i < V; ++i) {
                    if (vb[i] == 0) continue;
                    const std::uint64_t* r = g.row(i);
                    for (size_t w = 0; w < g.words; ++w) {
                        std::uint64_t m = r[w];
                        while (m) {
                            unsigned b = unsigned(__builtin_ctzll(m));
                            m &= m - 1;
                            nvb[(w << 6) + b] += vb[i];
                        }
                    }
                }
                vb.swap(nvb);
            }
        }
        for (size_t w = 0; w < V; ++w) {
            PosClass c = rel_position(g.space, g.verts[s], g.verts[w]);
            Int val = small ? Int(v64[w]) : vb[w];
            auto it = t.values.find(c);
            if (it == t.values.end()) {
                t.values[c] = val;
            } else if (it->second != val) {
                throw ClassNotConstant(std::string("walk count differs within class ") +
                                       pos_class_name(c));
            }
        }
    }
    return t;
}

// Closed-form walk counts per class for k = 1..4. The impossible classes
// (e.g. ND when q = 2) evaluate to 0 by convention.
inline Int walks_formula(unsigned n, unsigned q, unsigned k, PosClass cls) {
    if (k < 1 || k > 4) throw UndefinedClass("walk closed forms cover only k = 1..4");
    if ((k == 3 || k == 4) && n < 3)
        throw UndefinedClass("length-3/4 walk forms need dimension >= 3");
    if (cls == PosClass::ND && q == 2) return 0;

    const Int dn = d_count(n, q), dn1 = d_count(n - 1, q);
    switch (k) {
        case 1:
            return cls == PosClass::Perp ? 1 : 0;
        case 2:
            switch (cls) {
                case PosClass::Eq: return dn;
                case PosClass::Perp:
                case PosClass::ND: return dn1;
                default: return d_rad(n - 1, q, 1);
            }
        case 3: {
            Int base = dn * dn1;
            Int osc = pow_int(q, 3 * n - 8) * sign_pow(n);
            switch (cls) {
                case PosClass::Eq: return base;
                case PosClass::Perp: return base + osc - pow_int(q, 2 * n - 6) + pow_int(q, 2 * n - 4);
                case PosClass::ND: return base + osc - pow_int(q, 2 * n - 6);
                default: return base + osc;
            }
        }
        default: {
            // Length 4, written as combinations of the length-3 values.
            const Int l3perp = walks_formula(n, q, 3, PosClass::Perp);
            const Int l3nd = q == 2 ? Int(0) : walks_formula(n, q, 3, PosClass::ND);
            const Int l3d = walks_formula(n, q, 3, PosClass::D);
            const Int i2 = iso_count(n - 2, q, 0);
            const Int d1 = d_rad(n - 1, q, 1);
            switch (cls) {
                case PosClass::Eq:
                    return dn * l3perp;
                case PosClass::Perp:
                    return (dn + l3perp) * dn1 + l3nd * (dn - dn1 - i2 - 1) + l3d * i2;
                case PosClass::ND:
                    return l3perp * dn1 + l3nd * (dn - dn1) + (l3d - l3nd) * dn1 * (q + 1);
                default:
                    return l3perp * d1 + l3nd * (dn - d1) + (l3d - l3nd) * pow_int(q, 2 * n - 5);
            }
        }
    }
}

inline void export_edge_list(const OrthGraph& g, std::ostream& os) {
    os << "# n=" << g.n() << " q=" << g.q() << " vertices=" << g.size()
       << " degree=" << g.degree << "\n";
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = i + 1; j < g.size(); ++j)
            if (g.adjacent(i, j)) os << i << " " << j << "\n";
}

}  // namespace framelab
