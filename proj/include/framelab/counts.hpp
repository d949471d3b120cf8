#pragma once

// Closed-form counting: unitary group orders, line and isotropic-vector
// counts (with degenerate radicals), frame numbers, Euler characteristics of
// the frame complex and of the two subspace posets, and the eight arithmetic
// identities tying them together. Everything is exact; divisions are checked
// for zero remainder so a formula typo cannot pass silently.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace framelab {

// |GU_n(q)| = q^(n choose 2) * prod_{i=1..n} (q^i - (-1)^i)
inline Int gu_order(unsigned n, unsigned q) {
    Int r = pow_int(q, n * (n - (n > 0 ? 1 : 0)) / 2);
    for (unsigned i = 1; i <= n; ++i) r *= pow_int(q, i) - sign_pow(i);
    return r;
}

// d_m: number of non-degenerate lines in a non-degenerate space of dimension
// m-1; equivalently the graph degree in dimension m. Zero for m <= 1.
inline Int d_count(unsigned m, unsigned q) {
    if (m <= 1) return 0;
    return exact_div(pow_int(q, m - 2) * (pow_int(q, m - 1) - sign_pow(m - 1)), Int(q) + 1);
}

// d^R_m: same count when the (m-1)-dimensional space has an R-dimensional
// radical; equals q^{2R} * d_{m-R}.
inline Int d_rad(unsigned m, unsigned q, unsigned R) {
    // R = m-1 means totally degenerate (zero lines); the boundary symbols with
    // m - R <= 1 are 0 by convention since d_count vanishes there.
    if (R > m) throw InvalidRadicalDim("radical dimension exceeds space dimension");
    return pow_int(q, 2 * R) * d_count(m - R, q);
}

// I^R_n: nonzero isotropic vectors in an n-dimensional space with an
// R-dimensional radical.
inline Int iso_count(unsigned n, unsigned q, unsigned R) {
    if (R > n) throw InvalidRadicalDim("radical dimension exceeds space dimension");
    return pow_int(q, 2 * n) - 1 - pow_int(q, 2 * R) * d_count(n - R + 1, q) * (pow_int(q, 2) - 1);
}

// The eight identities relating d, d^1 and I counts, as named checks.
inline std::vector<std::pair<std::string, bool>> identity_suite(unsigned n, unsigned q) {
    if (n < 3) throw DimensionMismatch("identity_suite needs n >= 3");
    const Int Q2 = Int(q) * q;
    auto I = [&](unsigned m, unsigned R) { return iso_count(m, q, R); };
    auto d = [&](unsigned m) { return d_count(m, q); };
    std::vector<std::pair<std::string, bool>> out;

    for (unsigned k = 0; k <= std::min(n, 2u); ++k)
        out.emplace_back("iso-vs-lines-rad" + std::to_string(k),
                         I(n, k) == pow_int(q, 2 * n) - 1 - d_rad(n + 1, q, k) * (Q2 - 1));
    out.emplace_back("iso-codim2-closed-form",
                     I(n - 2, 0) == pow_int(q, 2 * n - 5) - 1 + (Int(q) - 1) * pow_int(q, n - 3) * sign_pow(n));
    out.emplace_back("iso-step-ratio",
                     exact_div(I(n - 1, 0) - I(n - 2, 0), Q2 - 1) == d(n - 1) * (Int(q) + 1));
    out.emplace_back("iso-step-rad1-ratio",
                     exact_div(I(n - 1, 0) - I(n - 2, 1), Q2 - 1) == pow_int(q, 2 * n - 5));
    out.emplace_back("rad1-lines-closed-form",
                     d_rad(n - 1, q, 1) == d(n) - pow_int(q, 2 * n - 4) + pow_int(q, 2 * n - 5));
    out.emplace_back("lines-two-step",
                     d(n) == pow_int(q, 2 * n - 4) - Int(q) * d(n - 1));
    out.emplace_back("lines-difference",
                     d(n) - d(n - 1) == pow_int(q, 2 * n - 4) - pow_int(q, 2 * n - 5) + pow_int(q, n - 3) * sign_pow(n));
    out.emplace_back("rad1-vs-plain-lines",
                     d_rad(n - 1, q, 1) - d(n - 1) == pow_int(q, n - 3) * sign_pow(n));
    return out;
}

// Number of m-element frames (pairwise orthogonal non-degenerate lines) in a
// non-degenerate n-dimensional space.
inline Int frame_count(unsigned n, unsigned q, unsigned m) {
    if (m > n) throw DimensionMismatch("frame size exceeds dimension");
    return exact_div(gu_order(n, q),
                     pow_int(q + 1, m) * factorial(m) * gu_order(n - m, q));
}

// Reduced Euler characteristic of the frame complex.
inline Int euler_frame(unsigned n, unsigned q) {
    Int acc = 0;
    for (unsigned m = 0; m <= n; ++m) {
        Int c = frame_count(n, q, m);
        acc += (m % 2 == 1) ? c : -c;
    }
    return acc;
}

// Sphere count of the dimension-3 wedge decomposition (q >= 3) and the point
// count of the dimension-2 complex.
inline Int wedge_count_dim3(unsigned q) {
    if (q < 3) throw DimensionMismatch("wedge_count_dim3 needs q >= 3");
    Int Q = q;
    return exact_div(pow_int(Q, 6) - 2 * pow_int(Q, 5) - pow_int(Q, 4) + 2 * pow_int(Q, 3) - 3 * Q * Q + 3,
                     Int(3));
}

inline Int points_dim2(unsigned q) { return exact_div(Int(q) * (Int(q) - 1), Int(2)); }

// Non-degenerate m-dimensional subspaces of a non-degenerate n-dimensional
// space (transitive unitary action; the stabilizer splits along S + S-perp).
inline Int subspace_count(unsigned n, unsigned m, unsigned q) {
    if (m > n) throw DimensionMismatch("subspace dimension exceeds ambient");
    return exact_div(gu_order(n, q), gu_order(m, q) * gu_order(n - m, q));
}

// Reduced Euler characteristic of the order complex of the poset of proper
// nonzero non-degenerate subspaces: alternating sum over chains, grouped by
// their dimension vectors.
inline Int euler_nondeg_poset(unsigned n, unsigned q) {
    if (n > 20) throw InstanceTooLarge("dimension too large for chain enumeration");
    if (n == 0) return -1;
    Int acc = -1;
    const unsigned top = n;
    // Subsets of {1, .., n-1} as dimension vectors m_1 < ... < m_k.
    for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
        std::vector<unsigned> dims;
        for (unsigned b = 0; b < n - 1; ++b)
            if (mask & (1u << b)) dims.push_back(b + 1);
        Int prod = 1;
        unsigned upper = top;
        for (auto it = dims.rbegin(); it != dims.rend(); ++it) {
            prod *= subspace_count(upper, *it, q);
            upper = *it;
        }
        acc += (dims.size() % 2 == 1) ? prod : -prod;
    }
    return acc;
}

// --- orthogonal decomposition types ---------------------------------------

// A decomposition type is a partition of n, stored descending.
using PartitionType = std::vector<unsigned>;

inline std::vector<PartitionType> all_partitions(unsigned n) {
    std::vector<PartitionType> out;
    PartitionType cur;
    // Descending parts via depth-first search.
    auto rec = [&](auto&& self, unsigned rest, unsigned maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// Orthogonal decompositions of a fixed type: |GU_n| divided by the block
// stabilizer (product of block unitary groups times permutations of equal
// blocks).
inline Int decomp_type_count(unsigned n, unsigned q, const PartitionType& T) {
    unsigned total = 0;
    for (unsigned t : T) {
        if (t == 0) throw DimensionMismatch("partition parts must be positive");
        total += t;
    }
    if (total != n) throw DimensionMismatch("partition does not sum to n");
    Int denom = 1;
    std::map<unsigned, unsigned> mult;
    for (unsigned t : T) {
        denom *= gu_order(t, q);
        ++mult[t];
    }
    for (auto& [part, m] : mult) {
        (void)part;
        denom *= factorial(m);
    }
    return exact_div(gu_order(n, q), denom);
}

namespace detail {

inline PartitionType canon_type(PartitionType T) {
    std::sort(T.begin(), T.end(), std::greater<unsigned>());
    return T;
}

// Number of decompositions of type Tp refining one fixed decomposition of
// type T: a multiset-union convolution of per-block type counts.
inline Int refine_count(unsigned q, const PartitionType& T, const PartitionType& Tp) {
    // States: partial multiset of parts already produced, stored canonically.
    std::map<PartitionType, Int> state;
    state[{}] = 1;
    auto count_in = [&](const PartitionType& whole, const PartitionType& sub) {
        // is sub a sub-multiset of whole?
        std::map<unsigned, int> c;
        for (unsigned x : whole) ++c[x];
        for (unsigned x : sub)
            if (--c[x] < 0) return false;
        return true;
    };
    for (unsigned t : T) {
        std::map<PartitionType, Int> next;
        for (const auto& blockType : all_partitions(t)) {
            Int ways = decomp_type_count(t, q, blockType);
            for (const auto& [acc, cnt] : state) {
                PartitionType merged = acc;
                merged.insert(merged.end(), blockType.begin(), blockType.end());
                merged = canon_type(merged);
                if (!count_in(Tp, merged)) continue;
                next[merged] += cnt * ways;
            }
        }
        state = std::move(next);
    }
    auto it = state.find(canon_type(Tp));
    return it == state.end() ? Int(0) : it->second;
}

}  // namespace detail

// Reduced Euler characteristic of the order complex of the poset of proper
// orthogonal decompositions (refinement order, trivial decomposition
// excluded), computed through the type-level recursion
//   f(T) = -1 - sum over strictly finer types T' of refine_count(T,T')*f(T').
inline Int euler_decomp_poset(unsigned n, unsigned q) {
    auto types = all_partitions(n);
    // Sort by block count descending so dependencies are computed first.
    std::sort(types.begin(), types.end(),
              [](const PartitionType& a, const PartitionType& b) { return a.size() > b.size(); });
    std::map<PartitionType, Int> f;
    for (const auto& T : types) {
        Int v = -1;
        for (const auto& [Tp, fp] : f) {
            if (Tp.size() <= T.size()) continue;
            Int rc = detail::refine_count(q, T, Tp);
            if (rc != 0) v -= rc * fp;
        }
        f[detail::canon_type(T)] = v;
    }
    return f[detail::canon_type(PartitionType{n})];
}

}  // namespace framelab
