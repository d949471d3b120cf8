#pragma once

// Exact and modular linear algebra for the spectral and homology layers.
//
// Rank computations follow a layered policy:
//   * small matrices: dense elimination mod two fixed 62-bit primes,
//     escalating to fraction-free (Bareiss) elimination on disagreement;
//   * large sparse matrices: left-looking sparse elimination with a fill
//     budget, falling back to a Wiedemann sequence bound when fill explodes;
//   * GF(2): bit-packed elimination, with a randomized compression stage for
//     very wide matrices whose result is certified exactly afterwards.
//
// A rank computed mod p never exceeds the rational rank, so modular results
// that reach a structural upper bound are exact, not just probable.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace framelab {

// ---------------------------------------------------------------------------
// Modular scalar arithmetic.
// ---------------------------------------------------------------------------

// Two fixed 62-bit primes (2^62 - 57 and 2^62 - 87); primality is re-checked
// by the test suite with a deterministic Miller-Rabin witness set.
inline constexpr std::uint64_t kPrime1 = 4611686018427387847ull;
inline constexpr std::uint64_t kPrime2 = 4611686018427387817ull;

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;           // a,b < p < 2^63, no overflow
    return s >= p ? s - p : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw DivisionByZero("inverse of zero mod p");
    return pow_mod(a, p - 2, p);
}

// Reduce a (possibly negative) big integer mod p into [0, p).
inline std::uint64_t int_mod(const Int& v, std::uint64_t p) {
    Int r = v % Int(p);
    if (r < 0) r += Int(p);
    return r.convert_to<std::uint64_t>();
}

inline std::uint64_t i64_mod(std::int64_t v, std::uint64_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r);
}

// Deterministic Miller-Rabin, exact for all 64-bit inputs with this witness
// set.  Used by the tests to pin down kPrime1/kPrime2.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i + 1 < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Deterministic pseudo-random stream (splitmix64).  All randomized routines
// take explicit seeds so reports stay byte-identical across runs.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, p), p < 2^63.
    std::uint64_t next_mod(std::uint64_t p) { return next() % p; }

    std::uint64_t next_nonzero_mod(std::uint64_t p) {
        std::uint64_t v;
        do { v = next() % p; } while (v == 0);
        return v;
    }
};

// ---------------------------------------------------------------------------
// Sparse matrices (column major, small integer entries).
// ---------------------------------------------------------------------------

struct SparseMat {
    std::uint32_t rows = 0;
    // cols[j] = sorted list of (row, value), value != 0.
    std::vector<std::vector<std::pair<std::uint32_t, std::int32_t>>> cols;

    std::uint32_t ncols() const { return static_cast<std::uint32_t>(cols.size()); }

    std::size_t nnz() const {
        std::size_t t = 0;
        for (const auto& c : cols) t += c.size();
        return t;
    }

    SparseMat transposed() const {
        SparseMat t;
        t.rows = ncols();
        t.cols.resize(rows);
        for (std::uint32_t j = 0; j < ncols(); ++j)
            for (auto [i, v] : cols[j])
                t.cols[i].push_back({j, v});
        return t;
    }
};

// ---------------------------------------------------------------------------
// Dense rank mod p.
// ---------------------------------------------------------------------------

// In-place row reduction of a dense matrix with entries in [0, p).
inline unsigned rank_dense_mod(std::vector<std::vector<std::uint64_t>>& m,
                               std::uint64_t p) {
    if (m.empty()) return 0;
    const std::size_t nr = m.size(), nc = m[0].size();
    unsigned rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv = nr;
        for (std::size_t i = rank; i < nr; ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv == nr) continue;
        std::swap(m[rank], m[piv]);
        const std::uint64_t inv = inv_mod(m[rank][col], p);
        for (std::size_t j = col; j < nc; ++j)
            m[rank][j] = mul_mod(m[rank][j], inv, p);
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            const std::uint64_t f = m[i][col];
            for (std::size_t j = col; j < nc; ++j)
                m[i][j] = sub_mod(m[i][j], mul_mod(f, m[rank][j], p), p);
        }
        ++rank;
    }
    return rank;
}

inline unsigned rank_dense_mod(const SparseMat& a, std::uint64_t p) {
    // Orient so rows are the short side; rank is orientation-independent.
    const bool flip = a.rows > a.ncols();
    const SparseMat& m = a;
    std::size_t nr = flip ? a.ncols() : a.rows;
    std::size_t nc = flip ? a.rows : a.ncols();
    std::vector<std::vector<std::uint64_t>> d(nr,
        std::vector<std::uint64_t>(nc, 0));
    for (std::uint32_t j = 0; j < m.ncols(); ++j)
        for (auto [i, v] : m.cols[j]) {
            const std::uint64_t val = i64_mod(v, p);
            if (flip) d[j][i] = val; else d[i][j] = val;
        }
    return rank_dense_mod(d, p);
}

// ---------------------------------------------------------------------------
// Sparse elimination mod p (left-looking, deterministic).
// ---------------------------------------------------------------------------

// Inserts columns one at a time into a growing echelon basis.  Reduced pivot
// columns can only reference pivots created after them, so a single pass over
// pivots in creation order fully reduces a new column.  Throws
// InstanceTooLarge when stored fill exceeds the entry budget.
inline unsigned rank_sparse_elim_mod(const SparseMat& a, std::uint64_t p,
                                     std::size_t max_fill = 150000000) {
    const std::uint32_t nr = a.rows;
    std::vector<std::uint32_t> pivot_of_row(nr, UINT32_MAX);
    // Stored reduced columns in creation order: (pivot row, sparse entries).
    std::vector<std::uint32_t> pivot_row;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> stored;
    std::size_t fill = 0;

    std::vector<std::uint64_t> work(nr, 0);
    std::vector<std::uint32_t> touched;
    touched.reserve(1024);

    for (std::uint32_t j = 0; j < a.ncols(); ++j) {
        for (auto [i, v] : a.cols[j]) {
            if (work[i] == 0) touched.push_back(i);
            work[i] = add_mod(work[i], i64_mod(v, p), p);
        }
        // Reduce against pivots in creation order.
        for (std::size_t k = 0; k < stored.size(); ++k) {
            const std::uint32_t r = pivot_row[k];
            const std::uint64_t f = work[r];
            if (f == 0) continue;
            for (auto [i, v] : stored[k]) {
                if (work[i] == 0) touched.push_back(i);
                work[i] = sub_mod(work[i], mul_mod(f, v, p), p);
            }
            work[r] = 0;
        }
        // Pick the smallest remaining nonzero row as the new pivot.
        std::uint32_t piv = UINT32_MAX;
        for (std::uint32_t r : touched)
            if (work[r] != 0 && r < piv) piv = r;
        if (piv != UINT32_MAX) {
            const std::uint64_t inv = inv_mod(work[piv], p);
            std::vector<std::pair<std::uint32_t, std::uint64_t>> col;
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()),
                          touched.end());
            for (std::uint32_t r : touched)
                if (work[r] != 0 && r != piv)
                    col.push_back({r, mul_mod(work[r], inv, p)});
            fill += col.size() + 1;
            if (fill > max_fill)
                throw InstanceTooLarge("sparse elimination fill budget exceeded");
            pivot_of_row[piv] = static_cast<std::uint32_t>(stored.size());
            pivot_row.push_back(piv);
            stored.push_back(std::move(col));
        }
        for (std::uint32_t r : touched) work[r] = 0;
        touched.clear();
    }
    return static_cast<unsigned>(stored.size());
}

// ---------------------------------------------------------------------------
// Berlekamp-Massey and Wiedemann rank bounds mod p.
// ---------------------------------------------------------------------------

// Minimal generator of a linearly recurrent sequence over F_p.  Returns the
// coefficient vector c (monic, c[0..d], c[d] = 1) with
// sum_k c[k] * s[i+k] = 0 for all valid i.
inline std::vector<std::uint64_t> berlekamp_massey(
    const std::vector<std::uint64_t>& s, std::uint64_t p) {
    std::vector<std::uint64_t> C{1}, B{1};
    std::uint64_t b = 1;
    std::size_t L = 0, m = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        std::uint64_t d = s[n];
        for (std::size_t i = 1; i < C.size() && i <= n; ++i)
            d = add_mod(d, mul_mod(C[i], s[n - i], p), p);
        if (d == 0) {
            ++m;
        } else if (2 * L <= n) {
            std::vector<std::uint64_t> T = C;
            const std::uint64_t coef = mul_mod(d, inv_mod(b, p), p);
            if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
            for (std::size_t i = 0; i < B.size(); ++i)
                C[i + m] = sub_mod(C[i + m], mul_mod(coef, B[i], p), p);
            L = n + 1 - L;
            B = std::move(T);
            b = d;
            m = 1;
        } else {
            const std::uint64_t coef = mul_mod(d, inv_mod(b, p), p);
            if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
            for (std::size_t i = 0; i < B.size(); ++i)
                C[i + m] = sub_mod(C[i + m], mul_mod(coef, B[i], p), p);
            ++m;
        }
    }
    // C is stored reversed relative to the usual connection polynomial; the
    // recurrence s[n] = -sum_{i>=1} C[i] s[n-i] holds as written.  Convert to
    // the monic generator g(x) = x^L + C[1] x^{L-1} + ... + C[L].
    if (C.size() < L + 1) C.resize(L + 1, 0);
    std::vector<std::uint64_t> g(L + 1);
    g[L] = 1;
    for (std::size_t i = 1; i <= L; ++i) g[L - i] = C[i];
    return g;  // g[k] = coefficient of x^k
}

namespace detail {

// y := M x  (y over rows), entries are small signed ints.
inline void spmv(const SparseMat& m, const std::vector<std::uint64_t>& x,
                 std::vector<std::uint64_t>& y, std::uint64_t p) {
    std::fill(y.begin(), y.end(), 0);
    for (std::uint32_t j = 0; j < m.ncols(); ++j) {
        const std::uint64_t xj = x[j];
        if (xj == 0) continue;
        for (auto [i, v] : m.cols[j]) {
            if (v == 1) y[i] = add_mod(y[i], xj, p);
            else if (v == -1) y[i] = sub_mod(y[i], xj, p);
            else y[i] = add_mod(y[i], mul_mod(i64_mod(v, p), xj, p), p);
        }
    }
}

// y := M^T x  (y over columns).
inline void spmv_t(const SparseMat& m, const std::vector<std::uint64_t>& x,
                   std::vector<std::uint64_t>& y, std::uint64_t p) {
    y.assign(m.ncols(), 0);
    for (std::uint32_t j = 0; j < m.ncols(); ++j) {
        std::uint64_t acc = 0;
        for (auto [i, v] : m.cols[j]) {
            if (v == 1) acc = add_mod(acc, x[i], p);
            else if (v == -1) acc = sub_mod(acc, x[i], p);
            else acc = add_mod(acc, mul_mod(i64_mod(v, p), x[i], p), p);
        }
        y[j] = acc;
    }
}

}  // namespace detail

// Sound lower bound on rank(M) mod p from the minimal generator of a
// projected Krylov sequence of B = D1 M D2^2 M^T D1 (symmetric, same rank as
// M for invertible diagonals).  The Berlekamp-Massey output divides the true
// minimal polynomial of B, and rank(B) >= deg(g) - [g(0) = 0], so the result
// never exceeds the true rank.  With the given 62-bit primes it equals the
// rank except with negligible probability; callers certify exactness against
// structural upper bounds.
inline unsigned rank_wiedemann_lower(const SparseMat& a, std::uint64_t p,
                                     std::uint64_t seed,
                                     std::uint32_t degree_bound) {
    const bool flip = a.rows > a.ncols();
    const SparseMat m = flip ? a.transposed() : a;
    const std::uint32_t nr = m.rows, nc = m.ncols();
    const std::uint32_t bound = std::min(degree_bound, nr);

    SplitMix64 rng(seed);
    std::vector<std::uint64_t> d1(nr), d2sq(nc), u(nr), w(nr);
    for (auto& x : d1) x = rng.next_nonzero_mod(p);
    for (auto& x : d2sq) {
        const std::uint64_t t = rng.next_nonzero_mod(p);
        x = mul_mod(t, t, p);
    }
    for (auto& x : u) x = rng.next_mod(p);
    for (auto& x : w) x = rng.next_mod(p);

    const std::size_t len = 2 * (static_cast<std::size_t>(bound) + 1) + 4;
    std::vector<std::uint64_t> seq(len), tmp_c, tmp_r(nr);
    for (std::size_t step = 0; step < len; ++step) {
        std::uint64_t dot = 0;
        for (std::uint32_t i = 0; i < nr; ++i)
            dot = add_mod(dot, mul_mod(u[i], w[i], p), p);
        seq[step] = dot;
        if (step + 1 == len) break;
        // w := D1 M D2^2 M^T D1 w
        for (std::uint32_t i = 0; i < nr; ++i) tmp_r[i] = mul_mod(d1[i], w[i], p);
        detail::spmv_t(m, tmp_r, tmp_c, p);
        for (std::uint32_t j = 0; j < nc; ++j) tmp_c[j] = mul_mod(d2sq[j], tmp_c[j], p);
        detail::spmv(m, tmp_c, tmp_r, p);
        for (std::uint32_t i = 0; i < nr; ++i) w[i] = mul_mod(d1[i], tmp_r[i], p);
    }

    const std::vector<std::uint64_t> g = berlekamp_massey(seq, p);
    const std::size_t deg = g.size() - 1;
    if (deg == 0) return 0;
    return static_cast<unsigned>(deg - (g[0] == 0 ? 1 : 0));
}

// ---------------------------------------------------------------------------
// GF(2) ranks (bit-packed).
// ---------------------------------------------------------------------------

namespace detail {

struct BitRows {
    std::size_t width = 0, words = 0;
    std::vector<std::uint64_t> data;

    BitRows(std::size_t nrows, std::size_t w)
        : width(w), words((w + 63) / 64), data(nrows * words, 0) {}

    std::uint64_t* row(std::size_t i) { return data.data() + i * words; }
    const std::uint64_t* row(std::size_t i) const { return data.data() + i * words; }

    void set(std::size_t i, std::size_t bit) {
        row(i)[bit >> 6] ^= (1ull << (bit & 63));
    }
    bool get(std::size_t i, std::size_t bit) const {
        return (row(i)[bit >> 6] >> (bit & 63)) & 1;
    }
};

// Plain row reduction over GF(2); returns rank.  Destroys m.
inline unsigned bitrows_rank(BitRows& m, std::size_t nrows) {
    unsigned rank = 0;
    const std::size_t words = m.words;
    for (std::size_t col = 0; col < m.width && rank < nrows; ++col) {
        const std::size_t w = col >> 6;
        const std::uint64_t mask = 1ull << (col & 63);
        std::size_t piv = nrows;
        for (std::size_t i = rank; i < nrows; ++i)
            if (m.row(i)[w] & mask) { piv = i; break; }
        if (piv == nrows) continue;
        if (piv != rank)
            for (std::size_t k = 0; k < words; ++k)
                std::swap(m.row(rank)[k], m.row(piv)[k]);
        const std::uint64_t* pr = m.row(rank);
        for (std::size_t i = rank + 1; i < nrows; ++i) {
            std::uint64_t* ri = m.row(i);
            if (ri[w] & mask)
                for (std::size_t k = w; k < words; ++k) ri[k] ^= pr[k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

struct Mod2RankResult {
    unsigned rank = 0;
    bool exact = true;       // false only if certification failed
    std::string method;
};

namespace detail {

// Dense GF(2) elimination with 16-column panels and two 8-bit combination
// tables per panel ("four Russians" style).  Produces row echelon form on the
// first elim_width columns: after completion, every row below the final rank
// is zero on all of those columns, so the augmented tail of each zero row is
// a left null-space combination.  Returns the rank.
inline unsigned bitrows_rank_m4ri(BitRows& m, std::size_t nrows,
                                  std::size_t elim_width) {
    const std::size_t words = m.words;
    unsigned rank = 0;
    std::vector<std::uint64_t> table((1u << 8) * words);
    std::vector<std::uint64_t> table2((1u << 8) * words);
    std::vector<std::size_t> pivcols;

    auto strip_bit = [&](const std::uint64_t* row, std::size_t lo,
                         std::size_t hi_excl) -> std::size_t {
        // Lowest set bit of the row within [lo, hi_excl), or SIZE_MAX.
        std::size_t w = lo >> 6;
        const std::size_t wend = (hi_excl + 63) >> 6;
        std::uint64_t cur = row[w] & ~((1ull << (lo & 63)) - 1);
        while (true) {
            if (cur) {
                const std::size_t bit = (w << 6) +
                    static_cast<std::size_t>(__builtin_ctzll(cur));
                return bit < hi_excl ? bit : SIZE_MAX;
            }
            if (++w >= wend) return SIZE_MAX;
            cur = row[w];
        }
    };

    std::size_t col = 0;
    while (col < elim_width && rank < nrows) {
        const std::size_t panel_end = std::min(col + 16, elim_width);
        const std::size_t panel_width = panel_end - col;
        pivcols.clear();
        const std::size_t panel_base = rank;

        // Scan phase: walk rows below the current rank, reducing each against
        // the pivots already found in this panel, and promote rows that still
        // have a bit in the strip.  Stops once the strip is fully pivoted.
        for (std::size_t i = rank; i < nrows && pivcols.size() < panel_width; ++i) {
            std::uint64_t* ri = m.row(i);
            for (std::size_t t = 0; t < pivcols.size(); ++t) {
                if ((ri[pivcols[t] >> 6] >> (pivcols[t] & 63)) & 1) {
                    const std::uint64_t* pr = m.row(panel_base + t);
                    for (std::size_t k = 0; k < words; ++k) ri[k] ^= pr[k];
                }
            }
            const std::size_t c = strip_bit(ri, col, panel_end);
            if (c == SIZE_MAX) continue;
            if (i != rank)
                for (std::size_t k = 0; k < words; ++k)
                    std::swap(m.row(rank)[k], m.row(i)[k]);
            pivcols.push_back(c);
            ++rank;
        }
        const std::size_t np = pivcols.size();
        if (np == 0) { col = panel_end; continue; }

        // Pivot row t is already reduced against pivots 0..t-1; clear its
        // bits at later pivot columns so the block is the identity on the
        // pivot columns.
        for (std::size_t a = np - 1; a-- > 0;) {
            std::uint64_t* ra = m.row(panel_base + a);
            for (std::size_t b = a + 1; b < np; ++b) {
                if ((ra[pivcols[b] >> 6] >> (pivcols[b] & 63)) & 1) {
                    const std::uint64_t* rb = m.row(panel_base + b);
                    for (std::size_t k = 0; k < words; ++k) ra[k] ^= rb[k];
                }
            }
        }

        // Combination tables over the panel pivot rows.
        const std::size_t lo = std::min<std::size_t>(np, 8), hi = np - lo;
        std::fill(table.begin(), table.begin() + (std::size_t(1) << lo) * words, 0);
        for (std::size_t bits = 1; bits < (std::size_t(1) << lo); ++bits) {
            const std::size_t lsb = bits & (~bits + 1);
            const std::size_t idx = static_cast<std::size_t>(__builtin_ctzll(lsb));
            std::uint64_t* dst = table.data() + bits * words;
            const std::uint64_t* src = table.data() + (bits ^ lsb) * words;
            const std::uint64_t* pr = m.row(panel_base + idx);
            for (std::size_t k = 0; k < words; ++k) dst[k] = src[k] ^ pr[k];
        }
        if (hi > 0) {
            std::fill(table2.begin(), table2.begin() + (std::size_t(1) << hi) * words, 0);
            for (std::size_t bits = 1; bits < (std::size_t(1) << hi); ++bits) {
                const std::size_t lsb = bits & (~bits + 1);
                const std::size_t idx = lo + static_cast<std::size_t>(__builtin_ctzll(lsb));
                std::uint64_t* dst = table2.data() + bits * words;
                const std::uint64_t* src = table2.data() + (bits ^ lsb) * words;
                const std::uint64_t* pr = m.row(panel_base + idx);
                for (std::size_t k = 0; k < words; ++k) dst[k] = src[k] ^ pr[k];
            }
        }

        // Table pass: eliminate the panel columns from every row below with
        // at most two wide XORs per row.  Rows already reduced in the scan
        // phase have zero bits at the pivot columns, so this is a no-op for
        // them.
        const std::size_t start_word = col >> 6;
        for (std::size_t i = rank; i < nrows; ++i) {
            std::uint64_t* ri = m.row(i);
            std::size_t bits = 0;
            for (std::size_t t = 0; t < np; ++t)
                bits |= static_cast<std::size_t>(
                            (ri[pivcols[t] >> 6] >> (pivcols[t] & 63)) & 1) << t;
            if (bits == 0) continue;
            const std::uint64_t* t1 =
                table.data() + (bits & ((std::size_t(1) << lo) - 1)) * words;
            for (std::size_t k = start_word; k < words; ++k) ri[k] ^= t1[k];
            if (hi > 0 && (bits >> lo) != 0) {
                const std::uint64_t* t2 = table2.data() + (bits >> lo) * words;
                for (std::size_t k = start_word; k < words; ++k) ri[k] ^= t2[k];
            }
        }
        col = panel_end;
    }
    return rank;
}

}  // namespace detail

// Exact GF(2) rank.  Small matrices are reduced directly.  For very wide
// matrices the columns are first compressed into (short side + pad) random
// combinations; the compressed rank is a lower bound, and an explicit
// null-space certificate verified against the original matrix provides the
// matching upper bound.  Certification failure (negligible probability) is
// reported via exact = false with the sound lower bound.
inline Mod2RankResult rank_mod2(const SparseMat& a,
                                std::size_t direct_bit_limit = (1u << 25),
                                std::uint64_t seed = 0x5eedf00dd00full) {
    Mod2RankResult out;
    const bool flip = a.rows > a.ncols();
    const SparseMat m = flip ? a.transposed() : a;
    const std::uint32_t width = m.rows;           // short side
    const std::uint32_t nvec = m.ncols();

    if (static_cast<std::size_t>(width) * nvec <= direct_bit_limit) {
        detail::BitRows rows(nvec, width);
        for (std::uint32_t j = 0; j < nvec; ++j)
            for (auto [i, v] : m.cols[j])
                if (v & 1) rows.set(j, i);
        out.rank = detail::bitrows_rank(rows, nvec);
        out.exact = true;
        out.method = "dense-gf2";
        return out;
    }

    // Compressed path.  C = M X with X random over GF(2), X: nvec x (width+pad).
    const std::uint32_t pad = 192;
    const std::size_t cw = width + pad;           // compressed width (columns)
    detail::BitRows c(width, cw + width);         // augmented with identity
    {
        const std::size_t xw = (cw + 63) / 64;
        std::vector<std::uint64_t> xrow(xw);
        for (std::uint32_t j = 0; j < nvec; ++j) {
            bool any = false;
            for (auto [i, v] : m.cols[j])
                if (v & 1) { any = true; break; }
            if (!any) continue;
            // X row for column j, derived from the seed and j only.
            SplitMix64 row_rng(seed ^ (0x9e3779b97f4a7c15ull * (j + 1)));
            for (std::size_t k = 0; k < xw; ++k) xrow[k] = row_rng.next();
            for (auto [i, v] : m.cols[j]) {
                if (!(v & 1)) continue;
                std::uint64_t* dst = c.row(i);
                for (std::size_t k = 0; k < xw; ++k) dst[k] ^= xrow[k];
            }
        }
        for (std::uint32_t i = 0; i < width; ++i) c.set(i, cw + i);
    }

    const unsigned r = detail::bitrows_rank_m4ri(c, width, cw);
    out.rank = r;
    out.method = "compressed-gf2";

    // Certify: each zero row's augmented part is a left null vector candidate
    // for the original matrix; verify exactly.
    const std::size_t aug_word0 = cw >> 6;
    std::size_t verified = 0;
    for (std::uint32_t i = r; i < width; ++i) {
        // Compressed part must be zero.
        bool zero = true;
        const std::uint64_t* row = c.row(i);
        for (std::size_t k = 0; k < aug_word0; ++k)
            if (row[k]) { zero = false; break; }
        if (zero && (cw & 63)) {
            const std::uint64_t mask = (1ull << (cw & 63)) - 1;
            if (row[aug_word0] & mask) zero = false;
        }
        if (!zero) continue;
        // y^T M == 0 over GF(2)?
        bool ok = true;
        for (std::uint32_t j = 0; j < nvec && ok; ++j) {
            unsigned parity = 0;
            for (auto [ri, v] : m.cols[j])
                if (v & 1) parity ^= static_cast<unsigned>(
                    (row[(cw + ri) >> 6] >> ((cw + ri) & 63)) & 1);
            if (parity) ok = false;
        }
        if (ok) ++verified;
    }
    // Row reduction keeps the row space of [C | I]; the i >= r rows span the
    // left null space of C.  If all of them verify against M, the rank upper
    // bound width - verified meets the lower bound r.
    out.exact = (verified == width - r);
    return out;
}

// ---------------------------------------------------------------------------
// Exact elimination over the integers.
// ---------------------------------------------------------------------------

// Fraction-free Gaussian elimination (Bareiss).  Returns the rank.
inline unsigned bareiss_rank(std::vector<std::vector<Int>> m) {
    if (m.empty()) return 0;
    const std::size_t nr = m.size(), nc = m[0].size();
    unsigned rank = 0;
    Int prev = 1;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv = nr;
        for (std::size_t i = rank; i < nr; ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv == nr) continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            for (std::size_t j = col + 1; j < nc; ++j)
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

// Smith normal form elementary divisors (nonzero ones, in divisibility
// order).  Dense, integer-exact; intended for small matrices.
inline std::vector<Int> snf_divisors(std::vector<std::vector<Int>> m) {
    std::vector<Int> divs;
    if (m.empty() || m[0].empty()) return divs;
    std::size_t nr = m.size(), nc = m[0].size();
    std::size_t t = 0;
    while (t < nr && t < nc) {
        // Find the entry of smallest nonzero magnitude in the trailing block.
        std::size_t pi = nr, pj = nc;
        Int best = 0;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j) {
                if (m[i][j] == 0) continue;
                Int mag = abs(m[i][j]);
                if (best == 0 || mag < best) { best = mag; pi = i; pj = j; }
            }
        if (pi == nr) break;
        std::swap(m[t], m[pi]);
        for (std::size_t i = t; i < nr; ++i) std::swap(m[i][t], m[i][pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (m[i][t] == 0) continue;
                Int qq = m[i][t] / m[t][t];
                for (std::size_t j = t; j < nc; ++j) m[i][j] -= qq * m[t][j];
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (m[t][j] == 0) continue;
                Int qq = m[t][j] / m[t][t];
                for (std::size_t i = t; i < nr; ++i) m[i][j] -= qq * m[i][t];
                if (m[t][j] != 0) {
                    for (std::size_t i = t; i < nr; ++i) std::swap(m[i][t], m[i][j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Divisibility fix-up: the pivot must divide every trailing entry.
            for (std::size_t i = t + 1; i < nr && clean; ++i)
                for (std::size_t j = t + 1; j < nc && clean; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (std::size_t jj = t; jj < nc; ++jj) m[t][jj] += m[i][jj];
                        clean = false;
                    }
        }
        if (m[t][t] < 0)
            for (std::size_t j = t; j < nc; ++j) m[t][j] = -m[t][j];
        divs.push_back(m[t][t]);
        ++t;
    }
    return divs;
}

inline std::vector<Int> snf_divisors(const SparseMat& a,
                                     std::size_t dense_limit = 4000000) {
    if (static_cast<std::size_t>(a.rows) * a.ncols() > dense_limit)
        throw InstanceTooLarge("matrix too large for dense Smith normal form");
    std::vector<std::vector<Int>> d(a.rows, std::vector<Int>(a.ncols(), 0));
    for (std::uint32_t j = 0; j < a.ncols(); ++j)
        for (auto [i, v] : a.cols[j]) d[i][j] = v;
    return snf_divisors(std::move(d));
}

// ---------------------------------------------------------------------------
// Rational rank orchestration.
// ---------------------------------------------------------------------------

struct RankOptions {
    std::size_t dense_limit = 1200;      // short side at or below: dense mod p
    std::size_t fill_cap = 150000000;    // sparse elimination entry budget
    std::size_t exact_limit = 400;       // short side at or below: Bareiss escalation
    // Structural upper bound on the rank, if the caller knows one (for
    // boundary matrices: the kernel dimension of the previous boundary).
    std::uint32_t structural_max = UINT32_MAX;
    std::uint64_t seed = 0x57ab1e5eed5ull;
};

struct RankResult {
    unsigned rank = 0;
    // True when the result is a proven rational rank: a modular rank that
    // reached a structural bound, or an integer-exact elimination.
    bool certified = false;
    std::string method;
};

inline RankResult rank_rational(const SparseMat& a, const RankOptions& opt = {}) {
    RankResult res;
    const std::uint32_t short_side = std::min(a.rows, a.ncols());
    const std::uint32_t cap = std::min<std::uint32_t>(short_side, opt.structural_max);
    if (short_side == 0 || a.nnz() == 0) {
        res.rank = 0;
        res.certified = true;
        res.method = "empty";
        return res;
    }

    auto certify = [&](unsigned r, const char* method_two_prime) {
        res.rank = r;
        if (r == cap) {
            res.certified = true;
            res.method = std::string(method_two_prime) + "+structural";
        } else {
            res.certified = false;
            res.method = method_two_prime;
        }
    };

    if (short_side <= opt.dense_limit) {
        const unsigned r1 = rank_dense_mod(a, kPrime1);
        if (r1 == cap) { certify(r1, "dense-mod-p"); return res; }
        const unsigned r2 = rank_dense_mod(a, kPrime2);
        if (r1 == r2) { certify(r1, "dense-mod-p-x2"); return res; }
        if (short_side <= opt.exact_limit) {
            std::vector<std::vector<Int>> d(a.rows, std::vector<Int>(a.ncols(), 0));
            for (std::uint32_t j = 0; j < a.ncols(); ++j)
                for (auto [i, v] : a.cols[j]) d[i][j] = v;
            res.rank = bareiss_rank(std::move(d));
            res.certified = true;
            res.method = "bareiss";
            return res;
        }
        throw PrimeCollision("dense modular ranks disagree and the matrix is too large for exact elimination");
    }

    try {
        const unsigned r1 = rank_sparse_elim_mod(a, kPrime1, opt.fill_cap);
        if (r1 == cap) { certify(r1, "sparse-elim-mod-p"); return res; }
        const unsigned r2 = rank_sparse_elim_mod(a, kPrime2, opt.fill_cap);
        if (r1 == r2) { certify(r1, "sparse-elim-mod-p-x2"); return res; }
        throw PrimeCollision("sparse modular ranks disagree and the matrix is too large for exact elimination");
    } catch (const InstanceTooLarge&) {
        // Fall through to the sequence bound.
    }

    const unsigned r1 = rank_wiedemann_lower(a, kPrime1, opt.seed, cap + 1);
    if (r1 == cap) { certify(r1, "wiedemann"); return res; }
    const unsigned r2 = rank_wiedemann_lower(a, kPrime2, opt.seed ^ 0xabcdef123ull, cap + 1);
    if (r2 == cap) { certify(r2, "wiedemann"); return res; }
    if (r1 == r2) { certify(r1, "wiedemann-x2"); return res; }
    certify(std::max(r1, r2), "wiedemann-max");
    return res;
}

}  // namespace framelab
