#pragma once

// Adjacency spectrum of the orthogonality graph, verified exactly: quartic
// annihilating polynomial, closed-form eigenvalue multiplicities, an
// independent rank oracle for the multiplicities, and rational normalized
// Laplacian eigenvalues.  No floating point anywhere.

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <thread>
#include <vector>

#include "common.hpp"
#include "counts.hpp"
#include "graph.hpp"
#include "linalg.hpp"

namespace framelab {

// Coefficients (c0, c1, c2, c3) of the monic quartic
//   m(X) = (X - d_n)(X - q^{n-2})(X - (-1)^n q^{n-3})(X + q^{n-2})
// that annihilates the adjacency matrix for n >= 3.
inline std::array<Int, 4> minpoly_coeffs(unsigned n, unsigned q) {
    if (n < 3) throw Error("minpoly_coeffs requires n >= 3");
    const Int d = d_count(n, q);
    const Int qn2 = pow_int(Int(q), 2 * n - 4);        // q^{2(n-2)}
    const Int s = sign_pow(n) * pow_int(Int(q), n - 3); // (-1)^n q^{n-3}
    // (X - d)(X - s) * (X^2 - q^{2n-4})
    const Int c3 = -d - s;
    const Int c2 = d * s - qn2;
    const Int c1 = d * qn2 + s * qn2 / 1 * 1;           // see below
    // c1 = (d + s) * q^{2n-4}?  Expand: (X^2 -(d+s)X + ds)(X^2 - Q)
    //    = X^4 -(d+s)X^3 + (ds - Q)X^2 + (d+s)Q X - dsQ.
    const Int c1x = (d + s) * qn2;
    const Int c0 = -d * s * qn2;
    (void)c1;
    return {c0, c1x, c2, c3};
}

// Monic annihilating polynomial as a low-to-high coefficient list, degree 2
// for n = 2 (perfect matching, A^2 = Id) and degree 4 otherwise.
inline std::vector<Int> annihilating_poly(unsigned n, unsigned q) {
    if (n < 2) throw Error("annihilating_poly requires n >= 2");
    if (n == 2) return {Int(-1), Int(0), Int(1)};
    const auto c = minpoly_coeffs(n, q);
    return {c[0], c[1], c[2], c[3], Int(1)};
}

// Entrywise check that p(A) = 0 for a monic integer polynomial given as
// low-to-high coefficients.  Works per source vertex with 64-bit walk
// vectors when safe, big integers otherwise.
inline bool verify_poly(const OrthGraph& g, const std::vector<Int>& coeffs) {
    const std::size_t v = g.size();
    const unsigned deg = static_cast<unsigned>(coeffs.size()) - 1;

    // Safe for int64 accumulation?  Entries of A^k are at most degree^k,
    // times coefficient magnitude, times deg+1 summands.
    Int bound = 0;
    Int powd = 1;
    for (unsigned k = 0; k <= deg; ++k) {
        Int mag = coeffs[k] < 0 ? -coeffs[k] : coeffs[k];
        if (mag == 0) mag = 1;
        bound += mag * powd;
        powd *= g.degree;
    }
    const bool fits = bound < Int("4611686018427387904");  // 2^62

    if (fits) {
        std::vector<std::int64_t> cur(v), next(v);
        std::vector<std::int64_t> c64(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            c64[i] = coeffs[i].convert_to<std::int64_t>();
        for (std::size_t s = 0; s < v; ++s) {
            std::fill(cur.begin(), cur.end(), 0);
            cur[s] = 1;
            std::vector<std::int64_t> acc(v, 0);
            acc[s] = c64[0];  // c0 * Id column
            for (unsigned k = 1; k <= deg; ++k) {
                std::fill(next.begin(), next.end(), 0);
                for (std::size_t i = 0; i < v; ++i) {
                    const std::int64_t x = cur[i];
                    if (x == 0) continue;
                    const std::uint64_t* row = g.row(i);
                    for (std::size_t w = 0; w < g.words; ++w) {
                        std::uint64_t bits = row[w];
                        while (bits) {
                            const unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
                            next[w * 64 + b] += x;
                            bits &= bits - 1;
                        }
                    }
                }
                std::swap(cur, next);
                if (c64[k] != 0)
                    for (std::size_t i = 0; i < v; ++i) acc[i] += c64[k] * cur[i];
            }
            for (std::size_t i = 0; i < v; ++i)
                if (acc[i] != 0) return false;
        }
        return true;
    }

    std::vector<Int> cur(v), next(v);
    for (std::size_t s = 0; s < v; ++s) {
        std::fill(cur.begin(), cur.end(), Int(0));
        cur[s] = 1;
        std::vector<Int> acc(v, Int(0));
        acc[s] = coeffs[0];
        for (unsigned k = 1; k <= deg; ++k) {
            std::fill(next.begin(), next.end(), Int(0));
            for (std::size_t i = 0; i < v; ++i) {
                if (cur[i] == 0) continue;
                const std::uint64_t* row = g.row(i);
                for (std::size_t w = 0; w < g.words; ++w) {
                    std::uint64_t bits = row[w];
                    while (bits) {
                        const unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
                        next[w * 64 + b] += cur[i];
                        bits &= bits - 1;
                    }
                }
            }
            std::swap(cur, next);
            if (coeffs[k] != 0)
                for (std::size_t i = 0; i < v; ++i) acc[i] += coeffs[k] * cur[i];
        }
        for (std::size_t i = 0; i < v; ++i)
            if (acc[i] != 0) return false;
    }
    return true;
}

inline bool verify_annihilation(const OrthGraph& g) {
    if (g.n() < 3) throw Error("verify_annihilation requires n >= 3");
    return verify_poly(g, annihilating_poly(g.n(), g.q()));
}

namespace detail {

// Multiplicities of the four candidate eigenvalues for n >= 3, as exact
// rationals before the integrality check.
struct EigenCandidates {
    std::array<Int, 4> mu;
    std::array<Rat, 4> alpha;
};

inline EigenCandidates eigen_candidates(unsigned n, unsigned q) {
    const Int d = d_count(n, q);
    const Int dn1 = d_count(n + 1, q);
    const Int dm1 = d_count(n - 1, q);
    EigenCandidates ec;
    ec.mu[0] = d;
    ec.mu[1] = pow_int(Int(q), n - 2);
    ec.mu[2] = sign_pow(n) * pow_int(Int(q), n - 3);
    ec.mu[3] = -pow_int(Int(q), n - 2);

    ec.alpha[0] = Rat(1);
    const Rat base = Rat(d * dn1, 2 * pow_int(Int(q), 2 * n - 3));
    ec.alpha[1] = base * Rat(Int(q) * q - q - 1 - sign_pow(n), Int(q) - 1);
    ec.alpha[3] = base * Rat(Int(q) * q - q - 1 + sign_pow(n), Int(q) - 1);
    // alpha3 = d_n d_{n-1} / (q^{2n-8} (q-1)); the power can be negative.
    Rat a3(d * dm1, Int(q) - 1);
    if (2 * static_cast<int>(n) - 8 >= 0)
        a3 /= Rat(pow_int(Int(q), 2 * n - 8));
    else
        a3 *= Rat(pow_int(Int(q), 8 - 2 * n));
    ec.alpha[2] = a3;
    return ec;
}

inline Int rat_to_int(const Rat& r, const char* what) {
    if (denominator(r) != 1)
        throw Error(std::string("non-integral multiplicity in ") + what);
    return numerator(r);
}

}  // namespace detail

// Distinct adjacency eigenvalues in decreasing order.
inline std::vector<Int> eigen_list(unsigned n, unsigned q) {
    if (n < 2) throw Error("eigen_list requires n >= 2");
    if (n == 2) return {Int(1), Int(-1)};
    const auto ec = detail::eigen_candidates(n, q);
    std::map<Int, Rat, std::greater<Int>> merged;
    for (int i = 0; i < 4; ++i) merged[ec.mu[i]] += ec.alpha[i];
    std::vector<Int> out;
    for (const auto& [mu, a] : merged)
        if (a != 0) out.push_back(mu);
    return out;
}

// Closed-form multiplicities aligned with eigen_list.
inline std::vector<Int> multiplicities_formula(unsigned n, unsigned q) {
    if (n < 2) throw Error("multiplicities_formula requires n >= 2");
    if (n == 2) {
        const Int half = Int(q) * (Int(q) - 1) / 2;
        return {half, half};
    }
    const auto ec = detail::eigen_candidates(n, q);
    std::map<Int, Rat, std::greater<Int>> merged;
    for (int i = 0; i < 4; ++i) merged[ec.mu[i]] += ec.alpha[i];
    std::vector<Int> out;
    for (const auto& [mu, a] : merged)
        if (a != 0) out.push_back(detail::rat_to_int(a, "multiplicities_formula"));
    return out;
}

// Independent multiplicity oracle: mult(mu) = V - rank(A - mu Id), with ranks
// computed by elimination mod a fixed 62-bit prime.  A modular nullity never
// undershoots the rational one, and the nullities must sum to V because A is
// symmetric with integer eigenvalues, so a run whose nullities sum to exactly
// V is proven exact.  Otherwise the second prime is tried, then fraction-free
// elimination for small instances.
inline std::vector<Int> multiplicities_rank(const OrthGraph& g,
                                            unsigned threads = 1) {
    const std::size_t v = g.size();
    if (v > 700) throw InstanceTooLarge("multiplicity oracle capped at 700 vertices");
    const std::vector<Int> mus = eigen_list(g.n(), g.q());

    auto nullities = [&](std::uint64_t p) {
        std::vector<unsigned> nul(mus.size());
        auto run = [&](std::size_t k) {
            std::vector<std::vector<std::uint64_t>> m(v,
                std::vector<std::uint64_t>(v, 0));
            const std::uint64_t mu = int_mod(mus[k], p);
            for (std::size_t i = 0; i < v; ++i) {
                const std::uint64_t* row = g.row(i);
                for (std::size_t w = 0; w < g.words; ++w) {
                    std::uint64_t bits = row[w];
                    while (bits) {
                        const unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
                        m[i][w * 64 + b] = 1;
                        bits &= bits - 1;
                    }
                }
                m[i][i] = sub_mod(m[i][i], mu, p);
            }
            nul[k] = static_cast<unsigned>(v) - rank_dense_mod(m, p);
        };
        if (threads <= 1 || mus.size() <= 1) {
            for (std::size_t k = 0; k < mus.size(); ++k) run(k);
        } else {
            std::vector<std::thread> pool;
            std::size_t next = 0;
            for (std::size_t k = 0; k < mus.size(); ++k)
                pool.emplace_back(run, k);
            for (auto& t : pool) t.join();
            (void)next;
        }
        return nul;
    };

    auto total = [&](const std::vector<unsigned>& nul) {
        std::size_t s = 0;
        for (unsigned x : nul) s += x;
        return s;
    };

    std::vector<unsigned> nul = nullities(kPrime1);
    if (total(nul) != v) {
        nul = nullities(kPrime2);
        if (total(nul) != v) {
            if (v > 400)
                throw PrimeCollision("multiplicity nullities failed the exactness certificate for both primes");
            std::vector<unsigned> exact(mus.size());
            for (std::size_t k = 0; k < mus.size(); ++k) {
                std::vector<std::vector<Int>> m(v, std::vector<Int>(v, Int(0)));
                for (std::size_t i = 0; i < v; ++i)
                    for (std::size_t j = 0; j < v; ++j)
                        if (g.adjacent(i, j)) m[i][j] = 1;
                for (std::size_t i = 0; i < v; ++i) m[i][i] -= mus[k];
                exact[k] = static_cast<unsigned>(v) - bareiss_rank(std::move(m));
            }
            nul = exact;
        }
    }

    std::vector<Int> out;
    out.reserve(nul.size());
    for (unsigned x : nul) out.push_back(Int(x));
    return out;
}

// Distinct normalized Laplacian eigenvalues 1 - mu/d_n, ascending, exact.
inline std::vector<Rat> laplacian_spectrum(unsigned n, unsigned q) {
    if (n < 2) throw Error("laplacian_spectrum requires n >= 2");
    const Int d = n == 2 ? Int(1) : d_count(n, q);
    std::vector<Rat> out;
    for (const Int& mu : eigen_list(n, q))
        out.push_back(Rat(d - mu, d));
    std::sort(out.begin(), out.end());
    return out;
}

// Common-neighbor census.  The graph is strongly regular iff adjacent pairs
// share one constant count and non-adjacent pairs another.
struct SrgCensus {
    bool strongly_regular = false;
    // Distinct common-neighbor counts seen, with pair multiplicities.
    std::map<Int, Int> adjacent_counts;
    std::map<Int, Int> nonadjacent_counts;
};

inline SrgCensus srg_census(const OrthGraph& g) {
    SrgCensus c;
    const std::size_t v = g.size();
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = i + 1; j < v; ++j) {
            const std::uint64_t* ri = g.row(i);
            const std::uint64_t* rj = g.row(j);
            std::uint64_t common = 0;
            for (std::size_t w = 0; w < g.words; ++w)
                common += static_cast<std::uint64_t>(__builtin_popcountll(ri[w] & rj[w]));
            if (g.adjacent(i, j)) ++c.adjacent_counts[Int(common)];
            else ++c.nonadjacent_counts[Int(common)];
        }
    c.strongly_regular = c.adjacent_counts.size() <= 1 &&
                         c.nonadjacent_counts.size() <= 1;
    return c;
}

// Full spectrum report for one instance.
struct SpectrumReport {
    std::vector<Int> eigenvalues;
    std::vector<Int> multiplicities;
    std::array<Int, 5> minpoly;  // c0..c4 of the annihilating polynomial
    bool annihilation_ok = false;
};

inline SpectrumReport make_spectrum_report(const OrthGraph& g) {
    SpectrumReport r;
    r.eigenvalues = eigen_list(g.n(), g.q());
    r.multiplicities = multiplicities_formula(g.n(), g.q());
    const auto poly = annihilating_poly(g.n(), g.q());
    for (auto& c : r.minpoly) c = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) r.minpoly[i] = poly[i];
    r.annihilation_ok = verify_poly(g, poly);
    return r;
}

// Adjacency matrix in MatrixMarket coordinate text form, 1-indexed,
// row-major, both triangles listed.
inline void export_matrix_market(const OrthGraph& g, std::ostream& os) {
    const std::size_t v = g.size();
    std::size_t nnz = 0;
    for (std::size_t i = 0; i < v; ++i) {
        const std::uint64_t* row = g.row(i);
        for (std::size_t w = 0; w < g.words; ++w)
            nnz += static_cast<std::size_t>(__builtin_popcountll(row[w]));
    }
    os << "%%MatrixMarket matrix coordinate integer general\n";
    os << v << " " << v << " " << nnz << "\n";
    for (std::size_t i = 0; i < v; ++i) {
        const std::uint64_t* row = g.row(i);
        for (std::size_t w = 0; w < g.words; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                const unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
                os << (i + 1) << " " << (w * 64 + b + 1) << " 1\n";
                bits &= bits - 1;
            }
        }
    }
}

}  // namespace framelab
