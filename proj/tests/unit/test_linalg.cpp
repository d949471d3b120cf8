#include <catch2/catch_amalgamated.hpp>

#include <framelab/linalg.hpp>

#include <map>
#include <set>

using namespace framelab;

namespace {

// Random sparse matrix of known rank r: product of dense B (nr x r) and
// C (r x nc) with small entries, thinned is not needed since rank is what we
// test. Entries stay well inside int32.
SparseMat product_matrix(std::uint32_t nr, std::uint32_t nc, std::uint32_t r,
                         std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::vector<std::int32_t>> b(nr, std::vector<std::int32_t>(r));
    std::vector<std::vector<std::int32_t>> c(r, std::vector<std::int32_t>(nc));
    for (auto& row : b)
        for (auto& x : row) x = static_cast<std::int32_t>(rng.next() % 7) - 3;
    for (auto& row : c)
        for (auto& x : row) x = static_cast<std::int32_t>(rng.next() % 7) - 3;
    SparseMat m;
    m.rows = nr;
    m.cols.resize(nc);
    for (std::uint32_t j = 0; j < nc; ++j)
        for (std::uint32_t i = 0; i < nr; ++i) {
            std::int64_t acc = 0;
            for (std::uint32_t k = 0; k < r; ++k)
                acc += static_cast<std::int64_t>(b[i][k]) * c[k][j];
            if (acc != 0)
                m.cols[j].push_back({i, static_cast<std::int32_t>(acc)});
        }
    return m;
}

std::vector<std::vector<Int>> to_dense(const SparseMat& m) {
    std::vector<std::vector<Int>> d(m.rows, std::vector<Int>(m.ncols(), 0));
    for (std::uint32_t j = 0; j < m.ncols(); ++j)
        for (auto [i, v] : m.cols[j]) d[i][j] = v;
    return d;
}

// Minimal 6-vertex triangulation of the real projective plane.
const std::vector<std::array<int, 3>> kRp2Faces = {
    {0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
    {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};

SparseMat rp2_boundary2() {
    std::map<std::pair<int, int>, std::uint32_t> edge_idx;
    for (const auto& f : kRp2Faces) {
        edge_idx[{f[0], f[1]}];
        edge_idx[{f[0], f[2]}];
        edge_idx[{f[1], f[2]}];
    }
    std::uint32_t next = 0;
    for (auto& [e, idx] : edge_idx) idx = next++;
    REQUIRE(edge_idx.size() == 15);

    SparseMat d2;
    d2.rows = 15;
    d2.cols.resize(kRp2Faces.size());
    std::map<std::pair<int, int>, int> edge_use;
    for (std::size_t j = 0; j < kRp2Faces.size(); ++j) {
        const auto& f = kRp2Faces[j];
        d2.cols[j].push_back({edge_idx[{f[1], f[2]}], 1});
        d2.cols[j].push_back({edge_idx[{f[0], f[2]}], -1});
        d2.cols[j].push_back({edge_idx[{f[0], f[1]}], 1});
        std::sort(d2.cols[j].begin(), d2.cols[j].end());
        ++edge_use[{f[0], f[1]}];
        ++edge_use[{f[0], f[2]}];
        ++edge_use[{f[1], f[2]}];
    }
    for (const auto& [e, uses] : edge_use) REQUIRE(uses == 2);  // closed surface
    return d2;
}

}  // namespace

TEST_CASE("fixed 62-bit primes verified by deterministic Miller-Rabin") {
    REQUIRE(is_prime_u64(kPrime1));
    REQUIRE(is_prime_u64(kPrime2));
    REQUIRE(kPrime1 != kPrime2);
    REQUIRE(kPrime1 >> 61 == 1);  // genuinely 62 bits wide
    REQUIRE(kPrime2 >> 61 == 1);

    REQUIRE(is_prime_u64(2));
    REQUIRE(is_prime_u64(2305843009213693951ull));  // 2^61 - 1
    REQUIRE_FALSE(is_prime_u64(1));
    REQUIRE_FALSE(is_prime_u64(561));        // Carmichael
    REQUIRE_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to 2,3,5,7
    REQUIRE_FALSE(is_prime_u64(kPrime1 + 2));
}

TEST_CASE("modular scalar arithmetic") {
    const std::uint64_t p = kPrime1;
    SplitMix64 rng(42);
    for (int t = 0; t < 200; ++t) {
        const std::uint64_t a = rng.next_mod(p), b = rng.next_mod(p);
        const std::uint64_t expect = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(a) * b % p);
        REQUIRE(mul_mod(a, b, p) == expect);
        REQUIRE(add_mod(sub_mod(a, b, p), b, p) == a);
    }
    for (int t = 0; t < 50; ++t) {
        const std::uint64_t a = rng.next_nonzero_mod(p);
        REQUIRE(mul_mod(a, inv_mod(a, p), p) == 1);
        REQUIRE(pow_mod(a, p - 1, p) == 1);  // Fermat
    }
    REQUIRE_THROWS_AS(inv_mod(0, p), DivisionByZero);
    REQUIRE(int_mod(Int(-3), 7) == 4);
    REQUIRE(i64_mod(-3, 7) == 4);
}

TEST_CASE("dense modular rank") {
    std::vector<std::vector<std::uint64_t>> id(5, std::vector<std::uint64_t>(5, 0));
    for (int i = 0; i < 5; ++i) id[i][i] = 1;
    REQUIRE(rank_dense_mod(id, kPrime1) == 5);

    std::vector<std::vector<std::uint64_t>> z(3, std::vector<std::uint64_t>(4, 0));
    REQUIRE(rank_dense_mod(z, kPrime1) == 0);

    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const SparseMat m = product_matrix(30, 45, 17, seed);
        REQUIRE(rank_dense_mod(m, kPrime1) == 17);
        REQUIRE(rank_dense_mod(m, kPrime2) == 17);
        REQUIRE(bareiss_rank(to_dense(m)) == 17);
    }
    // Wide orientation flips internally.
    const SparseMat m = product_matrix(50, 20, 9, 7);
    REQUIRE(rank_dense_mod(m, kPrime1) == 9);
}

TEST_CASE("sparse elimination matches dense rank") {
    for (std::uint64_t seed : {11ull, 12ull, 13ull, 14ull}) {
        const SparseMat m = product_matrix(60, 90, 33, seed);
        REQUIRE(rank_sparse_elim_mod(m, kPrime1) == 33);
        REQUIRE(rank_sparse_elim_mod(m, kPrime2) == 33);
    }
    // Genuinely sparse random matrix, cross-checked against dense.
    SplitMix64 rng(99);
    SparseMat s;
    s.rows = 70;
    s.cols.resize(110);
    for (auto& col : s.cols) {
        std::set<std::uint32_t> rows;
        for (int k = 0; k < 4; ++k) rows.insert(static_cast<std::uint32_t>(rng.next_mod(70)));
        for (std::uint32_t r : rows)
            col.push_back({r, static_cast<std::int32_t>(rng.next_mod(9)) - 4});
        col.erase(std::remove_if(col.begin(), col.end(),
                                 [](auto& e) { return e.second == 0; }),
                  col.end());
    }
    REQUIRE(rank_sparse_elim_mod(s, kPrime1) == rank_dense_mod(s, kPrime1));
    REQUIRE(rank_sparse_elim_mod(s, kPrime2) == rank_dense_mod(s, kPrime2));
    REQUIRE_THROWS_AS(rank_sparse_elim_mod(s, kPrime1, 3), InstanceTooLarge);
}

TEST_CASE("Berlekamp-Massey recovers minimal generators") {
    const std::uint64_t p = kPrime1;
    // Fibonacci: x^2 - x - 1.
    std::vector<std::uint64_t> fib{1, 1};
    for (int i = 2; i < 40; ++i)
        fib.push_back(add_mod(fib[i - 1], fib[i - 2], p));
    const auto g = berlekamp_massey(fib, p);
    REQUIRE(g.size() == 3);
    REQUIRE(g[2] == 1);
    REQUIRE(g[1] == p - 1);
    REQUIRE(g[0] == p - 1);

    // Geometric: x - c.
    std::vector<std::uint64_t> geo;
    std::uint64_t v = 1;
    for (int i = 0; i < 20; ++i) { geo.push_back(v); v = mul_mod(v, 5, p); }
    const auto h = berlekamp_massey(geo, p);
    REQUIRE(h.size() == 2);
    REQUIRE(h[1] == 1);
    REQUIRE(h[0] == p - 5);

    // All-zero sequence: trivial generator of degree 0.
    const auto z = berlekamp_massey(std::vector<std::uint64_t>(10, 0), p);
    REQUIRE(z.size() == 1);
}

TEST_CASE("Wiedemann sequence bound reaches the true rank") {
    for (std::uint64_t seed : {21ull, 22ull}) {
        const SparseMat m = product_matrix(60, 100, 37, seed);
        const unsigned r1 = rank_wiedemann_lower(m, kPrime1, 1000 + seed, 60);
        const unsigned r2 = rank_wiedemann_lower(m, kPrime2, 2000 + seed, 60);
        REQUIRE(r1 == 37);
        REQUIRE(r2 == 37);
    }
    // Wide orientation and full-rank case.
    const SparseMat m = product_matrix(120, 25, 25, 5);
    REQUIRE(rank_wiedemann_lower(m, kPrime1, 77, 25 + 1) == 25);
}

TEST_CASE("GF(2) rank, direct and compressed") {
    const SparseMat d2 = rp2_boundary2();
    const auto direct = rank_mod2(d2);
    REQUIRE(direct.rank == 9);
    REQUIRE(direct.exact);
    REQUIRE(direct.method == "dense-gf2");

    // Random instances: compressed path (forced) must agree with direct.
    for (std::uint64_t seed : {31ull, 32ull, 33ull}) {
        const SparseMat m = product_matrix(90, 400, 41, seed);
        const auto a = rank_mod2(m);
        const auto b = rank_mod2(m, /*direct_bit_limit=*/0);
        REQUIRE(a.exact);
        REQUIRE(b.exact);
        REQUIRE(b.method == "compressed-gf2");
        REQUIRE(a.rank == b.rank);
        // Reference: dense elimination mod 2 via the generic dense routine.
        std::vector<std::vector<std::uint64_t>> dd(m.rows,
            std::vector<std::uint64_t>(m.ncols(), 0));
        for (std::uint32_t j = 0; j < m.ncols(); ++j)
            for (auto [i, v] : m.cols[j]) dd[i][j] = i64_mod(v, 2);
        REQUIRE(a.rank == rank_dense_mod(dd, 2));
    }
}

TEST_CASE("Bareiss exact rank") {
    std::vector<std::vector<Int>> a{{2, 3, 5}, {4, 6, 10}, {1, 0, 1}};
    REQUIRE(bareiss_rank(a) == 2);
    std::vector<std::vector<Int>> b{{1, 2}, {3, 4}};
    REQUIRE(bareiss_rank(b) == 2);
    std::vector<std::vector<Int>> c(4, std::vector<Int>(4, 7));
    REQUIRE(bareiss_rank(c) == 1);
    REQUIRE(bareiss_rank(std::vector<std::vector<Int>>{}) == 0);
}

TEST_CASE("Smith normal form divisors") {
    std::vector<std::vector<Int>> d{{2, 0}, {0, 3}};
    REQUIRE(snf_divisors(d) == std::vector<Int>{1, 6});

    std::vector<std::vector<Int>> e{{2, 0}, {0, 2}};
    REQUIRE(snf_divisors(e) == std::vector<Int>{2, 2});

    std::vector<std::vector<Int>> f{{0, 0}, {0, 0}};
    REQUIRE(snf_divisors(f).empty());

    std::vector<std::vector<Int>> g{{6, 4}, {4, 6}};
    // det 20, gcd 2 -> divisors 2, 10.
    REQUIRE(snf_divisors(g) == std::vector<Int>{2, 10});

    // Boundary of the projective plane: nine units and one 2, which is the
    // torsion class in degree one.
    const auto divs = snf_divisors(rp2_boundary2());
    REQUIRE(divs.size() == 10);
    for (int i = 0; i < 9; ++i) REQUIRE(divs[i] == 1);
    REQUIRE(divs[9] == 2);

    // Divisibility chain.
    for (std::size_t i = 0; i + 1 < divs.size(); ++i)
        REQUIRE(divs[i + 1] % divs[i] == 0);
}

TEST_CASE("projective plane boundary ranks across all backends") {
    const SparseMat d2 = rp2_boundary2();
    REQUIRE(rank_dense_mod(d2, kPrime1) == 10);
    REQUIRE(rank_dense_mod(d2, kPrime2) == 10);
    REQUIRE(rank_sparse_elim_mod(d2, kPrime1) == 10);
    REQUIRE(bareiss_rank(to_dense(d2)) == 10);
    REQUIRE(rank_wiedemann_lower(d2, kPrime1, 123, 10 + 1) == 10);
    REQUIRE(rank_mod2(d2).rank == 9);  // drops by one in characteristic two
}

TEST_CASE("rational rank orchestration") {
    // Dense path, certified by hitting the short side.
    const SparseMat full = product_matrix(40, 80, 40, 61);
    const auto r1 = rank_rational(full);
    REQUIRE(r1.rank == 40);
    REQUIRE(r1.certified);

    // Dense path, not certified (rank below every structural bound).
    const SparseMat part = product_matrix(40, 80, 23, 62);
    const auto r2 = rank_rational(part);
    REQUIRE(r2.rank == 23);
    REQUIRE_FALSE(r2.certified);
    REQUIRE(r2.method == "dense-mod-p-x2");

    // Caller-supplied structural bound upgrades to certified.
    RankOptions strict;
    strict.structural_max = 23;
    const auto r3 = rank_rational(part, strict);
    REQUIRE(r3.rank == 23);
    REQUIRE(r3.certified);

    // Sparse path (dense disabled).
    RankOptions sp;
    sp.dense_limit = 1;
    const auto r4 = rank_rational(part, sp);
    REQUIRE(r4.rank == 23);
    REQUIRE(r4.method == "sparse-elim-mod-p-x2");

    // Wiedemann fallback when the fill budget is unusable.
    RankOptions wd;
    wd.dense_limit = 1;
    wd.fill_cap = 2;
    wd.structural_max = 23;
    const auto r5 = rank_rational(part, wd);
    REQUIRE(r5.rank == 23);
    REQUIRE(r5.certified);
    REQUIRE(r5.method == "wiedemann+structural");

    // Empty matrix.
    SparseMat empty;
    empty.rows = 10;
    empty.cols.resize(4);
    const auto r6 = rank_rational(empty);
    REQUIRE(r6.rank == 0);
    REQUIRE(r6.certified);
}
