#include <catch2/catch_amalgamated.hpp>

#include <framelab/counts.hpp>

using namespace framelab;

static const unsigned kSupportedQ[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

TEST_CASE("unitary group orders") {
    CHECK(gu_order(0, 2) == 1);
    CHECK(gu_order(1, 2) == 3);
    CHECK(gu_order(2, 2) == 18);
    CHECK(gu_order(3, 2) == 648);
    CHECK(gu_order(4, 3) == 52254720);
}

TEST_CASE("line counts") {
    CHECK(d_count(0, 5) == 0);
    CHECK(d_count(1, 5) == 0);
    for (unsigned q : kSupportedQ) CHECK(d_count(2, q) == 1);
    CHECK(d_count(3, 2) == 2);
    CHECK(d_count(4, 2) == 12);
    CHECK(d_count(5, 2) == 40);
    CHECK(d_count(6, 2) == 176);
    CHECK(d_count(7, 2) == 672);
    CHECK(d_count(3, 3) == 6);
    CHECK(d_count(4, 3) == 63);
    CHECK(d_count(5, 3) == 540);
}

TEST_CASE("line counts with radicals") {
    // Boundary conventions: too-small spaces give zero lines.
    CHECK(d_rad(1, 2, 1) == 0);
    CHECK(d_rad(2, 2, 1) == 0);
    CHECK(d_rad(2, 5, 1) == 0);
    CHECK(d_rad(3, 2, 1) == 4);   // q^2 d_2
    CHECK(d_rad(4, 2, 1) == 8);   // q^2 d_3
    CHECK(d_rad(4, 2, 0) == d_count(4, 2));
    CHECK(d_rad(5, 3, 1) == 9 * 63);
    CHECK_THROWS_AS(d_rad(3, 2, 4), InvalidRadicalDim);
}

TEST_CASE("isotropic vector counts") {
    CHECK(iso_count(1, 2, 0) == 0);
    CHECK(iso_count(1, 3, 0) == 0);
    CHECK(iso_count(2, 2, 0) == 9);
    CHECK(iso_count(2, 3, 0) == 32);
    // Totally degenerate: everything is isotropic.
    CHECK(iso_count(2, 2, 2) == 15);
    CHECK_THROWS_AS(iso_count(2, 2, 3), InvalidRadicalDim);
}

TEST_CASE("identity suite holds for all supported parameters") {
    for (unsigned q : kSupportedQ)
        for (unsigned n = 3; n <= 12; ++n)
            for (const auto& [name, ok] : identity_suite(n, q)) {
                INFO("n=" << n << " q=" << q << " " << name);
                CHECK(ok);
            }
}

TEST_CASE("frame counts") {
    CHECK(frame_count(2, 2, 2) == 1);
    CHECK(frame_count(3, 2, 3) == 4);
    CHECK(frame_count(4, 3, 3) == 34020);
    for (unsigned q : kSupportedQ) CHECK(frame_count(3, q, 0) == 1);
    CHECK(frame_count(4, 2, 1) == 40);
    CHECK(frame_count(4, 2, 2) == 240);
    CHECK(frame_count(4, 2, 3) == 160);
    CHECK(frame_count(4, 2, 4) == 40);
}

TEST_CASE("frame complex Euler characteristics") {
    CHECK(euler_frame(4, 2) == -81);
    CHECK(euler_frame(4, 3) == 9044);
    CHECK(euler_frame(6, 3) == Int("19557643832"));
    CHECK(euler_frame(7, 3) == Int("1582997389326080"));
}

TEST_CASE("low-dimension homotopy counts") {
    CHECK(wedge_count_dim3(3) == 64);
    CHECK(points_dim2(2) == 1);
    CHECK(points_dim2(3) == 3);
    for (unsigned q : {3u, 4u, 5u, 7u}) CHECK(euler_frame(3, q) == -wedge_count_dim3(q));
    for (unsigned q : kSupportedQ) CHECK(euler_frame(2, q) == points_dim2(q) - 1);
}

TEST_CASE("non-degenerate subspace counts and poset Euler characteristic") {
    CHECK(subspace_count(3, 1, 2) == 12);
    CHECK(subspace_count(3, 1, 2) == d_count(4, 2));
    CHECK(subspace_count(3, 2, 2) == 12);
    CHECK(subspace_count(2, 1, 3) == 6);
    CHECK(euler_nondeg_poset(3, 2) == -1);
    // Dimension 2: an antichain of d_3 lines, so chi-tilde = d_3 - 1.
    for (unsigned q : {2u, 3u, 4u}) CHECK(euler_nondeg_poset(2, q) == Int(q) * (q - 1) - 1);
    CHECK(euler_nondeg_poset(1, 2) == -1);
}

TEST_CASE("decomposition type counts") {
    CHECK(decomp_type_count(3, 2, {1, 1, 1}) == 4);
    CHECK(decomp_type_count(3, 2, {2, 1}) == 12);
    CHECK(decomp_type_count(2, 2, {1, 1}) == 1);
    CHECK(decomp_type_count(4, 3, {1, 1, 1, 1}) == 8505);
    CHECK(decomp_type_count(4, 3, {2, 1, 1}) == 17010);
    CHECK(decomp_type_count(4, 3, {3, 1}) == 540);
    CHECK(decomp_type_count(4, 3, {2, 2}) == 2835);
    CHECK_THROWS_AS(decomp_type_count(4, 3, {2, 1}), DimensionMismatch);
}

TEST_CASE("decomposition poset Euler characteristics") {
    CHECK(euler_decomp_poset(2, 2) == 0);
    CHECK(euler_decomp_poset(3, 2) == 3);
    CHECK(euler_decomp_poset(7, 3) == Int("-507209080872632320"));
}

TEST_CASE("partition enumeration") {
    CHECK(all_partitions(1).size() == 1);
    CHECK(all_partitions(4).size() == 5);
    CHECK(all_partitions(7).size() == 15);
}
