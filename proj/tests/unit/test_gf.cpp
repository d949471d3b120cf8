#include <catch2/catch_amalgamated.hpp>

#include <framelab/gf.hpp>

using namespace framelab;
using Elem = FieldTable::Elem;

static const unsigned kSupportedQ[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

TEST_CASE("field axioms hold exhaustively for small q") {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto F = field_new(q);
        unsigned Q = F->order();
        REQUIRE(Q == q * q);

        for (unsigned a = 0; a < Q; ++a) {
            CHECK(F->add(Elem(a), F->zero()) == a);
            CHECK(F->mul(Elem(a), F->one()) == a);
            CHECK(F->add(Elem(a), F->neg(Elem(a))) == F->zero());
            if (a != 0) CHECK(F->mul(Elem(a), F->inv(Elem(a))) == F->one());
            for (unsigned b = 0; b < Q; ++b) {
                CHECK(F->add(Elem(a), Elem(b)) == F->add(Elem(b), Elem(a)));
                CHECK(F->mul(Elem(a), Elem(b)) == F->mul(Elem(b), Elem(a)));
                for (unsigned c = 0; c < Q; ++c) {
                    CHECK(F->add(F->add(Elem(a), Elem(b)), Elem(c)) ==
                          F->add(Elem(a), F->add(Elem(b), Elem(c))));
                    CHECK(F->mul(F->mul(Elem(a), Elem(b)), Elem(c)) ==
                          F->mul(Elem(a), F->mul(Elem(b), Elem(c))));
                    CHECK(F->mul(Elem(a), F->add(Elem(b), Elem(c))) ==
                          F->add(F->mul(Elem(a), Elem(b)), F->mul(Elem(a), Elem(c))));
                }
            }
        }
    }
}

TEST_CASE("frobenius is a ring involution with fixed field of size q") {
    for (unsigned q : kSupportedQ) {
        auto F = field_new(q);
        unsigned Q = F->order();
        unsigned fixed = 0;
        for (unsigned a = 0; a < Q; ++a) {
            CHECK(F->frobenius(F->frobenius(Elem(a))) == a);
            if (F->in_fixed_field(Elem(a))) ++fixed;
            for (unsigned b = 0; b < Q; ++b) {
                CHECK(F->frobenius(F->add(Elem(a), Elem(b))) ==
                      F->add(F->frobenius(Elem(a)), F->frobenius(Elem(b))));
                CHECK(F->frobenius(F->mul(Elem(a), Elem(b))) ==
                      F->mul(F->frobenius(Elem(a)), F->frobenius(Elem(b))));
            }
        }
        CHECK(fixed == q);
    }
}

TEST_CASE("fixed field is closed under the operations") {
    for (unsigned q : kSupportedQ) {
        auto F = field_new(q);
        unsigned Q = F->order();
        for (unsigned a = 0; a < Q; ++a) {
            if (!F->in_fixed_field(Elem(a))) continue;
            if (a != 0) CHECK(F->in_fixed_field(F->inv(Elem(a))));
            CHECK(F->in_fixed_field(F->neg(Elem(a))));
            for (unsigned b = 0; b < Q; ++b) {
                if (!F->in_fixed_field(Elem(b))) continue;
                CHECK(F->in_fixed_field(F->add(Elem(a), Elem(b))));
                CHECK(F->in_fixed_field(F->mul(Elem(a), Elem(b))));
            }
        }
    }
}

TEST_CASE("norm maps onto the fixed field with fibers of size q+1") {
    for (unsigned q : kSupportedQ) {
        auto F = field_new(q);
        unsigned Q = F->order();
        std::vector<unsigned> hits(Q, 0);
        for (unsigned a = 1; a < Q; ++a) {
            Elem n = F->norm(Elem(a));
            CHECK(n == F->mul(Elem(a), F->frobenius(Elem(a))));
            CHECK(F->in_fixed_field(n));
            CHECK(n != F->zero());
            ++hits[n];
        }
        for (unsigned c = 1; c < Q; ++c) {
            if (F->in_fixed_field(Elem(c)))
                CHECK(hits[c] == q + 1);
            else
                CHECK(hits[c] == 0);
        }
    }
}

TEST_CASE("trace lands in the fixed field and is onto") {
    for (unsigned q : kSupportedQ) {
        auto F = field_new(q);
        unsigned Q = F->order();
        std::vector<unsigned> hits(Q, 0);
        for (unsigned a = 0; a < Q; ++a) {
            Elem t = F->trace(Elem(a));
            CHECK(F->in_fixed_field(t));
            ++hits[t];
        }
        for (unsigned c = 0; c < Q; ++c)
            if (F->in_fixed_field(Elem(c))) CHECK(hits[c] == q);
    }
}

TEST_CASE("an element of norm -1 exists") {
    // Needed so that every nondegenerate form admits an orthonormal-style basis.
    for (unsigned q : kSupportedQ) {
        auto F = field_new(q);
        bool found = false;
        for (unsigned a = 1; a < F->order(); ++a)
            if (F->norm(Elem(a)) == F->minus_one()) {
                found = true;
                break;
            }
        CHECK(found);
    }
}

TEST_CASE("constructor rejects bad sizes") {
    CHECK_THROWS_AS(field_new(0), NotPrimePower);
    CHECK_THROWS_AS(field_new(1), NotPrimePower);
    CHECK_THROWS_AS(field_new(6), NotPrimePower);
    CHECK_THROWS_AS(field_new(10), NotPrimePower);
    CHECK_THROWS_AS(field_new(12), NotPrimePower);
    CHECK_THROWS_AS(field_new(15), NotPrimePower);
    CHECK_THROWS_AS(field_new(17), UnsupportedSize);
    CHECK_THROWS_AS(field_new(25), UnsupportedSize);
    CHECK_THROWS_AS(field_new(32), UnsupportedSize);
}

TEST_CASE("division by zero throws") {
    auto F = field_new(3);
    CHECK_THROWS_AS(F->inv(F->zero()), DivisionByZero);
    CHECK_THROWS_AS(F->div(F->one(), F->zero()), DivisionByZero);
}

TEST_CASE("prime subfield embedding") {
    auto F = field_new(9);
    CHECK(F->characteristic() == 3);
    CHECK(F->from_int(0) == F->zero());
    CHECK(F->from_int(1) == F->one());
    CHECK(F->from_int(3) == F->zero());
    CHECK(F->from_int(2) == F->add(F->one(), F->one()));
}
