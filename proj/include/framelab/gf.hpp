#pragma once

// Table-driven arithmetic for the quadratic extension GF(q^2) over GF(q),
// together with the order-2 Frobenius x -> x^q, the norm x -> x^{q+1} and
// the trace x -> x + x^q relative to the fixed field.
//
// Element encoding: 0 is the zero element, and code k in [1, q^2-1] stands
// for g^{k-1} where g is a fixed primitive element. Multiplication is index
// arithmetic; addition uses a precomputed table. The defining polynomial is
// the lexicographically smallest monic irreducible of the right degree, so
// the whole construction is deterministic.

#include <cstdint>
#include <memory>
#include <vector>

#include "common.hpp"

namespace framelab {

class FieldTable {
public:
    using Elem = std::uint16_t;

    explicit FieldTable(unsigned q) : q_(q) {
        unsigned p = smallest_prime_factor(q);
        unsigned m = 0, t = q;
        while (t > 1) {
            if (t % p != 0) throw NotPrimePower("q = " + std::to_string(q) + " is not a prime power");
            t /= p;
            ++m;
        }
        if (q < 2 || m == 0) throw NotPrimePower("q = " + std::to_string(q) + " is not a prime power");
        if (q > 16) throw UnsupportedSize("q = " + std::to_string(q) + " exceeds the table limit of 16");
        p_ = p;
        deg_ = 2 * m;
        order_ = q * q;
        build_tables();
    }

    unsigned q() const { return q_; }
    unsigned characteristic() const { return p_; }
    unsigned order() const { return order_; }  // q^2

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem add(Elem a, Elem b) const { return addt_[size_t(a) * order_ + b]; }
    Elem neg(Elem a) const { return negt_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        unsigned e = (unsigned(a) - 1 + unsigned(b) - 1) % (order_ - 1);
        return Elem(e + 1);
    }

    Elem inv(Elem a) const {
        if (a == 0) throw DivisionByZero("inverse of zero");
        unsigned e = (order_ - 1 - (unsigned(a) - 1)) % (order_ - 1);
        return Elem(e + 1);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, unsigned long long e) const {
        if (a == 0) return e == 0 ? one() : zero();
        unsigned long long ee = (unsigned long long)(unsigned(a) - 1) * (e % (order_ - 1)) % (order_ - 1);
        return Elem(ee + 1);
    }

    // x -> x^q, the involution generating Gal(GF(q^2)/GF(q)).
    Elem frobenius(Elem a) const {
        if (a == 0) return 0;
        unsigned long long e = (unsigned long long)(unsigned(a) - 1) * q_ % (order_ - 1);
        return Elem(e + 1);
    }

    // x -> x * x^q; its image is the fixed field.
    Elem norm(Elem a) const {
        if (a == 0) return 0;
        unsigned long long e = (unsigned long long)(unsigned(a) - 1) * (q_ + 1) % (order_ - 1);
        return Elem(e + 1);
    }

    // x -> x + x^q
    Elem trace(Elem a) const { return add(a, frobenius(a)); }

    bool in_fixed_field(Elem a) const { return frobenius(a) == a; }

    // Representative of -1 (equals 1 in characteristic 2).
    Elem minus_one() const { return negt_[1]; }

    // Prime-subfield embedding of an integer.
    Elem from_int(unsigned v) const {
        Elem r = 0;
        for (unsigned i = 0; i < v % p_; ++i) r = add(r, one());
        return r;
    }

private:
    unsigned q_, p_ = 0, deg_ = 0, order_ = 0;
    std::vector<Elem> addt_;
    std::vector<Elem> negt_;

    static unsigned smallest_prime_factor(unsigned v) {
        for (unsigned d = 2; d * d <= v; ++d)
            if (v % d == 0) return d;
        return v;
    }

    // Polynomials over GF(p) as coefficient vectors, low degree first.
    using Poly = std::vector<unsigned>;

    static int poly_deg(const Poly& f) {
        for (int i = int(f.size()) - 1; i >= 0; --i)
            if (f[i]) return i;
        return -1;
    }

    Poly poly_mod(Poly r, const Poly& d) const {
        int dd = poly_deg(d);
        unsigned lead_inv = inv_mod_p(d[dd]);
        for (int i = poly_deg(r); i >= dd; i = poly_deg(r)) {
            unsigned c = r[i] * lead_inv % p_;
            for (int j = 0; j <= dd; ++j)
                r[i - dd + j] = (r[i - dd + j] + p_ * p_ - c * d[j] % p_ * 1u) % p_;
        }
        return r;
    }

    unsigned inv_mod_p(unsigned a) const {
        for (unsigned x = 1; x < p_; ++x)
            if (a * x % p_ == 1) return x;
        throw DivisionByZero("no inverse mod p");
    }

    Poly idx_to_poly(unsigned idx, unsigned len) const {
        Poly f(len, 0);
        for (unsigned i = 0; i < len && idx; ++i, idx /= p_) f[i] = idx % p_;
        return f;
    }

    bool divides(const Poly& d, const Poly& f) const { return poly_deg(poly_mod(f, d)) < 0; }

    Poly find_modulus() const {
        // Lexicographically smallest monic irreducible of degree deg_: smallest
        // integer index for the non-leading coefficients written in base p.
        unsigned count = 1;
        for (unsigned i = 0; i < deg_; ++i) count *= p_;
        for (unsigned idx = 0; idx < count; ++idx) {
            Poly f = idx_to_poly(idx, deg_ + 1);
            f[deg_] = 1;
            bool irred = true;
            // Trial division by every monic polynomial of degree 1..deg_/2.
            for (unsigned dd = 1; irred && dd <= deg_ / 2; ++dd) {
                unsigned dcount = 1;
                for (unsigned i = 0; i < dd; ++i) dcount *= p_;
                for (unsigned didx = 0; didx < dcount; ++didx) {
                    Poly d = idx_to_poly(didx, dd + 1);
                    d[dd] = 1;
                    if (divides(d, f)) {
                        irred = false;
                        break;
                    }
                }
            }
            if (irred) return f;
        }
        throw Error("no irreducible polynomial found");  // unreachable
    }

    Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod) const {
        Poly r(a.size() + b.size(), 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
        }
        r = poly_mod(std::move(r), mod);
        r.resize(deg_, 0);
        return r;
    }

    unsigned poly_to_idx(const Poly& f) const {
        unsigned idx = 0;
        for (int i = int(deg_) - 1; i >= 0; --i) idx = idx * p_ + f[i];
        return idx;
    }

    void build_tables() {
        Poly mod = find_modulus();
        unsigned Q = order_;

        // Multiplicative order of each candidate until a primitive one shows up.
        Poly onep(deg_, 0);
        onep[0] = 1;
        Poly gen;
        for (unsigned idx = 2; idx < Q; ++idx) {
            Poly a = idx_to_poly(idx, deg_);
            Poly x = a;
            unsigned ord = 1;
            while (poly_to_idx(x) != poly_to_idx(onep)) {
                x = poly_mul_mod(x, a, mod);
                ++ord;
                if (ord > Q) throw Error("order computation diverged");
            }
            if (ord == Q - 1) {
                gen = a;
                break;
            }
        }
        if (gen.empty()) throw Error("no primitive element found");

        // exp over polynomial indexes, then its inverse.
        std::vector<unsigned> exp_idx(Q - 1);
        std::vector<Elem> code_of_idx(Q, 0);
        Poly x = onep;
        for (unsigned e = 0; e < Q - 1; ++e) {
            unsigned ix = poly_to_idx(x);
            exp_idx[e] = ix;
            code_of_idx[ix] = Elem(e + 1);
            x = poly_mul_mod(x, gen, mod);
        }

        addt_.assign(size_t(Q) * Q, 0);
        negt_.assign(Q, 0);
        std::vector<Poly> poly_of_code(Q);
        poly_of_code[0] = Poly(deg_, 0);
        for (unsigned e = 0; e < Q - 1; ++e) poly_of_code[e + 1] = idx_to_poly(exp_idx[e], deg_);
        for (unsigned a = 0; a < Q; ++a) {
            for (unsigned b = 0; b < Q; ++b) {
                Poly s(deg_);
                for (unsigned i = 0; i < deg_; ++i) s[i] = (poly_of_code[a][i] + poly_of_code[b][i]) % p_;
                addt_[size_t(a) * Q + b] = code_of_idx[poly_to_idx(s)];
            }
        }
        for (unsigned a = 0; a < Q; ++a) {
            Poly s(deg_);
            for (unsigned i = 0; i < deg_; ++i) s[i] = (p_ - poly_of_code[a][i]) % p_;
            negt_[a] = code_of_idx[poly_to_idx(s)];
        }

        // Involution sanity: tau has order 2 and fixes exactly q elements.
        unsigned fixed = 0;
        for (unsigned a = 0; a < Q; ++a) {
            if (frobenius(frobenius(Elem(a))) != a) throw Error("frobenius is not an involution");
            if (in_fixed_field(Elem(a))) ++fixed;
        }
        if (fixed != q_) throw Error("fixed field has wrong size");
    }
};

using FieldRef = std::shared_ptr<const FieldTable>;

inline FieldRef field_new(unsigned q) { return std::make_shared<const FieldTable>(q); }

}  // namespace framelab
