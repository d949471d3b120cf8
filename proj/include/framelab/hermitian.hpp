#pragma once

// Vectors, subspaces and lines of a finite Hermitian space. The form is
// Psi(v,w) = v^T G tau(w) for a tau-Hermitian Gram matrix G; the default G is
// the identity, which is the standard non-degenerate geometry. Degenerate
// Gram matrices are allowed everywhere except where a function documents a
// non-degeneracy precondition.
//
// Lines (non-degenerate 1-subspaces) are the vertices of the orthogonality
// graph; their canonical representative scales the first nonzero coordinate
// to 1, which gives stable keys and a deterministic global order.

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "gf.hpp"

namespace framelab {

using Vec = std::vector<FieldTable::Elem>;

inline std::string vec_key(const Vec& v) {
    std::string s;
    for (auto c : v) {
        s += std::to_string(unsigned(c));
        s += ',';
    }
    return s;
}

// Reduced row echelon form over GF(q^2). Returns the rank; rows below it are
// removed. The result is the canonical basis of the row space.
inline unsigned rref(const FieldTable& F, std::vector<Vec>& rows) {
    if (rows.empty()) return 0;
    const size_t ncols = rows[0].size();
    unsigned r = 0;
    for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        FieldTable::Elem inv = F.inv(rows[r][c]);
        for (size_t j = 0; j < ncols; ++j) rows[r][j] = F.mul(rows[r][j], inv);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            FieldTable::Elem f = rows[i][c];
            for (size_t j = 0; j < ncols; ++j)
                rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
        }
        ++r;
    }
    rows.resize(r);
    return r;
}

class Subspace {
public:
    explicit Subspace(unsigned ambient) : ambient_(ambient) {}

    static Subspace span(const FieldTable& F, unsigned ambient, std::vector<Vec> gens) {
        for (const auto& g : gens)
            if (g.size() != ambient) throw DimensionMismatch("generator length != ambient dimension");
        rref(F, gens);
        Subspace s(ambient);
        s.rows_ = std::move(gens);
        return s;
    }

    unsigned ambient() const { return ambient_; }
    unsigned dim() const { return unsigned(rows_.size()); }
    const std::vector<Vec>& basis() const { return rows_; }

    bool contains(const FieldTable& F, Vec v) const {
        if (v.size() != ambient_) throw DimensionMismatch("vector length != ambient dimension");
        for (const auto& row : rows_) {
            size_t p = 0;
            while (p < v.size() && row[p] == 0) ++p;
            if (p == v.size()) continue;
            if (v[p] != 0) {
                FieldTable::Elem f = v[p];
                for (size_t j = 0; j < v.size(); ++j) v[j] = F.sub(v[j], F.mul(f, row[j]));
            }
        }
        for (auto c : v)
            if (c != 0) return false;
        return true;
    }

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && rows_ == o.rows_; }

    std::string key() const {
        std::string s = std::to_string(ambient_) + ":";
        for (const auto& r : rows_) {
            s += vec_key(r);
            s += ';';
        }
        return s;
    }

private:
    unsigned ambient_;
    std::vector<Vec> rows_;
};

class HermSpace {
public:
    HermSpace(FieldRef f, unsigned n) : f_(std::move(f)), n_(n), gram_(size_t(n) * n, 0) {
        for (unsigned i = 0; i < n; ++i) gram_[size_t(i) * n + i] = f_->one();
        rad_dim_ = 0;
    }

    HermSpace(FieldRef f, unsigned n, std::vector<FieldTable::Elem> gram)
        : f_(std::move(f)), n_(n), gram_(std::move(gram)) {
        if (gram_.size() != size_t(n) * n) throw DimensionMismatch("gram matrix is not n x n");
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                if (gram_[size_t(i) * n + j] != f_->frobenius(gram_[size_t(j) * n + i]))
                    throw Error("gram matrix is not tau-Hermitian");
        std::vector<Vec> rows(n);
        for (unsigned i = 0; i < n; ++i)
            rows[i] = Vec(gram_.begin() + size_t(i) * n, gram_.begin() + size_t(i + 1) * n);
        rad_dim_ = n - rref(*f_, rows);
    }

    const FieldTable& field() const { return *f_; }
    FieldRef field_ref() const { return f_; }
    unsigned dim() const { return n_; }
    FieldTable::Elem gram(unsigned i, unsigned j) const { return gram_[size_t(i) * n_ + j]; }
    unsigned rad_dim() const { return rad_dim_; }
    bool nondegenerate() const { return rad_dim_ == 0; }

    FieldTable::Elem form_eval(const Vec& v, const Vec& w) const {
        if (v.size() != n_ || w.size() != n_) throw DimensionMismatch("form_eval: vector length != n");
        const FieldTable& F = *f_;
        FieldTable::Elem acc = 0;
        for (unsigned i = 0; i < n_; ++i) {
            if (v[i] == 0) continue;
            FieldTable::Elem row = 0;
            for (unsigned j = 0; j < n_; ++j) {
                if (w[j] == 0) continue;
                row = F.add(row, F.mul(gram_[size_t(i) * n_ + j], F.frobenius(w[j])));
            }
            acc = F.add(acc, F.mul(v[i], row));
        }
        return acc;
    }

    FieldTable::Elem norm_of(const Vec& v) const { return form_eval(v, v); }

private:
    FieldRef f_;
    unsigned n_;
    std::vector<FieldTable::Elem> gram_;
    unsigned rad_dim_;
};

struct Line {
    Vec rep;                         // first nonzero coordinate is 1
    FieldTable::Elem norm_value;     // Psi(rep, rep), nonzero by definition

    bool operator==(const Line& o) const { return rep == o.rep; }
};

inline Vec normalize_rep(const FieldTable& F, Vec v) {
    size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) throw Error("cannot normalize the zero vector");
    if (v[p] != F.one()) {
        FieldTable::Elem inv = F.inv(v[p]);
        for (auto& c : v) c = F.mul(c, inv);
    }
    return v;
}

inline Line line_of(const HermSpace& sp, const Vec& v) {
    Vec rep = normalize_rep(sp.field(), v);
    return Line{rep, sp.norm_of(rep)};
}

// Visits every canonical projective representative (first nonzero coordinate
// = 1) of GF(q^2)^dim in lexicographic order of the coordinate codes.
template <class Fn>
void for_each_proj_rep(const FieldTable& F, unsigned dim, Fn&& fn) {
    const unsigned Q = F.order();
    Vec v(dim, 0);
    for (int pivot = int(dim) - 1; pivot >= 0; --pivot) {
        std::fill(v.begin(), v.end(), 0);
        v[pivot] = F.one();
        for (;;) {
            fn(const_cast<const Vec&>(v));
            int j = int(dim) - 1;
            while (j > pivot && v[j] == Q - 1) {
                v[j] = 0;
                --j;
            }
            if (j == pivot) break;
            ++v[j];
        }
    }
}

// All non-degenerate lines of sp, in the canonical representative order.
inline std::vector<Line> enum_lines(const HermSpace& sp) {
    std::vector<Line> out;
    for_each_proj_rep(sp.field(), sp.dim(), [&](const Vec& v) {
        FieldTable::Elem nv = sp.norm_of(v);
        if (nv != 0) out.push_back(Line{v, nv});
    });
    return out;
}

// Number of nonzero isotropic vectors of sp.
inline Int enum_isotropic(const HermSpace& sp) {
    Int pts = 0;
    for_each_proj_rep(sp.field(), sp.dim(), [&](const Vec& v) {
        if (sp.norm_of(v) == 0) ++pts;
    });
    return pts * (Int(sp.field().order()) - 1);
}

// Non-degenerate lines lying inside the subspace S, as ambient lines.
inline std::vector<Line> enum_lines_in(const HermSpace& sp, const Subspace& S) {
    const FieldTable& F = sp.field();
    std::vector<Line> out;
    if (S.dim() == 0) return out;
    for_each_proj_rep(F, S.dim(), [&](const Vec& c) {
        Vec t(sp.dim(), 0);
        for (unsigned i = 0; i < S.dim(); ++i) {
            if (c[i] == 0) continue;
            for (unsigned j = 0; j < sp.dim(); ++j)
                t[j] = F.add(t[j], F.mul(c[i], S.basis()[i][j]));
        }
        FieldTable::Elem nv = sp.norm_of(t);
        if (nv != 0) out.push_back(Line{normalize_rep(F, t), nv});
    });
    return out;
}

// {v : Psi(v, s) = 0 for all s in S}
inline Subspace orth_complement(const HermSpace& sp, const Subspace& S) {
    if (S.ambient() != sp.dim()) throw DimensionMismatch("subspace ambient != space dimension");
    const FieldTable& F = sp.field();
    const unsigned n = sp.dim();
    // Constraint matrix M[i][j] = Psi(e_j, b_i); kernel of M is the complement.
    std::vector<Vec> M(S.dim(), Vec(n, 0));
    for (unsigned i = 0; i < S.dim(); ++i) {
        const Vec& b = S.basis()[i];
        for (unsigned j = 0; j < n; ++j) {
            FieldTable::Elem acc = 0;
            for (unsigned l = 0; l < n; ++l)
                acc = F.add(acc, F.mul(sp.gram(j, l), F.frobenius(b[l])));
            M[i][j] = acc;
        }
    }
    unsigned rank = rref(F, M);
    // Free-variable kernel basis.
    std::vector<unsigned> pivot_col;
    std::vector<bool> is_pivot(n, false);
    for (unsigned r = 0; r < rank; ++r) {
        unsigned c = 0;
        while (c < n && M[r][c] == 0) ++c;
        pivot_col.push_back(c);
        is_pivot[c] = true;
    }
    std::vector<Vec> ker;
    for (unsigned c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        Vec v(n, 0);
        v[c] = F.one();
        for (unsigned r = 0; r < rank; ++r) v[pivot_col[r]] = F.neg(M[r][c]);
        ker.push_back(std::move(v));
    }
    return Subspace::span(F, n, std::move(ker));
}

inline Subspace subspace_sum(const FieldTable& F, const Subspace& A, const Subspace& B) {
    if (A.ambient() != B.ambient()) throw DimensionMismatch("ambient dimensions differ");
    std::vector<Vec> gens = A.basis();
    gens.insert(gens.end(), B.basis().begin(), B.basis().end());
    return Subspace::span(F, A.ambient(), std::move(gens));
}

inline Subspace subspace_intersect(const FieldTable& F, const Subspace& A, const Subspace& B) {
    if (A.ambient() != B.ambient()) throw DimensionMismatch("ambient dimensions differ");
    const unsigned n = A.ambient();
    // Zassenhaus: rows (a|a) and (b|0); after elimination the rows whose left
    // half vanished span the intersection in the right half.
    std::vector<Vec> rows;
    for (const auto& a : A.basis()) {
        Vec r(2 * n, 0);
        std::copy(a.begin(), a.end(), r.begin());
        std::copy(a.begin(), a.end(), r.begin() + n);
        rows.push_back(std::move(r));
    }
    for (const auto& b : B.basis()) {
        Vec r(2 * n, 0);
        std::copy(b.begin(), b.end(), r.begin());
        rows.push_back(std::move(r));
    }
    rref(F, rows);
    std::vector<Vec> inter;
    for (const auto& r : rows) {
        bool left_zero = true;
        for (unsigned j = 0; j < n; ++j)
            if (r[j] != 0) {
                left_zero = false;
                break;
            }
        if (left_zero) {
            Vec v(r.begin() + n, r.end());
            bool nz = false;
            for (auto c : v)
                if (c != 0) nz = true;
            if (nz) inter.push_back(std::move(v));
        }
    }
    return Subspace::span(F, n, std::move(inter));
}

inline Subspace radical(const HermSpace& sp, const Subspace& S) {
    return subspace_intersect(sp.field(), S, orth_complement(sp, S));
}

inline bool is_nondegenerate(const HermSpace& sp, const Subspace& S) {
    return radical(sp, S).dim() == 0;
}

inline Subspace full_space(const HermSpace& sp) {
    std::vector<Vec> rows;
    for (unsigned i = 0; i < sp.dim(); ++i) {
        Vec e(sp.dim(), 0);
        e[i] = sp.field().one();
        rows.push_back(std::move(e));
    }
    return Subspace::span(sp.field(), sp.dim(), std::move(rows));
}

inline Subspace line_span(const HermSpace& sp, const Line& L) {
    return Subspace::span(sp.field(), sp.dim(), {L.rep});
}

// Pair classification: equal, orthogonal, non-degenerate sum, degenerate sum.
enum class PosClass { Eq, Perp, ND, D };

inline const char* pos_class_name(PosClass c) {
    switch (c) {
        case PosClass::Eq: return "Eq";
        case PosClass::Perp: return "Perp";
        case PosClass::ND: return "ND";
        default: return "D";
    }
}

// Requires sp non-degenerate and S, W non-degenerate lines.
inline PosClass rel_position(const HermSpace& sp, const Line& S, const Line& W) {
    if (S.rep == W.rep) return PosClass::Eq;
    const FieldTable& F = sp.field();
    FieldTable::Elem c = sp.form_eval(S.rep, W.rep);
    if (c == 0) return PosClass::Perp;
    // det of the 2x2 Gram of (s, w): |s||w| - N(Psi(s,w))
    FieldTable::Elem det = F.sub(F.mul(S.norm_value, W.norm_value), F.norm(c));
    return det != 0 ? PosClass::ND : PosClass::D;
}

// True when the 2-subspace S+W is non-degenerate (S=W counts as yes).
inline bool sum_nondeg(const HermSpace& sp, const Line& S, const Line& W) {
    if (S.rep == W.rep) return true;
    const FieldTable& F = sp.field();
    FieldTable::Elem c = sp.form_eval(S.rep, W.rep);
    return F.sub(F.mul(S.norm_value, W.norm_value), F.norm(c)) != 0;
}

// Cardinalities of the four neighbor-splitting sets over T in G(S-perp):
//   0: T + W non-degenerate
//   1: T orthogonal to W
//   2: T != W, T not orthogonal to W, T + W non-degenerate
//   3: T + W degenerate
inline std::array<Int, 4> eta_brute_all(const HermSpace& sp, const Line& S, const Line& W) {
    Subspace sperp = orth_complement(sp, line_span(sp, S));
    std::array<Int, 4> eta{0, 0, 0, 0};
    for (const Line& T : enum_lines_in(sp, sperp)) {
        bool nd = sum_nondeg(sp, T, W);
        if (nd) ++eta[0];
        else ++eta[3];
        if (sp.form_eval(T.rep, W.rep) == 0) ++eta[1];
        else if (!(T.rep == W.rep) && nd) ++eta[2];
    }
    return eta;
}

inline Int eta_brute(const HermSpace& sp, unsigned i, const Line& S, const Line& W) {
    if (i > 3) throw Error("eta_brute: index out of range");
    return eta_brute_all(sp, S, W)[i];
}

}  // namespace framelab
