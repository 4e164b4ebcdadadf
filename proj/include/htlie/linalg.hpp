#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "htlie/scalar.hpp"

namespace htlie {

using Vec = std::vector<Scalar>;

/// Scalar-product space R^{p,q} given by a diagonal sign vector.
struct MetricSpace {
    std::vector<int> signs;  // entries +1 or -1

    int dim() const { return static_cast<int>(signs.size()); }
    int positives() const {
        int c = 0;
        for (int s : signs) c += (s > 0);
        return c;
    }
    bool is_neutral() const { return 2 * positives() == dim(); }
    static MetricSpace euclidean(int n) { return MetricSpace{std::vector<int>(n, 1)}; }
    static MetricSpace neutral(int n_pos, int n_neg) {
        std::vector<int> s(n_pos, 1);
        s.insert(s.end(), n_neg, -1);
        return MetricSpace{s};
    }
    bool operator==(const MetricSpace& o) const { return signs == o.signs; }
};

inline Scalar inner(const Vec& u, const Vec& v, const MetricSpace& M) {
    if (static_cast<int>(u.size()) != M.dim() || static_cast<int>(v.size()) != M.dim())
        throw std::invalid_argument("inner: dimension mismatch");
    Scalar acc(0);
    for (int i = 0; i < M.dim(); ++i) {
        if (u[i].is_zero() || v[i].is_zero()) continue;
        Scalar t = u[i] * v[i];
        acc += (M.signs[i] > 0 ? t : -t);
    }
    return acc;
}

/// A linear map sending each basis vector to +-(another basis vector):
/// column j goes to sign[j] * e_{target[j]}.
struct SignedPerm {
    std::vector<int> target;
    std::vector<int> sign;

    int dim() const { return static_cast<int>(target.size()); }

    static SignedPerm identity(int n) {
        SignedPerm p;
        p.target.resize(n);
        p.sign.assign(n, 1);
        for (int i = 0; i < n; ++i) p.target[i] = i;
        return p;
    }
    SignedPerm negated() const {
        SignedPerm p = *this;
        for (int& s : p.sign) s = -s;
        return p;
    }
    /// (a o b): apply b first, then a.
    friend SignedPerm compose(const SignedPerm& a, const SignedPerm& b) {
        SignedPerm c;
        int n = b.dim();
        c.target.resize(n);
        c.sign.resize(n);
        for (int j = 0; j < n; ++j) {
            c.target[j] = a.target[b.target[j]];
            c.sign[j] = a.sign[b.target[j]] * b.sign[j];
        }
        return c;
    }
    bool operator==(const SignedPerm& o) const { return target == o.target && sign == o.sign; }
    bool is_identity() const { return *this == identity(dim()); }
    bool is_negated_identity() const { return *this == identity(dim()).negated(); }

    Vec apply(const Vec& v) const {
        Vec out(dim(), Scalar(0));
        for (int j = 0; j < dim(); ++j) {
            if (v[j].is_zero()) continue;
            out[target[j]] = (sign[j] > 0 ? v[j] : -v[j]);
        }
        return out;
    }
};

namespace detail {
struct DenseMatrix {
    int n = 0;
    std::vector<Scalar> e;  // row-major

    DenseMatrix() = default;
    explicit DenseMatrix(int n_) : n(n_), e(static_cast<size_t>(n_) * n_, Scalar(0)) {}
    Scalar& at(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }
    const Scalar& at(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }
};
}  // namespace detail

/// Exact dense linear operator with an optional signed-permutation form.
/// The dense entries are the source of truth; when the sparse form is
/// attached it has been checked to expand to exactly the same entries.
class Operator {
public:
    Operator() = default;

    static Operator from_entries(int n, std::vector<Scalar> entries) {
        Operator op;
        op.dim_ = n;
        op.dense_ = std::make_shared<detail::DenseMatrix>();
        op.dense_->n = n;
        op.dense_->e = std::move(entries);
        if (op.dense_->e.size() != static_cast<size_t>(n) * n)
            throw std::invalid_argument("Operator: entry count mismatch");
        op.sparse_ = detect_signed_perm(*op.dense_);
        return op;
    }

    static Operator from_signed_perm(SignedPerm p) {
        Operator op;
        op.dim_ = p.dim();
        op.sparse_ = std::move(p);
        return op;
    }

    int dim() const { return dim_; }
    bool has_sparse() const { return sparse_.has_value(); }
    const SignedPerm& sparse() const {
        if (!sparse_) throw std::logic_error("Operator: no signed-permutation form");
        return *sparse_;
    }

    const detail::DenseMatrix& dense() const {
        if (!dense_) {
            auto m = std::make_shared<detail::DenseMatrix>(dim_);
            for (int j = 0; j < dim_; ++j)
                m->at(sparse_->target[j], j) = Scalar(sparse_->sign[j]);
            dense_ = std::move(m);
        }
        return *dense_;
    }

    Scalar entry(int i, int j) const {
        if (dense_) return dense_->at(i, j);
        return sparse_->target[j] == i ? Scalar(sparse_->sign[j]) : Scalar(0);
    }

    /// Confirms the sparse form expands exactly to the dense entries.
    bool sparse_matches_dense() const {
        if (!sparse_) return true;
        const auto& m = dense();
        for (int j = 0; j < dim_; ++j)
            for (int i = 0; i < dim_; ++i) {
                Scalar expect = (sparse_->target[j] == i) ? Scalar(sparse_->sign[j]) : Scalar(0);
                if (m.at(i, j) != expect) return false;
            }
        return true;
    }

    Vec apply(const Vec& v) const {
        if (static_cast<int>(v.size()) != dim_)
            throw std::invalid_argument("apply: dimension mismatch");
        if (sparse_) return sparse_->apply(v);
        const auto& m = *dense_;
        Vec out(dim_, Scalar(0));
        for (int j = 0; j < dim_; ++j) {
            if (v[j].is_zero()) continue;
            for (int i = 0; i < dim_; ++i) {
                const Scalar& a = m.at(i, j);
                if (!a.is_zero()) out[i] += a * v[j];
            }
        }
        return out;
    }

    friend Operator operator*(const Operator& A, const Operator& B) {
        if (A.dim() != B.dim()) throw std::invalid_argument("operator*: dimension mismatch");
        if (A.sparse_ && B.sparse_) return from_signed_perm(compose(*A.sparse_, *B.sparse_));
        int n = A.dim();
        detail::DenseMatrix c(n);
        const auto& a = A.dense();
        const auto& b = B.dense();
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    const Scalar& bkj = b.at(k, j);
                    if (!bkj.is_zero()) c.at(i, j) += aik * bkj;
                }
            }
        Operator op;
        op.dim_ = n;
        op.dense_ = std::make_shared<detail::DenseMatrix>(std::move(c));
        op.sparse_ = detect_signed_perm(*op.dense_);
        return op;
    }

    Operator operator-() const {
        if (sparse_) return from_signed_perm(sparse_->negated());
        detail::DenseMatrix m = dense();
        for (auto& x : m.e) x = -x;
        Operator op;
        op.dim_ = dim_;
        op.dense_ = std::make_shared<detail::DenseMatrix>(std::move(m));
        op.sparse_ = detect_signed_perm(*op.dense_);
        return op;
    }

    friend bool operator==(const Operator& A, const Operator& B) {
        if (A.dim() != B.dim()) return false;
        if (A.sparse_ && B.sparse_) return *A.sparse_ == *B.sparse_;
        for (int i = 0; i < A.dim(); ++i)
            for (int j = 0; j < A.dim(); ++j)
                if (A.entry(i, j) != B.entry(i, j)) return false;
        return true;
    }

    static Operator identity(int n) { return from_signed_perm(SignedPerm::identity(n)); }

    bool is_identity() const {
        if (sparse_) return sparse_->is_identity();
        return *this == identity(dim_);
    }
    bool is_scalar(long c) const {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                if (entry(i, j) != (i == j ? Scalar(c) : Scalar(0))) return false;
        return true;
    }

private:
    static std::optional<SignedPerm> detect_signed_perm(const detail::DenseMatrix& m) {
        SignedPerm p;
        int n = m.n;
        p.target.assign(n, -1);
        p.sign.assign(n, 0);
        std::vector<char> hit(n, 0);
        for (int j = 0; j < n; ++j) {
            int row = -1;
            for (int i = 0; i < n; ++i) {
                const Scalar& a = m.at(i, j);
                if (a.is_zero()) continue;
                if (row >= 0) return std::nullopt;
                if (a != Scalar(1) && a != Scalar(-1)) return std::nullopt;
                row = i;
                p.sign[j] = (a == Scalar(1)) ? 1 : -1;
            }
            if (row < 0 || hit[row]) return std::nullopt;
            hit[row] = 1;
            p.target[j] = row;
        }
        return p;
    }

    int dim_ = 0;
    mutable std::shared_ptr<detail::DenseMatrix> dense_;
    std::optional<SignedPerm> sparse_;
};

inline Vec apply(const Operator& op, const Vec& v) { return op.apply(v); }

/// The metric adjoint A* with <A u, v> = <u, A* v>, i.e. A* = D A^T D.
inline Operator metric_adjoint(const Operator& A, const MetricSpace& M) {
    if (A.dim() != M.dim()) throw std::invalid_argument("metric_adjoint: dimension mismatch");
    int n = A.dim();
    if (A.has_sparse()) {
        const SignedPerm& p = A.sparse();
        SignedPerm q;
        q.target.assign(n, -1);
        q.sign.assign(n, 0);
        for (int j = 0; j < n; ++j) {
            q.target[p.target[j]] = j;
            q.sign[p.target[j]] = p.sign[j] * M.signs[j] * M.signs[p.target[j]];
        }
        return Operator::from_signed_perm(q);
    }
    std::vector<Scalar> e(static_cast<size_t>(n) * n, Scalar(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar t = A.entry(j, i);
            if (t.is_zero()) continue;
            if (M.signs[i] * M.signs[j] < 0) t = -t;
            e[static_cast<size_t>(i) * n + j] = t;
        }
    return Operator::from_entries(n, std::move(e));
}

inline bool is_symmetric_wrt(const Operator& A, const MetricSpace& M) {
    return metric_adjoint(A, M) == A;
}
inline bool is_skew_wrt(const Operator& A, const MetricSpace& M) {
    return metric_adjoint(A, M) == -A;
}
inline bool is_involution(const Operator& A) { return (A * A).is_scalar(1); }
inline bool is_anti_involution(const Operator& A) { return (A * A).is_scalar(-1); }

/// T is an isometry iff T* T = Id, an anti-isometry iff T* T = -Id.
inline bool is_isometry(const Operator& T, const MetricSpace& M) {
    return (metric_adjoint(T, M) * T).is_scalar(1);
}
inline bool is_anti_isometry(const Operator& T, const MetricSpace& M) {
    return (metric_adjoint(T, M) * T).is_scalar(-1);
}

inline bool anticommute(const Operator& A, const Operator& B) {
    return (A * B) == -(B * A);
}
inline bool commute(const Operator& A, const Operator& B) {
    return (A * B) == (B * A);
}

/// Kernel basis of a matrix with rational entries, by fraction-free
/// (Bareiss) elimination after clearing denominators row by row.
/// Rows are the constraint vectors; returns exact basis vectors of the kernel.
inline std::vector<Vec> rational_kernel(int n, const std::vector<Vec>& rows) {
    // Integer working copy: scale each row to integer entries.
    std::vector<std::vector<mpz_class>> a;
    a.reserve(rows.size());
    for (const Vec& r : rows) {
        mpz_class l = 1;
        for (const Scalar& s : r) {
            if (!s.is_rational()) throw std::domain_error("rational_kernel: surd entry");
            l = lcm(l, s.as_rational().get_den());
        }
        std::vector<mpz_class> row(n);
        bool nonzero = false;
        for (int j = 0; j < n; ++j) {
            Rational q = r[j].as_rational() * Rational(l);
            q.canonicalize();
            row[j] = q.get_num();
            if (row[j] != 0) nonzero = true;
        }
        if (nonzero) a.push_back(std::move(row));
    }
    int m = static_cast<int>(a.size());
    std::vector<int> pivot_col;
    mpz_class prev = 1;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int p = -1;
        for (int i = row; i < m; ++i)
            if (a[i][col] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[row], a[p]);
        for (int i = row + 1; i < m; ++i) {
            for (int j = col + 1; j < n; ++j)
                a[i][j] = (a[row][col] * a[i][j] - a[i][col] * a[row][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[row][col];
        pivot_col.push_back(col);
        ++row;
    }
    int rank = row;
    // Back-substitution per free column.
    std::vector<char> is_pivot(n, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    std::vector<Vec> basis;
    for (int fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rational> x(n, Rational(0));
        x[fc] = 1;
        for (int i = rank - 1; i >= 0; --i) {
            int pc = pivot_col[i];
            Rational acc(0);
            for (int j = pc + 1; j < n; ++j)
                if (x[j] != 0) acc += Rational(a[i][j]) * x[j];
            x[pc] = -acc / Rational(a[i][pc]);
            x[pc].canonicalize();
        }
        // Clear denominators for a tidy integer basis vector.
        mpz_class l = 1;
        for (const auto& q : x) l = lcm(l, q.get_den());
        Vec v(n, Scalar(0));
        for (int j = 0; j < n; ++j) {
            Rational q = x[j] * Rational(l);
            q.canonicalize();
            v[j] = Scalar(q);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Exact eigenspace basis of an involution for eigenvalue +1 or -1.
inline std::vector<Vec> eigenspace(const Operator& op, int eigenvalue) {
    if (eigenvalue != 1 && eigenvalue != -1)
        throw std::invalid_argument("eigenspace: eigenvalue must be +1 or -1");
    if (!is_involution(op)) throw std::invalid_argument("eigenspace: operator is not an involution");
    int n = op.dim();
    std::vector<Vec> rows(n, Vec(n, Scalar(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar e = op.entry(i, j);
            if (i == j) e -= Scalar(eigenvalue);
            rows[i][j] = e;
        }
    return rational_kernel(n, rows);
}

inline Vec unit_vector(int n, int i) {
    Vec v(n, Scalar(0));
    v[i] = Scalar(1);
    return v;
}

inline Vec add(const Vec& u, const Vec& v) {
    Vec w(u.size());
    for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
    return w;
}
inline Vec scale(const Vec& u, const Scalar& c) {
    Vec w(u.size());
    for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] * c;
    return w;
}
inline Vec negate(const Vec& u) {
    Vec w(u.size());
    for (size_t i = 0; i < u.size(); ++i) w[i] = -u[i];
    return w;
}
inline bool is_zero(const Vec& u) {
    for (const Scalar& s : u)
        if (!s.is_zero()) return false;
    return true;
}

}  // namespace htlie
