#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "htlie/linalg.hpp"

namespace htlie {

/// Clifford algebra signature: r generators with <z,z> = +1 and s with
/// <z,z> = -1. The representations satisfy J_i^2 = -<z_i,z_i> Id, so the
/// first r generators square to -Id and the last s to +Id.
struct Signature {
    int r = 0;
    int s = 0;
    int count() const { return r + s; }
    /// +1 for a generator index 1..r, -1 for r+1..r+s (1-based).
    int z_sign(int i) const { return i <= r ? 1 : -1; }
    bool operator==(const Signature& o) const { return r == o.r && s == o.s; }
    bool operator<(const Signature& o) const { return r != o.r ? r < o.r : s < o.s; }
    std::string str() const { return "(" + std::to_string(r) + "," + std::to_string(s) + ")"; }
};

using Word = std::vector<int>;  // 1-based generator indices, strictly increasing for orbit words

struct CliffordRep {
    Signature sig;
    MetricSpace module;
    std::vector<Operator> generators;
    bool admissible = false;

    int dim() const { return module.dim(); }
    const Operator& gen(int i) const { return generators.at(i - 1); }  // 1-based

    /// Evaluates a product J_{i1} ... J_{ik} (left to right).
    Operator word_operator(const Word& w) const {
        Operator acc = Operator::identity(dim());
        for (int i : w) acc = acc * gen(i);
        return acc;
    }
    Vec apply_word(const Word& w, const Vec& v) const {
        Vec out = v;
        for (auto it = w.rbegin(); it != w.rend(); ++it) out = gen(*it).apply(out);
        return out;
    }
};

struct VerificationReport {
    // (i, j, witness): J_i J_j + J_j J_i != 0, or i == j and the square is wrong.
    std::vector<std::tuple<int, int, std::string>> relation_failures;
    // (i, u, v): <J_i e_u, e_v> + <e_u, J_i e_v> != 0.
    std::vector<std::tuple<int, int, int>> skew_failures;
    enum class Neutrality { pass, fail, not_applicable } neutrality = Neutrality::not_applicable;

    bool clean() const {
        return relation_failures.empty() && skew_failures.empty() &&
               neutrality != Neutrality::fail;
    }
};

/// Checks generator squares, pairwise anticommutation, skew symmetry on the
/// standard basis, and neutrality of the module when s > 0. Exact.
inline VerificationReport verify(const CliffordRep& rep) {
    VerificationReport rpt;
    int n = rep.sig.count();
    for (int i = 1; i <= n; ++i) {
        Operator sq = rep.gen(i) * rep.gen(i);
        long expect = -rep.sig.z_sign(i);
        if (!sq.is_scalar(expect))
            rpt.relation_failures.emplace_back(i, i, "square != " + std::to_string(expect) + "*Id");
        for (int j = i + 1; j <= n; ++j)
            if (!anticommute(rep.gen(i), rep.gen(j)))
                rpt.relation_failures.emplace_back(i, j, "generators do not anticommute");
    }
    for (int i = 1; i <= n; ++i) {
        // Skewness on all pairs of standard basis vectors, via the adjoint.
        Operator adj = metric_adjoint(rep.gen(i), rep.module);
        Operator neg = -rep.gen(i);
        if (adj == neg) continue;
        for (int u = 0; u < rep.dim(); ++u)
            for (int v = 0; v < rep.dim(); ++v)
                if (adj.entry(u, v) != neg.entry(u, v)) {
                    rpt.skew_failures.emplace_back(i, u, v);
                    break;
                }
    }
    if (rep.sig.s > 0)
        rpt.neutrality = rep.module.is_neutral() ? VerificationReport::Neutrality::pass
                                                 : VerificationReport::Neutrality::fail;
    return rpt;
}

inline CliffordRep mark_admissible(CliffordRep rep) {
    VerificationReport r = verify(rep);
    if (!r.clean()) throw std::logic_error("mark_admissible: verification failed for " + rep.sig.str());
    rep.admissible = true;
    return rep;
}

// ---------------------------------------------------------------------------
// Generator models built from 2x2 blocks via iterated tensor products.
// Every generator is a signed permutation matrix.
// ---------------------------------------------------------------------------

namespace blocks {
// diag(1,-1), antidiag(1,1), antidiag with a sign: the three signed 2x2 blocks.
inline SignedPerm sigma_z() { return SignedPerm{{0, 1}, {1, -1}}; }     // e1->e1, e2->-e2
inline SignedPerm sigma_x() { return SignedPerm{{1, 0}, {1, 1}}; }      // e1<->e2
inline SignedPerm rot() { return SignedPerm{{1, 0}, {1, -1}}; }         // e1->e2, e2->-e1
}  // namespace blocks

inline SignedPerm kron(const SignedPerm& a, const SignedPerm& b) {
    int na = a.dim(), nb = b.dim();
    SignedPerm c;
    c.target.resize(na * nb);
    c.sign.resize(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            c.target[i * nb + j] = a.target[i] * nb + b.target[j];
            c.sign[i * nb + j] = a.sign[i] * b.sign[j];
        }
    return c;
}

/// Anticommuting signed-permutation generators with the squares prescribed by
/// (r,s), on a module of small power-of-two dimension. The module dimension
/// may exceed the minimal admissible dimension; the construction pipeline
/// extracts a minimal admissible sub-module afterwards.
inline std::vector<SignedPerm> tensor_generators(const Signature& sig) {
    int r = sig.r, s = sig.s;
    if (r + s < 1) throw std::invalid_argument("tensor_generators: empty signature");
    if (r >= 1 && s >= 1) {
        std::vector<SignedPerm> inner;
        if (!(r == 1 && s == 1)) inner = tensor_generators({r - 1, s - 1});
        std::vector<SignedPerm> out;
        int n = inner.empty() ? 1 : inner[0].dim();
        SignedPerm idn = SignedPerm::identity(n);
        // order: r-1 old negatives, new negative, s-1 old positives, new positive
        for (int i = 0; i < r - 1; ++i) out.push_back(kron(inner[i], blocks::sigma_z()));
        out.push_back(kron(idn, blocks::rot()));
        for (int i = 0; i < s - 1; ++i) out.push_back(kron(inner[r - 1 + i], blocks::sigma_z()));
        out.push_back(kron(idn, blocks::sigma_x()));
        return out;
    }
    if (r == 1 && s == 0) return {blocks::rot()};
    if (r == 0 && s == 1) return {SignedPerm{{0}, {1}}};  // 1-dim: z acts as +1
    if (r == 0 && s == 2) return {blocks::sigma_z(), blocks::sigma_x()};
    if (s == 0) {
        // Cl_{r,0} from Cl_{0,r-2} tensored with the quaternion model of Cl_{2,0}.
        SignedPerm q1 = kron(SignedPerm::identity(2), blocks::rot());  // left mult by i on H
        SignedPerm q2 = kron(blocks::rot(), blocks::sigma_z());        // left mult by j on H
        SignedPerm q12 = compose(q1, q2);
        std::vector<SignedPerm> out;
        if (r == 2) return {q1, q2};
        std::vector<SignedPerm> inner = tensor_generators({0, r - 2});
        for (const SignedPerm& g : inner) out.push_back(kron(g, q12));
        int n = inner[0].dim();
        out.push_back(kron(SignedPerm::identity(n), q1));
        out.push_back(kron(SignedPerm::identity(n), q2));
        return out;
    }
    // r == 0, s >= 3: Cl_{0,s} from Cl_{s-2,0} tensored with Cl_{0,2}.
    std::vector<SignedPerm> inner = tensor_generators({s - 2, 0});
    SignedPerm t12 = compose(blocks::sigma_z(), blocks::sigma_x());
    std::vector<SignedPerm> out;
    for (const SignedPerm& g : inner) out.push_back(kron(g, t12));
    int n = inner[0].dim();
    out.push_back(kron(SignedPerm::identity(n), blocks::sigma_z()));
    out.push_back(kron(SignedPerm::identity(n), blocks::sigma_x()));
    return out;
}

/// Searches for a diagonal +-1 metric making every generator skew-symmetric.
/// For a signed permutation J with J^2 = eps*Id the skew condition reads
/// d_{sigma(q)} = -eps * d_q, a 2-colouring problem solved by propagation.
inline std::optional<MetricSpace> find_diagonal_metric(const std::vector<SignedPerm>& gens,
                                                       const Signature& sig) {
    int n = gens.empty() ? 0 : gens[0].dim();
    std::vector<int> d(n, 0);
    for (int start = 0; start < n; ++start) {
        if (d[start] != 0) continue;
        d[start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (int gi = 0; gi < static_cast<int>(gens.size()); ++gi) {
                int eps = -sig.z_sign(gi + 1);  // J^2 = eps*Id
                int t = gens[gi].target[q];
                int want = -eps * d[q];
                if (t == q && want != d[q]) return std::nullopt;
                if (d[t] == 0) {
                    d[t] = want;
                    stack.push_back(t);
                } else if (d[t] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return MetricSpace{d};
}

/// Doubles a Clifford module that carries no admissible diagonal metric.
/// On V + V the generators act as diag(J, -J^T) and the natural pairing
/// between the two copies is diagonalized by the basis (e_p, +-e_p), giving
/// a neutral metric whose second block carries the opposite sign.
inline CliffordRep double_module(const CliffordRep& rep) {
    if (rep.admissible)
        throw std::invalid_argument("double_module: input is already admissible");
    int n = rep.dim();
    std::vector<Operator> gens;
    gens.reserve(rep.generators.size());
    for (const Operator& J : rep.generators) {
        const auto& m = J.dense();
        // In the diagonalizing basis: block form [[(A - A^T)/2, (A + A^T)/2],
        // [(A + A^T)/2, (A - A^T)/2]] for A the original matrix.
        std::vector<Scalar> e(static_cast<size_t>(2 * n) * (2 * n), Scalar(0));
        Scalar half(Rational(1, 2));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Scalar sym = (m.at(i, j) + m.at(j, i)) * half;
                Scalar skw = (m.at(i, j) - m.at(j, i)) * half;
                e[static_cast<size_t>(i) * 2 * n + j] = skw;
                e[static_cast<size_t>(i) * 2 * n + (j + n)] = sym;
                e[static_cast<size_t>(i + n) * 2 * n + j] = sym;
                e[static_cast<size_t>(i + n) * 2 * n + (j + n)] = skw;
            }
        gens.push_back(Operator::from_entries(2 * n, std::move(e)));
    }
    CliffordRep out;
    out.sig = rep.sig;
    out.module = MetricSpace::neutral(n, n);
    out.generators = std::move(gens);
    return mark_admissible(std::move(out));
}

/// Builds an admissible ambient module for any signature: tensor-product
/// generators plus either a propagated diagonal metric or, failing that,
/// the doubled module.
inline CliffordRep ambient_module(const Signature& sig) {
    std::vector<SignedPerm> gens = tensor_generators(sig);
    CliffordRep rep;
    rep.sig = sig;
    for (const SignedPerm& g : gens) rep.generators.push_back(Operator::from_signed_perm(g));
    std::optional<MetricSpace> metric = find_diagonal_metric(gens, sig);
    if (metric) {
        rep.module = *metric;
        return mark_admissible(std::move(rep));
    }
    rep.module = MetricSpace::euclidean(gens[0].dim());  // placeholder, not admissible
    return double_module(rep);
}

// ---------------------------------------------------------------------------
// The isomorphism Cl_{r,s+1} ~ Cl_{s,r+1} acting on representations.
// ---------------------------------------------------------------------------

/// Given an admissible representation of Cl_{s,r+1}, produces the
/// representation of Cl_{r,s+1} on the same module with the same metric:
/// writing a_1..a_s, b_1..b_{r+1} for the source generators, the images are
///   z_i      -> J_{b_i} J_{b_{r+1}}   (i = 1..r)
///   zeta_j   -> J_{a_j} J_{b_{r+1}}   (j = 1..s)
///   zeta_s+1 -> J_{b_{r+1}}.
inline CliffordRep transfer_phi(const CliffordRep& source) {
    if (!source.admissible) throw std::invalid_argument("transfer_phi: source not admissible");
    int s = source.sig.r;
    int r = source.sig.s - 1;
    if (r < 0) throw std::invalid_argument("transfer_phi: source needs at least one negative generator");
    const Operator& last = source.gen(s + r + 1);
    CliffordRep out;
    out.sig = Signature{r, s + 1};
    out.module = source.module;
    for (int i = 1; i <= r; ++i) out.generators.push_back(source.gen(s + i) * last);
    for (int j = 1; j <= s; ++j) out.generators.push_back(source.gen(j) * last);
    out.generators.push_back(last);
    return mark_admissible(std::move(out));
}

// ---------------------------------------------------------------------------
// Fixed base models used by the twisted tensor constructions.
// ---------------------------------------------------------------------------

inline Operator op4(std::initializer_list<long> rows) {
    std::vector<Scalar> e;
    e.reserve(16);
    for (long v : rows) e.push_back(Scalar(v));
    return Operator::from_entries(4, std::move(e));
}

/// The 4-dimensional admissible Cl_{1,1}-module on R^{2,2}:
/// J_x e1 = e2, J_y e1 = e3, with J_x^2 = -Id, J_y^2 = Id.
inline CliffordRep base_cl11() {
    CliffordRep rep;
    rep.sig = {1, 1};
    rep.module = MetricSpace::neutral(2, 2);
    rep.generators = {
        op4({0, -1, 0, 0,
             1, 0, 0, 0,
             0, 0, 0, 1,
             0, 0, -1, 0}),
        op4({0, 0, 1, 0,
             0, 0, 0, 1,
             1, 0, 0, 0,
             0, 1, 0, 0}),
    };
    return mark_admissible(std::move(rep));
}

/// The 4-dimensional admissible Cl_{0,2}-module on R^{2,2}:
/// J_1 e1 = e3, J_2 e1 = e4, J_1 J_2 e1 = e2.
inline CliffordRep base_cl02() {
    CliffordRep rep;
    rep.sig = {0, 2};
    rep.module = MetricSpace::neutral(2, 2);
    rep.generators = {
        op4({0, 0, 1, 0,
             0, 0, 0, 1,
             1, 0, 0, 0,
             0, 1, 0, 0}),
        op4({0, 0, 0, 1,
             0, 0, -1, 0,
             0, -1, 0, 0,
             1, 0, 0, 0}),
    };
    return mark_admissible(std::move(rep));
}

/// Cl_{0,1} on R^{1,1}: one generator swapping the basis vectors.
inline CliffordRep base_cl01() {
    CliffordRep rep;
    rep.sig = {0, 1};
    rep.module = MetricSpace::neutral(1, 1);
    rep.generators = {Operator::from_signed_perm(blocks::sigma_x())};
    return mark_admissible(std::move(rep));
}

/// Cl_{1,0} on R^{2,0}: one rotation generator.
inline CliffordRep base_cl10() {
    CliffordRep rep;
    rep.sig = {1, 0};
    rep.module = MetricSpace::euclidean(2);
    rep.generators = {Operator::from_signed_perm(blocks::rot())};
    return mark_admissible(std::move(rep));
}

/// Cl_{2,0} on R^{4,0}: left multiplication by i and j on the quaternions.
inline CliffordRep base_cl20() {
    CliffordRep rep;
    rep.sig = {2, 0};
    rep.module = MetricSpace::euclidean(4);
    rep.generators = {
        Operator::from_signed_perm(kron(SignedPerm::identity(2), blocks::rot())),
        Operator::from_signed_perm(kron(blocks::rot(), blocks::sigma_z())),
    };
    return mark_admissible(std::move(rep));
}

}  // namespace htlie
