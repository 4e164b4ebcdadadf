#pragma once

#include "htlie/orbit.hpp"

namespace htlie {

// ---------------------------------------------------------------------------
// Minimal admissible dimensions.
// ---------------------------------------------------------------------------

/// Real dimension of an irreducible Cl_{r,s}-module, from the matrix-algebra
/// classification: the algebra type depends on (s - r) mod 8 and the size
/// grows with r+s; R(n) and R(n)+R(n) give n, C(n) gives 2n, H(n) and
/// H(n)+H(n) give 4n.
inline long irreducible_dimension(const Signature& sig) {
    int m = sig.count();
    int d = ((sig.s - sig.r) % 8 + 8) % 8;
    int exponent;
    switch (d) {
        case 0:
        case 2: exponent = m / 2; break;
        case 1: exponent = (m - 1) / 2; break;
        case 3:
        case 5:
        case 7: exponent = (m + 1) / 2; break;
        default: exponent = (m + 2) / 2; break;  // d == 4 or 6
    }
    return 1L << exponent;
}

/// Whether the minimal admissible module doubles the irreducible one.
/// Invariant under (r,s) -> (r-8,s), (r,s-8), (r-4,s-4); the base pattern for
/// representatives with r,s <= 7 and min(r,s) <= 3 is tabulated.
inline bool doubles_irreducible(const Signature& sig) {
    int r = sig.r, s = sig.s;
    for (;;) {
        if (r >= 8) { r -= 8; continue; }
        if (s >= 8) { s -= 8; continue; }
        if (r >= 4 && s >= 4) { r -= 4; s -= 4; continue; }
        break;
    }
    static const bool table[8][8] = {
        // s:  0      1      2      3      4      5      6      7
        {false, true,  true,  true,  false, true,  false, false},  // r = 0
        {false, true,  true,  true,  false, false, false, false},  // r = 1
        {false, true,  true,  true,  false, false, false, true},   // r = 2
        {false, false, false, false, false, false, false, false},  // r = 3
        {false, true,  false, false, false, false, false, false},  // r = 4
        {false, false, false, false, false, false, false, false},  // r = 5
        {false, false, false, true,  false, false, false, false},  // r = 6
        {false, false, false, false, false, false, false, false},  // r = 7
    };
    return table[r][s];
}

/// Dimension of the minimal admissible Cl_{r,s}-module.
inline long minimal_dimension(const Signature& sig) {
    if (sig.count() < 1) throw std::invalid_argument("minimal_dimension: r+s must be >= 1");
    return irreducible_dimension(sig) * (doubles_irreducible(sig) ? 2 : 1);
}

// ---------------------------------------------------------------------------
// Volume-form and twist endomorphisms.
// ---------------------------------------------------------------------------

enum class EndoKind { E_08, E_80, E_44, F_twist02, F_twist11 };

struct ExtensionEndomorphism {
    EndoKind kind;
    Operator op;
};

/// The endomorphism used to twist a tensor extension:
///  - on the Cl_{0,8}, Cl_{8,0} and Cl_{4,4} base modules, the volume form
///    J_1...J_8 (squares to Id, anticommutes with every generator, symmetric);
///  - on the Cl_{0,2} base module the fixed symmetric anti-involution that
///    anticommutes with both generators (and differs from +-J_1 J_2);
///  - on the Cl_{1,1} base module the fixed symmetric involution that
///    anticommutes with both generators (and differs from +-J_x J_y).
inline ExtensionEndomorphism volume_endomorphism(const CliffordRep& rep, EndoKind kind) {
    Operator E = Operator::identity(rep.dim());
    long expected_square = 1;
    switch (kind) {
        case EndoKind::E_08:
            if (!(rep.sig == Signature{0, 8})) throw std::invalid_argument("volume_endomorphism: expected Cl_{0,8}");
            break;
        case EndoKind::E_80:
            if (!(rep.sig == Signature{8, 0})) throw std::invalid_argument("volume_endomorphism: expected Cl_{8,0}");
            break;
        case EndoKind::E_44:
            if (!(rep.sig == Signature{4, 4})) throw std::invalid_argument("volume_endomorphism: expected Cl_{4,4}");
            break;
        case EndoKind::F_twist02:
            if (!(rep.sig == Signature{0, 2})) throw std::invalid_argument("volume_endomorphism: expected Cl_{0,2}");
            expected_square = -1;
            break;
        case EndoKind::F_twist11:
            if (!(rep.sig == Signature{1, 1})) throw std::invalid_argument("volume_endomorphism: expected Cl_{1,1}");
            break;
    }
    if (kind == EndoKind::F_twist02) {
        E = op4({0, 0, 1, 0,
                 0, 0, 0, -1,
                 -1, 0, 0, 0,
                 0, 1, 0, 0});
    } else if (kind == EndoKind::F_twist11) {
        E = op4({1, 0, 0, 0,
                 0, -1, 0, 0,
                 0, 0, -1, 0,
                 0, 0, 0, 1});
    } else {
        for (const Operator& J : rep.generators) E = E * J;
    }
    if (!(E * E).is_scalar(expected_square))
        throw std::logic_error("volume_endomorphism: wrong square");
    for (const Operator& J : rep.generators)
        if (!anticommute(E, J))
            throw std::logic_error("volume_endomorphism: does not anticommute with a generator");
    if (!is_symmetric_wrt(E, rep.module))
        throw std::logic_error("volume_endomorphism: not symmetric");
    if (kind == EndoKind::F_twist02 || kind == EndoKind::F_twist11) {
        Operator prod = rep.gen(1) * rep.gen(2);
        if (E == prod || E == -prod)
            throw std::logic_error("volume_endomorphism: twist coincides with the generator product");
    }
    return ExtensionEndomorphism{kind, std::move(E)};
}

// ---------------------------------------------------------------------------
// Tensor-product extensions of constructed modules.
// ---------------------------------------------------------------------------

enum class ExtendRule { s8, r8, p44, twist_0n2, twist_11 };

inline Signature extend_target(const Signature& v, ExtendRule rule) {
    switch (rule) {
        case ExtendRule::s8: return {v.r, v.s + 8};
        case ExtendRule::r8: return {v.r + 8, v.s};
        case ExtendRule::p44: return {v.r + 4, v.s + 4};
        case ExtendRule::twist_0n2:
            if (v.s != 0) throw std::invalid_argument("extend: twist_0n2 needs a Cl_{n,0}-module");
            return {0, v.r + 2};
        case ExtendRule::twist_11: return {v.r + 1, v.s + 1};
    }
    throw std::logic_error("extend_target: unreachable");
}

inline Signature extend_base_signature(ExtendRule rule) {
    switch (rule) {
        case ExtendRule::s8: return {0, 8};
        case ExtendRule::r8: return {8, 0};
        case ExtendRule::p44: return {4, 4};
        case ExtendRule::twist_0n2: return {0, 2};
        case ExtendRule::twist_11: return {1, 1};
    }
    throw std::logic_error("extend_base_signature: unreachable");
}

inline EndoKind extend_endo_kind(ExtendRule rule) {
    switch (rule) {
        case ExtendRule::s8: return EndoKind::E_08;
        case ExtendRule::r8: return EndoKind::E_80;
        case ExtendRule::p44: return EndoKind::E_44;
        case ExtendRule::twist_0n2: return EndoKind::F_twist02;
        case ExtendRule::twist_11: return EndoKind::F_twist11;
    }
    throw std::logic_error("extend_endo_kind: unreachable");
}

/// Checks that the orthogonal complement of an admissible sub-module spanned
/// by the given orthonormal vectors is again a sub-module with non-degenerate
/// restricted product. Used when an extension overshoots the minimal
/// dimension: the result is flagged non-minimal and this existence check is
/// the guarantee that minimal pieces split off.
inline bool admissible_complement_exists(const CliffordRep& rep, const std::vector<Vec>& w_basis_in) {
    int n = rep.dim();
    // Spans are scale-invariant: vectors normalized by sqrt 2 are rescaled
    // back to rational coordinates for the kernel computation.
    std::vector<Vec> w_basis;
    for (const Vec& w : w_basis_in) {
        bool rational = true;
        for (const Scalar& x : w) rational = rational && x.is_rational();
        if (rational) {
            w_basis.push_back(w);
        } else {
            Vec scaled = scale(w, Scalar(Rational(0), Rational(1), 2));
            for (const Scalar& x : scaled)
                if (!x.is_rational())
                    throw std::domain_error("admissible_complement_exists: irrational span");
            w_basis.push_back(std::move(scaled));
        }
    }
    std::vector<Vec> rows;
    for (const Vec& w : w_basis) {
        Vec row(n);
        for (int j = 0; j < n; ++j) row[j] = Scalar(rep.module.signs[j]) * w[j];
        rows.push_back(std::move(row));  // <w, x> = 0 as a linear constraint on x
    }
    std::vector<Vec> comp = rational_kernel(n, rows);
    if (comp.size() + w_basis.size() != static_cast<size_t>(n)) return false;
    // invariance: J_k maps the complement into the complement
    for (const Operator& J : rep.generators)
        for (const Vec& u : comp) {
            Vec img = J.apply(u);
            for (const Vec& w : w_basis)
                if (!inner(img, w, rep.module).is_zero()) return false;
        }
    // non-degeneracy of the restricted product: the Gram matrix of the
    // complement basis has trivial kernel
    int c = static_cast<int>(comp.size());
    std::vector<Vec> gram(c, Vec(c, Scalar(0)));
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) gram[i][j] = inner(comp[i], comp[j], rep.module);
    return rational_kernel(c, gram).empty();
}

/// Tensor extension of an admissible integral module V by one of the fixed
/// base modules U, with the twisted generator assignment
///   old generators -> J (x) E,   new generators -> Id (x) J_U.
/// The product of integral bases is integral; the result is re-expressed on
/// the product basis (spacelike part first) with freshly computed words.
inline MinimalModule extend(const MinimalModule& V, ExtendRule rule, const MinimalModule& U) {
    if (!V.rep.admissible || !U.rep.admissible)
        throw std::invalid_argument("extend: inputs must be admissible");
    if (!(U.rep.sig == extend_base_signature(rule)))
        throw std::invalid_argument("extend: base module has the wrong signature");
    Signature target = extend_target(V.rep.sig, rule);
    ExtensionEndomorphism endo = volume_endomorphism(U.rep, extend_endo_kind(rule));
    const SignedPerm& E = endo.op.sparse();

    int nv = V.rep.dim(), nu = U.rep.dim();
    SignedPerm idv = SignedPerm::identity(nv), idu = SignedPerm::identity(nu);
    auto oldgen = [&](int i) { return kron(V.rep.gen(i).sparse(), E); };
    auto newgen = [&](int j) { return kron(idv, U.rep.gen(j).sparse()); };

    std::vector<SignedPerm> gens;
    int r = V.rep.sig.r, s = V.rep.sig.s;
    switch (rule) {
        case ExtendRule::s8:
            for (int i = 1; i <= r + s; ++i) gens.push_back(oldgen(i));
            for (int j = 1; j <= 8; ++j) gens.push_back(newgen(j));
            break;
        case ExtendRule::r8:
            for (int i = 1; i <= r; ++i) gens.push_back(oldgen(i));
            for (int j = 1; j <= 8; ++j) gens.push_back(newgen(j));
            for (int i = r + 1; i <= r + s; ++i) gens.push_back(oldgen(i));
            break;
        case ExtendRule::p44:
            for (int i = 1; i <= r; ++i) gens.push_back(oldgen(i));
            for (int j = 1; j <= 4; ++j) gens.push_back(newgen(j));
            for (int i = r + 1; i <= r + s; ++i) gens.push_back(oldgen(i));
            for (int j = 5; j <= 8; ++j) gens.push_back(newgen(j));
            break;
        case ExtendRule::twist_0n2:
            for (int i = 1; i <= r; ++i) gens.push_back(oldgen(i));
            for (int j = 1; j <= 2; ++j) gens.push_back(newgen(j));
            break;
        case ExtendRule::twist_11:
            for (int i = 1; i <= r; ++i) gens.push_back(oldgen(i));
            gens.push_back(newgen(1));
            for (int i = r + 1; i <= r + s; ++i) gens.push_back(oldgen(i));
            gens.push_back(newgen(2));
            break;
    }

    // Product metric and basis reordering: spacelike part first, stable in
    // the (alpha, p) lexicographic product order.
    int n = nv * nu;
    std::vector<int> signs(n);
    for (int a = 0; a < nv; ++a)
        for (int p = 0; p < nu; ++p)
            signs[a * nu + p] = V.rep.module.signs[a] * U.rep.module.signs[p];
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return signs[x] > signs[y]; });
    std::vector<int> position(n);
    for (int i = 0; i < n; ++i) position[order[i]] = i;

    CliffordRep rep;
    rep.sig = target;
    std::vector<int> sorted_signs(n);
    for (int i = 0; i < n; ++i) sorted_signs[i] = signs[order[i]];
    rep.module = MetricSpace{sorted_signs};
    for (const SignedPerm& g : gens) {
        SignedPerm h;
        h.target.resize(n);
        h.sign.resize(n);
        for (int x = 0; x < n; ++x) {
            h.target[position[x]] = position[g.target[x]];
            h.sign[position[x]] = g.sign[x];
        }
        rep.generators.push_back(Operator::from_signed_perm(h));
    }
    rep = mark_admissible(std::move(rep));

    IntegralBasis basis;
    basis.sig = target;
    basis.norms = sorted_signs;
    for (int i = 0; i < n; ++i) basis.vectors.push_back(unit_vector(n, i));
    basis.words.assign(n, Word{});
    ActionTable table = action_table(rep, basis);
    int seed_v = 0, seed_u = 0;  // both bases list their seed first
    int seed = position[seed_v * nu + seed_u];
    basis.words = words_from_action(rep, table, seed);
    return MinimalModule{std::move(rep), std::move(basis), std::move(table)};
}

}  // namespace htlie
