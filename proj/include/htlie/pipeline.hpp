#pragma once

#include <mutex>

#include "htlie/periodicity.hpp"

namespace htlie {

// ---------------------------------------------------------------------------
// Construction plans: how to reach an arbitrary signature.
// ---------------------------------------------------------------------------

struct PlanStep {
    enum class Kind { base, transfer, extend_s8, extend_r8, extend_p44, twist_11 } kind;
    Signature arg;  // for base: the catalog signature; otherwise the step's input signature

    std::string str() const {
        switch (kind) {
            case Kind::base: return "base" + arg.str();
            case Kind::transfer: return "transfer" + arg.str();
            case Kind::extend_s8: return "extend_s8" + arg.str();
            case Kind::extend_r8: return "extend_r8" + arg.str();
            case Kind::extend_p44: return "extend_p44" + arg.str();
            case Kind::twist_11: return "twist_11" + arg.str();
        }
        return "?";
    }
};

struct ConstructionPlan {
    Signature target;
    std::vector<PlanStep> steps;

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < steps.size(); ++i) {
            if (i) out += " -> ";
            out += steps[i].str();
        }
        return out;
    }
};

/// Deterministic dispatch: the direct catalog covers part of r+s <= 8 and the
/// rest of that range transfers from the isomorphic signature (s-1, r+1).
/// Higher sums peel off a Cl_{8,0}, Cl_{0,8} or Cl_{4,4} factor, transfer
/// first when that exposes such a factor, and otherwise fall back to the
/// Cl_{1,1} twist (which is how the two remaining r+s = 9 cases stay minimal).
inline ConstructionPlan plan(const Signature& target) {
    int r = target.r, s = target.s;
    if (r < 0 || s < 0 || r + s < 1) throw std::invalid_argument("plan: need r,s >= 0 and r+s >= 1");
    auto with_step = [&](const Signature& from, PlanStep::Kind kind) {
        ConstructionPlan p = plan(from);
        p.steps.push_back({kind, from});
        p.target = target;
        return p;
    };
    if (r + s <= 8) {
        if (has_direct_scheme(target)) return ConstructionPlan{target, {{PlanStep::Kind::base, target}}};
        return with_step({s - 1, r + 1}, PlanStep::Kind::transfer);
    }
    if (r >= 8) return with_step({r - 8, s}, PlanStep::Kind::extend_r8);
    if (s >= 8) return with_step({r, s - 8}, PlanStep::Kind::extend_s8);
    if (r >= 4 && s >= 4) {
        // The hyperbolic twist wins ties: it reaches the same dimension
        // through a much smaller tensor factor.
        if (minimal_dimension({r - 1, s - 1}) * 4 == minimal_dimension({r - 4, s - 4}) * 16)
            return with_step({r - 1, s - 1}, PlanStep::Kind::twist_11);
        return with_step({r - 4, s - 4}, PlanStep::Kind::extend_p44);
    }
    {
        int sr = s - 1, ss = r + 1;  // transfer source
        if (s >= 1 && (sr >= 8 || ss >= 8 || (sr >= 4 && ss >= 4)))
            return with_step({sr, ss}, PlanStep::Kind::transfer);
    }
    return with_step({r - 1, s - 1}, PlanStep::Kind::twist_11);
}

// ---------------------------------------------------------------------------
// End-to-end construction.
// ---------------------------------------------------------------------------

struct Construction {
    MinimalModule mod;
    StructureConstants sc;
    ConstructionPlan steps;
    bool minimal = false;
    // Catalog provenance, present when the plan starts from a direct scheme.
    InvolutionScheme scheme;
    SeedVector seed;  // seed inside the ambient module used for extraction
};

/// Hard-wired small admissible modules; other catalog signatures get a
/// tensor-product ambient module (doubled when no diagonal metric exists).
inline CliffordRep catalog_ambient(const Signature& sig) {
    if (sig == Signature{0, 1}) return base_cl01();
    if (sig == Signature{1, 0}) return base_cl10();
    if (sig == Signature{1, 1}) return base_cl11();
    if (sig == Signature{0, 2}) return base_cl02();
    if (sig == Signature{2, 0}) return base_cl20();
    return ambient_module(sig);
}

/// Runs the selection machinery for one directly catalogued signature:
/// ambient module, involution scheme, seed, orbit, basis, then the rebuilt
/// minimal module whose generators are the action-table permutations.
inline Construction construct_catalog(const Signature& sig) {
    Construction c;
    CliffordRep ambient = catalog_ambient(sig);
    c.scheme = scheme_for(sig);
    verify_scheme(ambient, c.scheme);
    SeedVector seed = common_eigenvector(ambient, c.scheme);
    c.scheme.involution_signs = seed.signs_used.empty()
                                    ? std::vector<int>(c.scheme.involutions.size(), 1)
                                    : seed.signs_used;
    std::vector<Operator> omegas, preserve;
    for (const Word& w : c.scheme.omegas) omegas.push_back(ambient.word_operator(w));
    for (size_t i = 0; i < c.scheme.involutions.size(); ++i) {
        Operator P = ambient.word_operator(c.scheme.involutions[i]);
        preserve.push_back(c.scheme.involution_signs[i] < 0 ? -P : P);
    }
    c.seed = orthogonalize_seed(seed, omegas, preserve, ambient.module);
    if (c.seed.norm != Scalar(1))
        throw std::logic_error("construct_catalog: seed norm is not 1 after orthogonalization");
    std::vector<OrbitEntry> orbit = generate_orbit(ambient, c.seed.vec);
    IntegralBasis basis =
        select_basis(orbit, ambient.module, sig, static_cast<int>(minimal_dimension(sig)));
    c.mod = rebuild_on_basis(ambient, basis);
    c.steps = ConstructionPlan{sig, {{PlanStep::Kind::base, sig}}};
    c.sc = structure_constants(c.mod.basis, c.mod.table, sig);
    c.minimal = true;
    return c;
}

/// Re-expresses a constructed module through the Cl_{r,s+1} ~ Cl_{s,r+1}
/// isomorphism. The basis vectors are carried over unchanged; only the
/// generator action and the defining words change.
inline MinimalModule transfer_module(const MinimalModule& src) {
    CliffordRep rep = transfer_phi(src.rep);
    IntegralBasis basis;
    basis.sig = rep.sig;
    basis.norms = src.basis.norms;
    for (int i = 0; i < src.basis.size(); ++i)
        basis.vectors.push_back(unit_vector(src.basis.size(), i));
    basis.words.assign(src.basis.size(), Word{});
    ActionTable table = action_table(rep, basis);
    basis.words = words_from_action(rep, table, 0);
    return MinimalModule{std::move(rep), std::move(basis), std::move(table)};
}

inline Construction construct(const Signature& target);

namespace detail {
inline const MinimalModule& extension_base(ExtendRule rule) {
    static std::mutex mu;
    static std::map<int, MinimalModule> cache;
    std::lock_guard<std::mutex> lock(mu);
    int key = static_cast<int>(rule);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, construct(extend_base_signature(rule)).mod).first;
    return it->second;
}
}  // namespace detail

/// Executes the construction plan for an arbitrary signature and re-verifies
/// every intermediate stage. The result records whether the final module has
/// the minimal admissible dimension.
inline Construction construct(const Signature& target) {
    ConstructionPlan p = plan(target);
    Construction c;
    bool first = true;
    for (const PlanStep& step : p.steps) {
        if (first && step.kind != PlanStep::Kind::base)
            throw std::logic_error("construct: plan must start from a catalog signature");
        switch (step.kind) {
            case PlanStep::Kind::base:
                c = construct_catalog(step.arg);
                break;
            case PlanStep::Kind::transfer:
                c.mod = transfer_module(c.mod);
                break;
            case PlanStep::Kind::extend_s8:
                c.mod = extend(c.mod, ExtendRule::s8, detail::extension_base(ExtendRule::s8));
                break;
            case PlanStep::Kind::extend_r8:
                c.mod = extend(c.mod, ExtendRule::r8, detail::extension_base(ExtendRule::r8));
                break;
            case PlanStep::Kind::extend_p44:
                c.mod = extend(c.mod, ExtendRule::p44, detail::extension_base(ExtendRule::p44));
                break;
            case PlanStep::Kind::twist_11:
                c.mod = extend(c.mod, ExtendRule::twist_11, detail::extension_base(ExtendRule::twist_11));
                break;
        }
        first = false;
    }
    c.steps = p;
    c.sc = structure_constants(c.mod.basis, c.mod.table, c.mod.rep.sig);
    c.minimal = (c.mod.rep.dim() == minimal_dimension(target));
    if (!(c.mod.rep.sig == target)) throw std::logic_error("construct: plan produced wrong signature");
    return c;
}

/// The explicit base representations on their minimal admissible modules,
/// all generators in signed-permutation form.
inline CliffordRep base_representation(const Signature& sig) {
    if (sig == Signature{0, 1}) return base_cl01();
    if (sig == Signature{1, 0}) return base_cl10();
    if (sig == Signature{1, 1}) return base_cl11();
    if (sig == Signature{0, 2}) return base_cl02();
    if (sig == Signature{2, 0}) return base_cl20();
    if (sig == Signature{0, 8} || sig == Signature{8, 0} || sig == Signature{4, 4})
        return construct_catalog(sig).mod.rep;
    throw std::invalid_argument("base_representation: unsupported signature " + sig.str());
}

}  // namespace htlie
