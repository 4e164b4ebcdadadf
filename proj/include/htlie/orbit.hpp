#pragma once

#include <deque>
#include <map>

#include "htlie/involutions.hpp"

namespace htlie {

struct OrbitEntry {
    Word word;  // strictly increasing generator indices, empty word = seed
    Vec vec;
};

/// All 2^{r+s} products J_{i1}...J_{ik} w for i1 < ... < ik, evaluated
/// exactly. Entries are ordered by (word length, lexicographic word).
inline std::vector<OrbitEntry> generate_orbit(const CliffordRep& rep, const Vec& seed) {
    int n = rep.sig.count();
    std::vector<OrbitEntry> orbit;
    orbit.reserve(static_cast<size_t>(1) << n);
    std::map<Word, int> index;
    orbit.push_back({Word{}, seed});
    index[{}] = 0;
    // v_{(i, rest)} = J_i v_{rest}; build by increasing word length so the
    // suffix is always present.
    for (int len = 1; len <= n; ++len) {
        std::vector<Word> words;
        for (const auto& e : orbit)
            if (static_cast<int>(e.word.size()) == len - 1)
                for (int i = 1; i < (e.word.empty() ? n + 1 : e.word.front()); ++i) {
                    Word w;
                    w.push_back(i);
                    w.insert(w.end(), e.word.begin(), e.word.end());
                    words.push_back(std::move(w));
                }
        std::sort(words.begin(), words.end());
        for (const Word& w : words) {
            Word suffix(w.begin() + 1, w.end());
            const Vec& base = orbit[index.at(suffix)].vec;
            orbit.push_back({w, rep.gen(w.front()).apply(base)});
            index[w] = static_cast<int>(orbit.size()) - 1;
        }
    }
    std::stable_sort(orbit.begin(), orbit.end(), [](const OrbitEntry& a, const OrbitEntry& b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    });
    return orbit;
}

struct IntegralBasis {
    Signature sig;
    std::vector<Word> words;
    std::vector<Vec> vectors;
    std::vector<int> norms;  // +-1

    int size() const { return static_cast<int>(words.size()); }
};

namespace detail {
/// Canonical key for a vector up to sign: negated if its first nonzero
/// entry is negative; second member tells whether it was negated.
inline std::pair<std::string, bool> sign_canonical_key(const Vec& v) {
    bool flip = false;
    for (const Scalar& s : v) {
        int sg = s.sign();
        if (sg != 0) {
            flip = sg < 0;
            break;
        }
    }
    std::string key;
    for (const Scalar& s : v) {
        key += (flip ? -s : s).str();
        key += '|';
    }
    return {key, flip};
}
}  // namespace detail

/// Selects the orthonormal integral basis from an orbit: vectors equal up to
/// sign are merged (representative: shortest word, then lexicographic), every
/// class must have norm +-1, distinct classes must be orthogonal, and the
/// classes must number exactly expected_dim. Spacelike vectors come first,
/// then timelike, each sorted by word.
inline IntegralBasis select_basis(const std::vector<OrbitEntry>& orbit, const MetricSpace& M,
                                  const Signature& sig, int expected_dim) {
    std::map<std::string, int> classes;
    std::vector<const OrbitEntry*> reps;
    for (const OrbitEntry& e : orbit) {
        if (is_zero(e.vec))
            throw std::runtime_error("select_basis: orbit contains the zero vector");
        auto [key, flip] = detail::sign_canonical_key(e.vec);
        auto it = classes.find(key);
        if (it == classes.end()) {
            classes[key] = static_cast<int>(reps.size());
            reps.push_back(&e);
        }
        // Orbit entries are pre-sorted by (length, lex), so the first
        // representative seen is the canonical one.
        (void)flip;
    }
    if (static_cast<int>(reps.size()) != expected_dim)
        throw std::runtime_error("select_basis: orbit spans " + std::to_string(reps.size()) +
                                 " classes, expected " + std::to_string(expected_dim));
    // Orbit coherence: distinct classes must be exactly orthogonal.
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j)
            if (!inner(reps[i]->vec, reps[j]->vec, M).is_zero())
                throw std::runtime_error("select_basis: non-orthogonal orbit classes " +
                                         std::to_string(i) + "," + std::to_string(j));
    IntegralBasis basis;
    basis.sig = sig;
    std::vector<std::pair<const OrbitEntry*, int>> chosen;
    for (const OrbitEntry* e : reps) {
        Scalar nrm = inner(e->vec, e->vec, M);
        if (nrm == Scalar(1)) chosen.emplace_back(e, 1);
        else if (nrm == Scalar(-1)) chosen.emplace_back(e, -1);
        else throw std::runtime_error("select_basis: orbit vector norm is not +-1");
    }
    std::stable_sort(chosen.begin(), chosen.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;  // spacelike first
        if (a.first->word.size() != b.first->word.size())
            return a.first->word.size() < b.first->word.size();
        return a.first->word < b.first->word;
    });
    for (auto& [e, nrm] : chosen) {
        basis.words.push_back(e->word);
        basis.vectors.push_back(e->vec);
        basis.norms.push_back(nrm);
    }
    return basis;
}

/// Per-generator signed permutation on the basis: entry (beta, sign) at
/// position alpha means J_i v_alpha = sign * v_beta. Also enforces that no
/// two generators send the same basis vector to the same +-image.
struct ActionTable {
    std::vector<SignedPerm> action;  // one per generator, acting on basis indices

    const SignedPerm& gen(int i) const { return action.at(i - 1); }
};

inline ActionTable action_table(const CliffordRep& rep, const IntegralBasis& basis) {
    int m = basis.size();
    std::map<std::string, std::pair<int, int>> lookup;  // key -> (index, sign of stored rep)
    for (int b = 0; b < m; ++b) {
        auto [key, flip] = detail::sign_canonical_key(basis.vectors[b]);
        lookup[key] = {b, flip ? -1 : 1};
    }
    ActionTable table;
    for (int i = 1; i <= rep.sig.count(); ++i) {
        SignedPerm p;
        p.target.resize(m);
        p.sign.resize(m);
        for (int a = 0; a < m; ++a) {
            Vec u = rep.gen(i).apply(basis.vectors[a]);
            auto [key, flip] = detail::sign_canonical_key(u);
            auto it = lookup.find(key);
            if (it == lookup.end())
                throw std::runtime_error("action_table: generator image is not a basis vector");
            p.target[a] = it->second.first;
            p.sign[a] = (flip ? -1 : 1) * it->second.second;
        }
        table.action.push_back(std::move(p));
    }
    // J_{z_i} v_alpha != +- J_{z_j} v_alpha for i != j.
    for (int a = 0; a < m; ++a)
        for (size_t i = 0; i < table.action.size(); ++i)
            for (size_t j = i + 1; j < table.action.size(); ++j)
                if (table.action[i].target[a] == table.action[j].target[a])
                    throw std::runtime_error("action_table: two generators share an image vector");
    return table;
}

/// Rebuilds the representation on the span of the integral basis: generators
/// become the action-table signed permutations on R^{dim basis} and the
/// metric is read off from the basis norms. The basis itself becomes the
/// standard one (same words, unit coordinate vectors).
struct MinimalModule {
    CliffordRep rep;
    IntegralBasis basis;
    ActionTable table;
};

inline MinimalModule rebuild_on_basis(const CliffordRep& ambient, const IntegralBasis& basis) {
    ActionTable table = action_table(ambient, basis);
    CliffordRep rep;
    rep.sig = ambient.sig;
    rep.module = MetricSpace{basis.norms};
    for (const SignedPerm& p : table.action) rep.generators.push_back(Operator::from_signed_perm(p));
    rep = mark_admissible(std::move(rep));
    IntegralBasis b;
    b.sig = basis.sig;
    b.words = basis.words;
    b.norms = basis.norms;
    for (int i = 0; i < basis.size(); ++i) b.vectors.push_back(unit_vector(basis.size(), i));
    ActionTable t = action_table(rep, b);
    return MinimalModule{std::move(rep), std::move(b), std::move(t)};
}

/// Shortest-word expressions (ties broken lexicographically) for every basis
/// vector as a product of generators applied to the seed basis vector, found
/// by breadth-first search over the signed action.
inline std::vector<Word> words_from_action(const CliffordRep& rep, const ActionTable& table,
                                           int seed) {
    int m = table.action.empty() ? 0 : table.action[0].dim();
    std::vector<Word> words(m);
    std::vector<char> seen(m, 0);
    seen[seed] = 1;
    std::deque<int> queue{seed};
    while (!queue.empty()) {
        int a = queue.front();
        queue.pop_front();
        for (int i = 1; i <= rep.sig.count(); ++i) {
            int b = table.gen(i).target[a];
            if (seen[b]) continue;
            seen[b] = 1;
            Word w{i};
            w.insert(w.end(), words[a].begin(), words[a].end());
            words[b] = std::move(w);
            queue.push_back(b);
        }
    }
    for (int i = 0; i < m; ++i)
        if (!seen[i]) throw std::logic_error("words_from_action: basis vector unreachable from seed");
    return words;
}

struct StructureConstants {
    int m = 0;  // dim V
    int n = 0;  // dim Z = r+s
    std::vector<int> metric_V;            // nu^V_alpha
    std::vector<int> metric_Z;            // nu^Z_k
    std::vector<std::vector<std::vector<int>>> A;  // A[k][alpha][beta]
};

/// A^k_{ab} = nu^Z_k * nu^V_b * B^k_{ab}, where J_{z_k} v_a = sum_b B^k_{ab} v_b.
/// On an integral basis every entry lands in {-1, 0, +1}.
inline StructureConstants structure_constants(const IntegralBasis& basis, const ActionTable& table,
                                              const Signature& sig) {
    StructureConstants sc;
    sc.m = basis.size();
    sc.n = sig.count();
    sc.metric_V = basis.norms;
    for (int k = 1; k <= sc.n; ++k) sc.metric_Z.push_back(sig.z_sign(k));
    sc.A.assign(sc.n, std::vector<std::vector<int>>(sc.m, std::vector<int>(sc.m, 0)));
    for (int k = 1; k <= sc.n; ++k) {
        const SignedPerm& p = table.gen(k);
        for (int a = 0; a < sc.m; ++a) {
            int b = p.target[a];
            sc.A[k - 1][a][b] = sc.metric_Z[k - 1] * sc.metric_V[b] * p.sign[a];
        }
    }
    return sc;
}

}  // namespace htlie
