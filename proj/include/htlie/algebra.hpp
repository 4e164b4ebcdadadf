#pragma once

#include <numeric>
#include <sstream>

#include <json.hpp>

#include "htlie/pipeline.hpp"

namespace htlie {

using Json = nlohmann::ordered_json;

/// Two-step nilpotent Lie algebra V + Z with orthonormal basis
/// {v_1..v_m, z_1..z_n}, bracket [v_a, v_b] = sum_k A^k_{ab} z_k and Z
/// central. The scalar product restricts to the recorded sign vectors.
struct HTypeAlgebra {
    int r = 0, s = 0;  // signature of Z
    int m = 0, n = 0;
    std::vector<int> metric_V;
    std::vector<int> metric_Z;
    StructureConstants brackets;
    std::vector<Word> basis_words;
};

inline HTypeAlgebra build_algebra(const Construction& c) {
    HTypeAlgebra alg;
    alg.r = c.mod.rep.sig.r;
    alg.s = c.mod.rep.sig.s;
    alg.m = c.sc.m;
    alg.n = c.sc.n;
    alg.metric_V = c.sc.metric_V;
    alg.metric_Z = c.sc.metric_Z;
    alg.brackets = c.sc;
    alg.basis_words = c.mod.basis.words;
    return alg;
}

// ---------------------------------------------------------------------------
// Verification of the defining identities.
// ---------------------------------------------------------------------------

struct AlgebraReport {
    std::vector<std::string> failures;
    bool clean() const { return failures.empty(); }
    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

/// Rebuilds J_{z_k} from the structure constants via
/// B^k_{ab} = nu^Z_k nu^V_b A^k_{ab} and returns the matrix acting on V.
inline Operator reconstruct_action(const HTypeAlgebra& alg, int k) {
    int m = alg.m;
    std::vector<Scalar> e(static_cast<size_t>(m) * m, Scalar(0));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int v = alg.metric_Z[k - 1] * alg.metric_V[b] * alg.brackets.A[k - 1][a][b];
            if (v != 0) e[static_cast<size_t>(b) * m + a] = Scalar(v);  // column a -> sum_b B e_b
        }
    return Operator::from_entries(m, std::move(e));
}

/// Checks every defining identity of a general H-type algebra on the given
/// data: integrality and antisymmetry of A, centrality/Jacobi (trivial for
/// two-step brackets, still evaluated), the Clifford relations and skew
/// symmetry of the reconstructed action, the orthogonality condition for
/// generators and for a non-generator linear combination, and, when the
/// source representation is supplied, agreement with its action.
inline AlgebraReport verify_htype(const HTypeAlgebra& alg, const CliffordRep* rep = nullptr) {
    AlgebraReport rpt;
    int m = alg.m, n = alg.n;
    rpt.require(static_cast<int>(alg.metric_V.size()) == m, "metric_V size");
    rpt.require(static_cast<int>(alg.metric_Z.size()) == n, "metric_Z size");
    rpt.require(alg.r + alg.s == n, "r+s != n");
    for (int sgn : alg.metric_V) rpt.require(sgn == 1 || sgn == -1, "metric_V entry not +-1");
    for (int sgn : alg.metric_Z) rpt.require(sgn == 1 || sgn == -1, "metric_Z entry not +-1");
    if (!rpt.clean()) return rpt;

    for (int k = 0; k < n; ++k)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                int v = alg.brackets.A[k][a][b];
                rpt.require(v >= -1 && v <= 1, "structure constant outside {-1,0,1}");
                rpt.require(v == -alg.brackets.A[k][b][a], "bracket antisymmetry");
            }

    // Jacobi, evaluated literally on basis triples of V + Z as a corruption
    // guard (exhaustive at small dimension, a prefix of V plus all of Z
    // beyond that). The bracket of basis elements i, j of N = V + Z is the
    // A-column when both lie in V and zero otherwise; the evaluation below
    // only relies on that lookup, not on the two-step property.
    {
        std::vector<int> idx;
        for (int i = 0; i < std::min(m, 88); ++i) idx.push_back(i);
        for (int k = 0; k < n; ++k) idx.push_back(m + k);
        // bracket of basis indices as coefficients on {v_1..v_m, z_1..z_n}
        auto bkt = [&](int x, int y, std::vector<long>& out) {
            std::fill(out.begin(), out.end(), 0L);
            if (x < m && y < m)
                for (int k = 0; k < n; ++k) out[m + k] = alg.brackets.A[k][x][y];
        };
        // bracket of a coefficient vector against a basis index
        std::vector<long> tmp(m + n);
        auto bkt_vec = [&](const std::vector<long>& x, int y, std::vector<long>& out) {
            std::fill(out.begin(), out.end(), 0L);
            for (int i = 0; i < m + n; ++i) {
                if (x[i] == 0) continue;
                bkt(i, y, tmp);
                for (int j = 0; j < m + n; ++j) out[j] += x[i] * tmp[j];
            }
        };
        bool jacobi = true;
        int limit = static_cast<int>(idx.size());
        std::vector<long> ab(m + n), bc(m + n), ca(m + n), s1(m + n), s2(m + n), s3(m + n);
        for (int a = 0; a < limit && jacobi; ++a)
            for (int b = a + 1; b < limit && jacobi; ++b)
                for (int c = b + 1; c < limit && jacobi; ++c) {
                    bkt(idx[a], idx[b], ab);
                    bkt(idx[b], idx[c], bc);
                    bkt(idx[c], idx[a], ca);
                    bkt_vec(ab, idx[c], s1);
                    bkt_vec(bc, idx[a], s2);
                    bkt_vec(ca, idx[b], s3);
                    for (int i = 0; i < m + n; ++i)
                        if (s1[i] + s2[i] + s3[i] != 0) jacobi = false;
                }
        rpt.require(jacobi, "Jacobi identity");
    }

    // Centre is exactly Z: no basis vector of V brackets to zero with all of V.
    for (int a = 0; a < m; ++a) {
        bool hit = false;
        for (int k = 0; k < n && !hit; ++k)
            for (int b = 0; b < m && !hit; ++b) hit = alg.brackets.A[k][a][b] != 0;
        rpt.require(hit, "v_" + std::to_string(a + 1) + " is central");
    }

    MetricSpace MV{alg.metric_V};
    std::vector<Operator> J;
    for (int k = 1; k <= n; ++k) J.push_back(reconstruct_action(alg, k));
    for (int k = 1; k <= n; ++k) {
        rpt.require((J[k - 1] * J[k - 1]).is_scalar(-alg.metric_Z[k - 1]),
                    "reconstructed J_" + std::to_string(k) + " has wrong square");
        rpt.require(is_skew_wrt(J[k - 1], MV), "reconstructed J_" + std::to_string(k) + " not skew");
        for (int l = k + 1; l <= n; ++l)
            rpt.require(anticommute(J[k - 1], J[l - 1]),
                        "reconstructed J_" + std::to_string(k) + ", J_" + std::to_string(l) +
                            " do not anticommute");
    }
    // Orthogonality <J_z u, J_z v> = <z,z> <u,v> for each generator and for
    // the bilinear extension to z = z_1 + z_2 when available. Columns of the
    // reconstructed actions have at most one entry per generator, so the
    // products are evaluated on column supports.
    auto columns_of = [&](const std::vector<int>& ks) {
        std::vector<std::vector<std::pair<int, int>>> col(m);
        for (int k : ks) {
            const SignedPerm& p = J[k].sparse();
            for (int u = 0; u < m; ++u) col[u].push_back({p.target[u], p.sign[u]});
        }
        return col;
    };
    auto orthogonality = [&](const std::vector<std::vector<std::pair<int, int>>>& col, long zz) {
        for (int u = 0; u < m; ++u)
            for (int v = u; v < m; ++v) {
                long lhs = 0;
                for (auto [i, a] : col[u])
                    for (auto [j, b] : col[v])
                        if (i == j) lhs += static_cast<long>(MV.signs[i]) * a * b;
                long rhs = (u == v) ? zz * MV.signs[u] : 0;
                if (lhs != rhs) return false;
            }
        return true;
    };
    for (int k = 1; k <= n; ++k) {
        rpt.require(J[k - 1].has_sparse(),
                    "reconstructed J_" + std::to_string(k) + " is not a signed permutation");
        if (!rpt.clean()) return rpt;
        rpt.require(orthogonality(columns_of({k - 1}), alg.metric_Z[k - 1]),
                    "orthogonality fails for z_" + std::to_string(k));
    }
    if (n >= 2)
        rpt.require(orthogonality(columns_of({0, 1}), alg.metric_Z[0] + alg.metric_Z[1]),
                    "orthogonality fails for z_1 + z_2");
    if (rep) {
        rpt.require(rep->sig.r == alg.r && rep->sig.s == alg.s, "representation signature mismatch");
        for (int k = 1; k <= n && rpt.clean(); ++k)
            rpt.require(J[k - 1] == rep->gen(k), "reconstructed action differs from representation");
    }
    return rpt;
}

// ---------------------------------------------------------------------------
// Rationality / lattice statement.
// ---------------------------------------------------------------------------

struct RationalityReport {
    bool all_integer = false;
    bool all_rational = false;
    std::string message;
};

/// Integer structure constants give a lattice in the associated simply
/// connected group by Mal'cev's criterion; rational ones already suffice.
inline RationalityReport rationality_report(const std::vector<Rational>& constants) {
    RationalityReport r;
    r.all_rational = true;
    r.all_integer = true;
    for (const Rational& q : constants)
        if (q.get_den() != 1) r.all_integer = false;
    r.message = r.all_integer
                    ? "integer constants: yes; lattice: exists by Mal'cev"
                    : "rational non-integer constants; lattice still exists by Mal'cev";
    return r;
}

inline RationalityReport rationality_report(const HTypeAlgebra& alg) {
    std::vector<Rational> cs;
    for (const auto& slice : alg.brackets.A)
        for (const auto& row : slice)
            for (int v : row) cs.push_back(Rational(v));
    return rationality_report(cs);
}

// ---------------------------------------------------------------------------
// Serialization. Field order is fixed; integers only.
// ---------------------------------------------------------------------------

inline Json to_json(const HTypeAlgebra& alg) {
    Json j;
    j["r"] = alg.r;
    j["s"] = alg.s;
    j["m"] = alg.m;
    j["n"] = alg.n;
    j["metric_V"] = alg.metric_V;
    j["metric_Z"] = alg.metric_Z;
    j["A"] = alg.brackets.A;
    j["basis_words"] = alg.basis_words;
    return j;
}

/// Parses the serialized algebra. Structure constants must be integers or
/// strings "p/q" denoting rationals (tolerated so that the rationality
/// report can classify them); anything else is a parse error.
struct ParsedAlgebra {
    HTypeAlgebra alg;
    std::vector<Rational> raw_constants;
    bool integral = true;
};

inline Rational parse_rational(const Json& v) {
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
        q.canonicalize();
        return q;
    }
    throw std::invalid_argument("structure constant is neither integer nor rational string");
}

inline ParsedAlgebra algebra_from_json(const Json& j) {
    ParsedAlgebra p;
    HTypeAlgebra& alg = p.alg;
    alg.r = j.at("r").get<int>();
    alg.s = j.at("s").get<int>();
    alg.m = j.at("m").get<int>();
    alg.n = j.at("n").get<int>();
    alg.metric_V = j.at("metric_V").get<std::vector<int>>();
    alg.metric_Z = j.at("metric_Z").get<std::vector<int>>();
    if (alg.m <= 0 || alg.n <= 0) throw std::invalid_argument("non-positive dimensions");
    const Json& A = j.at("A");
    if (static_cast<int>(A.size()) != alg.n) throw std::invalid_argument("A has wrong depth");
    alg.brackets.m = alg.m;
    alg.brackets.n = alg.n;
    alg.brackets.metric_V = alg.metric_V;
    alg.brackets.metric_Z = alg.metric_Z;
    alg.brackets.A.assign(alg.n, std::vector<std::vector<int>>(alg.m, std::vector<int>(alg.m, 0)));
    for (int k = 0; k < alg.n; ++k) {
        if (static_cast<int>(A[k].size()) != alg.m) throw std::invalid_argument("A slice has wrong rows");
        for (int a = 0; a < alg.m; ++a) {
            if (static_cast<int>(A[k][a].size()) != alg.m)
                throw std::invalid_argument("A slice has wrong columns");
            for (int b = 0; b < alg.m; ++b) {
                Rational q = parse_rational(A[k][a][b]);
                p.raw_constants.push_back(q);
                if (q.get_den() != 1) {
                    p.integral = false;
                    alg.brackets.A[k][a][b] = 0;  // placeholder; integrality check will fail
                } else {
                    alg.brackets.A[k][a][b] = static_cast<int>(q.get_num().get_si());
                }
            }
        }
    }
    if (j.contains("basis_words")) alg.basis_words = j.at("basis_words").get<std::vector<Word>>();
    return p;
}

// ---------------------------------------------------------------------------
// Bracket rendering in grouped form, e.g. [v_1,v_5]=[v_2,v_6]=z_1.
// ---------------------------------------------------------------------------

inline std::string bracket_table(const HTypeAlgebra& alg) {
    std::ostringstream out;
    for (int k = 0; k < alg.n; ++k) {
        std::vector<std::string> parts;
        for (int a = 0; a < alg.m; ++a)
            for (int b = a + 1; b < alg.m; ++b) {
                int v = alg.brackets.A[k][a][b];
                if (v == 0) continue;
                std::string t = "[v_" + std::to_string(a + 1) + ",v_" + std::to_string(b + 1) + "]";
                parts.push_back(v > 0 ? t : "-" + t);
            }
        if (parts.empty()) continue;
        std::sort(parts.begin(), parts.end(), [](const std::string& x, const std::string& y) {
            bool nx = x[0] == '-', ny = y[0] == '-';
            return nx != ny ? !nx : x < y;
        });
        for (size_t i = 0; i < parts.size(); ++i) out << parts[i] << " = ";
        out << "z_" << (k + 1) << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Equality of structure-constant tensors up to signed relabelling.
// ---------------------------------------------------------------------------

namespace detail {

/// Checks the sign system eps_a * eps_b = rhs(a,b) for consistency by
/// propagation over the constraint graph.
inline bool sign_system_consistent(int m, const std::vector<std::tuple<int, int, int>>& constraints) {
    std::vector<std::vector<std::pair<int, int>>> adj(m);
    for (auto [a, b, v] : constraints) {
        adj[a].push_back({b, v});
        adj[b].push_back({a, v});
    }
    std::vector<int> eps(m, 0);
    for (int start = 0; start < m; ++start) {
        if (eps[start] != 0) continue;
        eps[start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (auto [b, v] : adj[a]) {
                int want = v * eps[a];
                if (eps[b] == 0) {
                    eps[b] = want;
                    stack.push_back(b);
                } else if (eps[b] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace detail

/// Whether two structure-constant tensors agree after relabelling
/// v_a -> eps_a v_{pi(a)} and z_k -> eta_k z_{tau(k)} (tau preserving the
/// centre metric). With `unsigned_only` the comparison uses |A| and ignores
/// the sign freedom.
inline bool equivalent_up_to_signed_permutation(const StructureConstants& X,
                                                const StructureConstants& Y,
                                                bool unsigned_only = false) {
    if (X.m != Y.m || X.n != Y.n) return false;
    int m = X.m, n = X.n;
    std::vector<int> pi(m, -1), used(m, 0);

    // For a complete v-relabelling pi, search for a centre relabelling
    // (tau, eta) matching slice supports, then check that one global sign
    // vector eps solves eps_a eps_b = eta_k Y^k_{ab} X^{tau k}_{pi a, pi b}.
    auto slices_match = [&]() {
        std::vector<int> tau(n, -1), eta(n, 0), zused(n, 0);
        std::function<bool(int)> go = [&](int k) -> bool {
            if (k == n) {
                if (unsigned_only) return true;
                std::vector<std::tuple<int, int, int>> constraints;
                for (int kk = 0; kk < n; ++kk)
                    for (int a = 0; a < m; ++a)
                        for (int b = 0; b < m; ++b) {
                            int x = X.A[tau[kk]][pi[a]][pi[b]];
                            int y = Y.A[kk][a][b];
                            if (x != 0) constraints.emplace_back(a, b, eta[kk] * x * y);
                        }
                return detail::sign_system_consistent(m, constraints);
            }
            for (int j = 0; j < n; ++j) {
                if (zused[j] || X.metric_Z[j] != Y.metric_Z[k]) continue;
                bool support_ok = true;
                for (int a = 0; a < m && support_ok; ++a)
                    for (int b = 0; b < m && support_ok; ++b)
                        support_ok = (X.A[j][pi[a]][pi[b]] == 0) == (Y.A[k][a][b] == 0);
                if (!support_ok) continue;
                for (int e : {1, -1}) {
                    tau[k] = j;
                    eta[k] = e;
                    zused[j] = 1;
                    if (go(k + 1)) return true;
                    zused[j] = 0;
                    tau[k] = -1;
                    if (unsigned_only) break;  // eta is irrelevant without signs
                }
            }
            return false;
        };
        return go(0);
    };

    std::function<bool(int)> assign = [&](int a) {
        if (a == m) return slices_match();
        for (int p = 0; p < m; ++p) {
            if (used[p] || X.metric_V[p] != Y.metric_V[a]) continue;
            pi[a] = p;
            used[p] = 1;
            // Prune: bracket multiplicities over the assigned prefix must agree.
            bool ok = true;
            for (int b = 0; b < a && ok; ++b) {
                int cx = 0, cy = 0;
                for (int k = 0; k < n; ++k) {
                    cx += std::abs(X.A[k][p][pi[b]]);
                    cy += std::abs(Y.A[k][a][b]);
                }
                ok = (cx == cy);
            }
            if (ok && assign(a + 1)) return true;
            used[p] = 0;
            pi[a] = -1;
        }
        return false;
    };
    return assign(0);
}

}  // namespace htlie
