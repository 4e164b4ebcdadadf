#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "htlie/algebra.hpp"

namespace {

using namespace htlie;

constexpr int kMaxSum = 16;

Json plan_json(const ConstructionPlan& p) {
    Json steps = Json::array();
    for (const PlanStep& st : p.steps) {
        Json s;
        switch (st.kind) {
            case PlanStep::Kind::base: s["kind"] = "base"; break;
            case PlanStep::Kind::transfer: s["kind"] = "transfer"; break;
            case PlanStep::Kind::extend_s8: s["kind"] = "extend_s8"; break;
            case PlanStep::Kind::extend_r8: s["kind"] = "extend_r8"; break;
            case PlanStep::Kind::extend_p44: s["kind"] = "extend_p44"; break;
            case PlanStep::Kind::twist_11: s["kind"] = "twist_11"; break;
        }
        s["r"] = st.arg.r;
        s["s"] = st.arg.s;
        steps.push_back(s);
    }
    Json j;
    j["target"] = {{"r", p.target.r}, {"s", p.target.s}};
    j["steps"] = steps;
    return j;
}

Json scheme_json(const InvolutionScheme& sch) {
    Json j;
    j["signature"] = {{"r", sch.sig.r}, {"s", sch.sig.s}};
    j["involutions"] = sch.involutions;
    j["involution_signs"] = sch.involution_signs;
    j["orthogonalizers"] = sch.omegas;
    Json comp = Json::array();
    for (const ComplementaryOp& c : sch.complementary)
        comp.push_back({{"word", c.word}, {"isometry", c.isometry}});
    j["complementary"] = comp;
    if (!sch.generator_table.empty()) j["generator_table"] = sch.generator_table;
    if (!sch.commutation_table.empty()) j["commutation_table"] = sch.commutation_table;
    return j;
}

int cmd_build(int r, int s, const std::string& out, const std::string& format, bool explain) {
    Signature sig{r, s};
    Construction c = construct(sig);
    HTypeAlgebra alg = build_algebra(c);
    AlgebraReport rpt = verify_htype(alg, &c.mod.rep);
    VerificationReport vrpt = verify(c.mod.rep);
    Json j = to_json(alg);

    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "error: cannot write " << out << "\n";
            return 1;
        }
        f << j.dump(1) << "\n";
    }
    if (format == "json") {
        std::cout << j.dump(1) << "\n";
    } else if (format == "csv") {
        std::cout << "k,alpha,beta,A\n";
        for (int k = 0; k < alg.n; ++k)
            for (int a = 0; a < alg.m; ++a)
                for (int b = 0; b < alg.m; ++b)
                    if (alg.brackets.A[k][a][b] != 0)
                        std::cout << k + 1 << "," << a + 1 << "," << b + 1 << ","
                                  << alg.brackets.A[k][a][b] << "\n";
    } else {
        std::cout << "H-type algebra for Cl_" << sig.str() << ": dim V = " << alg.m
                  << ", dim Z = " << alg.n << ", minimal module: " << (c.minimal ? "yes" : "no")
                  << "\n";
        std::cout << "plan: " << c.steps.str() << "\n";
        std::cout << "non-vanishing brackets:\n" << bracket_table(alg);
        std::cout << rationality_report(alg).message << "\n";
    }
    if (explain) {
        Json e = plan_json(c.steps);
        e["basis_words"] = alg.basis_words;
        Json tables = Json::array();
        for (int k = 1; k <= alg.n; ++k) {
            const SignedPerm& p = c.mod.table.gen(k);
            Json row;
            row["target"] = p.target;
            row["sign"] = p.sign;
            tables.push_back(row);
        }
        e["action_tables"] = tables;
        std::cout << e.dump(1) << "\n";
    }

    if (!rpt.clean() || !vrpt.clean()) {
        std::cerr << "verification failed:\n";
        for (const std::string& f : rpt.failures) std::cerr << "  " << f << "\n";
        for (const auto& [i, jx, w] : vrpt.relation_failures)
            std::cerr << "  relation(" << i << "," << jx << "): " << w << "\n";
        return 2;
    }
    return 0;
}

int cmd_verify(const std::string& path) {
    Json j;
    try {
        std::ifstream f(path);
        if (!f) {
            std::cerr << "error: cannot read " << path << "\n";
            return 1;
        }
        j = Json::parse(f);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    }
    ParsedAlgebra parsed;
    try {
        parsed = algebra_from_json(j);
    } catch (const std::exception& e) {
        std::cerr << "malformed algebra: " << e.what() << "\n";
        return 1;
    }
    RationalityReport rr = rationality_report(parsed.raw_constants);
    std::cout << rr.message << "\n";
    AlgebraReport rpt = verify_htype(parsed.alg);
    if (!parsed.integral) rpt.failures.push_back("structure constants are not integers");
    if (!rpt.clean()) {
        std::cerr << "verification failed:\n";
        for (const std::string& f : rpt.failures) std::cerr << "  " << f << "\n";
        return 2;
    }
    std::cout << "all invariants hold\n";
    return 0;
}

int cmd_table(int max_sum, const std::string& format) {
    Json rows = Json::array();
    for (int total = 1; total <= max_sum; ++total)
        for (int r = 0; r <= total; ++r) {
            Signature sig{r, total - r};
            long dim = minimal_dimension(sig);
            bool doubled = doubles_irreducible(sig);
            ConstructionPlan p = plan(sig);
            if (format == "text") {
                std::cout << "Cl_" << sig.str() << "  dim " << dim << (doubled ? "  doubled" : "")
                          << "  via " << p.str() << "\n";
            } else if (format == "csv") {
                std::cout << r << "," << sig.s << "," << dim << "," << (doubled ? 1 : 0) << ","
                          << p.str() << "\n";
            } else {
                rows.push_back({{"r", r},
                                {"s", sig.s},
                                {"dim", dim},
                                {"doubled", doubled},
                                {"path", p.str()}});
            }
        }
    if (format == "json") std::cout << rows.dump(1) << "\n";
    return 0;
}

int cmd_explain(int r, int s) {
    Signature sig{r, s};
    ConstructionPlan p = plan(sig);
    Json j = plan_json(p);
    j["minimal_dimension"] = minimal_dimension(sig);
    if (has_direct_scheme(sig)) {
        InvolutionScheme sch = scheme_for(sig);
        verify_scheme(catalog_ambient(sig), sch);  // fills the commutation tables
        j["scheme"] = scheme_json(sch);
    }
    std::cout << j.dump(1) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral bases for admissible Clifford modules and H-type Lie algebras"};
    app.require_subcommand(1);

    int r = 0, s = 0, max_sum = 8;
    std::string out, format = "text", path;
    bool explain = false;

    CLI::App* build = app.add_subcommand("build", "construct the algebra for a signature");
    build->add_option("--r", r, "number of positive generators")->required();
    build->add_option("--s", s, "number of negative generators")->required();
    build->add_option("--out", out, "write the JSON algebra to this path");
    build->add_option("--format", format, "stdout format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    build->add_flag("--explain", explain, "also print the construction plan");

    CLI::App* verify_cmd = app.add_subcommand("verify", "re-verify a serialized algebra");
    verify_cmd->add_option("path", path, "algebra JSON file")->required();

    CLI::App* table = app.add_subcommand("table", "minimal admissible dimensions");
    table->add_option("--max-sum", max_sum, "largest r+s to list")->check(CLI::Range(1, kMaxSum));
    table->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    CLI::App* explain_cmd = app.add_subcommand("explain", "print the construction plan");
    explain_cmd->add_option("--r", r, "number of positive generators")->required();
    explain_cmd->add_option("--s", s, "number of negative generators")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (build->parsed()) {
            if (r < 0 || s < 0 || r + s < 1 || r + s > kMaxSum) {
                std::cerr << "error: need r,s >= 0 and 1 <= r+s <= " << kMaxSum << "\n";
                return 1;
            }
            return cmd_build(r, s, out, format, explain);
        }
        if (verify_cmd->parsed()) return cmd_verify(path);
        if (table->parsed()) return cmd_table(max_sum, format);
        if (explain_cmd->parsed()) {
            if (r < 0 || s < 0 || r + s < 1 || r + s > kMaxSum) {
                std::cerr << "error: need r,s >= 0 and 1 <= r+s <= " << kMaxSum << "\n";
                return 1;
            }
            return cmd_explain(r, s);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
