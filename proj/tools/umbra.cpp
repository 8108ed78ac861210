#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "umbra/errors.hpp"
#include "umbra/expr.hpp"
#include "umbra/identities.hpp"
#include "umbra/json_io.hpp"
#include "umbra/logderiv.hpp"

namespace {

using namespace umbra;

int default_N() {
    if (const char* env = std::getenv("UMBRA_DEFAULT_N")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 12;
}

json coeffs_to_json(const std::vector<Rat>& v) {
    json a = json::array();
    for (const Rat& r : v) a.push_back(rat_to_json(r));
    return a;
}

std::string coeffs_to_text(const std::vector<Rat>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

struct CommonOpts {
    std::string family;
    std::string family2;
    int N = -1;
    int Ny = -1;
    std::uint64_t seed = 1;
    bool as_json = false;

    FamilyOptions resolve(int extra_order = 0) const {
        FamilyOptions o;
        o.N = (N > 0) ? N : default_N();
        o.Ny = (Ny > 0) ? Ny : o.N + 4;
        if (extra_order > 0) o.poly_order = std::max(o.resolved_poly_order(), extra_order);
        return o;
    }
};

json report_to_json(const VerifyReport& r) {
    json j{{"identity", r.identity}, {"family", r.family},   {"N", r.N},
           {"Ny", r.Ny},             {"window", r.window},   {"status", r.pass ? "pass" : "fail"},
           {"detail", r.detail},     {"seed", r.seed}};
    if (!r.family2.empty()) j["family2"] = r.family2;
    return j;
}

void print_report(const VerifyReport& r) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.identity << "  family=" << r.family;
    if (!r.family2.empty()) std::cout << " / " << r.family2;
    std::cout << "  N=" << r.N << " Ny=" << r.Ny << " window=" << r.window;
    if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
    std::cout << "\n";
}

int run_verify(const CommonOpts& co, const std::string& id, const std::string& expr) {
    FamilyOptions opts = co.resolve();
    MonicFamily fam = parse_family_spec(co.family, opts);
    std::optional<MonicFamily> second;
    if (!co.family2.empty()) second = parse_family_spec(co.family2, opts);

    std::vector<VerifyReport> reports;
    if (!expr.empty()) {
        auto sep = expr.find("==");
        if (sep == std::string::npos)
            throw SyntaxError("--expr wants the form \"LHS == RHS\"");
        OpExprPtr lhs = parse_op(expr.substr(0, sep));
        OpExprPtr rhs = parse_op(expr.substr(sep + 2));
        OpMatrix L = eval_op(*lhs, &fam, opts.N);
        OpMatrix R = eval_op(*rhs, &fam, opts.N);
        VerifyReport r;
        r.identity = "expr";
        r.family = fam.describe();
        r.N = opts.N;
        r.Ny = opts.Ny;
        r.window = std::min(L.window(), R.window());
        r.detail = print_op(*lhs) + " == " + print_op(*rhs);
        auto mm = OpMatrix::first_mismatch(L, R, r.window);
        r.pass = r.window >= 0 && !mm.found;
        if (mm.found)
            r.detail += "; mismatch at column " + std::to_string(mm.col) + ", x^" +
                        std::to_string(mm.row);
        reports.push_back(r);
    } else if (id.empty() || id == "all") {
        for (const auto& name : identity_catalog())
            reports.push_back(run_identity(name, fam, second ? &*second : nullptr, co.seed));
    } else {
        reports.push_back(run_identity(id, fam, second ? &*second : nullptr, co.seed));
    }

    bool all_pass = true;
    json out = json::array();
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        if (co.as_json)
            out.push_back(report_to_json(r));
        else
            print_report(r);
    }
    if (co.as_json) std::cout << out.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int run_logderiv(const CommonOpts& co, int n, int H) {
    int K = H * std::max(n - 1, 0);
    FamilyOptions opts = co.resolve(K + 4);
    MonicFamily fam = parse_family_spec(co.family, opts);
    LogDerivContext ctx = build_context(fam);
    InverseXExpansion engine = assemble_expansion(ctx, n, H);
    InverseXExpansion oracle = oracle_logderiv(fam, n, H);
    bool match = engine.coeffs == oracle.coeffs;
    auto xi = neumann_xi(ctx, n, std::min(K, ctx.order - 2));
    json degrees = json::array();
    for (const XPoly& x : xi) degrees.push_back(x.degree());
    if (co.as_json) {
        json j{{"family", fam.describe()},
               {"n", n},
               {"H", H},
               {"engine", coeffs_to_json(engine.coeffs)},
               {"oracle", coeffs_to_json(oracle.coeffs)},
               {"match", match},
               {"xi_degrees", degrees}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "family: " << fam.describe() << "  n=" << n << " H=" << H << "\n"
                  << "engine: " << coeffs_to_text(engine.coeffs) << "\n"
                  << "oracle: " << coeffs_to_text(oracle.coeffs) << "\n"
                  << "match:  " << (match ? "yes" : "no") << "\n";
    }
    return match ? 0 : 1;
}

int run_dual_logderiv(const CommonOpts& co, int n, int H) {
    int K = H * std::max(n - 1, 0);
    FamilyOptions opts = co.resolve(K + 4);
    opts.Ny = std::max(opts.Ny, K + H + 2);
    opts.poly_order = std::max(opts.resolved_poly_order(), K + 4);
    MonicFamily fam = parse_family_spec(co.family, opts);
    YExpansion engine = dual_fn_logderiv(fam, n, H);
    YExpansion direct = dual_direct(fam, n, H);
    bool match = engine.coeffs == direct.coeffs;
    if (co.as_json) {
        json j{{"family", fam.describe()},
               {"n", n},
               {"H", H},
               {"engine", coeffs_to_json(engine.coeffs)},
               {"direct", coeffs_to_json(direct.coeffs)},
               {"match", match}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "family: " << fam.describe() << "  n=" << n << " H=" << H << "\n"
                  << "engine: " << coeffs_to_text(engine.coeffs) << "\n"
                  << "direct: " << coeffs_to_text(direct.coeffs) << "\n"
                  << "match:  " << (match ? "yes" : "no") << "\n";
    }
    return match ? 0 : 1;
}

int run_show(const CommonOpts& co, const std::string& what) {
    FamilyOptions opts = co.resolve();
    MonicFamily fam = parse_family_spec(co.family, opts);
    json j = json::object();
    j["family"] = fam.describe();
    if (what == "polys") {
        json arr = json::array();
        for (int n = 0; n <= fam.N(); ++n) {
            if (co.as_json)
                arr.push_back(poly_to_json(fam.p(n)));
            else
                std::cout << "p_" << n << " = " << fam.p(n).str() << "\n";
        }
        j["polys"] = arr;
    } else if (what == "fns") {
        json arr = json::array();
        for (int n = 0; n <= std::min(fam.N(), fam.fn_count() - 1); ++n) {
            if (co.as_json)
                arr.push_back(series_to_json(fam.fn(n)));
            else
                std::cout << "f_" << n << " = " << fam.fn(n).str() << "\n";
        }
        j["fns"] = arr;
    } else if (what == "xi" || what == "dual") {
        const auto& table = (what == "xi") ? fam.xi_table() : fam.xi_star_table();
        const char* label = (what == "xi") ? "xi" : "xi*";
        json rows = json::array();
        for (int n = 0; n <= fam.N(); ++n) {
            json row = json::array();
            for (int k = 0; k <= n; ++k) {
                row.push_back(rat_to_json(table[n][k]));
                if (!co.as_json && !table[n][k].is_zero() && k > 0)
                    std::cout << label << "_" << k << "^" << n << " = " << table[n][k].str()
                              << "\n";
            }
            rows.push_back(row);
        }
        j[(what == "xi") ? "xi" : "xi_star"] = rows;
    } else {
        throw SyntaxError("--what must be polys, fns, xi or dual");
    }
    if (co.as_json) std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus of monic polynomial families"};
    app.require_subcommand(1);

    CommonOpts co;
    std::string id, expr, what = "polys";
    int n = 2, H = 4;

    auto add_common = [&](CLI::App* cmd, bool with_family2 = false) {
        cmd->add_option("--family", co.family, "family spec")->required();
        if (with_family2) cmd->add_option("--family2", co.family2, "second family spec");
        cmd->add_option("--N", co.N, "matrix order");
        cmd->add_option("--Ny", co.Ny, "series truncation order");
        cmd->add_option("--seed", co.seed, "seed for randomized checks");
        cmd->add_flag("--json", co.as_json, "emit canonical JSON");
    };

    CLI::App* verify = app.add_subcommand("verify", "check catalog identities");
    add_common(verify, true);
    verify->add_option("--id", id, "identity name or 'all'");
    verify->add_option("--expr", expr, "operator equation \"LHS == RHS\"");

    CLI::App* logd = app.add_subcommand("logderiv", "inverse-x log-derivative expansion");
    add_common(logd);
    logd->add_option("--n", n, "polynomial index")->required();
    logd->add_option("--H", H, "number of inverse powers");

    CLI::App* duald = app.add_subcommand("dual-logderiv", "dual series log-derivative");
    add_common(duald);
    duald->add_option("--n", n, "series index")->required();
    duald->add_option("--H", H, "y-order of the result");

    CLI::App* show = app.add_subcommand("show", "print family data");
    add_common(show);
    show->add_option("--what", what, "polys|fns|xi|dual");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(co, id, expr);
        if (logd->parsed()) return run_logderiv(co, n, H);
        if (duald->parsed()) return run_dual_logderiv(co, n, H);
        if (show->parsed()) return run_show(co, what);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
