#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "umbra/identities.hpp"
#include "umbra/json_io.hpp"
#include "umbra/logderiv.hpp"

namespace py = pybind11;
using namespace umbra;

namespace {

FamilyOptions make_opts(int N, int Ny, int poly_order) {
    FamilyOptions o;
    o.N = N;
    o.Ny = (Ny > 0) ? Ny : N + 4;
    o.poly_order = poly_order;
    return o;
}

std::vector<std::string> rats_to_strs(const std::vector<Rat>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const Rat& r : v) out.push_back(r.str());
    return out;
}

py::dict report_to_dict(const VerifyReport& r) {
    py::dict d;
    d["identity"] = r.identity;
    d["family"] = r.family;
    if (!r.family2.empty()) d["family2"] = r.family2;
    d["N"] = r.N;
    d["Ny"] = r.Ny;
    d["window"] = r.window;
    d["pass"] = r.pass;
    d["detail"] = r.detail;
    d["seed"] = r.seed;
    return d;
}

} // namespace

PYBIND11_MODULE(_umbra, m) {
    m.doc() = "exact calculus of monic polynomial families";

    py::class_<MonicFamily>(m, "Family")
        .def_static(
            "from_spec",
            [](const std::string& spec, int N, int Ny, int poly_order) {
                return parse_family_spec(spec, make_opts(N, Ny, poly_order));
            },
            py::arg("spec"), py::arg("N") = 12, py::arg("Ny") = -1, py::arg("poly_order") = -1)
        .def_property_readonly("N", &MonicFamily::N)
        .def_property_readonly("Ny", &MonicFamily::Ny)
        .def("describe", &MonicFamily::describe)
        .def("p", [](const MonicFamily& f, int n) { return f.p(n).str(); })
        .def("p_coeffs",
             [](const MonicFamily& f, int n) {
                 std::vector<std::string> out;
                 for (int k = 0; k <= f.p(n).degree(); ++k) out.push_back(f.p(n).coeff(k).str());
                 return out;
             })
        .def("fn", [](const MonicFamily& f, int n) { return f.fn(n).str(); })
        .def("xi", [](const MonicFamily& f, int n, int k) { return f.xi(n, k).str(); })
        .def("xi_star", [](const MonicFamily& f, int n, int k) { return f.xi_star(n, k).str(); })
        .def("dual", &MonicFamily::dual)
        .def("tilde", &MonicFamily::tilde)
        .def("lemma_agrees",
             [](const MonicFamily& f) { return f.vanish_lemma_report().agree(); });

    m.def("identity_catalog", [] { return identity_catalog(); });

    m.def(
        "verify",
        [](const MonicFamily& fam, const std::string& identity, std::uint64_t seed) {
            return report_to_dict(run_identity(identity, fam, nullptr, seed));
        },
        py::arg("family"), py::arg("identity"), py::arg("seed") = 1);

    m.def(
        "logderiv",
        [](const MonicFamily& fam, int n, int H) {
            LogDerivContext ctx = build_context(fam);
            InverseXExpansion engine = assemble_expansion(ctx, n, H);
            InverseXExpansion oracle = oracle_logderiv(fam, n, H);
            py::dict d;
            d["family"] = fam.describe();
            d["n"] = n;
            d["H"] = H;
            d["engine"] = rats_to_strs(engine.coeffs);
            d["oracle"] = rats_to_strs(oracle.coeffs);
            d["match"] = engine.coeffs == oracle.coeffs;
            return d;
        },
        py::arg("family"), py::arg("n"), py::arg("H") = 4);

    m.def(
        "dual_logderiv",
        [](const MonicFamily& fam, int n, int H) {
            YExpansion engine = dual_fn_logderiv(fam, n, H);
            YExpansion direct = dual_direct(fam, n, H);
            py::dict d;
            d["family"] = fam.describe();
            d["n"] = n;
            d["H"] = H;
            d["engine"] = rats_to_strs(engine.coeffs);
            d["direct"] = rats_to_strs(direct.coeffs);
            d["match"] = engine.coeffs == direct.coeffs;
            return d;
        },
        py::arg("family"), py::arg("n"), py::arg("H") = 4);

    py::register_exception<Error>(m, "UmbraError");
}
