#include "umbra/json_io.hpp"

#include <fstream>

#include "umbra/errors.hpp"
#include "umbra/expr.hpp"

namespace umbra {

json rat_to_json(const Rat& r) { return json::array({r.num_str(), r.den_str()}); }

Rat rat_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw SyntaxError("rational must be a [num, den] pair of strings");
    return Rat::parse(j[0].get<std::string>() + "/" + j[1].get<std::string>());
}

json series_to_json(const YSeries<Rat>& s) {
    json coeffs = json::array();
    for (int k = 0; k <= s.order(); ++k) coeffs.push_back(rat_to_json(s.coeff(k)));
    return json{{"var", "y"}, {"order", s.order()}, {"coeffs", coeffs}};
}

YSeries<Rat> series_from_json(const json& j) {
    int order = j.at("order").get<int>();
    YSeries<Rat> s(order);
    const json& coeffs = j.at("coeffs");
    for (int k = 0; k <= order && k < static_cast<int>(coeffs.size()); ++k)
        s.mutable_coeff(k) = rat_from_json(coeffs[k]);
    return s;
}

json poly_to_json(const XPoly& p) {
    json coeffs = json::array();
    for (int k = 0; k <= p.degree(); ++k) coeffs.push_back(rat_to_json(p.coeff(k)));
    return json{{"var", "x"}, {"coeffs", coeffs}};
}

XPoly poly_from_json(const json& j) {
    const json& coeffs = j.at("coeffs");
    std::vector<Rat> c(coeffs.size());
    for (size_t k = 0; k < coeffs.size(); ++k) c[k] = rat_from_json(coeffs[k]);
    return XPoly(std::move(c));
}

json op_to_json(const OpMatrix& m) {
    json entries = json::array();
    for (int i = 0; i <= m.N(); ++i) {
        json row = json::array();
        for (int j = 0; j <= m.N(); ++j) row.push_back(rat_to_json(m.at(i, j)));
        entries.push_back(row);
    }
    return json{{"N", m.N()}, {"raise", m.raise()}, {"window", m.window()}, {"entries", entries}};
}

OpMatrix op_from_json(const json& j) {
    int N = j.at("N").get<int>();
    OpMatrix m(N, j.at("raise").get<int>(), j.at("window").get<int>());
    const json& entries = j.at("entries");
    for (int r = 0; r <= N; ++r)
        for (int c = 0; c <= N; ++c) m.at(r, c) = rat_from_json(entries.at(r).at(c));
    return m;
}

json family_to_json(const MonicFamily& fam, const std::string& kind, const json& data) {
    return json{{"kind", kind}, {"N", fam.N()}, {"Ny", fam.Ny()}, {"data", data}};
}

MonicFamily family_from_json(const json& j, FamilyOptions opts) {
    if (j.contains("N")) opts.N = j.at("N").get<int>();
    if (j.contains("Ny")) opts.Ny = j.at("Ny").get<int>();
    if (j.contains("poly_order")) opts.poly_order = j.at("poly_order").get<int>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "builtin") return MonicFamily::builtin(j.at("data").get<std::string>(), opts);
    if (kind == "binomial") {
        const json& data = j.at("data");
        int need = std::max(opts.resolved_poly_order(), opts.Ny);
        if (data.is_string())
            return MonicFamily::binomial(eval_series(*parse_series(data.get<std::string>()), need),
                                         opts);
        YSeries<Rat> f = series_from_json(data);
        if (f.order() < need) f = f.truncate(need); // zero-extend tail
        return MonicFamily::binomial(f, opts);
    }
    if (kind == "xi") {
        const json& rows = j.at("data");
        std::vector<std::vector<Rat>> xi(rows.size());
        for (size_t n = 0; n < rows.size(); ++n) {
            xi[n].resize(rows[n].size());
            for (size_t k = 0; k < rows[n].size(); ++k) xi[n][k] = rat_from_json(rows[n][k]);
        }
        return MonicFamily::from_xi(xi, opts);
    }
    if (kind == "fns") {
        const json& rows = j.at("data");
        std::vector<YSeries<Rat>> fns;
        fns.reserve(rows.size());
        for (const json& r : rows) fns.push_back(series_from_json(r));
        return MonicFamily::from_fns(fns, opts);
    }
    throw SyntaxError("unknown family kind '" + kind + "'");
}

MonicFamily parse_family_spec(const std::string& spec, const FamilyOptions& opts) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw SyntaxError("family spec must be builtin:<name>, binomial:<expr> or file:<path>");
    std::string head = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (head == "builtin") return MonicFamily::builtin(rest, opts);
    if (head == "binomial") {
        int need = std::max(opts.resolved_poly_order(), opts.Ny);
        return MonicFamily::binomial(eval_series(*parse_series(rest), need), opts);
    }
    if (head == "file") {
        std::ifstream in(rest);
        if (!in) throw SyntaxError("cannot open family file '" + rest + "'");
        json j;
        in >> j;
        return family_from_json(j, opts);
    }
    throw SyntaxError("unknown family spec prefix '" + head + "'");
}

} // namespace umbra
