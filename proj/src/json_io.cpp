#include "oscint/json_io.hpp"

namespace oscint {

namespace {

// Exact integers as JSON numbers when they fit, decimal strings otherwise.
Json int_json(const Int& v) {
    if (v >= Int(INT64_MIN) && v <= Int(INT64_MAX)) return Json(v.convert_to<std::int64_t>());
    return Json(v.str());
}

Json matrix_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.size(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.size(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

Json rational_json(const Rational& q) { return Json{{"num", int_json(rat_num(q))}, {"den", int_json(rat_den(q))}}; }

Json germ_terms_json(const LogPowerSum& g) {
    Json arr = Json::array();
    for (const auto& [key, c] : g.terms()) {
        arr.push_back(Json{{"s_num", int_json(rat_num(key.s))},
                           {"s_den", int_json(rat_den(key.s))},
                           {"k", key.k},
                           {"coeff_num", int_json(rat_num(c))},
                           {"coeff_den", int_json(rat_den(c))}});
    }
    return arr;
}

namespace {

Int int_from_json(const Json& v) {
    if (v.is_string()) return Int(v.get<std::string>());
    return Int(v.get<std::int64_t>());
}

} // namespace

LogPowerSum germ_terms_from_json(const Json& terms) {
    LogPowerSum out;
    for (const auto& t : terms) {
        Rational s = make_rational(int_from_json(t.at("s_num")), int_from_json(t.at("s_den")));
        Rational c = make_rational(int_from_json(t.at("coeff_num")), int_from_json(t.at("coeff_den")));
        out.add_term(s, t.at("k").get<int>(), c);
    }
    return out;
}

Json cell_json(const ConeCell& cell) {
    Json sign = Json::array();
    for (auto s : cell.sign_pattern) sign.push_back(s == RatioSign::below ? "below" : "above");
    Json rays = Json::array();
    for (const auto& r : cell.cone.rays) {
        Json ray = Json::array();
        for (auto e : r) ray.push_back(e);
        rays.push_back(std::move(ray));
    }
    Json jac_exps = Json::array();
    for (auto e : cell.jacobian.exponents) jac_exps.push_back(e);
    return Json{{"sign_pattern", std::move(sign)},
                {"H", matrix_json(cell.cone.H)},
                {"eps", matrix_json(cell.map.eps)},
                {"N", cell.map.N},
                {"rays", std::move(rays)},
                {"jacobian", Json{{"coefficient", rational_json(cell.jacobian.coefficient)}, {"exponents", std::move(jac_exps)}}}};
}

Json cells_report(const std::vector<ConeCell>& cells) {
    Json arr = Json::array();
    for (const auto& c : cells) arr.push_back(cell_json(c));
    return Json{{"count", cells.size()}, {"cells", std::move(arr)}};
}

Json sublevel_function_json(const SublevelFunction& f) {
    std::string label = f.scale == 1 ? "t" : "t/" + rat_to_string(f.scale);
    return Json{{"germ", germ_terms_json(f.germ)},
                {"scale", rational_json(f.scale)},
                {"threshold", rational_json(f.threshold)},
                {"total_mass", rational_json(f.total_mass)},
                {"exact_everywhere", f.exact_everywhere},
                {"pretty", pretty(f.germ, label)}};
}

Json sublevel_report(const SublevelFunction& f, const MultiPhaseExpansion* breakdown) {
    Json out = sublevel_function_json(f);
    if (breakdown != nullptr && !breakdown->cells.empty()) {
        Json cells = Json::array();
        for (const auto& contrib : breakdown->cells) {
            Json c = cell_json(contrib.cell.cell);
            c["dominant_phase"] = contrib.cell.dominant_index;
            c["part"] = sublevel_function_json(contrib.part);
            cells.push_back(std::move(c));
        }
        out["per_cell"] = std::move(cells);
    }
    return out;
}

Json series_report(const AsymptoticSeries& series) {
    Json arr = Json::array();
    for (const auto& [key, c] : series.terms) {
        arr.push_back(Json{{"s_num", int_json(rat_num(key.s))},
                           {"s_den", int_json(rat_den(key.s))},
                           {"k", key.k},
                           {"coeff_re", c.real()},
                           {"coeff_im", c.imag()}});
    }
    return Json{{"variable", series.variable == SeriesVariable::lambda ? "lambda" : "tau"}, {"terms", std::move(arr)}};
}

Json poles_report(const std::vector<PoleDatum>& poles) {
    Json arr = Json::array();
    for (const auto& p : poles) {
        Json pp = Json::array();
        for (const auto& c : p.principal_part) pp.push_back(rat_to_string(c));
        arr.push_back(Json{{"location_num", int_json(rat_num(p.location))},
                           {"location_den", int_json(rat_den(p.location))},
                           {"order", p.order},
                           {"principal_part", std::move(pp)}});
    }
    return Json{{"poles", std::move(arr)}};
}

Json verify_report(const std::string& case_name, double symbolic, double numeric, double sigma, bool pass) {
    const double abs_err = std::abs(symbolic - numeric);
    const double rel_err = symbolic != 0.0 ? abs_err / std::abs(symbolic) : abs_err;
    return Json{{"case", case_name},   {"symbolic_value", symbolic}, {"numeric_value", numeric},
                {"abs_err", abs_err},  {"rel_err", rel_err},         {"sigma", sigma},
                {"verdict", pass ? "pass" : "fail"}};
}

Json make_report(const std::string& command, Json problem, Json result) {
    return Json{{"command", command}, {"status", "ok"}, {"problem", std::move(problem)}, {"result", std::move(result)}};
}

namespace {

bool type_matches(const Json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer();
    if (type == "boolean") return value.is_boolean();
    return false;
}

bool fail(std::string* error, const std::string& msg) {
    if (error) *error = msg;
    return false;
}

} // namespace

bool validate_json(const Json& value, const Json& schema, std::string* error) {
    if (schema.contains("type")) {
        const Json& ty = schema["type"];
        bool ok = false;
        if (ty.is_array()) {
            for (const auto& t : ty) ok = ok || type_matches(value, t.get<std::string>());
        } else {
            ok = type_matches(value, ty.get<std::string>());
        }
        if (!ok) return fail(error, "type mismatch: expected " + ty.dump() + ", got " + value.dump().substr(0, 80));
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& e : schema["enum"]) ok = ok || (e == value);
        if (!ok) return fail(error, "value " + value.dump() + " not in enum");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    return fail(error, "missing required field '" + key.get<std::string>() + "'");
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
                if (value.contains(it.key()))
                    if (!validate_json(value[it.key()], it.value(), error)) return false;
    }
    if (value.is_array() && schema.contains("items"))
        for (const auto& item : value)
            if (!validate_json(item, schema["items"], error)) return false;
    return true;
}

bool validate_report(const Json& report, const Json& schema_root, std::string* error) {
    if (!validate_json(report, schema_root["envelope"], error)) return false;
    const std::string command = report["command"].get<std::string>();
    if (!schema_root["commands"].contains(command)) return fail(error, "unknown command '" + command + "'");
    return validate_json(report["result"], schema_root["commands"][command], error);
}

} // namespace oscint
