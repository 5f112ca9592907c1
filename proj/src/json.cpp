#include "hcpadic/json.hpp"

namespace hardcore {

json valuation_json(const padic::Valuation& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

json to_json(const padic::PadicNumber& x) {
    json j;
    j["prime"] = x.prime();
    j["valuation"] = x.is_zero() ? x.absolute_precision() : x.valuation().value();
    j["digits"] = x.unit_digits(x.precision());
    j["precision"] = x.precision();
    return j;
}

padic::PadicNumber padic_from_json(const json& j) {
    const auto p = j.at("prime").get<std::int64_t>();
    const auto v = j.at("valuation").get<std::int64_t>();
    const auto digits = j.at("digits").get<std::vector<std::int64_t>>();
    const auto precision = j.at("precision").get<int>();
    if (static_cast<int>(digits.size()) != precision) {
        throw padic::PadicError("p-adic JSON: digit count does not match precision");
    }
    if (precision == 0) return padic::PadicNumber::zero(p, v);
    const auto unit = padic::PadicNumber::from_digits(p, digits);
    return padic::PadicNumber::from_unit(p, v, unit.unit(), precision);
}

json to_json(const Residual& r) {
    return json{{"name", r.name}, {"valuation", valuation_json(r.valuation)}, {"checked_to", r.checked_to}};
}

json to_json(const BoundaryField& boundary) {
    json values = json::array();
    for (const auto& v : boundary.values()) values.push_back(to_json(v));
    return json{{"kind", to_string(boundary.kind())}, {"values", values}};
}

json to_json(const SolveReport& report, const ModelParams& params) {
    json j;
    j["status"] = to_string(report.status);
    j["message"] = report.message;
    j["gates"] = json::array();
    for (const auto& g : report.gates) {
        j["gates"].push_back(json{{"name", g.name}, {"holds", g.holds}, {"witness", g.witness}});
    }
    j["solutions"] = json::array();
    for (const auto& s : report.solutions) {
        json sol;
        sol["class"] = to_string(s.solution_class);
        sol["precision"] = s.precision();
        sol["residues"] = json::array();
        sol["values"] = json::array();
        for (const auto& v : s.values) {
            sol["residues"].push_back(v.residue(v.absolute_precision()).get_str());
            sol["values"].push_back(to_json(v));
        }
        sol["in_Ep"] = s.in_ep;
        sol["residual_valuations"] = json::array();
        for (const auto& r : s.residuals) sol["residual_valuations"].push_back(to_json(r));
        j["solutions"].push_back(sol);
    }
    j["notes"] = report.notes;
    j["params"] = json{{"p", params.p()},
                       {"k", params.k()},
                       {"J", to_json(params.coupling())},
                       {"lambda", to_json(params.fugacity())}};
    return j;
}

json to_json(const PrimeTable& table) {
    json j = json::object();
    for (const auto& [k, primes] : table) j[std::to_string(k)] = primes;
    return j;
}

json to_json(const NormReport& r, const BoundaryField& boundary) {
    json j;
    j["k"] = r.k;
    j["n"] = r.n;
    j["topology"] = to_string(r.topology);
    j["p"] = r.p;
    j["boundary"] = to_json(boundary);
    j["omega_count"] = r.configurations;
    j["omega_count_dp"] = r.dp_count.get_str();
    j["omega_norm"] = rational_string(r.omega_norm);
    if (r.closed_form_count) {
        j["omega_closed_form"] = r.closed_form_count->get_str();
        j["omega_closed_form_norm"] = rational_string(*r.closed_form_norm);
    }
    j["partition_norm"] = rational_string(r.partition_norm);
    j["normalization_ok"] = r.normalization_ok;
    j["normalization_checked_to"] = r.normalization_checked_to;
    j["weight_norms_all_one"] = r.weight_norms_all_one;
    j["mu_norm_range"] = json::array({rational_string(r.mu_norm_min), rational_string(r.mu_norm_max)});
    return j;
}

json to_json(const CompatibilityReport& r, const ModelParams& params, const BoundaryField& boundary) {
    json j;
    j["k"] = params.k();
    j["n"] = r.n;
    j["topology"] = to_string(Topology::KBranch);
    j["p"] = params.p();
    j["boundary"] = to_json(boundary);
    j["base_configurations"] = r.base_configurations;
    j["min_deviation_valuation"] = valuation_json(r.min_deviation);
    j["checked_to"] = r.checked_to;
    return j;
}

}  // namespace hardcore
