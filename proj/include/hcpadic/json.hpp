#pragma once

#include <json.hpp>

#include "hcpadic/model.hpp"
#include "hcpadic/oracle.hpp"
#include "hcpadic/padic.hpp"

namespace hardcore {

using json = nlohmann::ordered_json;

/// {prime, valuation, digits, precision}; digits are the unit digits, least
/// significant first. Zero at precision has no digits and stores its
/// absolute precision as the valuation.
json to_json(const padic::PadicNumber& x);
padic::PadicNumber padic_from_json(const json& j);

json to_json(const Residual& r);
json to_json(const SolveReport& report, const ModelParams& params);
json to_json(const PrimeTable& table);

/// {k, n, topology, p, boundary, omega_count, omega_norm, ...}
json to_json(const NormReport& report, const BoundaryField& boundary);
json to_json(const CompatibilityReport& report, const ModelParams& params, const BoundaryField& boundary);
json to_json(const BoundaryField& boundary);

json valuation_json(const padic::Valuation& v);
std::string rational_string(const mpq_class& q);

}  // namespace hardcore
