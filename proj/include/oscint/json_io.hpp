#ifndef OSCINT_JSON_IO_HPP
#define OSCINT_JSON_IO_HPP

#include <json.hpp>

#include <optional>
#include <string>

#include "oscint/cone.hpp"
#include "oscint/sublevel.hpp"
#include "oscint/transfer.hpp"

namespace oscint {

using Json = nlohmann::json;

Json rational_json(const Rational& q);                 // {"num": .., "den": ..}
Json germ_terms_json(const LogPowerSum& g);            // [{s_num, s_den, k, coeff_num, coeff_den}]
LogPowerSum germ_terms_from_json(const Json& terms);

Json cell_json(const ConeCell& cell);                  // {sign_pattern, H, eps, N, rays, jacobian}
Json cells_report(const std::vector<ConeCell>& cells);

Json sublevel_function_json(const SublevelFunction& f);
Json sublevel_report(const SublevelFunction& f, const MultiPhaseExpansion* breakdown);

Json series_report(const AsymptoticSeries& series);
Json poles_report(const std::vector<PoleDatum>& poles);

Json verify_report(const std::string& case_name, double symbolic, double numeric, double sigma, bool pass);

// Envelope shared by every command: {"command", "status", "problem", "result"}.
Json make_report(const std::string& command, Json problem, Json result);

// Structural validation against the checked-in schema (a small subset of
// JSON Schema: type / required / properties / items / enum).
bool validate_json(const Json& value, const Json& schema, std::string* error = nullptr);
bool validate_report(const Json& report, const Json& schema_root, std::string* error = nullptr);

} // namespace oscint

#endif
