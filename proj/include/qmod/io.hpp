#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qmod/flow.hpp"
#include "qmod/hn.hpp"
#include "qmod/replab.hpp"
#include "qmod/supermixed.hpp"

namespace qmod {

/// A parsed quiver file: the quiver, optional supermixed structure, and
/// optional default dimension vector / stability parameter.
struct QuiverFile {
    Quiver quiver;
    std::optional<SymmetricStructure> symmetric;
    std::optional<DimensionVector> default_dim;
    std::optional<StabilityParam> default_theta;
};

/// Parse and validate a quiver file (single JSON document). Violations are
/// reported with the offending vertex/arrow named.
QuiverFile parse_quiver_file(const std::string& text);
QuiverFile load_quiver_file(const std::string& path);

/// Representation files: {"field": 2|3|5|"C", "matrices": {name: [[...]]}}.
/// Complex entries are numbers or [re, im] pairs.
FFRep parse_ff_rep(const Quiver& q, const std::string& text, int expected_field = 0);
CRep parse_complex_rep(const Quiver& q, const std::string& text);
FFRep load_ff_rep(const Quiver& q, const std::string& path, int expected_field = 0);
CRep load_complex_rep(const Quiver& q, const std::string& path);

enum class OutputMode { Text, Json };
OutputMode parse_output_mode(const std::string& s);

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

/// Series as [[exponent, "p/q"], ...], nonzero coefficients in increasing
/// exponent order.
nlohmann::json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const nlohmann::json& j, int trunc_degree);
std::string series_to_text(const TruncatedSeries& s);

std::string dimvec_to_text(const DimensionVector& d);
nlohmann::json dimvec_to_json(const DimensionVector& d);
DimensionVector dimvec_from_json(const nlohmann::json& j);

/// "(1,0) > (0,1)"
std::string hn_type_to_text(const HNType& t);
nlohmann::json hn_type_to_json(const HNType& t);
HNType hn_type_from_json(const nlohmann::json& j);

nlohmann::json census_to_json(const CensusReport& r);
CensusReport census_from_json(const nlohmann::json& j);
std::string census_to_text(const CensusReport& r);

nlohmann::json flow_to_json(const FlowResult& r);
std::string flow_to_text(const FlowResult& r);

nlohmann::json strata_to_json(const std::vector<StratumRecord>& recs);
std::string strata_to_text(const std::vector<StratumRecord>& recs);

nlohmann::json example_strata_to_json(const std::vector<ExampleStratum>& recs);
std::string example_strata_to_text(const std::vector<ExampleStratum>& recs);

nlohmann::json group_to_json(const GroupSpec& g);

/// Fixed-precision float formatting so identical runs emit identical bytes.
std::string format_double(double x);

std::vector<long long> parse_int_list(const std::string& csv);

} // namespace qmod
