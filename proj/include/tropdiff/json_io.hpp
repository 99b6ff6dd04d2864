#ifndef TROPDIFF_JSON_IO_HPP
#define TROPDIFF_JSON_IO_HPP

#include <json.hpp>

#include "tropdiff/document.hpp"
#include "tropdiff/tropicalize.hpp"

namespace tropdiff {

// Machine-readable output. Rationals are always "p/q" strings (never
// floats), +infinity bounds are null, point sets come out sorted, and
// ordered_json keeps field order fixed, so dumps are byte-stable.
using Json = nlohmann::ordered_json;

Json rational_json(const Rational& q);
Json ext_json(const ExtRational& b);
Json exponent_json(const Exponent& e);   // array of rational strings
Json trop_value_json(const TropValue& v); // array of rational strings, or "inf"
Json series_json(const TruncatedSeries& s);
Json support_json(const SupportSet& s);
Json log_support_json(const BoolTransseries& b);
Json trop_poly_json(const TropDiffPolynomial& f, const std::vector<std::string>& indep_names,
                    const std::vector<std::string>& dep_names);
Json document_json(const SystemDocument& doc);

} // namespace tropdiff

#endif
