#pragma once

#include "mldcone/chart.hpp"
#include "mldcone/mld.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mldcone {

// Malformed input; the message names the offending field or file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Strict reader for the cone interchange format: an object with exactly the
// fields name (string), r (rational string "p/q" or "p"), dim (integer) and
// charts (list of { label, factors: [ { order, weights } ] }), weights[0]
// being the fiber direction. Unknown, missing or mistyped fields raise
// ParseError naming the field. No semantic checks happen here; run
// validate_cone on the result.
FanoConeData cone_from_json(const std::string& text);

// Inverse of cone_from_json. Two-space indentation, trailing newline,
// rationals in lowest terms.
std::string cone_to_json(const FanoConeData& data);

FanoConeData load_cone_file(const std::string& path);

// "m:a1,a2,..." shorthand for C^n / (1/m)(a_1..a_n); weights are reduced
// into [0, m) before the cone is built, so the name is canonical.
FanoConeData parse_quotient_shorthand(const std::string& text,
                                      std::int64_t max_order = kDefaultMaxOrder);

// { "name", "r", "mld", "witness": { "chart", "element" }, "terms": [...] }.
std::string mld_result_to_json(const FanoConeData& data,
                               const MldResult& result);

// Header plus one row: name,mld,witness_chart,witness_element,bound,ok.
std::string mld_result_to_csv(const FanoConeData& data,
                              const MldResult& result);

// RFC 4180: wraps a field in double quotes when it contains commas, quotes
// or line breaks, doubling interior quotes.
std::string csv_quote(const std::string& field);

// "e" for the identity, else semicolon-joined exponents.
std::string exponents_str(const std::vector<std::int64_t>& exponents);

}  // namespace mldcone
