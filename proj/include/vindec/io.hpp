#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vindec/counting.hpp"
#include "vindec/curve.hpp"
#include "vindec/intervals.hpp"
#include "vindec/numeric.hpp"

namespace vindec {

using Json = nlohmann::ordered_json;

/// BigInt as a JSON number when it fits 2^53 exactly, decimal string otherwise.
Json json_bigint(const BigInt& z);

// Plain-text curve config:
//   kind normalized-moment | standard-moment | polynomial
//   n <integer>
//   coeff <rational> <rational> ...   (one row per component, polynomial kind)
Curve load_curve_config(std::istream& in);
Curve load_curve_file(const std::string& path);

/// One integer per line (blank lines and # comments ignored).
std::vector<i64> load_subset(std::istream& in);
std::vector<i64> load_subset_file(const std::string& path);

/// Lines "j v_1 v_2 ... v_n" defining a custom phi table; j must cover 1..N.
PhiMap load_phi_table(std::istream& in);
PhiMap load_phi_table_file(const std::string& path);

/// Lines "s_i t_i" of exact rationals.
std::vector<std::pair<Rational, Rational>> load_family(std::istream& in);
std::vector<std::pair<Rational, Rational>> load_family_file(const std::string& path);

}  // namespace vindec
