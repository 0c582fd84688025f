#pragma once

#include <iosfwd>
#include <string>

#include "rmc/atw.hpp"
#include "rmc/code.hpp"
#include "rmc/hamming.hpp"
#include "rmc/spread.hpp"

namespace rmc {

// "p", "p^D", or "p^D:modulus"; the first two resolve to the canonical
// modulus.  Formatting always emits the full "p^D:modulus" form.
FieldPtr parse_field_spec(const std::string& s);
std::string format_field_spec(const Field& f);

// Generator matrix file: header `field=<spec> base=<spec> k=<k> n=<n>`
// followed by k lines of n integer entry reprs.
RankCode read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const RankCode& C);
void write_matrix_file(const std::string& path, const Mat& G, const Embedding& base);
void write_matrix(std::ostream& os, const Mat& G, const Embedding& base);

// Spread dump: header `N=<N> t=<t> q=<q> count=<c>`, one element per line as
// semicolon-separated basis vectors with space-separated coordinates.  The
// base field is reconstructed canonically from its order; the count header is
// advisory (the elements actually present win).
Spread read_spread_file(const std::string& path);
void write_spread_file(const std::string& path, const Spread& S);
void write_spread(std::ostream& os, const Spread& S);

// One vector per line, space-separated coordinates.
std::vector<std::vector<u64>> read_vectors_file(const std::string& path);

// Serialized JSON, stable key order.
std::string to_json_string(const WeightDistribution& d);
std::string to_json_string(const AtwReport& r);
std::string to_json_string(const HammingTwoWeightReport& r);

}  // namespace rmc
