#pragma once

#include "stoch2c/complex.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace stoch2c {

// Text format ".s2c".  Header line "s2c 1", then one simplex per line as
// "<dim> <v0> [v1 [v2]]" with strictly increasing vertex ids; '#' starts a
// comment.  The complex is the downward closure of the listed simplices.
// serialize() writes maximal simplices only, in canonical order, so
// parse(serialize(c)) == c.

struct S2cParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SimplicialComplex2 parse_s2c(std::istream& in);
SimplicialComplex2 parse_s2c_string(const std::string& text);
SimplicialComplex2 load_s2c_file(const std::string& path);

std::string serialize_s2c(const SimplicialComplex2& c);
void save_s2c_file(const SimplicialComplex2& c, const std::string& path);

// One-line canonical form used by tabular outputs: maximal simplices joined
// by spaces ("0 1-2 0-3-4"), or "empty".
std::string inline_form(const SimplicialComplex2& c);

} // namespace stoch2c
