#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "gnum/cnet.hpp"
#include "gnum/normal_form.hpp"
#include "gnum/value_norm.hpp"

namespace gnum {

/// Syntax error with the offset (0-based) into the parsed text.
struct parse_error : std::runtime_error {
    std::size_t pos;
    parse_error(const std::string& what, std::size_t pos_)
        : std::runtime_error(what + " at position " + std::to_string(pos_)), pos(pos_) {}
};

/// Expression grammar:
///   expr     := term (('+'|'-') term)*
///   term     := rational ('*' 'e^(' rational ')')? mask?
///             | 'e^(' rational ')' mask?          (coefficient 1)
///   mask     := '@' 'mod(' int ',' int (',' int)* ')'
///   rational := int ('/' int)?
/// "e" denotes the grid infinitesimal; e^(a) is its a-th power.
NormalForm parse_expression(const std::string& text);

/// Canonical printing in the grammar above; parse(print(x)) == x. The
/// value must have rational (real) coefficients.
std::string print_expression(const NormalForm& x);

/// "0" or "e^-rho" with rho a rational.
ValueNorm parse_norm(const std::string& text);

/// Scaling-net grammar (arguments of absdiff are expressions, separated
/// by ';' because masks contain commas):
///   net := 'const(' rational ')' | 'power(' rational ')'
///        | 'scale(' rational ',' net ')'
///        | 'sum(' net ',' net ')' | 'prod(' net ',' net ')'
///        | 'min(' net ',' net ')' | 'max(' net ',' net ')'
///        | 'env(' net ')' | 'switch(' int ',' net ',' net ')'
///        | 'absdiff(' expr ';' expr ')'
CNetPtr parse_cnet(const std::string& text);

}  // namespace gnum
