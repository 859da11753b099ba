#pragma once

// Concrete syntax for domains (.cmt), observations (.cmto) and queries
// (.cmtq). The grammar is documented in docs/grammar.md. Parsing never
// throws on bad input; every rejection is reported as a diagnostic with a
// span inside the text.

#include "cmt/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmt
{

template < typename T >
struct parse_result
{
    std::optional< T > value;
    std::vector< diagnostic > diagnostics; // errors, then warnings

    [[nodiscard]] bool ok() const { return value.has_value(); }
};

// Parses and validates a domain description.
[[nodiscard]] parse_result< domain_description > parse_domain( std::string_view text, std::string file = {} );

// Parses observations. When `domain` is given the observations are also
// validated against its symbols.
[[nodiscard]] parse_result< std::vector< observation > >
parse_observations( std::string_view text, std::string file = {}, const domain_description* domain = nullptr );

[[nodiscard]] parse_result< query > parse_query( std::string_view text, std::string file = {},
                                                 const domain_description* domain = nullptr );

// A theory fragment: a file that only contains forbids_to_cause laws. The
// rules are numbered 1..n in file order and tagged with `origin`. Symbols
// are not validated here (the fragment has no declarations); validation
// happens when the rules are attached to a domain.
[[nodiscard]] parse_result< std::vector< law::forbids_to_cause > >
parse_theory_rules( std::string_view text, std::string origin, std::string file = {} );

[[nodiscard]] std::string print_literal( const literal& lit );
[[nodiscard]] std::string print_law( const causal_law& law );

// Canonical text; parse_domain(print_domain(d)) == d. Comments and layout
// of the original text are not preserved.
[[nodiscard]] std::string print_domain( const domain_description& domain );
[[nodiscard]] std::string print_observations( const std::vector< observation >& observations );
[[nodiscard]] std::string print_query( const query& q );

// Reads a whole file; throws std::runtime_error when it cannot be opened.
[[nodiscard]] std::string read_file( const std::string& path );

} // namespace cmt
