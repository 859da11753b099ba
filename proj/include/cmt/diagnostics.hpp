#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmt
{

struct source_span
{
    std::string file;
    std::uint32_t line = 0;   // 1-based; 0 means "no location"
    std::uint32_t column = 0; // 1-based
    std::uint32_t length = 0;

    bool operator==( const source_span& ) const = default;
};

enum class diagnostic_kind
{
    lex_error,
    parse_error,
    undeclared_symbol,
    kind_mismatch,
    empty_rule_side,
    duplicate_name,
    order_on_unordered,
    invalid_value,
    observation_out_of_range,
    warning
};

[[nodiscard]] const char* to_string( diagnostic_kind kind );

struct diagnostic
{
    diagnostic_kind kind = diagnostic_kind::parse_error;
    std::string message;
    source_span span;
    std::vector< std::string > expected; // expected-token set for parse errors

    [[nodiscard]] std::string format() const;
};

// Thrown by APIs that require a validated input (e.g. compiling a domain
// that still has errors). Carries the full diagnostic list.
class validation_failure : public std::runtime_error
{
    std::vector< diagnostic > _diagnostics;

public:
    explicit validation_failure( std::vector< diagnostic > diagnostics );

    [[nodiscard]] const std::vector< diagnostic >& diagnostics() const { return _diagnostics; }
};

} // namespace cmt
