#pragma once

// Translation of action theories into answer set programs, and a harness
// that compares the native engine against an external ASP solver.

#include "cmt/engine.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cmt
{

struct program_section
{
    std::string name;
    std::vector< std::string > lines;
};

struct emitted_program
{
    std::vector< program_section > sections; // fixed order, see section_names()
    std::uint32_t horizon = 0;

    [[nodiscard]] const program_section* find( std::string_view name ) const;
    [[nodiscard]] std::string text() const;
};

[[nodiscard]] const std::vector< std::string >& section_names();

// Emits the program for (D, O) plus an optional goal that must hold at the
// horizon. Forbids laws become integrity constraints according to
// `config`; the action policy singleton adds a noconcurrency constraint
// over all actions.
[[nodiscard]] emitted_program emit_program( const compiled_domain& domain, const std::vector< observation >& observations,
                                            const std::optional< literal_list >& goal, std::uint32_t horizon,
                                            const semantics_config& config );

// Only the integrity constraints for the forbids laws of `domain`.
[[nodiscard]] std::vector< std::string > emit_theory_constraints( const compiled_domain& domain,
                                                                  const semantics_config& config );

// Solver access. A command template contains `{file}` which is replaced by
// the path of the program file.
[[nodiscard]] std::optional< std::string > detect_solver();

enum class solver_verdict
{
    satisfiable,
    unsatisfiable,
    skipped,
    error
};

[[nodiscard]] const char* to_string( solver_verdict v );

struct solver_outcome
{
    solver_verdict verdict = solver_verdict::skipped;
    std::string detail;
};

[[nodiscard]] solver_outcome run_solver( const std::string& command_template, const std::string& program );

struct differential_case
{
    std::string name;
    domain_description domain;
    std::vector< observation > observations;
    std::optional< literal_list > goal; // nullopt: consistency check
    std::uint32_t horizon = 1;
    semantics_config config;
};

struct differential_row
{
    std::string case_name;
    bool native = false;
    std::optional< bool > solver;
    std::string verdict; // AGREE, DISAGREE, SKIPPED, ERROR
    std::string detail;
    std::string program; // kept for disagreements and errors
};

struct differential_report
{
    std::vector< differential_row > rows;
    std::size_t agree = 0;
    std::size_t disagree = 0;
    std::size_t skipped = 0;
    std::size_t errors = 0;
};

// Small random theories (two classes, three actions, horizon <= 4) drawn
// from a fixed seed. Every case comes in a consistency and a planning
// variant.
[[nodiscard]] std::vector< differential_case > random_battery( std::uint64_t seed, std::size_t count );

// An empty command template skips every case.
[[nodiscard]] differential_report differential_check( const std::vector< differential_case >& cases,
                                                      const std::string& solver_template );

} // namespace cmt
