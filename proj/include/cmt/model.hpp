#pragma once

// Symbolic (name-level) representation of C_MT domain descriptions,
// observations, queries and action theories, plus well-formedness checks.
// Everything here is a plain value type; once built it is never mutated by
// the engine, so instances can be shared read-only between threads.

#include "cmt/diagnostics.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cmt
{

enum class guard_relation
{
    eq,
    ne,
    lt,
    le,
    gt,
    ge
};

[[nodiscard]] const char* to_string( guard_relation relation );

// A fluent literal. Environment literals carry a polarity; mental literals
// are class-valued atoms f(c,v) and have no negation. Inside
// forbids_to_cause rules a mental literal may instead be a value guard such
// as f(go, != low), standing for every value of the class that satisfies
// the relation.
struct literal
{
    enum class kind_t
    {
        env,
        mental
    };

    kind_t kind = kind_t::env;
    std::string name;  // environment fluent name, or psychological class
    std::string value; // mental value (empty for environment literals)
    bool positive = true;
    guard_relation relation = guard_relation::eq;
    source_span span;

    [[nodiscard]] static literal env( std::string fluent, bool positive = true );
    [[nodiscard]] static literal mental( std::string cls, std::string value );
    [[nodiscard]] static literal guard( std::string cls, guard_relation relation, std::string value );

    [[nodiscard]] bool is_env() const { return kind == kind_t::env; }
    [[nodiscard]] bool is_mental() const { return kind == kind_t::mental; }
    [[nodiscard]] bool is_guard() const { return is_mental() && relation != guard_relation::eq; }

    // Spans are metadata and do not take part in structural equality.
    bool operator==( const literal& other ) const;
};

using literal_list = std::vector< literal >;

struct psych_class
{
    std::string name;
    std::vector< std::string > values;
    bool ordered = false;
    source_span span;

    bool operator==( const psych_class& other ) const;
};

struct env_fluent_decl
{
    std::string name;
    source_span span;

    bool operator==( const env_fluent_decl& other ) const { return name == other.name; }
};

enum class action_kind
{
    environment,
    human
};

struct action_decl
{
    std::string name;
    action_kind kind = action_kind::environment;
    source_span span;

    bool operator==( const action_decl& other ) const { return name == other.name && kind == other.kind; }
};

namespace law
{

// (a causes f1..fn if g1..gm)
struct causes
{
    std::string action;
    literal_list effects;
    literal_list conditions;
    bool operator==( const causes& ) const = default;
};

// (f1..fn if g1..gm)
struct static_law
{
    literal_list effects;
    literal_list conditions;
    bool operator==( const static_law& ) const = default;
};

struct triggers
{
    literal_list conditions;
    std::string action;
    bool operator==( const triggers& ) const = default;
};

struct allows
{
    literal_list conditions;
    std::string action;
    bool operator==( const allows& ) const = default;
};

struct inhibits
{
    literal_list conditions;
    std::string action;
    bool operator==( const inhibits& ) const = default;
};

struct no_concurrency
{
    std::vector< std::string > actions;
    bool operator==( const no_concurrency& ) const = default;
};

// (default g): g is non-inertial and resets to this value unless caused otherwise.
struct default_value
{
    literal value;
    bool operator==( const default_value& ) const = default;
};

// (a influences f1^h..fn^h if g1..gm)
struct influences_dynamic
{
    std::string action;
    literal_list effects;
    literal_list conditions;
    bool operator==( const influences_dynamic& ) const = default;
};

// (g1..gm influences f1^h..fn^h)
struct influences_static
{
    literal_list conditions;
    literal_list effects;
    bool operator==( const influences_static& ) const = default;
};

struct facilitates
{
    literal_list conditions;
    std::string action;
    bool operator==( const facilitates& ) const = default;
};

struct contravenes
{
    literal_list conditions;
    std::string action;
    bool operator==( const contravenes& ) const = default;
};

// (g1^h..gm^h forbids_to_cause f1^h..fn^h). `left` is the side written
// before the keyword. `id` is the 1-based position among the forbids rules
// of its origin; `origin` names the theory the rule came from (empty when
// declared directly in a domain).
struct forbids_to_cause
{
    literal_list left;
    literal_list right;
    int id = 0;
    std::string origin;
    bool operator==( const forbids_to_cause& ) const = default;
};

} // namespace law

using law_body = std::variant< law::causes, law::static_law, law::triggers, law::allows, law::inhibits,
                               law::no_concurrency, law::default_value, law::influences_dynamic,
                               law::influences_static, law::facilitates, law::contravenes,
                               law::forbids_to_cause >;

[[nodiscard]] const char* law_keyword( const law_body& body );

struct causal_law
{
    law_body body;
    source_span span;

    bool operator==( const causal_law& other ) const { return body == other.body; }
};

struct domain_description
{
    std::vector< psych_class > classes;
    std::vector< env_fluent_decl > fluents;
    std::vector< action_decl > actions;
    std::vector< causal_law > laws;

    bool operator==( const domain_description& ) const = default;

    [[nodiscard]] const psych_class* find_class( std::string_view name ) const;
    [[nodiscard]] const action_decl* find_action( std::string_view name ) const;
    [[nodiscard]] bool has_fluent( std::string_view name ) const;

    // Number of forbids_to_cause laws whose origin is `origin`.
    [[nodiscard]] int forbids_count( std::string_view origin = {} ) const;
};

struct observation
{
    enum class kind_t
    {
        fluent_at,
        occurs_at
    };

    kind_t kind = kind_t::fluent_at;
    literal fluent;     // for fluent_at
    std::string action; // for occurs_at
    std::uint32_t time = 0;
    source_span span;

    [[nodiscard]] static observation at( literal fluent, std::uint32_t time );
    [[nodiscard]] static observation occurs( std::string action, std::uint32_t time );

    bool operator==( const observation& other ) const;
};

struct scheduled_actions
{
    std::vector< std::string > actions;
    std::uint32_t time = 0;
    source_span span;

    bool operator==( const scheduled_actions& other ) const
    {
        return actions == other.actions && time == other.time;
    }
};

struct query
{
    literal_list goal;
    std::vector< scheduled_actions > schedule;
    std::uint32_t horizon = 0;

    bool operator==( const query& ) const = default;
};

struct action_theory
{
    domain_description domain;
    std::vector< observation > observations;
};

struct validation_report
{
    std::vector< diagnostic > errors;
    std::vector< diagnostic > warnings;

    [[nodiscard]] bool ok() const { return errors.empty(); }
};

// Checks every well-formedness invariant of a domain description: unique
// names, declared symbols, value membership, kind restrictions on
// facilitates/contravenes/influences, non-empty rule sides, guard usage.
[[nodiscard]] validation_report validate_domain( const domain_description& domain );

// Observations must reference declared symbols; a horizon, when given,
// bounds their time stamps.
[[nodiscard]] validation_report validate_observations( const domain_description& domain,
                                                       const std::vector< observation >& observations );

[[nodiscard]] validation_report validate_query( const domain_description& domain, const query& q );

} // namespace cmt
