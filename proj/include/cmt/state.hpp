#pragma once

// Indexed form of a validated domain. Every fluent position becomes a
// "slot": environment fluents come first (value 0 = false, 1 = true),
// followed by one slot per psychological class whose value is an index into
// the class's value list. A state is then a total assignment of slots, which
// makes class exclusivity structural and states cheap to hash.

#include "cmt/model.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cmt
{

using slot_id = std::uint16_t;
using value_id = std::uint8_t;
using action_id = std::uint16_t;

struct atom
{
    slot_id slot = 0;
    value_id value = 0;

    auto operator<=>( const atom& ) const = default;
};

// A slot constraint used by forbids_to_cause sides: value `relation` ref.
struct pattern
{
    slot_id slot = 0;
    guard_relation relation = guard_relation::eq;
    value_id value = 0;

    [[nodiscard]] bool matches( value_id v ) const;
    bool operator==( const pattern& ) const = default;
};

struct state
{
    std::vector< value_id > slots;

    [[nodiscard]] value_id operator[]( slot_id slot ) const { return slots[ slot ]; }
    [[nodiscard]] bool holds( atom a ) const { return slots[ a.slot ] == a.value; }
    [[nodiscard]] bool matches( const pattern& p ) const { return p.matches( slots[ p.slot ] ); }

    auto operator<=>( const state& ) const = default;
};

struct state_hash
{
    std::size_t operator()( const state& s ) const noexcept;
};

struct compiled_effect_law // causes / influences (dynamic)
{
    action_id action = 0;
    std::vector< atom > effects;
    std::vector< atom > conditions;
    std::size_t law_index = 0;
};

struct compiled_static_law // static law / influences (static)
{
    std::vector< atom > effects;
    std::vector< atom > conditions;
    std::size_t law_index = 0;
};

struct compiled_action_rule // triggers / allows / inhibits / facilitates / contravenes
{
    action_id action = 0;
    std::vector< atom > conditions;
    std::size_t law_index = 0;
};

struct compiled_forbid
{
    int id = 0;
    std::string origin;
    std::vector< pattern > left;
    std::vector< pattern > right;
    std::size_t law_index = 0;
};

class compiled_domain
{
public:
    // Throws validation_failure when the domain has errors.
    explicit compiled_domain( domain_description domain );

    [[nodiscard]] const domain_description& description() const { return _domain; }

    [[nodiscard]] std::size_t env_count() const { return _domain.fluents.size(); }
    [[nodiscard]] std::size_t class_count() const { return _domain.classes.size(); }
    [[nodiscard]] std::size_t slot_count() const { return _arity.size(); }
    [[nodiscard]] std::size_t action_count() const { return _domain.actions.size(); }
    [[nodiscard]] value_id arity( slot_id slot ) const { return _arity[ slot ]; }
    [[nodiscard]] bool is_mental_slot( slot_id slot ) const { return slot >= env_count(); }
    [[nodiscard]] slot_id class_slot( std::size_t class_index ) const
    {
        return static_cast< slot_id >( env_count() + class_index );
    }

    [[nodiscard]] std::optional< slot_id > find_fluent( std::string_view name ) const;
    [[nodiscard]] std::optional< slot_id > find_class( std::string_view name ) const;
    [[nodiscard]] std::optional< action_id > find_action( std::string_view name ) const;
    [[nodiscard]] std::optional< value_id > find_value( slot_id slot, std::string_view value ) const;

    // Resolve a non-guard literal. Throws std::invalid_argument on unknown symbols.
    [[nodiscard]] atom resolve( const literal& lit ) const;
    [[nodiscard]] pattern resolve_pattern( const literal& lit ) const;

    [[nodiscard]] const std::string& slot_name( slot_id slot ) const;
    [[nodiscard]] const std::string& value_name( slot_id slot, value_id value ) const;
    [[nodiscard]] const std::string& action_name( action_id action ) const;
    [[nodiscard]] action_kind kind_of( action_id action ) const { return _domain.actions[ action ].kind; }

    // "f(ne,high)" for mental atoms, "door" / "neg door" for environment atoms.
    [[nodiscard]] std::string to_string( atom a ) const;
    [[nodiscard]] std::string to_string( const pattern& p ) const;
    [[nodiscard]] literal to_literal( atom a ) const;

    [[nodiscard]] const std::vector< compiled_effect_law >& effect_laws() const { return _effect_laws; }
    [[nodiscard]] const std::vector< compiled_static_law >& static_laws() const { return _static_laws; }
    [[nodiscard]] const std::vector< compiled_action_rule >& triggers() const { return _triggers; }
    [[nodiscard]] const std::vector< compiled_action_rule >& allowances() const { return _allows; }
    [[nodiscard]] const std::vector< compiled_action_rule >& inhibitions() const { return _inhibits; }
    [[nodiscard]] const std::vector< compiled_action_rule >& facilitations() const { return _facilitates; }
    [[nodiscard]] const std::vector< compiled_action_rule >& contraventions() const { return _contravenes; }
    [[nodiscard]] const std::vector< std::vector< action_id > >& noconcurrency_groups() const { return _noconcurrency; }
    [[nodiscard]] const std::vector< compiled_forbid >& forbids() const { return _forbids; }

    // Per slot: the default value when the slot is non-inertial.
    [[nodiscard]] const std::vector< std::optional< value_id > >& defaults() const { return _defaults; }

    // State construction helpers. Unlisted environment fluents default to
    // false; every class must be given a value.
    [[nodiscard]] state make_state( const std::vector< std::pair< std::string, std::string > >& mental,
                                    const std::vector< std::pair< std::string, bool > >& env = {} ) const;

private:
    domain_description _domain;
    std::vector< value_id > _arity;
    std::vector< std::string > _slot_names;
    std::unordered_map< std::string, slot_id > _fluent_index;
    std::unordered_map< std::string, slot_id > _class_index;
    std::unordered_map< std::string, action_id > _action_index;

    std::vector< compiled_effect_law > _effect_laws;
    std::vector< compiled_static_law > _static_laws;
    std::vector< compiled_action_rule > _triggers;
    std::vector< compiled_action_rule > _allows;
    std::vector< compiled_action_rule > _inhibits;
    std::vector< compiled_action_rule > _facilitates;
    std::vector< compiled_action_rule > _contravenes;
    std::vector< std::vector< action_id > > _noconcurrency;
    std::vector< compiled_forbid > _forbids;
    std::vector< std::optional< value_id > > _defaults;
};

[[nodiscard]] bool all_hold( const state& s, std::span< const atom > atoms );

// Cartesian product of the class value sets, first class most significant,
// values in declaration order.
class mental_assignments
{
public:
    class iterator
    {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = std::vector< value_id >;
        using difference_type = std::ptrdiff_t;
        using pointer = const value_type*;
        using reference = const value_type&;

        iterator() = default;
        iterator( const std::vector< value_id >* arities, bool end );

        reference operator*() const { return _current; }
        pointer operator->() const { return &_current; }
        iterator& operator++();
        iterator operator++( int );
        bool operator==( const iterator& other ) const { return _done == other._done && ( _done || _current == other._current ); }

    private:
        const std::vector< value_id >* _arities = nullptr;
        std::vector< value_id > _current;
        bool _done = true;
    };

    explicit mental_assignments( std::vector< value_id > arities ) : _arities{ std::move( arities ) } {}

    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] iterator begin() const { return iterator{ &_arities, false }; }
    [[nodiscard]] iterator end() const { return iterator{ &_arities, true }; }

private:
    std::vector< value_id > _arities;
};

// Throws std::invalid_argument when `classes` is empty.
[[nodiscard]] mental_assignments enumerate_state_space( const std::vector< psych_class >& classes );

struct state_check
{
    bool is_state = true;
    std::vector< std::size_t > violated_laws; // indices into description().laws
};

// A total assignment is a state iff every static law / static influence
// whose body holds also has its head satisfied.
[[nodiscard]] state_check is_state( const compiled_domain& domain, const state& candidate );
[[nodiscard]] state_check is_state( const domain_description& domain, const state& candidate );

} // namespace cmt
