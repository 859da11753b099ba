#include "cmt/state.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmt
{

bool pattern::matches( value_id v ) const
{
    switch ( relation )
    {
    case guard_relation::eq: return v == value;
    case guard_relation::ne: return v != value;
    case guard_relation::lt: return v < value;
    case guard_relation::le: return v <= value;
    case guard_relation::gt: return v > value;
    case guard_relation::ge: return v >= value;
    }
    return false;
}

std::size_t state_hash::operator()( const state& s ) const noexcept
{
    // FNV-1a over the slot bytes.
    std::size_t h = 1469598103934665603ull;
    for ( auto v : s.slots )
    {
        h ^= v;
        h *= 1099511628211ull;
    }
    return h;
}

bool all_hold( const state& s, std::span< const atom > atoms )
{
    return std::all_of( atoms.begin(), atoms.end(), [ & ]( atom a ) { return s.holds( a ); } );
}

compiled_domain::compiled_domain( domain_description domain ) : _domain( std::move( domain ) )
{
    auto report = validate_domain( _domain );
    if ( !report.ok() )
        throw validation_failure( std::move( report.errors ) );

    for ( const auto& f : _domain.fluents )
    {
        _fluent_index.emplace( f.name, static_cast< slot_id >( _arity.size() ) );
        _slot_names.push_back( f.name );
        _arity.push_back( 2 );
    }
    for ( const auto& c : _domain.classes )
    {
        _class_index.emplace( c.name, static_cast< slot_id >( _arity.size() ) );
        _slot_names.push_back( c.name );
        _arity.push_back( static_cast< value_id >( c.values.size() ) );
    }
    for ( std::size_t i = 0; i < _domain.actions.size(); ++i )
        _action_index.emplace( _domain.actions[ i ].name, static_cast< action_id >( i ) );
    _defaults.assign( _arity.size(), std::nullopt );

    auto atoms = [ & ]( const literal_list& lits ) {
        std::vector< atom > out;
        out.reserve( lits.size() );
        for ( const auto& l : lits )
            out.push_back( resolve( l ) );
        return out;
    };
    auto patterns = [ & ]( const literal_list& lits ) {
        std::vector< pattern > out;
        out.reserve( lits.size() );
        for ( const auto& l : lits )
            out.push_back( resolve_pattern( l ) );
        return out;
    };
    auto act = [ & ]( const std::string& name ) { return *find_action( name ); };

    for ( std::size_t i = 0; i < _domain.laws.size(); ++i )
    {
        const auto& body = _domain.laws[ i ].body;
        if ( const auto* l = std::get_if< law::causes >( &body ) )
            _effect_laws.push_back( { act( l->action ), atoms( l->effects ), atoms( l->conditions ), i } );
        else if ( const auto* l = std::get_if< law::influences_dynamic >( &body ) )
            _effect_laws.push_back( { act( l->action ), atoms( l->effects ), atoms( l->conditions ), i } );
        else if ( const auto* l = std::get_if< law::static_law >( &body ) )
            _static_laws.push_back( { atoms( l->effects ), atoms( l->conditions ), i } );
        else if ( const auto* l = std::get_if< law::influences_static >( &body ) )
            _static_laws.push_back( { atoms( l->effects ), atoms( l->conditions ), i } );
        else if ( const auto* l = std::get_if< law::triggers >( &body ) )
            _triggers.push_back( { act( l->action ), atoms( l->conditions ), i } );
        else if ( const auto* l = std::get_if< law::allows >( &body ) )
            _allows.push_back( { act( l->action ), atoms( l->conditions ), i } );
        else if ( const auto* l = std::get_if< law::inhibits >( &body ) )
            _inhibits.push_back( { act( l->action ), atoms( l->conditions ), i } );
        else if ( const auto* l = std::get_if< law::facilitates >( &body ) )
            _facilitates.push_back( { act( l->action ), atoms( l->conditions ), i } );
        else if ( const auto* l = std::get_if< law::contravenes >( &body ) )
            _contravenes.push_back( { act( l->action ), atoms( l->conditions ), i } );
        else if ( const auto* l = std::get_if< law::no_concurrency >( &body ) )
        {
            std::vector< action_id > group;
            for ( const auto& a : l->actions )
                group.push_back( act( a ) );
            _noconcurrency.push_back( std::move( group ) );
        }
        else if ( const auto* l = std::get_if< law::default_value >( &body ) )
        {
            const atom a = resolve( l->value );
            _defaults[ a.slot ] = a.value;
        }
        else if ( const auto* l = std::get_if< law::forbids_to_cause >( &body ) )
            _forbids.push_back( { l->id, l->origin, patterns( l->left ), patterns( l->right ), i } );
    }
}

std::optional< slot_id > compiled_domain::find_fluent( std::string_view name ) const
{
    auto it = _fluent_index.find( std::string{ name } );
    return it == _fluent_index.end() ? std::nullopt : std::optional{ it->second };
}

std::optional< slot_id > compiled_domain::find_class( std::string_view name ) const
{
    auto it = _class_index.find( std::string{ name } );
    return it == _class_index.end() ? std::nullopt : std::optional{ it->second };
}

std::optional< action_id > compiled_domain::find_action( std::string_view name ) const
{
    auto it = _action_index.find( std::string{ name } );
    return it == _action_index.end() ? std::nullopt : std::optional{ it->second };
}

std::optional< value_id > compiled_domain::find_value( slot_id slot, std::string_view value ) const
{
    if ( !is_mental_slot( slot ) )
        return std::nullopt;
    const auto& values = _domain.classes[ slot - env_count() ].values;
    auto it = std::find( values.begin(), values.end(), value );
    if ( it == values.end() )
        return std::nullopt;
    return static_cast< value_id >( it - values.begin() );
}

atom compiled_domain::resolve( const literal& lit ) const
{
    if ( lit.is_guard() )
        throw std::invalid_argument( "value guard '" + lit.name + "' cannot be used as a plain fluent" );
    const auto p = resolve_pattern( lit );
    return atom{ p.slot, p.value };
}

pattern compiled_domain::resolve_pattern( const literal& lit ) const
{
    if ( lit.is_env() )
    {
        auto slot = find_fluent( lit.name );
        if ( !slot )
            throw std::invalid_argument( "undeclared fluent '" + lit.name + "'" );
        return pattern{ *slot, guard_relation::eq, static_cast< value_id >( lit.positive ? 1 : 0 ) };
    }
    auto slot = find_class( lit.name );
    if ( !slot )
        throw std::invalid_argument( "undeclared class '" + lit.name + "'" );
    auto value = find_value( *slot, lit.value );
    if ( !value )
        throw std::invalid_argument( "'" + lit.value + "' is not a value of class '" + lit.name + "'" );
    return pattern{ *slot, lit.relation, *value };
}

const std::string& compiled_domain::slot_name( slot_id slot ) const
{
    return _slot_names.at( slot );
}

const std::string& compiled_domain::value_name( slot_id slot, value_id value ) const
{
    static const std::string truth[] = { "false", "true" };
    if ( !is_mental_slot( slot ) )
        return truth[ value != 0 ];
    return _domain.classes[ slot - env_count() ].values.at( value );
}

const std::string& compiled_domain::action_name( action_id action ) const
{
    return _domain.actions.at( action ).name;
}

std::string compiled_domain::to_string( atom a ) const
{
    if ( !is_mental_slot( a.slot ) )
        return ( a.value != 0 ? "" : "neg " ) + slot_name( a.slot );
    return "f(" + slot_name( a.slot ) + "," + value_name( a.slot, a.value ) + ")";
}

std::string compiled_domain::to_string( const pattern& p ) const
{
    if ( p.relation == guard_relation::eq )
        return to_string( atom{ p.slot, p.value } );
    return "f(" + slot_name( p.slot ) + "," + cmt::to_string( p.relation ) + value_name( p.slot, p.value ) + ")";
}

literal compiled_domain::to_literal( atom a ) const
{
    if ( !is_mental_slot( a.slot ) )
        return literal::env( slot_name( a.slot ), a.value != 0 );
    return literal::mental( slot_name( a.slot ), value_name( a.slot, a.value ) );
}

state compiled_domain::make_state( const std::vector< std::pair< std::string, std::string > >& mental,
                                   const std::vector< std::pair< std::string, bool > >& env ) const
{
    state s;
    s.slots.assign( slot_count(), 0 );
    std::vector< bool > seen( slot_count(), false );
    for ( const auto& [ name, value ] : env )
    {
        auto slot = find_fluent( name );
        if ( !slot )
            throw std::invalid_argument( "undeclared fluent '" + name + "'" );
        s.slots[ *slot ] = value ? 1 : 0;
    }
    for ( const auto& [ cls, value ] : mental )
    {
        auto slot = find_class( cls );
        if ( !slot )
            throw std::invalid_argument( "undeclared class '" + cls + "'" );
        auto v = find_value( *slot, value );
        if ( !v )
            throw std::invalid_argument( "'" + value + "' is not a value of class '" + cls + "'" );
        s.slots[ *slot ] = *v;
        seen[ *slot ] = true;
    }
    for ( std::size_t i = env_count(); i < slot_count(); ++i )
        if ( !seen[ i ] )
            throw std::invalid_argument( "no value given for class '" + _slot_names[ i ] + "'" );
    return s;
}

mental_assignments::iterator::iterator( const std::vector< value_id >* arities, bool end ) : _arities( arities )
{
    _done = end || arities->empty()
            || std::any_of( arities->begin(), arities->end(), []( value_id n ) { return n == 0; } );
    if ( !_done )
        _current.assign( arities->size(), 0 );
}

mental_assignments::iterator& mental_assignments::iterator::operator++()
{
    // Odometer with the last class varying fastest.
    for ( std::size_t i = _current.size(); i-- > 0; )
    {
        if ( ++_current[ i ] < ( *_arities )[ i ] )
            return *this;
        _current[ i ] = 0;
    }
    _done = true;
    _current.clear();
    return *this;
}

mental_assignments::iterator mental_assignments::iterator::operator++( int )
{
    auto copy = *this;
    ++*this;
    return copy;
}

std::size_t mental_assignments::size() const
{
    if ( _arities.empty() )
        return 0;
    std::size_t n = 1;
    for ( auto a : _arities )
        n *= a;
    return n;
}

mental_assignments enumerate_state_space( const std::vector< psych_class >& classes )
{
    if ( classes.empty() )
        throw std::invalid_argument( "state space needs at least one psychological class" );
    std::vector< value_id > arities;
    arities.reserve( classes.size() );
    for ( const auto& c : classes )
        arities.push_back( static_cast< value_id >( c.values.size() ) );
    return mental_assignments{ std::move( arities ) };
}

state_check is_state( const compiled_domain& domain, const state& candidate )
{
    state_check result;
    for ( const auto& law : domain.static_laws() )
        if ( all_hold( candidate, law.conditions ) && !all_hold( candidate, law.effects ) )
        {
            result.is_state = false;
            result.violated_laws.push_back( law.law_index );
        }
    return result;
}

state_check is_state( const domain_description& domain, const state& candidate )
{
    return is_state( compiled_domain{ domain }, candidate );
}

} // namespace cmt
