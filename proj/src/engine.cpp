#include "cmt/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace cmt
{

const char* to_string( orientation o )
{
    return o == orientation::as_written ? "as-written" : "reversed";
}

const char* to_string( firing f )
{
    return f == firing::holding ? "holding" : "onset";
}

const char* to_string( action_policy p )
{
    return p == action_policy::singleton_or_empty ? "singleton" : "any-subset";
}

const char* to_string( query_mode m )
{
    return m == query_mode::skeptical ? "skeptical" : "credulous";
}

const char* to_string( cause_kind c )
{
    switch ( c )
    {
    case cause_kind::completion: return "completion";
    case cause_kind::observation: return "observation";
    case cause_kind::inertia: return "inertia";
    case cause_kind::dynamic_law: return "dynamic-law";
    case cause_kind::static_law: return "static-law";
    case cause_kind::default_value: return "default";
    }
    return "?";
}

std::optional< orientation > parse_orientation( std::string_view text )
{
    if ( text == "as-written" || text == "as_written" )
        return orientation::as_written;
    if ( text == "reversed" )
        return orientation::reversed;
    return std::nullopt;
}

std::optional< firing > parse_firing( std::string_view text )
{
    if ( text == "holding" )
        return firing::holding;
    if ( text == "onset" )
        return firing::onset;
    return std::nullopt;
}

std::optional< action_policy > parse_action_policy( std::string_view text )
{
    if ( text == "singleton" || text == "singleton-or-empty" )
        return action_policy::singleton_or_empty;
    if ( text == "any-subset" || text == "any_subset" )
        return action_policy::any_subset;
    return std::nullopt;
}

namespace
{

const std::vector< pattern >& condition_side( const compiled_forbid& f, orientation o )
{
    return o == orientation::as_written ? f.left : f.right;
}

const std::vector< pattern >& forbidden_side( const compiled_forbid& f, orientation o )
{
    return o == orientation::as_written ? f.right : f.left;
}

bool all_match( const state& s, const std::vector< pattern >& patterns )
{
    return std::all_of( patterns.begin(), patterns.end(), [ & ]( const pattern& p ) { return s.matches( p ); } );
}

struct rule_flags
{
    std::vector< char > has;
    std::vector< char > body;

    explicit rule_flags( std::size_t n ) : has( n, 0 ), body( n, 0 ) {}
};

rule_flags evaluate( const std::vector< compiled_action_rule >& rules, const state& s, std::size_t actions )
{
    rule_flags out{ actions };
    for ( const auto& r : rules )
    {
        out.has[ r.action ] = 1;
        if ( all_hold( s, r.conditions ) )
            out.body[ r.action ] = 1;
    }
    return out;
}

std::string quoted( const compiled_domain& d, action_id a )
{
    return "'" + d.action_name( a ) + "'";
}

} // namespace

activation_profile compute_activation( const compiled_domain& domain, const state& s,
                                       const semantics_config& config )
{
    const std::size_t n = domain.action_count();
    const auto inh = evaluate( domain.inhibitions(), s, n );
    const auto trig = evaluate( domain.triggers(), s, n );
    const auto allow = evaluate( domain.allowances(), s, n );
    const auto fac = evaluate( domain.facilitations(), s, n );
    const auto con = evaluate( domain.contraventions(), s, n );

    activation_profile out;
    for ( std::size_t i = 0; i < n; ++i )
    {
        const auto a = static_cast< action_id >( i );
        const bool inhibited = inh.body[ i ];
        if ( inhibited )
            out.inhibited.push_back( a );

        const bool triggered = trig.body[ i ] && !inhibited;
        if ( triggered )
            out.triggered.push_back( a );
        else if ( trig.has[ i ] )
            out.trigger_blocked.push_back( a );

        const bool allowed = allow.body[ i ] && !inhibited;
        if ( allowed )
            out.allowed.push_back( a );
        else if ( allow.has[ i ] )
            out.allow_blocked.push_back( a );

        // Facilitation and contravention suppress each other.
        const bool facilitated = fac.body[ i ] && !inhibited && !con.body[ i ];
        if ( facilitated )
            out.facilitated.push_back( a );
        else if ( fac.has[ i ] )
            out.facilitate_blocked.push_back( a );

        if ( con.body[ i ] && !inhibited && !fac.body[ i ] )
            out.contravened.push_back( a );
    }

    const auto& forbids = domain.forbids();
    for ( std::size_t r = 0; r < forbids.size(); ++r )
    {
        if ( !all_match( s, condition_side( forbids[ r ], config.orientation ) ) )
            continue;
        for ( const auto& p : forbidden_side( forbids[ r ], config.orientation ) )
            for ( value_id v = 0; v < domain.arity( p.slot ); ++v )
                if ( p.matches( v ) )
                    out.forbidden_next.push_back( { atom{ p.slot, v }, r } );
    }
    return out;
}

std::vector< forbidden_fluent > fired_forbids( const compiled_domain& domain, const semantics_config& config,
                                               const state& s, const state& next )
{
    std::vector< forbidden_fluent > out;
    const auto& forbids = domain.forbids();
    for ( std::size_t r = 0; r < forbids.size(); ++r )
    {
        if ( !all_match( s, condition_side( forbids[ r ], config.orientation ) ) )
            continue;
        for ( const auto& p : forbidden_side( forbids[ r ], config.orientation ) )
        {
            if ( !next.matches( p ) )
                continue;
            if ( config.firing == firing::onset && s[ p.slot ] == next[ p.slot ] )
                continue;
            out.push_back( { atom{ p.slot, next[ p.slot ] }, r } );
        }
    }
    return out;
}

step_result step( const compiled_domain& domain, const state& s, const action_set& actions,
                  const semantics_config& config )
{
    step_result result;
    const std::size_t n = domain.action_count();
    std::vector< char > in( n, 0 );
    for ( auto a : actions )
    {
        if ( a >= n )
        {
            result.violations.push_back(
                { violation_kind::unknown_action, 1, "unknown action id " + std::to_string( a ), std::nullopt } );
            return result;
        }
        in[ a ] = 1;
    }

    const auto profile = compute_activation( domain, s, config );
    auto require = [ & ]( const action_set& set, int condition, const char* what ) {
        for ( auto a : set )
            if ( !in[ a ] )
                result.violations.push_back( { violation_kind::condition_violated, condition,
                                               "condition " + std::to_string( condition ) + ": " + what + " action "
                                                   + quoted( domain, a ) + " does not occur",
                                               std::nullopt } );
    };
    auto exclude = [ & ]( const action_set& set, int condition, const char* what ) {
        for ( auto a : set )
            if ( in[ a ] )
                result.violations.push_back( { violation_kind::condition_violated, condition,
                                               "condition " + std::to_string( condition ) + ": " + what + " action "
                                                   + quoted( domain, a ) + " occurs",
                                               std::nullopt } );
    };
    require( profile.triggered, 2, "triggered" );
    require( profile.facilitated, 3, "facilitated" );
    exclude( profile.trigger_blocked, 4, "trigger-blocked" );
    exclude( profile.allow_blocked, 5, "not allowed" );
    exclude( profile.inhibited, 6, "inhibited" );
    exclude( profile.facilitate_blocked, 7, "facilitation-blocked" );
    exclude( profile.contravened, 8, "contravened" );
    for ( const auto& group : domain.noconcurrency_groups() )
    {
        std::string names;
        int count = 0;
        for ( auto a : group )
            if ( in[ a ] )
            {
                names += ( count++ ? ", " : "" ) + quoted( domain, a );
            }
        if ( count > 1 )
            result.violations.push_back( { violation_kind::condition_violated, 9,
                                           "condition 9: actions " + names + " share a noconcurrency group",
                                           std::nullopt } );
    }

    // Successor construction. Dynamic effects are strong; inertia and
    // defaults are weak and may be overridden by static laws.
    enum class strength : char
    {
        weak,
        fixed,
    };
    const std::size_t slots = domain.slot_count();
    state next{ std::vector< value_id >( slots, 0 ) };
    std::vector< strength > lock( slots, strength::weak );
    std::vector< provenance_entry > prov( slots );
    std::vector< char > caused( slots, 0 );
    bool contradictory = false;

    for ( const auto& law : domain.effect_laws() )
    {
        if ( !in[ law.action ] || !all_hold( s, law.conditions ) )
            continue;
        for ( const auto& e : law.effects )
        {
            if ( caused[ e.slot ] && next[ e.slot ] != e.value )
            {
                contradictory = true;
                result.violations.push_back( { violation_kind::contradictory_effects, 1,
                                               "contradictory effects on '" + domain.slot_name( e.slot ) + "'",
                                               std::nullopt } );
                continue;
            }
            caused[ e.slot ] = 1;
            next.slots[ e.slot ] = e.value;
            lock[ e.slot ] = strength::fixed;
            prov[ e.slot ] = { e.slot, cause_kind::dynamic_law, law.law_index };
        }
    }
    if ( contradictory )
        return result;

    const auto& defaults = domain.defaults();
    for ( std::size_t i = 0; i < slots; ++i )
    {
        if ( caused[ i ] )
            continue;
        const auto slot = static_cast< slot_id >( i );
        if ( defaults[ i ] )
        {
            next.slots[ i ] = *defaults[ i ];
            prov[ i ] = { slot, cause_kind::default_value, 0 };
        }
        else
        {
            next.slots[ i ] = s[ slot ];
            prov[ i ] = { slot, cause_kind::inertia, 0 };
        }
    }

    const auto& statics = domain.static_laws();
    const std::size_t pass_limit = statics.size() * slots + 1;
    bool changed = true;
    bool closure_failed = false;
    for ( std::size_t pass = 0; changed && !closure_failed && pass < pass_limit; ++pass )
    {
        changed = false;
        for ( const auto& law : statics )
        {
            if ( !all_hold( next, law.conditions ) )
                continue;
            for ( const auto& e : law.effects )
            {
                if ( next[ e.slot ] == e.value )
                {
                    lock[ e.slot ] = strength::fixed;
                    continue;
                }
                if ( lock[ e.slot ] == strength::fixed )
                {
                    closure_failed = true;
                    result.violations.push_back( { violation_kind::not_a_state, 1,
                                                   "static closure contradicts '" + domain.to_string( e ) + "'",
                                                   std::nullopt } );
                    break;
                }
                next.slots[ e.slot ] = e.value;
                lock[ e.slot ] = strength::fixed;
                prov[ e.slot ] = { e.slot, cause_kind::static_law, law.law_index };
                changed = true;
            }
            if ( closure_failed )
                break;
        }
    }
    if ( closure_failed )
        return result;
    if ( !is_state( domain, next ).is_state )
    {
        result.violations.push_back(
            { violation_kind::not_a_state, 1, "successor is not closed under static laws", std::nullopt } );
        return result;
    }

    for ( const auto& f : fired_forbids( domain, config, s, next ) )
    {
        const auto& rule = domain.forbids()[ f.rule ];
        std::string name = rule.origin.empty() ? "forbids rule " : rule.origin + " rule ";
        result.violations.push_back( { violation_kind::forbidden_fluent, 10,
                                       "condition 10: " + name + std::to_string( rule.id ) + " forbids "
                                           + domain.to_string( f.fluent ),
                                       f.rule } );
    }

    result.provenance = std::move( prov );
    if ( result.violations.empty() )
        result.next = std::move( next );
    else
        result.successor = std::move( next );
    return result;
}

std::vector< action_set > candidate_action_sets( const compiled_domain& domain, const action_set& required,
                                                 action_policy policy )
{
    const std::size_t n = domain.action_count();
    std::vector< action_set > out;
    if ( policy == action_policy::singleton_or_empty )
    {
        if ( required.size() > 1 )
            return out;
        if ( required.size() == 1 )
        {
            out.push_back( required );
            return out;
        }
        out.emplace_back();
        for ( std::size_t i = 0; i < n; ++i )
            out.push_back( { static_cast< action_id >( i ) } );
        return out;
    }
    if ( n > 20 )
        throw std::invalid_argument( "any-subset policy supports at most 20 actions" );
    std::uint32_t must = 0;
    for ( auto a : required )
        must |= 1u << a;
    for ( std::uint32_t mask = 0; mask < ( 1u << n ); ++mask )
    {
        if ( ( mask & must ) != must )
            continue;
        action_set set;
        for ( std::size_t i = 0; i < n; ++i )
            if ( mask & ( 1u << i ) )
                set.push_back( static_cast< action_id >( i ) );
        out.push_back( std::move( set ) );
    }
    return out;
}

namespace
{

struct resolved_observations
{
    std::vector< std::vector< atom > > fluents;   // per time point 0..horizon
    std::vector< action_set > required;          // per step 0..horizon-1
    std::vector< diagnostic > diagnostics;
    bool ok = true;
};

resolved_observations resolve_observations( const compiled_domain& domain,
                                            const std::vector< observation >& observations, std::uint32_t horizon )
{
    resolved_observations out;
    out.fluents.resize( horizon + 1 );
    out.required.resize( horizon );
    for ( const auto& o : observations )
    {
        if ( o.kind == observation::kind_t::fluent_at )
        {
            if ( o.time > horizon )
            {
                out.ok = false;
                out.diagnostics.push_back( { diagnostic_kind::observation_out_of_range,
                                             "observation at time " + std::to_string( o.time )
                                                 + " lies beyond horizon " + std::to_string( horizon ),
                                             o.span,
                                             {} } );
                continue;
            }
            out.fluents[ o.time ].push_back( domain.resolve( o.fluent ) );
        }
        else
        {
            if ( o.time >= horizon )
            {
                out.ok = false;
                out.diagnostics.push_back( { diagnostic_kind::observation_out_of_range,
                                             "action occurrence at time " + std::to_string( o.time )
                                                 + " needs a step after it, horizon is " + std::to_string( horizon ),
                                             o.span,
                                             {} } );
                continue;
            }
            auto& req = out.required[ o.time ];
            const auto a = *domain.find_action( o.action );
            if ( std::find( req.begin(), req.end(), a ) == req.end() )
            {
                req.push_back( a );
                std::sort( req.begin(), req.end() );
            }
        }
    }
    return out;
}

std::vector< provenance_entry > initial_provenance( const compiled_domain& domain,
                                                    const std::vector< atom >& pinned )
{
    std::vector< provenance_entry > out;
    for ( std::size_t i = 0; i < domain.slot_count(); ++i )
    {
        const auto slot = static_cast< slot_id >( i );
        const bool fixed = std::any_of( pinned.begin(), pinned.end(), [ & ]( atom a ) { return a.slot == slot; } );
        out.push_back( { slot, fixed ? cause_kind::observation : cause_kind::completion, 0 } );
    }
    return out;
}

std::vector< state > admissible_initial( const compiled_domain& domain, const std::vector< atom >& pinned )
{
    std::vector< state > out;
    const std::size_t slots = domain.slot_count();
    std::vector< value_id > arities;
    for ( std::size_t i = 0; i < slots; ++i )
        arities.push_back( domain.arity( static_cast< slot_id >( i ) ) );

    // Pinned slots are fixed up front so that large environment spaces with
    // fully observed initial states stay cheap.
    std::vector< std::optional< value_id > > fixed( slots );
    for ( auto a : pinned )
    {
        if ( fixed[ a.slot ] && *fixed[ a.slot ] != a.value )
            return out;
        fixed[ a.slot ] = a.value;
    }
    std::vector< slot_id > free;
    state s{ std::vector< value_id >( slots, 0 ) };
    for ( std::size_t i = 0; i < slots; ++i )
    {
        if ( fixed[ i ] )
            s.slots[ i ] = *fixed[ i ];
        else
            free.push_back( static_cast< slot_id >( i ) );
    }
    while ( true )
    {
        if ( is_state( domain, s ).is_state )
            out.push_back( s );
        // Odometer with the last free slot fastest.
        std::size_t k = free.size();
        while ( k > 0 )
        {
            const auto slot = free[ k - 1 ];
            if ( ++s.slots[ slot ] < arities[ slot ] )
                break;
            s.slots[ slot ] = 0;
            --k;
        }
        if ( k == 0 )
            break;
    }
    return out;
}

bool satisfies( const state& s, const std::vector< atom >& atoms )
{
    return all_hold( s, atoms );
}

struct search_node
{
    state s;
    std::size_t parent = 0;
    action_set via;
    std::optional< std::size_t > stay_parent;
    action_set stay_via;
};

struct layered_search
{
    std::vector< std::vector< search_node > > layers;
};

layered_search explore( const compiled_domain& domain, const resolved_observations& obs, std::uint32_t horizon,
                        const semantics_config& config )
{
    layered_search out;
    out.layers.resize( horizon + 1 );
    for ( auto& s : admissible_initial( domain, obs.fluents[ 0 ] ) )
        out.layers[ 0 ].push_back( { std::move( s ), 0, {}, std::nullopt, {} } );

    struct edge
    {
        action_set actions;
        state next;
    };
    std::unordered_map< state, std::vector< edge >, state_hash > cache;
    const auto free_candidates = candidate_action_sets( domain, {}, config.policy );

    for ( std::uint32_t t = 0; t < horizon; ++t )
    {
        auto& current = out.layers[ t ];
        auto& next_layer = out.layers[ t + 1 ];
        std::unordered_map< state, std::size_t, state_hash > index;
        const bool constrained = !obs.required[ t ].empty();
        const auto candidates =
            constrained ? candidate_action_sets( domain, obs.required[ t ], config.policy ) : free_candidates;

        for ( std::size_t i = 0; i < current.size(); ++i )
        {
            const state from = current[ i ].s;
            std::vector< edge > computed;
            const std::vector< edge >* edges = nullptr;
            if ( !constrained )
            {
                auto it = cache.find( from );
                if ( it == cache.end() )
                {
                    std::vector< edge > list;
                    for ( const auto& a : candidates )
                    {
                        auto r = step( domain, from, a, config );
                        if ( r.ok() )
                            list.push_back( { a, std::move( *r.next ) } );
                    }
                    it = cache.emplace( from, std::move( list ) ).first;
                }
                edges = &it->second;
            }
            else
            {
                for ( const auto& a : candidates )
                {
                    auto r = step( domain, from, a, config );
                    if ( r.ok() )
                        computed.push_back( { a, std::move( *r.next ) } );
                }
                edges = &computed;
            }

            for ( const auto& e : *edges )
            {
                if ( !satisfies( e.next, obs.fluents[ t + 1 ] ) )
                    continue;
                auto it = index.find( e.next );
                if ( it == index.end() )
                {
                    index.emplace( e.next, next_layer.size() );
                    next_layer.push_back( { e.next, i, e.actions, std::nullopt, {} } );
                    it = index.find( e.next );
                }
                auto& node = next_layer[ it->second ];
                if ( e.next == from && !node.stay_parent )
                {
                    node.stay_parent = i;
                    node.stay_via = e.actions;
                }
            }
        }
    }
    return out;
}

trajectory reconstruct( const compiled_domain& domain, const layered_search& search, std::size_t final_index,
                        const semantics_config& config, const resolved_observations& obs )
{
    const std::size_t horizon = search.layers.size() - 1;
    trajectory t;
    t.states.resize( horizon + 1 );
    t.actions.resize( horizon );
    std::size_t idx = final_index;
    for ( std::size_t k = horizon; k > 0; --k )
    {
        const auto& node = search.layers[ k ][ idx ];
        t.states[ k ] = node.s;
        if ( node.stay_parent )
        {
            t.actions[ k - 1 ] = node.stay_via;
            idx = *node.stay_parent;
        }
        else
        {
            t.actions[ k - 1 ] = node.via;
            idx = node.parent;
        }
    }
    t.states[ 0 ] = search.layers[ 0 ][ idx ].s;

    t.provenance.push_back( initial_provenance( domain, obs.fluents[ 0 ] ) );
    for ( std::size_t k = 0; k < horizon; ++k )
        t.provenance.push_back( step( domain, t.states[ k ], t.actions[ k ], config ).provenance );
    return t;
}

std::vector< atom > resolve_goal( const compiled_domain& domain, const literal_list& goal )
{
    std::vector< atom > out;
    for ( const auto& l : goal )
        out.push_back( domain.resolve( l ) );
    return out;
}

} // namespace

std::size_t trajectories( const compiled_domain& domain, const state& s0, std::uint32_t horizon,
                          const semantics_config& config, const trajectory_visitor& visit )
{
    const auto candidates = candidate_action_sets( domain, {}, config.policy );
    trajectory t;
    t.states.push_back( s0 );
    t.provenance.push_back( initial_provenance( domain, {} ) );
    std::size_t count = 0;
    bool stop = false;

    auto dfs = [ & ]( auto& self ) -> void {
        if ( t.length() == horizon )
        {
            ++count;
            stop = !visit( t );
            return;
        }
        const state from = t.states.back();
        for ( const auto& a : candidates )
        {
            auto r = step( domain, from, a, config );
            if ( !r.ok() )
                continue;
            t.states.push_back( std::move( *r.next ) );
            t.actions.push_back( a );
            t.provenance.push_back( std::move( r.provenance ) );
            self( self );
            t.states.pop_back();
            t.actions.pop_back();
            t.provenance.pop_back();
            if ( stop )
                return;
        }
    };
    dfs( dfs );
    return count;
}

std::vector< state > initial_states( const compiled_domain& domain, const std::vector< observation >& observations )
{
    std::vector< atom > pinned;
    for ( const auto& o : observations )
        if ( o.kind == observation::kind_t::fluent_at && o.time == 0 )
            pinned.push_back( domain.resolve( o.fluent ) );
    return admissible_initial( domain, pinned );
}

std::size_t trajectory_models( const compiled_domain& domain, const std::vector< observation >& observations,
                               std::uint32_t horizon, const semantics_config& config,
                               const trajectory_visitor& visit )
{
    const auto obs = resolve_observations( domain, observations, horizon );
    if ( !obs.ok )
        return 0;
    std::vector< std::vector< action_set > > candidates( horizon );
    for ( std::uint32_t k = 0; k < horizon; ++k )
        candidates[ k ] = candidate_action_sets( domain, obs.required[ k ], config.policy );

    std::size_t count = 0;
    bool stop = false;
    trajectory t;
    auto dfs = [ & ]( auto& self ) -> void {
        const std::size_t k = t.length();
        if ( k == horizon )
        {
            ++count;
            stop = !visit( t );
            return;
        }
        const state from = t.states.back();
        for ( const auto& a : candidates[ k ] )
        {
            auto r = step( domain, from, a, config );
            if ( !r.ok() || !satisfies( *r.next, obs.fluents[ k + 1 ] ) )
                continue;
            t.states.push_back( std::move( *r.next ) );
            t.actions.push_back( a );
            t.provenance.push_back( std::move( r.provenance ) );
            self( self );
            t.states.pop_back();
            t.actions.pop_back();
            t.provenance.pop_back();
            if ( stop )
                return;
        }
    };
    for ( auto& s0 : admissible_initial( domain, obs.fluents[ 0 ] ) )
    {
        t = trajectory{};
        t.states.push_back( std::move( s0 ) );
        t.provenance.push_back( initial_provenance( domain, obs.fluents[ 0 ] ) );
        dfs( dfs );
        if ( stop )
            break;
    }
    return count;
}

consistency_result consistent( const compiled_domain& domain, const std::vector< observation >& observations,
                               std::uint32_t horizon, const semantics_config& config )
{
    consistency_result out;
    const auto obs = resolve_observations( domain, observations, horizon );
    out.diagnostics = obs.diagnostics;
    if ( !obs.ok )
        return out;
    const auto search = explore( domain, obs, horizon, config );
    if ( search.layers.back().empty() )
        return out;
    out.consistent = true;
    out.witness = reconstruct( domain, search, 0, config, obs );
    return out;
}

plan_result plan( const compiled_domain& domain, const std::vector< observation >& observations,
                  const literal_list& goal, std::uint32_t horizon, const semantics_config& config )
{
    plan_result out;
    const auto obs = resolve_observations( domain, observations, horizon );
    out.diagnostics = obs.diagnostics;
    if ( !obs.ok )
        return out;
    const auto target = resolve_goal( domain, goal );
    const auto search = explore( domain, obs, horizon, config );
    const auto& last = search.layers.back();
    for ( std::size_t i = 0; i < last.size(); ++i )
        if ( satisfies( last[ i ].s, target ) )
        {
            out.sat = true;
            out.plan = reconstruct( domain, search, i, config, obs );
            break;
        }
    return out;
}

query_result holds_query( const compiled_domain& domain, const std::vector< observation >& observations,
                          const query& q, query_mode mode, const semantics_config& config )
{
    query_result out;
    auto all = observations;
    for ( const auto& batch : q.schedule )
        for ( const auto& a : batch.actions )
            all.push_back( observation::occurs( a, batch.time ) );
    const auto obs = resolve_observations( domain, all, q.horizon );
    out.diagnostics = obs.diagnostics;
    if ( !obs.ok )
    {
        out.no_models = true;
        out.holds = mode == query_mode::skeptical;
        return out;
    }
    const auto target = resolve_goal( domain, q.goal );
    const auto search = explore( domain, obs, q.horizon, config );
    const auto& last = search.layers.back();
    if ( last.empty() )
    {
        out.no_models = true;
        out.holds = mode == query_mode::skeptical;
        return out;
    }
    for ( std::size_t i = 0; i < last.size(); ++i )
    {
        const bool ok = satisfies( last[ i ].s, target );
        if ( mode == query_mode::credulous && ok )
        {
            out.holds = true;
            out.witness = reconstruct( domain, search, i, config, obs );
            return out;
        }
        if ( mode == query_mode::skeptical && !ok )
        {
            out.holds = false;
            out.witness = reconstruct( domain, search, i, config, obs );
            return out;
        }
    }
    out.holds = mode == query_mode::skeptical;
    return out;
}

std::vector< std::string > check_trajectory( const compiled_domain& domain, const trajectory& t,
                                             const semantics_config& config,
                                             const std::vector< observation >& observations )
{
    std::vector< std::string > problems;
    if ( t.states.size() != t.actions.size() + 1 )
    {
        problems.push_back( "trajectory needs exactly one more state than action sets" );
        return problems;
    }
    for ( std::size_t i = 0; i < t.states.size(); ++i )
    {
        if ( t.states[ i ].slots.size() != domain.slot_count() )
        {
            problems.push_back( "state " + std::to_string( i ) + " has the wrong number of slots" );
            return problems;
        }
        if ( !is_state( domain, t.states[ i ] ).is_state )
            problems.push_back( "state " + std::to_string( i ) + " violates a static law" );
    }
    for ( std::size_t i = 0; i < t.actions.size(); ++i )
    {
        auto r = step( domain, t.states[ i ], t.actions[ i ], config );
        for ( const auto& v : r.violations )
            problems.push_back( "step " + std::to_string( i ) + ": " + v.message );
        if ( r.ok() && *r.next != t.states[ i + 1 ] )
            problems.push_back( "step " + std::to_string( i ) + ": state " + std::to_string( i + 1 )
                                + " is not the successor of state " + std::to_string( i ) );
    }
    for ( const auto& o : observations )
    {
        if ( o.kind == observation::kind_t::fluent_at )
        {
            if ( o.time >= t.states.size() )
                problems.push_back( "observation at " + std::to_string( o.time ) + " lies beyond the trajectory" );
            else if ( !t.states[ o.time ].holds( domain.resolve( o.fluent ) ) )
                problems.push_back( "observation " + domain.to_string( domain.resolve( o.fluent ) ) + " at "
                                    + std::to_string( o.time ) + " does not hold" );
        }
        else
        {
            const auto a = domain.find_action( o.action );
            if ( o.time >= t.actions.size() || !a )
                problems.push_back( "occurrence of " + o.action + " at " + std::to_string( o.time )
                                    + " lies beyond the trajectory" );
            else if ( std::find( t.actions[ o.time ].begin(), t.actions[ o.time ].end(), *a )
                      == t.actions[ o.time ].end() )
                problems.push_back( "action " + o.action + " does not occur at " + std::to_string( o.time ) );
        }
    }
    return problems;
}

void annotate_provenance( const compiled_domain& domain, trajectory& t, const semantics_config& config,
                          const std::vector< observation >& observations )
{
    std::vector< atom > pinned;
    for ( const auto& o : observations )
        if ( o.kind == observation::kind_t::fluent_at && o.time == 0 )
            pinned.push_back( domain.resolve( o.fluent ) );
    t.provenance.clear();
    t.provenance.push_back( initial_provenance( domain, pinned ) );
    for ( std::size_t i = 0; i < t.actions.size(); ++i )
        t.provenance.push_back( step( domain, t.states[ i ], t.actions[ i ], config ).provenance );
}

} // namespace cmt
