#include "cmt/aspgen.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

namespace cmt
{

const std::vector< std::string >& section_names()
{
    static const std::vector< std::string > names = {
        "declarations",    "time",           "frame axioms", "dynamic laws", "static laws",
        "action rules",    "mental extension", "theory constraints", "observations", "goal",
    };
    return names;
}

const program_section* emitted_program::find( std::string_view name ) const
{
    for ( const auto& s : sections )
        if ( s.name == name )
            return &s;
    return nullptr;
}

std::string emitted_program::text() const
{
    std::string out;
    for ( const auto& s : sections )
    {
        if ( s.lines.empty() )
            continue;
        out += "% " + s.name + "\n";
        for ( const auto& l : s.lines )
            out += l + "\n";
        out += "\n";
    }
    return out;
}

namespace
{

// Fluent term as it appears inside holds/2.
std::string term( const compiled_domain& d, atom a )
{
    if ( d.is_mental_slot( a.slot ) )
        return "mental_fluent(" + d.slot_name( a.slot ) + "," + d.value_name( a.slot, a.value ) + ")";
    return a.value ? d.slot_name( a.slot ) : "neg(" + d.slot_name( a.slot ) + ")";
}

// Declaration guard for the fluent underlying a literal.
std::string fluent_guard( const compiled_domain& d, atom a )
{
    if ( d.is_mental_slot( a.slot ) )
        return "fluent(" + term( d, a ) + ")";
    return "fluent(" + d.slot_name( a.slot ) + ")";
}

std::string mental_guard( const compiled_domain& d, atom a )
{
    return "mental_fluent(" + term( d, a ) + ")";
}

std::string holds( const compiled_domain& d, atom a, const std::string& time )
{
    return "holds(" + term( d, a ) + "," + time + ")";
}

std::string join( const std::vector< std::string >& parts )
{
    std::string out;
    for ( std::size_t i = 0; i < parts.size(); ++i )
        out += ( i ? ", " : "" ) + parts[ i ];
    return out;
}

std::string rule( const std::string& head, const std::vector< std::string >& body )
{
    if ( body.empty() )
        return head + ".";
    return head + " :- " + join( body ) + ".";
}

void append_holds( std::vector< std::string >& body, const compiled_domain& d, const std::vector< atom >& atoms,
                   const std::string& time )
{
    for ( auto a : atoms )
        body.push_back( holds( d, a, time ) );
}

void append_guards( std::vector< std::string >& body, const compiled_domain& d, const std::vector< atom >& atoms,
                    bool mental )
{
    for ( auto a : atoms )
        body.push_back( mental ? mental_guard( d, a ) : fluent_guard( d, a ) );
}

std::string occurs( const compiled_domain& d, action_id a )
{
    return "occurs(" + d.action_name( a ) + ")";
}

std::string action_guard( const compiled_domain& d, action_id a )
{
    return ( d.kind_of( a ) == action_kind::human ? "human_action(" : "action(" ) + d.action_name( a ) + ")";
}

std::vector< std::string > declarations( const compiled_domain& d )
{
    std::vector< std::string > out = {
        "#defined fluent_e/1.", "#defined action_e/1.",     "#defined human_action/1.",
        "#defined default/1.",  "#defined mental_fluent/1.", "#defined psych_value/2.",
    };
    for ( std::size_t i = 0; i < d.env_count(); ++i )
        out.push_back( "fluent_e(" + d.slot_name( static_cast< slot_id >( i ) ) + ")." );
    for ( std::size_t i = 0; i < d.action_count(); ++i )
    {
        const auto a = static_cast< action_id >( i );
        out.push_back( ( d.kind_of( a ) == action_kind::human ? "human_action(" : "action_e(" ) + d.action_name( a )
                       + ")." );
    }
    for ( std::size_t c = 0; c < d.class_count(); ++c )
    {
        const auto slot = d.class_slot( c );
        out.push_back( "psych_class(" + d.slot_name( slot ) + ")." );
        for ( value_id v = 0; v < d.arity( slot ); ++v )
            out.push_back( "psych_value(" + d.slot_name( slot ) + "," + d.value_name( slot, v ) + ")." );
        for ( value_id v = 0; v < d.arity( slot ); ++v )
            out.push_back( "mental_fluent(" + term( d, atom{ slot, v } ) + ")." );
    }
    const auto& defaults = d.defaults();
    for ( std::size_t i = 0; i < defaults.size(); ++i )
        if ( defaults[ i ] )
            out.push_back( "default(" + term( d, atom{ static_cast< slot_id >( i ), *defaults[ i ] } ) + ")." );
    out.push_back( "fluent(F) :- fluent_e(F)." );
    out.push_back( "fluent(F) :- mental_fluent(F)." );
    out.push_back( "action(A) :- action_e(A)." );
    out.push_back( "action(A) :- human_action(A)." );
    return out;
}

std::vector< std::string > frame_axioms( const compiled_domain& d )
{
    std::vector< std::string > out;
    const auto& defaults = d.defaults();
    for ( std::size_t i = 0; i < d.env_count(); ++i )
    {
        const auto& f = d.slot_name( static_cast< slot_id >( i ) );
        const std::string pos = f;
        const std::string neg = "neg(" + f + ")";
        out.push_back( ":- holds(" + pos + ",T), holds(" + neg + ",T), fluent(" + f + "), time(T)." );
        if ( !defaults[ i ] )
        {
            out.push_back( "holds(" + pos + ",T+1) :- holds(" + pos + ",T), not holds(" + neg + ",T+1), not default("
                           + pos + "), fluent(" + f + "), time(T), time(T+1)." );
            out.push_back( "holds(" + neg + ",T+1) :- holds(" + neg + ",T), not holds(" + pos + ",T+1), not default("
                           + neg + "), fluent(" + f + "), time(T), time(T+1)." );
        }
        else if ( *defaults[ i ] )
            out.push_back( "holds(" + pos + ",T) :- not holds(" + neg + ",T), default(" + pos + "), fluent(" + f
                           + "), time(T)." );
        else
            out.push_back( "holds(" + neg + ",T) :- not holds(" + pos + ",T), default(" + neg + "), fluent(" + f
                           + "), time(T)." );
        out.push_back( "holds(" + pos + ",0) :- not holds(" + neg + ",0)." );
        out.push_back( "holds(" + neg + ",0) :- not holds(" + pos + ",0)." );
    }
    for ( std::size_t c = 0; c < d.class_count(); ++c )
    {
        const auto slot = d.class_slot( c );
        const auto& name = d.slot_name( slot );
        const std::string var = "mental_fluent(" + name + ",V)";
        out.push_back( "holds(neg(" + var + "),T) :- holds(mental_fluent(" + name + ",W),T), psych_value(" + name
                       + ",V), psych_value(" + name + ",W), V != W, time(T)." );
        out.push_back( ":- holds(" + var + ",T), holds(neg(" + var + "),T), fluent(" + var + "), time(T)." );
        if ( !defaults[ slot ] )
            out.push_back( "holds(" + var + ",T+1) :- holds(" + var + ",T), not holds(neg(" + var
                           + "),T+1), not default(" + var + "), fluent(" + var + "), time(T), time(T+1)." );
        else
        {
            const auto f = term( d, atom{ slot, *defaults[ slot ] } );
            out.push_back( "holds(" + f + ",T) :- not holds(neg(" + f + "),T), default(" + f + "), fluent(" + f
                           + "), time(T)." );
        }
        out.push_back( "1 { holds(" + var + ",0) : psych_value(" + name + ",V) } 1." );
    }
    return out;
}

std::vector< std::string > dynamic_laws( const compiled_domain& d )
{
    std::vector< std::string > out;
    for ( const auto& law : d.effect_laws() )
    {
        if ( !std::holds_alternative< law::causes >( d.description().laws[ law.law_index ].body ) )
            continue;
        for ( auto e : law.effects )
        {
            std::vector< std::string > body = { "holds(" + occurs( d, law.action ) + ",T)" };
            append_holds( body, d, law.conditions, "T" );
            append_guards( body, d, law.conditions, false );
            body.push_back( fluent_guard( d, e ) );
            body.push_back( "action(" + d.action_name( law.action ) + ")" );
            body.push_back( "time(T)" );
            body.push_back( "time(T+1)" );
            out.push_back( rule( holds( d, e, "T+1" ), body ) );
        }
    }
    return out;
}

std::vector< std::string > static_laws( const compiled_domain& d )
{
    std::vector< std::string > out;
    for ( const auto& law : d.static_laws() )
    {
        if ( !std::holds_alternative< law::static_law >( d.description().laws[ law.law_index ].body ) )
            continue;
        for ( auto e : law.effects )
        {
            std::vector< std::string > body;
            append_holds( body, d, law.conditions, "T" );
            append_guards( body, d, law.conditions, false );
            body.push_back( fluent_guard( d, e ) );
            body.push_back( "time(T)" );
            out.push_back( rule( holds( d, e, "T" ), body ) );
        }
    }
    return out;
}

std::vector< std::string > action_rules( const compiled_domain& d, const semantics_config& config )
{
    std::vector< std::string > out;
    const std::size_t n = d.action_count();
    std::vector< char > has_trigger( n, 0 ), has_allow( n, 0 );

    for ( const auto& r : d.inhibitions() )
    {
        std::vector< std::string > body;
        append_holds( body, d, r.conditions, "T" );
        body.push_back( "action(" + d.action_name( r.action ) + ")" );
        append_guards( body, d, r.conditions, false );
        body.push_back( "time(T)" );
        out.push_back( rule( "holds(ab(" + occurs( d, r.action ) + "),T)", body ) );
    }
    for ( const auto& r : d.triggers() )
    {
        has_trigger[ r.action ] = 1;
        std::vector< std::string > body = { "not holds(ab(" + occurs( d, r.action ) + "),T)" };
        append_holds( body, d, r.conditions, "T" );
        append_guards( body, d, r.conditions, false );
        body.push_back( "action(" + d.action_name( r.action ) + ")" );
        body.push_back( "time(T)" );
        body.push_back( "T < t_max" );
        out.push_back( rule( "holds(" + occurs( d, r.action ) + ",T)", body ) );

        std::vector< std::string > aux;
        append_holds( aux, d, r.conditions, "T" );
        append_guards( aux, d, r.conditions, false );
        aux.push_back( "action(" + d.action_name( r.action ) + ")" );
        aux.push_back( "time(T)" );
        out.push_back( rule( "holds(trig(" + occurs( d, r.action ) + "),T)", aux ) );
    }
    for ( const auto& r : d.allowances() )
    {
        has_allow[ r.action ] = 1;
        std::vector< std::string > body = { "not holds(ab(" + occurs( d, r.action ) + "),T)" };
        append_holds( body, d, r.conditions, "T" );
        append_guards( body, d, r.conditions, false );
        body.push_back( "action(" + d.action_name( r.action ) + ")" );
        body.push_back( "time(T)" );
        out.push_back( rule( "holds(allow(" + occurs( d, r.action ) + "),T)", body ) );
    }
    for ( std::size_t i = 0; i < n; ++i )
    {
        const auto a = static_cast< action_id >( i );
        const auto name = d.action_name( a );
        const auto occ = occurs( d, a );
        if ( !has_allow[ i ] )
            out.push_back( "holds(allow(" + occ + "),T) :- action(" + name + "), time(T)." );
        out.push_back( "holds(" + occ + ",T) :- holds(allow(" + occ + "),T), not holds(ab(" + occ
                       + "),T), not holds(neg(" + occ + "),T), action(" + name + "), time(T), T < t_max." );
        out.push_back( "holds(neg(" + occ + "),T) :- not holds(" + occ + ",T), action(" + name
                       + "), time(T), T < t_max." );
        out.push_back( ":- holds(" + occ + ",T), not holds(allow(" + occ + "),T), action(" + name + "), time(T)." );
        out.push_back( ":- holds(" + occ + ",T), holds(ab(" + occ + "),T), action(" + name + "), time(T)." );
        if ( has_trigger[ i ] )
            out.push_back( ":- holds(" + occ + ",T), not holds(trig(" + occ + "),T), action(" + name
                           + "), time(T)." );
    }

    auto exclusive = [ & ]( const std::vector< action_id >& group ) {
        std::string elems;
        for ( std::size_t i = 0; i < group.size(); ++i )
            elems += ( i ? "; " : "" ) + std::string{ "holds(" } + occurs( d, group[ i ] ) + ",T) : action("
                     + d.action_name( group[ i ] ) + ")";
        out.push_back( ":- time(T), 2 { " + elems + " }." );
    };
    for ( const auto& group : d.noconcurrency_groups() )
        exclusive( group );
    if ( config.policy == action_policy::singleton_or_empty && n > 1 )
    {
        std::vector< action_id > all;
        for ( std::size_t i = 0; i < n; ++i )
            all.push_back( static_cast< action_id >( i ) );
        exclusive( all );
    }
    out.push_back( ":- holds(occurs(A),T), action(A), time(T), T >= t_max." );
    return out;
}

std::vector< std::string > mental_extension( const compiled_domain& d )
{
    std::vector< std::string > out;
    for ( const auto& law : d.effect_laws() )
    {
        if ( !std::holds_alternative< law::influences_dynamic >( d.description().laws[ law.law_index ].body ) )
            continue;
        for ( auto e : law.effects )
        {
            std::vector< std::string > body = { "holds(" + occurs( d, law.action ) + ",T)" };
            append_holds( body, d, law.conditions, "T" );
            append_guards( body, d, law.conditions, false );
            body.push_back( mental_guard( d, e ) );
            body.push_back( "action(" + d.action_name( law.action ) + ")" );
            body.push_back( "time(T)" );
            out.push_back( rule( holds( d, e, "T+1" ), body ) );
        }
    }
    for ( const auto& law : d.static_laws() )
    {
        if ( !std::holds_alternative< law::influences_static >( d.description().laws[ law.law_index ].body ) )
            continue;
        for ( auto e : law.effects )
        {
            std::vector< std::string > body;
            append_holds( body, d, law.conditions, "T" );
            append_guards( body, d, law.conditions, false );
            body.push_back( mental_guard( d, e ) );
            body.push_back( "time(T)" );
            out.push_back( rule( holds( d, e, "T" ), body ) );
        }
    }

    std::vector< char > has_fac( d.action_count(), 0 ), has_con( d.action_count(), 0 );
    for ( const auto& r : d.facilitations() )
    {
        has_fac[ r.action ] = 1;
        std::vector< std::string > body = { "not holds(ab(" + occurs( d, r.action ) + "),T)",
                                            "not holds(con(" + occurs( d, r.action ) + "),T)" };
        append_holds( body, d, r.conditions, "T" );
        append_guards( body, d, r.conditions, true );
        body.push_back( action_guard( d, r.action ) );
        body.push_back( "time(T)" );
        body.push_back( "T < t_max" );
        out.push_back( rule( "holds(" + occurs( d, r.action ) + ",T)", body ) );

        std::vector< std::string > aux;
        append_holds( aux, d, r.conditions, "T" );
        append_guards( aux, d, r.conditions, true );
        aux.push_back( action_guard( d, r.action ) );
        aux.push_back( "time(T)" );
        out.push_back( rule( "holds(fac(" + occurs( d, r.action ) + "),T)", aux ) );
    }
    for ( const auto& r : d.contraventions() )
    {
        has_con[ r.action ] = 1;
        std::vector< std::string > body;
        append_holds( body, d, r.conditions, "T" );
        append_guards( body, d, r.conditions, true );
        body.push_back( action_guard( d, r.action ) );
        body.push_back( "time(T)" );
        out.push_back( rule( "holds(con(" + occurs( d, r.action ) + "),T)", body ) );
    }
    for ( std::size_t i = 0; i < d.action_count(); ++i )
    {
        const auto a = static_cast< action_id >( i );
        const auto occ = occurs( d, a );
        if ( has_fac[ i ] )
            out.push_back( ":- holds(" + occ + ",T), not holds(fac(" + occ + "),T), " + action_guard( d, a )
                           + ", time(T)." );
        if ( has_con[ i ] )
            out.push_back( ":- holds(" + occ + ",T), holds(con(" + occ + "),T), " + action_guard( d, a )
                           + ", time(T)." );
    }
    return out;
}

} // namespace

std::vector< std::string > emit_theory_constraints( const compiled_domain& d, const semantics_config& config )
{
    std::vector< std::string > out;
    for ( const auto& rule_ : d.forbids() )
    {
        const auto& cond = config.orientation == orientation::as_written ? rule_.left : rule_.right;
        const auto& forb = config.orientation == orientation::as_written ? rule_.right : rule_.left;

        // Cartesian product over condition alternatives: `!=` stays a
        // variable with an inequality, ordered relations expand per value.
        std::vector< std::vector< std::string > > bodies = { {} };
        int var = 0;
        for ( const auto& p : cond )
        {
            std::vector< std::vector< std::string > > alts;
            if ( p.relation == guard_relation::eq )
                alts.push_back( { holds( d, atom{ p.slot, p.value }, "T" ) } );
            else if ( p.relation == guard_relation::ne )
            {
                const std::string v = "V" + std::to_string( ++var );
                alts.push_back( { "holds(mental_fluent(" + d.slot_name( p.slot ) + "," + v + "),T)",
                                  v + " != " + d.value_name( p.slot, p.value ) } );
            }
            else
                for ( value_id v = 0; v < d.arity( p.slot ); ++v )
                    if ( p.matches( v ) )
                        alts.push_back( { holds( d, atom{ p.slot, v }, "T" ) } );
            std::vector< std::vector< std::string > > next;
            for ( const auto& b : bodies )
                for ( const auto& a : alts )
                {
                    auto joined = b;
                    joined.insert( joined.end(), a.begin(), a.end() );
                    next.push_back( std::move( joined ) );
                }
            bodies = std::move( next );
        }

        for ( const auto& p : forb )
            for ( value_id v = 0; v < d.arity( p.slot ); ++v )
            {
                if ( !p.matches( v ) )
                    continue;
                const atom f{ p.slot, v };
                for ( const auto& b : bodies )
                {
                    std::vector< std::string > body = { holds( d, f, "T+1" ) };
                    body.insert( body.end(), b.begin(), b.end() );
                    if ( config.firing == firing::onset )
                        body.push_back( "not " + holds( d, f, "T" ) );
                    body.push_back( "time(T)" );
                    out.push_back( ":- " + join( body ) + "." );
                }
            }
    }
    return out;
}

emitted_program emit_program( const compiled_domain& domain, const std::vector< observation >& observations,
                              const std::optional< literal_list >& goal, std::uint32_t horizon,
                              const semantics_config& config )
{
    emitted_program p;
    p.horizon = horizon;
    for ( const auto& name : section_names() )
        p.sections.push_back( { name, {} } );
    auto section = [ & ]( std::size_t i ) -> std::vector< std::string >& { return p.sections[ i ].lines; };

    section( 0 ) = declarations( domain );
    section( 1 ) = { "#const t_max = " + std::to_string( horizon ) + ".", "time(0..t_max)." };
    section( 2 ) = frame_axioms( domain );
    section( 3 ) = dynamic_laws( domain );
    section( 4 ) = static_laws( domain );
    section( 5 ) = action_rules( domain, config );
    section( 6 ) = mental_extension( domain );
    section( 7 ) = emit_theory_constraints( domain, config );

    auto& obs = section( 8 );
    for ( const auto& o : observations )
    {
        if ( o.kind == observation::kind_t::fluent_at )
        {
            const auto a = domain.resolve( o.fluent );
            if ( o.time == 0 )
                obs.push_back( holds( domain, a, "0" ) + "." );
            else
                obs.push_back( ":- not " + holds( domain, a, std::to_string( o.time ) ) + "." );
        }
        else
            obs.push_back( "holds(occurs(" + o.action + ")," + std::to_string( o.time ) + ")." );
    }

    if ( goal )
    {
        std::vector< atom > atoms;
        for ( const auto& l : *goal )
            atoms.push_back( domain.resolve( l ) );
        auto& g = section( 9 );
        std::vector< std::string > final_body;
        append_holds( final_body, domain, atoms, "t_max" );
        append_guards( final_body, domain, atoms, false );
        g.push_back( rule( "achieved(t_max)", final_body ) );
        std::vector< std::string > back;
        append_holds( back, domain, atoms, "T" );
        back.push_back( "achieved(T+1)" );
        append_guards( back, domain, atoms, false );
        back.push_back( "time(T)" );
        back.push_back( "time(T+1)" );
        g.push_back( rule( "achieved(T)", back ) );
        g.push_back( "achieved :- achieved(0)." );
        g.push_back( "achieved :- achieved(T+1), not achieved(T), time(T), time(T+1)." );
        g.push_back( ":- not achieved." );
    }
    return p;
}

const char* to_string( solver_verdict v )
{
    switch ( v )
    {
    case solver_verdict::satisfiable: return "SAT";
    case solver_verdict::unsatisfiable: return "UNSAT";
    case solver_verdict::skipped: return "SKIPPED";
    case solver_verdict::error: return "ERROR";
    }
    return "?";
}

namespace
{

bool command_succeeds( const std::string& command )
{
    FILE* pipe = popen( ( command + " >/dev/null 2>&1" ).c_str(), "r" );
    if ( !pipe )
        return false;
    return pclose( pipe ) == 0;
}

} // namespace

std::optional< std::string > detect_solver()
{
    if ( command_succeeds( "clingo --version" ) )
        return std::string{ "clingo {file}" };
    if ( command_succeeds( "python3 -m clingo --version" ) )
        return std::string{ "python3 -m clingo {file}" };
    return std::nullopt;
}

solver_outcome run_solver( const std::string& command_template, const std::string& program )
{
    solver_outcome out;
    if ( command_template.empty() )
        return out;

    static std::atomic< unsigned > counter{ 0 };
    const auto path = std::filesystem::temp_directory_path()
                      / ( "cmt_" + std::to_string( ::getpid() ) + "_" + std::to_string( counter++ ) + ".lp" );
    {
        std::ofstream file{ path };
        if ( !file )
        {
            out.verdict = solver_verdict::error;
            out.detail = "cannot write " + path.string();
            return out;
        }
        file << program;
    }

    std::string command = command_template;
    const auto pos = command.find( "{file}" );
    if ( pos == std::string::npos )
        command += " " + path.string();
    else
        command.replace( pos, 6, path.string() );

    std::string output;
    if ( FILE* pipe = popen( ( command + " 2>&1" ).c_str(), "r" ) )
    {
        std::array< char, 4096 > buffer{};
        while ( auto n = std::fread( buffer.data(), 1, buffer.size(), pipe ) )
            output.append( buffer.data(), n );
        pclose( pipe );
    }
    else
    {
        out.verdict = solver_verdict::error;
        out.detail = "cannot start '" + command + "'";
        std::filesystem::remove( path );
        return out;
    }
    std::filesystem::remove( path );

    if ( output.find( "UNSATISFIABLE" ) != std::string::npos )
        out.verdict = solver_verdict::unsatisfiable;
    else if ( output.find( "SATISFIABLE" ) != std::string::npos )
        out.verdict = solver_verdict::satisfiable;
    else
    {
        out.verdict = solver_verdict::error;
        out.detail = output.substr( 0, 2000 );
    }
    return out;
}

std::vector< differential_case > random_battery( std::uint64_t seed, std::size_t count )
{
    std::mt19937_64 rng{ seed };
    auto pick = [ & ]( std::size_t n ) { return static_cast< std::size_t >( rng() % n ); };
    auto chance = [ & ]( int percent ) { return static_cast< int >( rng() % 100 ) < percent; };

    std::vector< differential_case > out;
    for ( std::size_t k = 0; k < count; ++k )
    {
        domain_description d;
        d.classes.push_back( { "p", chance( 50 ) ? std::vector< std::string >{ "lo", "mid", "hi" }
                                                 : std::vector< std::string >{ "lo", "hi" },
                               true, {} } );
        d.classes.push_back( { "q", chance( 50 ) ? std::vector< std::string >{ "x", "y", "z" }
                                                 : std::vector< std::string >{ "x", "y" },
                               false, {} } );
        const bool with_env = chance( 50 );
        if ( with_env )
            d.fluents.push_back( { "door", {} } );
        d.actions = { { "act_a", action_kind::environment, {} },
                      { "act_b", action_kind::environment, {} },
                      { "act_h", action_kind::human, {} } };

        auto mental = [ & ]() {
            const auto& c = d.classes[ pick( 2 ) ];
            return literal::mental( c.name, c.values[ pick( c.values.size() ) ] );
        };
        auto any = [ & ]() {
            if ( with_env && chance( 30 ) )
                return literal::env( "door", chance( 50 ) );
            return mental();
        };
        auto maybe_conditions = [ & ]( int percent ) {
            literal_list out;
            if ( chance( percent ) )
                out.push_back( any() );
            return out;
        };
        auto action = [ & ]() { return d.actions[ pick( 3 ) ].name; };
        auto add = [ & ]( law_body body ) { d.laws.push_back( causal_law{ std::move( body ), {} } ); };

        const std::size_t influences = 1 + pick( 3 );
        for ( std::size_t i = 0; i < influences; ++i )
            add( law::influences_dynamic{ action(), { mental() }, maybe_conditions( 50 ) } );
        if ( with_env )
            add( law::causes{ action(), { literal::env( "door", chance( 50 ) ) }, maybe_conditions( 40 ) } );
        if ( chance( 40 ) )
            add( law::triggers{ { any() }, action() } );
        if ( chance( 40 ) )
            add( law::allows{ { any() }, action() } );
        if ( chance( 30 ) )
            add( law::inhibits{ { any() }, action() } );
        if ( chance( 30 ) )
            add( law::facilitates{ { mental() }, "act_h" } );
        if ( chance( 25 ) )
            add( law::contravenes{ { mental() }, "act_h" } );
        if ( chance( 30 ) )
        {
            const auto a = pick( 3 );
            const auto b = ( a + 1 + pick( 2 ) ) % 3;
            add( law::no_concurrency{ { d.actions[ a ].name, d.actions[ b ].name } } );
        }
        const std::size_t forbids = pick( 3 );
        for ( std::size_t i = 0; i < forbids; ++i )
        {
            law::forbids_to_cause f;
            auto left = mental();
            if ( chance( 30 ) )
                left.relation = guard_relation::ne;
            f.left = { left };
            f.right = { mental() };
            f.id = static_cast< int >( i ) + 1;
            add( std::move( f ) );
        }

        differential_case c;
        c.domain = d;
        c.horizon = static_cast< std::uint32_t >( 1 + pick( 4 ) );
        if ( chance( 70 ) )
            c.observations.push_back( observation::at( literal::mental( "p", d.classes[ 0 ].values[ 0 ] ), 0 ) );
        if ( chance( 50 ) )
            c.observations.push_back(
                observation::at( literal::mental( "q", d.classes[ 1 ].values[ pick( d.classes[ 1 ].values.size() ) ] ),
                                 0 ) );
        if ( with_env && chance( 50 ) )
            c.observations.push_back( observation::at( literal::env( "door", chance( 50 ) ), 0 ) );
        if ( chance( 30 ) )
            c.observations.push_back( observation::occurs( action(), static_cast< std::uint32_t >( pick( c.horizon ) ) ) );
        if ( chance( 30 ) )
            c.observations.push_back(
                observation::at( mental(), static_cast< std::uint32_t >( 1 + pick( c.horizon ) ) ) );
        c.config.orientation = chance( 50 ) ? orientation::as_written : orientation::reversed;
        c.config.firing = chance( 50 ) ? firing::holding : firing::onset;
        c.config.policy = chance( 70 ) ? action_policy::singleton_or_empty : action_policy::any_subset;

        std::ostringstream name;
        name << "random_" << k;
        c.name = name.str() + "_consistent";
        out.push_back( c );

        c.name = name.str() + "_plan";
        c.goal = literal_list{ mental() };
        if ( chance( 40 ) )
            c.goal->push_back( any() );
        out.push_back( std::move( c ) );
    }
    return out;
}

differential_report differential_check( const std::vector< differential_case >& cases,
                                        const std::string& solver_template )
{
    differential_report report;
    for ( const auto& c : cases )
    {
        differential_row row;
        row.case_name = c.name;
        const compiled_domain domain{ c.domain };
        if ( c.goal )
            row.native = plan( domain, c.observations, *c.goal, c.horizon, c.config ).sat;
        else
            row.native = consistent( domain, c.observations, c.horizon, c.config ).consistent;

        if ( solver_template.empty() )
        {
            row.verdict = "SKIPPED";
            ++report.skipped;
            report.rows.push_back( std::move( row ) );
            continue;
        }
        const auto program = emit_program( domain, c.observations, c.goal, c.horizon, c.config ).text();
        const auto outcome = run_solver( solver_template, program );
        if ( outcome.verdict == solver_verdict::error )
        {
            row.verdict = "ERROR";
            row.detail = outcome.detail;
            row.program = program;
            ++report.errors;
        }
        else
        {
            row.solver = outcome.verdict == solver_verdict::satisfiable;
            if ( *row.solver == row.native )
            {
                row.verdict = "AGREE";
                ++report.agree;
            }
            else
            {
                row.verdict = "DISAGREE";
                row.program = program;
                ++report.disagree;
            }
        }
        report.rows.push_back( std::move( row ) );
    }
    return report;
}

} // namespace cmt
