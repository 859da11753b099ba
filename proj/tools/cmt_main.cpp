#include "cmt/analysis.hpp"
#include "cmt/aspgen.hpp"
#include "cmt/dsl.hpp"
#include "cmt/theories.hpp"
#include "cmt/trace_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace
{

using namespace cmt;
using json = nlohmann::ordered_json;

enum exit_code
{
    exit_ok = 0,
    exit_negative = 1,
    exit_usage = 2,
    exit_internal = 3
};

class usage_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct options
{
    std::string domain;
    std::string obs;
    std::string query_file;
    std::vector< std::string > traces;
    std::vector< std::string > theories;
    std::string source = "listing";
    std::string orientation = "as-written";
    std::string firing;
    std::string policy = "singleton";
    std::optional< std::uint32_t > horizon;
    std::string format;
    std::string solver;
    std::string init;
    std::string goal;
    std::string mode = "skeptical";
    unsigned jobs = 1;
    std::string csv_out;
    std::string json_out;
    std::uint64_t seed = 7;
    std::size_t count = 50;
    bool witnesses = false;
};

struct resolved
{
    std::string command;
    theory_source source = theory_source::listing;
    semantics_config config;
    std::uint32_t horizon = 0;
    std::vector< std::string > theory_names;
};

std::string lower( std::string text )
{
    std::transform( text.begin(), text.end(), text.begin(), []( unsigned char c ) { return std::tolower( c ); } );
    return text;
}

// Files are read from disk; a bare shipped fixture name falls back to the
// copy compiled into the library.
std::string load_text( const std::string& path )
{
    if ( std::filesystem::exists( path ) )
        return read_file( path );
    const auto base = std::filesystem::path( path ).filename().string();
    for ( auto name : fixture_names() )
        if ( name == base )
            return std::string{ fixture_text( name ) };
    throw usage_error( "cannot open '" + path + "'" );
}

bool is_builtin( const std::string& name )
{
    const auto key = lower( name );
    return key == "her" || key == "uer";
}

std::vector< std::string > split_list( const std::vector< std::string >& items )
{
    std::vector< std::string > out;
    for ( const auto& item : items )
    {
        std::stringstream in{ item };
        std::string part;
        while ( std::getline( in, part, ',' ) )
            if ( !part.empty() )
                out.push_back( part );
    }
    return out;
}

resolved resolve( const std::string& command, const options& o, firing default_firing,
                  std::uint32_t default_horizon )
{
    resolved r;
    r.command = command;
    const auto src = parse_theory_source( o.source );
    if ( !src || *src == theory_source::custom )
        throw usage_error( "--source must be definition or listing" );
    r.source = *src;
    const auto orient = parse_orientation( o.orientation );
    if ( !orient )
        throw usage_error( "--orientation must be as-written or reversed" );
    r.config.orientation = *orient;
    if ( o.firing.empty() )
        r.config.firing = default_firing;
    else if ( auto f = parse_firing( o.firing ) )
        r.config.firing = *f;
    else
        throw usage_error( "--firing must be holding or onset" );
    const auto policy = parse_action_policy( o.policy );
    if ( !policy )
        throw usage_error( "--policy must be singleton or any-subset" );
    r.config.policy = *policy;
    r.horizon = o.horizon.value_or( default_horizon );
    r.theory_names = split_list( o.theories );
    return r;
}

json config_json( const resolved& r )
{
    json j;
    j[ "command" ] = r.command;
    j[ "theories" ] = r.theory_names;
    j[ "source" ] = to_string( r.source );
    j[ "orientation" ] = to_string( r.config.orientation );
    j[ "firing" ] = to_string( r.config.firing );
    j[ "policy" ] = to_string( r.config.policy );
    j[ "horizon" ] = r.horizon;
    return j;
}

std::string config_line( const resolved& r, const char* comment = "#" )
{
    std::string theories;
    for ( const auto& t : r.theory_names )
        theories += ( theories.empty() ? "" : "," ) + t;
    return std::string{ comment } + " cmt " + r.command + " theories=" + ( theories.empty() ? "none" : theories ) +
           " source=" + to_string( r.source ) + " orientation=" + to_string( r.config.orientation ) +
           " firing=" + to_string( r.config.firing ) + " policy=" + to_string( r.config.policy ) +
           " horizon=" + std::to_string( r.horizon ) + "\n";
}

json diagnostics_json( const std::vector< diagnostic >& diags )
{
    auto out = json::array();
    for ( const auto& d : diags )
        out.push_back( { { "kind", to_string( d.kind ) }, { "message", d.format() } } );
    return out;
}

void print_diagnostics( const std::vector< diagnostic >& diags )
{
    for ( const auto& d : diags )
        std::cerr << d.format() << "\n";
}

domain_description load_domain( const std::string& path )
{
    auto parsed = parse_domain( load_text( path ), path );
    if ( !parsed.ok() )
        throw validation_failure( std::move( parsed.diagnostics ) );
    print_diagnostics( parsed.diagnostics );
    return std::move( *parsed.value );
}

std::vector< observation > load_observations( const std::string& path, const domain_description& domain )
{
    auto parsed = parse_observations( load_text( path ), path, &domain );
    if ( !parsed.ok() )
        throw validation_failure( std::move( parsed.diagnostics ) );
    print_diagnostics( parsed.diagnostics );
    return std::move( *parsed.value );
}

std::vector< theory_spec > load_theories( const resolved& r )
{
    std::vector< theory_spec > out;
    for ( const auto& name : r.theory_names )
    {
        if ( is_builtin( name ) )
            out.push_back( builtin_theory( name, r.source ) );
        else
            out.push_back( load_theory( load_text( name ), std::filesystem::path( name ).stem().string(), name ) );
    }
    return out;
}

const domain_description& base_domain( const options& o, std::optional< domain_description >& storage )
{
    if ( o.domain.empty() )
        return ae_domain();
    storage = load_domain( o.domain );
    return *storage;
}

// Observation time stamps bound the default horizon.
std::uint32_t horizon_of( const std::vector< observation >& obs )
{
    std::uint32_t h = 0;
    for ( const auto& ob : obs )
        h = std::max( h, ob.kind == observation::kind_t::occurs_at ? ob.time + 1 : ob.time );
    return h;
}

bool has_ae_classes( const compiled_domain& domain )
{
    for ( auto cls : { "ne", "go", "ac", "co" } )
        if ( !domain.find_class( cls ) )
            return false;
    return true;
}

std::optional< state > catalog_or_tuple( const compiled_domain& domain, const std::string& text )
{
    if ( !has_ae_classes( domain ) )
        return std::nullopt;
    if ( auto s = state_of_label( domain, text ) )
        return s;
    return state_of_tuple( domain, text );
}

literal_list parse_goal( const compiled_domain& domain, const std::string& text )
{
    if ( auto s = catalog_or_tuple( domain, text ) )
        return ae_literals( domain, *s );
    auto parsed = parse_query( "query goal " + text + " horizon 1;", "--goal", &domain.description() );
    if ( !parsed.ok() )
        throw validation_failure( std::move( parsed.diagnostics ) );
    return parsed.value->goal;
}

std::string state_text( const compiled_domain& domain, const state& s )
{
    std::string out;
    if ( has_ae_classes( domain ) )
    {
        out = short_tuple( domain, s );
        if ( auto label = label_state( domain, s ) )
            out += " " + *label;
    }
    else
    {
        for ( std::size_t c = 0; c < domain.class_count(); ++c )
        {
            const auto slot = domain.class_slot( c );
            out += ( out.empty() ? "" : " " ) + domain.to_string( atom{ slot, s[ slot ] } );
        }
    }
    for ( slot_id f = 0; f < domain.env_count(); ++f )
        out += std::string{ " " } + ( s[ f ] ? "" : "-" ) + domain.slot_name( f );
    return out;
}

std::string actions_text( const compiled_domain& domain, const action_set& a )
{
    std::string out = "{";
    for ( std::size_t i = 0; i < a.size(); ++i )
        out += ( i ? ", " : "" ) + domain.action_name( a[ i ] );
    return out + "}";
}

void print_trajectory( const compiled_domain& domain, const trajectory& t )
{
    for ( std::size_t i = 0; i < t.states.size(); ++i )
    {
        std::cout << "  s" << i << " " << state_text( domain, t.states[ i ] ) << "\n";
        if ( i < t.actions.size() )
            std::cout << "    " << actions_text( domain, t.actions[ i ] ) << " @" << i << "\n";
    }
}

void emit_json( const json& j )
{
    std::cout << j.dump( 2 ) << "\n";
}

void write_file( const std::string& path, const std::string& text )
{
    std::ofstream out{ path, std::ios::binary };
    if ( !out )
        throw usage_error( "cannot write '" + path + "'" );
    out << text;
}

std::string format_or( const options& o, const char* fallback )
{
    return o.format.empty() ? fallback : o.format;
}

// parse: canonical pretty-print of every given input.
int cmd_parse( const options& o )
{
    auto r = resolve( "parse", o, firing::holding, 0 );
    if ( o.domain.empty() && o.theories.empty() )
        throw usage_error( "parse needs --domain or --theory FILE" );
    std::optional< domain_description > storage;
    const auto& domain = base_domain( o, storage );
    std::string text;
    if ( !o.domain.empty() )
        text += print_domain( domain );
    if ( !o.obs.empty() )
        text += print_observations( load_observations( o.obs, domain ) );
    if ( !o.query_file.empty() )
    {
        auto q = parse_query( load_text( o.query_file ), o.query_file, &domain );
        if ( !q.ok() )
            throw validation_failure( std::move( q.diagnostics ) );
        text += print_query( *q.value );
    }
    for ( const auto& spec : load_theories( r ) )
        for ( const auto& rule : spec.rules )
            text += print_law( causal_law{ rule, {} } ) + "\n";
    if ( format_or( o, "text" ) == "json" )
    {
        json j;
        j[ "config" ] = config_json( r );
        j[ "ok" ] = true;
        j[ "text" ] = text;
        emit_json( j );
    }
    else
        std::cout << text;
    return exit_ok;
}

int cmd_check( const options& o )
{
    std::optional< domain_description > storage;
    const auto& base = base_domain( o, storage );
    const auto obs = o.obs.empty() ? std::vector< observation >{} : load_observations( o.obs, base );
    auto r = resolve( "check", o, firing::holding, std::max< std::uint32_t >( horizon_of( obs ), 1 ) );
    const compiled_domain domain{ attach( base, load_theories( r ) ) };
    auto result = consistent( domain, obs, r.horizon, r.config );
    if ( format_or( o, "json" ) == "json" )
    {
        json j;
        j[ "config" ] = config_json( r );
        j[ "status" ] = result.consistent ? "CONSISTENT" : "INCONSISTENT";
        j[ "witness" ] = result.witness ? json( trajectory_to_json( domain, *result.witness ) ) : json();
        j[ "diagnostics" ] = diagnostics_json( result.diagnostics );
        emit_json( j );
    }
    else
    {
        std::cout << config_line( r ) << ( result.consistent ? "CONSISTENT" : "INCONSISTENT" ) << "\n";
        if ( result.witness )
            print_trajectory( domain, *result.witness );
        print_diagnostics( result.diagnostics );
    }
    return result.consistent ? exit_ok : exit_negative;
}

int cmd_plan( const options& o )
{
    std::optional< domain_description > storage;
    const auto& base = base_domain( o, storage );
    auto r = resolve( "plan", o, firing::onset, 6 );
    const compiled_domain domain{ attach( base, load_theories( r ) ) };
    std::vector< observation > obs;
    if ( !o.obs.empty() )
        obs = load_observations( o.obs, domain.description() );
    if ( !o.init.empty() )
    {
        const auto s = catalog_or_tuple( domain, o.init );
        if ( !s )
            throw usage_error( "--init '" + o.init + "' is neither a catalog label nor a tuple" );
        for ( auto& ob : ae_initial_observations( domain, *s ) )
            obs.push_back( std::move( ob ) );
    }
    if ( o.goal.empty() )
        throw usage_error( "plan needs --goal" );
    const auto goal = parse_goal( domain, o.goal );
    auto result = plan( domain, obs, goal, r.horizon, r.config );
    const char* status = result.sat ? "SATISFIABLE" : "UNSATISFIABLE";
    if ( format_or( o, "json" ) == "json" )
    {
        json j;
        j[ "config" ] = config_json( r );
        j[ "init" ] = o.init;
        j[ "goal" ] = o.goal;
        j[ "status" ] = status;
        if ( result.plan )
        {
            auto steps = json::array();
            for ( std::size_t i = 0; i < result.plan->actions.size(); ++i )
                for ( auto a : result.plan->actions[ i ] )
                    steps.push_back( { { "action", domain.action_name( a ) }, { "time", i } } );
            j[ "plan" ] = steps;
            j[ "trajectory" ] = trajectory_to_json( domain, *result.plan );
        }
        else
            j[ "plan" ] = nullptr;
        j[ "diagnostics" ] = diagnostics_json( result.diagnostics );
        emit_json( j );
    }
    else
    {
        std::cout << config_line( r ) << status << "\n";
        if ( result.plan )
            print_trajectory( domain, *result.plan );
        print_diagnostics( result.diagnostics );
    }
    return result.sat ? exit_ok : exit_negative;
}

int cmd_verify( const options& o )
{
    if ( o.traces.size() != 1 )
        throw usage_error( "verify needs exactly one --trace" );
    std::optional< domain_description > storage;
    const auto& base = base_domain( o, storage );
    auto r = resolve( "verify", o, firing::holding, 0 );
    const compiled_domain domain{ base };
    const auto t = trajectory_from_json( domain, nlohmann::json::parse( load_text( o.traces.front() ) ) );
    r.horizon = static_cast< std::uint32_t >( t.length() );
    const auto theories = load_theories( r );
    const auto structural = check_trajectory( domain, t, r.config );

    bool violation = !structural.empty();
    json j;
    j[ "config" ] = config_json( r );
    j[ "trace" ] = o.traces.front();
    j[ "trajectory_check" ] = structural;
    auto per_theory = json::array();
    std::ostringstream text;
    text << config_line( r );
    for ( const auto& msg : structural )
        text << "trajectory: " << msg << "\n";
    for ( const auto& spec : theories )
    {
        const transition_checker checker{ { spec }, r.config, base };
        json tj;
        tj[ "theory" ] = spec.name;
        auto transitions = json::array();
        text << spec.name << "\n";
        for ( std::size_t i = 0; i + 1 < t.states.size(); ++i )
        {
            const auto judgment = checker.judge( t.states[ i ], t.states[ i + 1 ] );
            violation = violation || !judgment.pass;
            json x;
            x[ "transition" ] = i + 1;
            x[ "from" ] = state_text( domain, t.states[ i ] );
            x[ "to" ] = state_text( domain, t.states[ i + 1 ] );
            x[ "verdict" ] = judgment.pass ? "pass" : "violate";
            auto fired = json::array();
            for ( const auto& f : judgment.fired )
                fired.push_back( { { "theory", f.theory },
                                   { "rule", f.rule_id },
                                   { "forbidden", f.forbidden },
                                   { "conditions", f.conditions } } );
            x[ "fired" ] = fired;
            transitions.push_back( x );
            text << "  " << i + 1 << " " << state_text( domain, t.states[ i ] ) << " -> "
                 << state_text( domain, t.states[ i + 1 ] ) << ": " << ( judgment.pass ? "pass" : "violate" );
            for ( const auto& f : judgment.fired )
                text << " [" << f.theory << " rule " << f.rule_id << " forbids " << f.forbidden << "]";
            text << "\n";
        }
        tj[ "transitions" ] = transitions;
        const auto key = lower( spec.name );
        if ( has_ae_classes( domain ) && ( key == "her" || key == "uer" ) )
        {
            const auto inv = eval_invariant( key == "her" ? invariant::ei_her : invariant::ei_uer, domain, t.states );
            violation = violation || !inv.holds;
            tj[ "invariant" ] = { { "name", key == "her" ? "EI_HER" : "EI_UER" },
                                  { "holds", inv.holds },
                                  { "first_violation", inv.first_violation ? json( *inv.first_violation ) : json() } };
            text << "  invariant " << ( key == "her" ? "EI_HER" : "EI_UER" ) << ": "
                 << ( inv.holds ? "holds" : "violated at s" + std::to_string( *inv.first_violation ) ) << "\n";
        }
        per_theory.push_back( tj );
    }
    j[ "theories" ] = per_theory;
    j[ "verdict" ] = violation ? "VIOLATION" : "PASS";
    text << ( violation ? "VIOLATION" : "PASS" ) << "\n";
    if ( format_or( o, "json" ) == "json" )
        emit_json( j );
    else
        std::cout << text.str();
    return violation ? exit_negative : exit_ok;
}

int cmd_query( const options& o )
{
    if ( o.query_file.empty() )
        throw usage_error( "query needs --query" );
    std::optional< domain_description > storage;
    const auto& base = base_domain( o, storage );
    auto parsed = parse_query( load_text( o.query_file ), o.query_file, &base );
    if ( !parsed.ok() )
        throw validation_failure( std::move( parsed.diagnostics ) );
    auto r = resolve( "query", o, firing::holding, parsed.value->horizon );
    const compiled_domain domain{ attach( base, load_theories( r ) ) };
    const auto obs = o.obs.empty() ? std::vector< observation >{} : load_observations( o.obs, domain.description() );
    query_mode mode;
    if ( o.mode == "skeptical" )
        mode = query_mode::skeptical;
    else if ( o.mode == "credulous" )
        mode = query_mode::credulous;
    else
        throw usage_error( "--mode must be skeptical or credulous" );
    auto result = holds_query( domain, obs, *parsed.value, mode, r.config );
    if ( format_or( o, "json" ) == "json" )
    {
        json j;
        j[ "config" ] = config_json( r );
        j[ "mode" ] = to_string( mode );
        j[ "holds" ] = result.holds;
        j[ "no_models" ] = result.no_models;
        j[ "witness" ] = result.witness ? json( trajectory_to_json( domain, *result.witness ) ) : json();
        j[ "diagnostics" ] = diagnostics_json( result.diagnostics );
        emit_json( j );
    }
    else
    {
        std::cout << config_line( r ) << to_string( mode ) << ": " << ( result.holds ? "HOLDS" : "DOES NOT HOLD" )
                  << ( result.no_models ? " (no models)" : "" ) << "\n";
        if ( result.witness )
            print_trajectory( domain, *result.witness );
        print_diagnostics( result.diagnostics );
    }
    return result.holds ? exit_ok : exit_negative;
}

void require_theory( const options& o, const char* command )
{
    if ( o.theories.empty() )
        throw usage_error( std::string{ command } + " needs --theory (her, uer or a file)" );
}

int cmd_reach( const options& o )
{
    require_theory( o, "reach" );
    auto r = resolve( "reach", o, firing::onset, 6 );
    const auto m = reachability( load_theories( r ), r.config, r.horizon, o.jobs );
    const auto format = format_or( o, "json" );
    const compiled_domain domain{ ae_domain() };
    if ( format == "json" )
    {
        json j;
        j[ "config" ] = config_json( r );
        j[ "labels" ] = m.labels;
        auto grid = json::array();
        for ( const auto& row : m.cells )
        {
            auto rj = json::array();
            for ( const auto& c : row )
                rj.push_back( c.sat );
            grid.push_back( rj );
        }
        j[ "matrix" ] = grid;
        json goals = json::object();
        for ( std::size_t g = 0; g < m.labels.size(); ++g )
            goals[ m.labels[ g ] ] = { { "reached_from_others", m.reached_from_others( g ) },
                                       { "self_reachable", m.self_reachable( g ) },
                                       { "reached_including_self", m.reached_including_self( g ) } };
        j[ "goals" ] = goals;
        if ( o.witnesses )
        {
            auto w = json::array();
            for ( std::size_t i = 0; i < m.labels.size(); ++i )
                for ( std::size_t g = 0; g < m.labels.size(); ++g )
                    if ( m.cells[ i ][ g ].witness )
                        w.push_back( { { "init", m.labels[ i ] },
                                       { "goal", m.labels[ g ] },
                                       { "trajectory", trajectory_to_json( domain, *m.cells[ i ][ g ].witness ) } } );
            j[ "witnesses" ] = w;
        }
        emit_json( j );
    }
    else if ( format == "csv" )
    {
        std::cout << "init_label,goal_label,self_pair,status,wall_ms\n";
        for ( std::size_t i = 0; i < m.labels.size(); ++i )
            for ( std::size_t g = 0; g < m.labels.size(); ++g )
                std::cout << m.labels[ i ] << ',' << m.labels[ g ] << ',' << ( i == g ? "yes" : "no" ) << ','
                          << ( m.cells[ i ][ g ].sat ? "SAT" : "UNSAT" ) << ',' << m.cells[ i ][ g ].wall_ms << "\n";
    }
    else
    {
        std::cout << config_line( r ) << "rows: init, columns: goal; 1 reachable, diagonal in brackets\n";
        std::cout << std::string( 13, ' ' );
        for ( const auto& l : m.labels )
            std::cout << l.substr( 0, 4 ) << std::string( 5 - std::min< std::size_t >( 4, l.size() ), ' ' );
        std::cout << "\n";
        for ( std::size_t i = 0; i < m.labels.size(); ++i )
        {
            std::cout << m.labels[ i ] << std::string( 13 - m.labels[ i ].size(), ' ' );
            for ( std::size_t g = 0; g < m.labels.size(); ++g )
            {
                const char v = m.cells[ i ][ g ].sat ? '1' : '.';
                std::cout << ( i == g ? std::string{ '[', v, ']' } : std::string{ ' ', v, ' ' } ) << "  ";
            }
            std::cout << "\n";
        }
        std::cout << "reached from others / including self:\n";
        for ( std::size_t g = 0; g < m.labels.size(); ++g )
            std::cout << "  " << m.labels[ g ] << " " << m.reached_from_others( g ) << " / "
                      << m.reached_including_self( g ) << "\n";
    }
    return exit_ok;
}

int cmd_priority( const options& o )
{
    require_theory( o, "priority" );
    auto r = resolve( "priority", o, firing::onset, 6 );
    std::optional< domain_description > storage;
    const auto& base = base_domain( o, storage );
    const compiled_domain domain{ base };
    std::vector< trajectory > set;
    std::string origin;
    if ( !o.traces.empty() )
    {
        for ( const auto& path : o.traces )
            set.push_back( trajectory_from_json( domain, nlohmann::json::parse( load_text( path ) ) ) );
        origin = "traces";
        r.horizon = set.empty() ? 0 : static_cast< std::uint32_t >( set.front().length() );
    }
    else
    {
        const auto m = reachability( load_theories( r ), r.config, r.horizon, o.jobs );
        for ( const auto& row : m.cells )
            for ( const auto& c : row )
                if ( c.witness )
                    set.push_back( *c.witness );
        origin = "reachability witnesses";
    }
    const auto p = priority( domain, set );
    if ( format_or( o, "json" ) == "json" )
    {
        json j;
        j[ "config" ] = config_json( r );
        j[ "trajectories" ] = p.trajectories;
        j[ "origin" ] = origin;
        json w = json::object();
        for ( std::size_t c = 0; c < p.classes.size(); ++c )
            w[ p.classes[ c ] ] = p.weights[ c ];
        j[ "weights" ] = w;
        emit_json( j );
    }
    else
    {
        std::cout << config_line( r ) << "|Tr| = " << p.trajectories << " (" << origin << ")\n";
        std::cout << "class";
        for ( std::uint32_t i = 1; i <= p.horizon; ++i )
            std::cout << "\tP" << i;
        std::cout << "\n";
        for ( std::size_t c = 0; c < p.classes.size(); ++c )
        {
            std::cout << p.classes[ c ];
            for ( auto v : p.weights[ c ] )
                std::cout << "\t" << std::fixed << std::setprecision( 3 ) << v;
            std::cout << "\n";
        }
    }
    return exit_ok;
}

int cmd_emit_asp( const options& o )
{
    if ( o.domain.empty() )
        throw usage_error( "emit-asp needs --domain" );
    std::optional< domain_description > storage;
    const auto& base = base_domain( o, storage );
    const auto obs = o.obs.empty() ? std::vector< observation >{} : load_observations( o.obs, base );
    auto r = resolve( "emit-asp", o, firing::holding, std::max< std::uint32_t >( horizon_of( obs ), 1 ) );
    const compiled_domain domain{ attach( base, load_theories( r ) ) };
    std::optional< literal_list > goal;
    if ( !o.goal.empty() )
        goal = parse_goal( domain, o.goal );
    const auto program = emit_program( domain, obs, goal, r.horizon, r.config ).text();
    std::optional< solver_outcome > outcome;
    if ( !o.solver.empty() )
        outcome = run_solver( o.solver == "auto" ? detect_solver().value_or( "" ) : o.solver, program );
    if ( format_or( o, "text" ) == "json" )
    {
        json j;
        j[ "config" ] = config_json( r );
        j[ "program" ] = program;
        if ( outcome )
            j[ "solver" ] = { { "verdict", to_string( outcome->verdict ) }, { "detail", outcome->detail } };
        emit_json( j );
    }
    else
    {
        std::cout << config_line( r, "%" ) << program;
        if ( outcome )
            std::cerr << "solver: " << to_string( outcome->verdict ) << "\n";
    }
    if ( !outcome )
        return exit_ok;
    switch ( outcome->verdict )
    {
    case solver_verdict::satisfiable: return exit_ok;
    case solver_verdict::unsatisfiable: return exit_negative;
    case solver_verdict::skipped: return exit_ok;
    case solver_verdict::error: std::cerr << outcome->detail << "\n"; return exit_internal;
    }
    return exit_internal;
}

int cmd_differential( const options& o )
{
    auto r = resolve( "differential", o, firing::holding, 0 );
    const auto solver = o.solver.empty() || o.solver == "auto" ? detect_solver().value_or( "" ) : o.solver;
    const auto report = differential_check( random_battery( o.seed, o.count ), solver );
    if ( format_or( o, "json" ) == "json" )
    {
        json j;
        j[ "config" ] = config_json( r );
        j[ "solver" ] = solver;
        j[ "seed" ] = o.seed;
        j[ "summary" ] = { { "agree", report.agree },
                           { "disagree", report.disagree },
                           { "skipped", report.skipped },
                           { "errors", report.errors } };
        auto rows = json::array();
        for ( const auto& row : report.rows )
            rows.push_back( { { "case", row.case_name },
                              { "native", row.native ? "SAT" : "UNSAT" },
                              { "solver", row.solver ? json( *row.solver ? "SAT" : "UNSAT" ) : json() },
                              { "verdict", row.verdict } } );
        j[ "rows" ] = rows;
        emit_json( j );
    }
    else
    {
        std::cout << config_line( r ) << "solver: " << ( solver.empty() ? "none" : solver ) << "\n";
        for ( const auto& row : report.rows )
            std::cout << row.case_name << " native=" << ( row.native ? "SAT" : "UNSAT" ) << " " << row.verdict
                      << "\n";
        std::cout << "agree " << report.agree << " disagree " << report.disagree << " skipped " << report.skipped
                  << " errors " << report.errors << "\n";
    }
    if ( report.errors )
        return exit_internal;
    return report.disagree ? exit_negative : exit_ok;
}

int cmd_experiment( const options& o )
{
    require_theory( o, "experiment" );
    auto r = resolve( "experiment", o, firing::onset, 6 );
    for ( const auto& t : r.theory_names )
        if ( !is_builtin( t ) )
            throw usage_error( "experiment runs the builtin theories only (her, uer)" );
    const auto report = run_experiment( r.source, r.config, r.horizon, o.jobs, r.theory_names );
    auto summary = report.summary_json();
    summary[ "config" ] = config_json( r );
    if ( !o.csv_out.empty() )
        write_file( o.csv_out, report.csv() );
    if ( !o.json_out.empty() )
        write_file( o.json_out, summary.dump( 2 ) + "\n" );
    const auto format = format_or( o, "csv" );
    if ( format == "csv" )
        std::cout << report.csv();
    else if ( format == "json" )
        emit_json( summary );
    else
    {
        std::cout << config_line( r ) << "runs " << report.rows.size() << ", " << report.total_ms << " ms\n";
        for ( const auto& t : report.summary().theories )
        {
            std::cout << t.theory << ": SAT " << t.sat << ", UNSAT " << t.unsat << "\n";
            const auto& cat = emotion_catalog();
            for ( std::size_t g = 0; g < cat.size(); ++g )
                std::cout << "  " << cat[ g ].label << " reached from " << t.reached_from_others[ g ]
                          << " other(s)" << ( t.self_reachable[ g ] ? ", self-reachable" : "" ) << "\n";
        }
    }
    return exit_ok;
}

int cmd_discrepancy( const options& o )
{
    auto r = resolve( "discrepancy", o, firing::holding, 6 );
    r.theory_names = { "HER", "UER" };
    const auto report = make_discrepancy_report( o.jobs );
    if ( format_or( o, "json" ) == "json" )
    {
        auto j = report.json();
        j[ "config" ] = { { "command", "discrepancy" },
                          { "configs", "all source x orientation x firing" },
                          { "policy", to_string( action_policy::singleton_or_empty ) },
                          { "horizon", report.horizon } };
        emit_json( j );
    }
    else
        std::cout << "# cmt discrepancy configs=all source x orientation x firing policy=singleton horizon="
                  << report.horizon << "\n"
                  << report.text();
    return exit_ok;
}

void add_format( CLI::App* sub, options& o, std::vector< std::string > allowed )
{
    sub->add_option( "--format", o.format, "Output format" )->check( CLI::IsMember( std::move( allowed ) ) );
}

void add_semantics( CLI::App* sub, options& o )
{
    sub->add_option( "--source", o.source, "Theory source: definition or listing" );
    sub->add_option( "--orientation", o.orientation, "as-written or reversed" );
    sub->add_option( "--firing", o.firing, "holding or onset" );
    sub->add_option( "--policy", o.policy, "Action sets per step: singleton or any-subset" );
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Action theories with mental fluents: parse, simulate, plan, verify and analyse" };
    app.name( "cmt" );
    app.require_subcommand( 1 );
    options o;

    auto* parse = app.add_subcommand( "parse", "Pretty-print a domain, observations, query or theory file" );
    parse->add_option( "--domain", o.domain, "Domain file (.cmt)" );
    parse->add_option( "--obs", o.obs, "Observation file (.cmto)" );
    parse->add_option( "--query", o.query_file, "Query file (.cmtq)" );
    parse->add_option( "--theory", o.theories, "her, uer or a theory file" );
    parse->add_option( "--source", o.source, "Theory source: definition or listing" );
    add_format( parse, o, { "text", "json" } );

    auto* check = app.add_subcommand( "check", "Consistency of a domain with observations" );
    check->add_option( "--domain", o.domain, "Domain file" )->required();
    check->add_option( "--obs", o.obs, "Observation file" );
    check->add_option( "--theory", o.theories, "her, uer or a theory file" );
    check->add_option( "--horizon", o.horizon, "Trajectory length" );
    add_semantics( check, o );
    add_format( check, o, { "json", "text" } );

    auto* plan_cmd = app.add_subcommand( "plan", "Find a trajectory that reaches a goal at the horizon" );
    plan_cmd->add_option( "--domain", o.domain, "Domain file (default: the AE domain)" );
    plan_cmd->add_option( "--obs", o.obs, "Observation file" );
    plan_cmd->add_option( "--theory", o.theories, "her, uer or a theory file" );
    plan_cmd->add_option( "--init", o.init, "Initial state: catalog label or tuple such as hloh" );
    plan_cmd->add_option( "--goal", o.goal, "Goal: catalog label, tuple or literal list" );
    plan_cmd->add_option( "--horizon", o.horizon, "Plan length (default 6)" );
    add_semantics( plan_cmd, o );
    add_format( plan_cmd, o, { "json", "text" } );

    auto* verify = app.add_subcommand( "verify", "Judge every transition of a trajectory against theories" );
    verify->add_option( "--domain", o.domain, "Domain file (default: the AE domain)" );
    verify->add_option( "--trace", o.traces, "Trajectory JSON file" )->required();
    verify->add_option( "--theory", o.theories, "her, uer or a theory file" )->required();
    add_semantics( verify, o );
    add_format( verify, o, { "json", "text" } );

    auto* query_cmd = app.add_subcommand( "query", "Evaluate a query over the trajectory models" );
    query_cmd->add_option( "--domain", o.domain, "Domain file" )->required();
    query_cmd->add_option( "--obs", o.obs, "Observation file" );
    query_cmd->add_option( "--query", o.query_file, "Query file" )->required();
    query_cmd->add_option( "--theory", o.theories, "her, uer or a theory file" );
    query_cmd->add_option( "--mode", o.mode, "skeptical or credulous" );
    add_semantics( query_cmd, o );
    add_format( query_cmd, o, { "json", "text" } );

    auto* reach = app.add_subcommand( "reach", "Reachability matrix over the emotion catalog" );
    reach->add_option( "--theory", o.theories, "her, uer or a theory file" )->required();
    reach->add_option( "--horizon", o.horizon, "Plan length (default 6)" );
    reach->add_option( "--jobs", o.jobs, "Worker threads" );
    reach->add_flag( "--witnesses", o.witnesses, "Include witness trajectories (json)" );
    add_semantics( reach, o );
    add_format( reach, o, { "json", "csv", "text" } );

    auto* prio = app.add_subcommand( "priority", "Emotional priority table" );
    prio->add_option( "--theory", o.theories, "her, uer or a theory file" )->required();
    prio->add_option( "--domain", o.domain, "Domain of the traces (default: the AE domain)" );
    prio->add_option( "--trace", o.traces, "Trajectory JSON files (default: reachability witnesses)" );
    prio->add_option( "--horizon", o.horizon, "Plan length for the witness set (default 6)" );
    prio->add_option( "--jobs", o.jobs, "Worker threads" );
    add_semantics( prio, o );
    add_format( prio, o, { "json", "text" } );

    auto* emit = app.add_subcommand( "emit-asp", "Emit the answer set program" );
    emit->add_option( "--domain", o.domain, "Domain file" )->required();
    emit->add_option( "--obs", o.obs, "Observation file" );
    emit->add_option( "--theory", o.theories, "her, uer or a theory file" );
    emit->add_option( "--goal", o.goal, "Goal at the horizon" );
    emit->add_option( "--horizon", o.horizon, "t_max" );
    emit->add_option( "--solver", o.solver, "Solver command with {file}, or auto" );
    add_semantics( emit, o );
    add_format( emit, o, { "text", "json" } );

    auto* diff = app.add_subcommand( "differential", "Compare the engine with an ASP solver on random theories" );
    diff->add_option( "--solver", o.solver, "Solver command with {file} (default: auto-detect)" );
    diff->add_option( "--seed", o.seed, "Random seed" );
    diff->add_option( "--count", o.count, "Number of theories" );
    add_format( diff, o, { "json", "text" } );

    auto* exp = app.add_subcommand( "experiment", "Init x goal grid for the builtin theories" );
    exp->add_option( "--theory", o.theories, "her, uer (repeat or comma-separate)" )->required();
    exp->add_option( "--horizon", o.horizon, "Plan length (default 6)" );
    exp->add_option( "--jobs", o.jobs, "Worker threads" );
    exp->add_option( "--csv-out", o.csv_out, "Also write the CSV here" );
    exp->add_option( "--json-out", o.json_out, "Also write the JSON summary here" );
    add_semantics( exp, o );
    add_format( exp, o, { "csv", "json", "text" } );

    auto* disc = app.add_subcommand( "discrepancy", "Published verdicts against every semantics configuration" );
    disc->add_option( "--jobs", o.jobs, "Worker threads" );
    add_format( disc, o, { "json", "text" } );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::CallForHelp& e )
    {
        return app.exit( e );
    }
    catch ( const CLI::CallForAllHelp& e )
    {
        return app.exit( e );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e );
        return exit_usage;
    }

    try
    {
        if ( *parse )
            return cmd_parse( o );
        if ( *check )
            return cmd_check( o );
        if ( *plan_cmd )
            return cmd_plan( o );
        if ( *verify )
            return cmd_verify( o );
        if ( *query_cmd )
            return cmd_query( o );
        if ( *reach )
            return cmd_reach( o );
        if ( *prio )
            return cmd_priority( o );
        if ( *emit )
            return cmd_emit_asp( o );
        if ( *diff )
            return cmd_differential( o );
        if ( *exp )
            return cmd_experiment( o );
        if ( *disc )
            return cmd_discrepancy( o );
    }
    catch ( const validation_failure& e )
    {
        print_diagnostics( e.diagnostics() );
        return exit_usage;
    }
    catch ( const usage_error& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch ( const nlohmann::json::exception& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch ( const std::invalid_argument& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch ( const std::exception& e )
    {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_internal;
}
