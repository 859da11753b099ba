#include "cmt/analysis.hpp"

#include "cmt/dsl.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <mutex>
#include <thread>
#include <tuple>

namespace cmt
{

namespace
{

constexpr std::array< std::string_view, 4 > ae_classes = { "ne", "go", "ac", "co" };

// Runs body(0..n-1) on up to `jobs` threads. Callers write results by index.
void parallel_for( std::size_t n, unsigned jobs, const std::function< void( std::size_t ) >& body )
{
    jobs = std::max( 1u, std::min< unsigned >( jobs, static_cast< unsigned >( std::max< std::size_t >( n, 1 ) ) ) );
    if ( jobs == 1 )
    {
        for ( std::size_t i = 0; i < n; ++i )
            body( i );
        return;
    }
    std::atomic< std::size_t > next{ 0 };
    std::vector< std::thread > pool;
    std::exception_ptr failure;
    std::mutex failure_lock;
    for ( unsigned j = 0; j < jobs; ++j )
        pool.emplace_back( [ & ] {
            for ( std::size_t i = next++; i < n; i = next++ )
            {
                try
                {
                    body( i );
                }
                catch ( ... )
                {
                    std::lock_guard lock{ failure_lock };
                    if ( !failure )
                        failure = std::current_exception();
                }
            }
        } );
    for ( auto& t : pool )
        t.join();
    if ( failure )
        std::rethrow_exception( failure );
}

double elapsed_ms( std::chrono::steady_clock::time_point since )
{
    return std::chrono::duration< double, std::milli >( std::chrono::steady_clock::now() - since ).count();
}

std::vector< state > catalog_states( const compiled_domain& domain )
{
    std::vector< state > out;
    for ( const auto& e : emotion_catalog() )
        out.push_back( *state_of_label( domain, e.label ) );
    return out;
}

std::vector< std::string > catalog_labels()
{
    std::vector< std::string > out;
    for ( const auto& e : emotion_catalog() )
        out.emplace_back( e.label );
    return out;
}

struct cell_outcome
{
    bool sat = false;
    std::optional< trajectory > witness;
    double wall_ms = 0.0;
};

cell_outcome plan_cell( const compiled_domain& domain, const state& init, const state& goal, std::uint32_t horizon,
                        const semantics_config& config )
{
    const auto start = std::chrono::steady_clock::now();
    auto r = plan( domain, ae_initial_observations( domain, init ), ae_literals( domain, goal ), horizon, config );
    cell_outcome out;
    out.sat = r.sat;
    out.witness = std::move( r.plan );
    out.wall_ms = elapsed_ms( start );
    return out;
}

std::string plan_text( const compiled_domain& domain, const trajectory& t )
{
    std::string out;
    for ( std::size_t i = 0; i < t.actions.size(); ++i )
    {
        if ( t.actions[ i ].empty() )
            continue;
        if ( !out.empty() )
            out += ' ';
        for ( std::size_t k = 0; k < t.actions[ i ].size(); ++k )
            out += ( k ? "+" : "" ) + domain.action_name( t.actions[ i ][ k ] );
        out += '@' + std::to_string( i );
    }
    return out;
}

std::vector< std::string > split( const std::string& line, char sep )
{
    std::vector< std::string > out;
    std::string cur;
    for ( char c : line )
    {
        if ( c == sep )
        {
            out.push_back( cur );
            cur.clear();
        }
        else if ( c != '\r' )
            cur += c;
    }
    out.push_back( cur );
    return out;
}

nlohmann::ordered_json config_json( theory_source source, const semantics_config& config, std::uint32_t horizon )
{
    nlohmann::ordered_json j;
    j[ "source" ] = to_string( source );
    j[ "orientation" ] = to_string( config.orientation );
    j[ "firing" ] = to_string( config.firing );
    j[ "policy" ] = to_string( config.policy );
    j[ "horizon" ] = horizon;
    return j;
}

} // namespace

literal_list ae_literals( const compiled_domain& domain, const state& s )
{
    literal_list out;
    for ( auto cls : ae_classes )
    {
        const auto slot = domain.find_class( cls );
        if ( !slot )
            throw std::invalid_argument( "domain does not declare class '" + std::string{ cls } + "'" );
        out.push_back( literal::mental( std::string{ cls }, domain.value_name( *slot, s[ *slot ] ) ) );
    }
    return out;
}

std::vector< observation > ae_initial_observations( const compiled_domain& domain, const state& s )
{
    std::vector< observation > out;
    for ( auto& lit : ae_literals( domain, s ) )
        out.push_back( observation::at( std::move( lit ), 0 ) );
    return out;
}

std::size_t reachability_matrix::reached_from_others( std::size_t goal ) const
{
    std::size_t n = 0;
    for ( std::size_t i = 0; i < cells.size(); ++i )
        n += i != goal && cells[ i ][ goal ].sat;
    return n;
}

std::size_t reachability_matrix::reached_including_self( std::size_t goal ) const
{
    return reached_from_others( goal ) + ( self_reachable( goal ) ? 1 : 0 );
}

std::size_t reachability_matrix::index_of( std::string_view label ) const
{
    for ( std::size_t i = 0; i < labels.size(); ++i )
        if ( labels[ i ] == label )
            return i;
    throw std::invalid_argument( "no catalog label '" + std::string{ label } + "'" );
}

reachability_matrix reachability( const std::vector< theory_spec >& theories, const semantics_config& config,
                                  std::uint32_t horizon, unsigned jobs )
{
    const compiled_domain domain{ attach( ae_domain(), theories ) };
    reachability_matrix m;
    for ( std::size_t i = 0; i < theories.size(); ++i )
        m.theory += ( i ? "+" : "" ) + theories[ i ].name;
    if ( theories.size() == 1 )
        m.source = theories.front().source;
    m.config = config;
    m.horizon = horizon;
    m.labels = catalog_labels();
    const auto states = catalog_states( domain );
    const auto n = states.size();
    m.cells.assign( n, std::vector< reach_cell >( n ) );
    parallel_for( n * n, jobs, [ & ]( std::size_t k ) {
        const auto i = k / n;
        const auto g = k % n;
        auto r = plan_cell( domain, states[ i ], states[ g ], horizon, config );
        auto& cell = m.cells[ i ][ g ];
        cell.sat = r.sat;
        cell.self_pair = i == g;
        cell.witness = std::move( r.witness );
        cell.wall_ms = r.wall_ms;
    } );
    return m;
}

double priority_table::weight( std::string_view cls, std::uint32_t step ) const
{
    for ( std::size_t c = 0; c < classes.size(); ++c )
        if ( classes[ c ] == cls )
        {
            if ( step < 1 || step > horizon )
                throw std::out_of_range( "priority step out of range" );
            return weights[ c ][ step - 1 ];
        }
    throw std::invalid_argument( "no class '" + std::string{ cls } + "' in priority table" );
}

priority_table priority( const compiled_domain& domain, const std::vector< trajectory >& trajectories )
{
    if ( trajectories.empty() )
        throw empty_trajectory_set( "priority needs at least one trajectory" );
    priority_table out;
    out.horizon = static_cast< std::uint32_t >( trajectories.front().length() );
    out.trajectories = trajectories.size();
    for ( const auto& t : trajectories )
        if ( t.length() != out.horizon || t.states.size() != out.horizon + 1u )
            throw std::invalid_argument( "trajectories of different horizons" );
    for ( std::size_t c = 0; c < domain.class_count(); ++c )
    {
        const auto slot = domain.class_slot( c );
        out.classes.push_back( domain.slot_name( slot ) );
        std::vector< double > row( out.horizon, 0.0 );
        for ( std::uint32_t i = 1; i <= out.horizon; ++i )
        {
            std::size_t changed = 0;
            for ( const auto& t : trajectories )
                changed += t.states[ i - 1 ][ slot ] != t.states[ i ][ slot ];
            row[ i - 1 ] = static_cast< double >( changed ) / static_cast< double >( trajectories.size() );
        }
        out.weights.push_back( std::move( row ) );
    }
    return out;
}

experiment_report run_experiment( theory_source source, const semantics_config& config, std::uint32_t horizon,
                                  unsigned jobs, const std::vector< std::string >& theories )
{
    if ( theories.empty() )
        throw std::invalid_argument( "experiment needs at least one theory" );
    std::vector< std::string > names;
    std::vector< std::unique_ptr< compiled_domain > > domains;
    for ( const auto& name : theories )
    {
        auto spec = builtin_theory( name, source );
        names.push_back( spec.name );
        domains.push_back( std::make_unique< compiled_domain >( attach( ae_domain(), { spec } ) ) );
    }
    const auto states = catalog_states( *domains.front() );
    const auto labels = catalog_labels();
    const auto n = states.size();

    experiment_report report;
    report.source = source;
    report.config = config;
    report.horizon = horizon;
    report.jobs = jobs;
    report.rows.resize( n * n * names.size() );
    const auto start = std::chrono::steady_clock::now();
    parallel_for( report.rows.size(), jobs, [ & ]( std::size_t k ) {
        const auto th = k % names.size();
        const auto g = ( k / names.size() ) % n;
        const auto i = k / ( names.size() * n );
        auto r = plan_cell( *domains[ th ], states[ i ], states[ g ], horizon, config );
        auto& row = report.rows[ k ];
        row.init_label = labels[ i ];
        row.goal_label = labels[ g ];
        row.theory = names[ th ];
        row.sat = r.sat;
        if ( r.witness )
            row.plan = plan_text( *domains[ th ], *r.witness );
        row.witness = std::move( r.witness );
        row.wall_ms = r.wall_ms;
    } );
    report.total_ms = elapsed_ms( start );
    return report;
}

namespace
{

experiment_summary summarize( const std::vector< std::tuple< std::string, std::string, std::string, bool > >& rows )
{
    const auto labels = catalog_labels();
    experiment_summary out;
    out.runs = rows.size();
    for ( const auto& [ init, goal, theory, sat ] : rows )
    {
        auto it = std::find_if( out.theories.begin(), out.theories.end(),
                                [ & ]( const theory_summary& t ) { return t.theory == theory; } );
        if ( it == out.theories.end() )
        {
            theory_summary t;
            t.theory = theory;
            t.reached_from_others.assign( labels.size(), 0 );
            t.self_reachable.assign( labels.size(), false );
            out.theories.push_back( std::move( t ) );
            it = std::prev( out.theories.end() );
        }
        ( sat ? it->sat : it->unsat )++;
        const auto g = static_cast< std::size_t >( std::find( labels.begin(), labels.end(), goal ) - labels.begin() );
        if ( g == labels.size() || !sat )
            continue;
        if ( init == goal )
            it->self_reachable[ g ] = true;
        else
            it->reached_from_others[ g ]++;
    }
    return out;
}

} // namespace

experiment_summary experiment_report::summary() const
{
    std::vector< std::tuple< std::string, std::string, std::string, bool > > flat;
    for ( const auto& r : rows )
        flat.emplace_back( r.init_label, r.goal_label, r.theory, r.sat );
    return summarize( flat );
}

std::string experiment_report::csv() const
{
    std::ostringstream out;
    out << "init_label,goal_label,theory,orientation,firing,horizon,status,plan,wall_ms\n";
    char ms[ 32 ];
    for ( const auto& r : rows )
    {
        std::snprintf( ms, sizeof ms, "%.3f", r.wall_ms );
        out << r.init_label << ',' << r.goal_label << ',' << r.theory << ',' << to_string( config.orientation ) << ','
            << to_string( config.firing ) << ',' << horizon << ',' << ( r.sat ? "SAT" : "UNSAT" ) << ',' << r.plan
            << ',' << ms << '\n';
    }
    return out.str();
}

experiment_summary summary_from_csv( const std::string& csv )
{
    std::istringstream in{ csv };
    std::string line;
    if ( !std::getline( in, line ) )
        throw std::invalid_argument( "empty experiment CSV" );
    const auto header = split( line, ',' );
    auto column = [ & ]( std::string_view name ) {
        const auto it = std::find( header.begin(), header.end(), name );
        if ( it == header.end() )
            throw std::invalid_argument( "experiment CSV lacks column '" + std::string{ name } + "'" );
        return static_cast< std::size_t >( it - header.begin() );
    };
    const auto ci = column( "init_label" ), cg = column( "goal_label" ), ct = column( "theory" ),
               cs = column( "status" );
    std::vector< std::tuple< std::string, std::string, std::string, bool > > flat;
    while ( std::getline( in, line ) )
    {
        if ( line.empty() )
            continue;
        const auto f = split( line, ',' );
        if ( f.size() != header.size() )
            throw std::invalid_argument( "malformed experiment CSV row: " + line );
        flat.emplace_back( f[ ci ], f[ cg ], f[ ct ], f[ cs ] == "SAT" );
    }
    return summarize( flat );
}

nlohmann::ordered_json experiment_report::summary_json() const
{
    const auto s = summary();
    const auto labels = catalog_labels();
    nlohmann::ordered_json j;
    j[ "schema_version" ] = experiment_schema_version;
    j[ "config" ] = config_json( source, config, horizon );
    j[ "runs" ] = s.runs;
    j[ "jobs" ] = jobs;
    auto theories = nlohmann::ordered_json::array();
    for ( const auto& t : s.theories )
    {
        nlohmann::ordered_json tj;
        tj[ "theory" ] = t.theory;
        tj[ "sat" ] = t.sat;
        tj[ "unsat" ] = t.unsat;
        nlohmann::ordered_json goals = nlohmann::ordered_json::object();
        for ( std::size_t g = 0; g < labels.size(); ++g )
        {
            nlohmann::ordered_json gj;
            gj[ "reached_from_others" ] = t.reached_from_others[ g ];
            gj[ "self_reachable" ] = static_cast< bool >( t.self_reachable[ g ] );
            gj[ "reached_including_self" ] = t.reached_from_others[ g ] + ( t.self_reachable[ g ] ? 1 : 0 );
            goals[ labels[ g ] ] = gj;
        }
        tj[ "goals" ] = goals;
        theories.push_back( tj );
    }
    j[ "theories" ] = theories;
    double max_ms = 0.0, sum_ms = 0.0;
    for ( const auto& r : rows )
    {
        max_ms = std::max( max_ms, r.wall_ms );
        sum_ms += r.wall_ms;
    }
    j[ "wall_ms" ] = { { "total", total_ms },
                       { "mean_per_run", rows.empty() ? 0.0 : sum_ms / static_cast< double >( rows.size() ) },
                       { "max_per_run", max_ms } };
    return j;
}

std::vector< trajectory > experiment_report::witnesses( std::string_view theory ) const
{
    std::vector< trajectory > out;
    for ( const auto& r : rows )
        if ( r.theory == theory && r.witness )
            out.push_back( *r.witness );
    return out;
}

std::string discrepancy_config::name() const
{
    return std::string{ to_string( source ) } + "/" + to_string( config.orientation ) + "/" +
           to_string( config.firing );
}

std::vector< discrepancy_config > discrepancy_configs()
{
    std::vector< discrepancy_config > out;
    for ( auto src : { theory_source::listing, theory_source::definition } )
        for ( auto o : { orientation::as_written, orientation::reversed } )
            for ( auto f : { firing::holding, firing::onset } )
                out.push_back( { src, { o, f, action_policy::singleton_or_empty } } );
    return out;
}

const std::vector< published_row >& published_rows()
{
    static const std::vector< published_row > rows = {
        { "3", "HER", "Joy", "Anger", "hheu", "hloh", false },
        { "3", "HER", "Fear", "Hope", "ulel", "uhel", true },
        { "3", "HER", "Frustration", "Joy", "hleh", "hheu", true },
        { "3", "HER", "Distress", "Relief", "llel", "uheu", true },
        { "3", "HER", "Joy", "Dislike", "hheu", "ulol", false },
        { "3", "HER", "Anger", "Frustration", "hloh", "hleh", false },
        { "3", "HER", "Anger", "Liking", "hloh", "uhou", true },
        { "3", "HER", "Fear", "Regret", "ulel", "ulsl", false },
        { "3", "HER", "Joy", "Disgust", "hheu", "lleh", false },
        { "3", "HER", "Hope", "Fear", "uhel", "ulel", false },
        { "3", "HER", "Hope", "Pride", "uhel", "uhsu", true },
        { "3", "HER", "Sadness", "Shame", "hlel", "llsh", false },
        { "3", "HER", "Regret", "Sadness", "ulsl", "hlel", false },
        { "3", "HER", "Hope", "Distress", "uhel", "llel", false },
        { "3", "HER", "Fear", "Surprise", "ulel", "uueu", false },
        { "3", "HER", "Anger", "Guilt", "hloh", "hhsh", true },
        { "4", "UER", "Joy", "Anger", "hheu", "hloh", false },
        { "4", "UER", "Fear", "Hope", "ulel", "uhel", false },
        { "4", "UER", "Frustration", "Joy", "hleh", "hheu", false },
        { "4", "UER", "Distress", "Relief", "llel", "uheu", false },
        { "4", "UER", "Joy", "Dislike", "hheu", "ulol", false },
        { "4", "UER", "Anger", "Frustration", "hloh", "hleh", true },
        { "4", "UER", "Anger", "Liking", "hloh", "uhou", false },
        { "4", "UER", "Fear", "Regret", "ulel", "ulsl", true },
        { "4", "UER", "Joy", "Disgust", "hheu", "lleh", false },
        { "4", "UER", "Hope", "Fear", "uhel", "ulel", false },
        { "4", "UER", "Hope", "Pride", "uhel", "uhsu", false },
        { "4", "UER", "Sadness", "Shame", "hlel", "llsh", false },
        { "4", "UER", "Regret", "Sadness", "ulsl", "hlel", false },
        { "4", "UER", "Hope", "Distress", "uhel", "llel", false },
        { "4", "UER", "Fear", "Surprise", "ulel", "uueu", false },
        { "4", "UER", "Anger", "Guilt", "hloh", "hhsh", false },
        { "5", "UER", "Dislike", "Anger", "ulol", "hloh", true },
        { "5", "UER", "Dislike", "Anger", "ulol", "hloh", true },
        { "5", "UER", "Shame", "Hope", "llsh", "uhel", false },
        { "5", "UER", "Relief", "Joy", "hheu", "hheu", true },
        { "5", "UER", "Distress", "Relief", "llel", "uheu", false },
        { "5", "UER", "Joy", "Dislike", "hheu", "ulol", false },
        { "5", "UER", "Distress", "Frustration", "llel", "hleh", true },
        { "5", "UER", "Regret", "Liking", "ulsl", "uhou", false },
        { "5", "UER", "Dislike", "Regret", "ulol", "ulsl", true },
        { "5", "UER", "Distress", "Disgust", "llel", "lleh", true },
        { "5", "UER", "Surprise", "Fear", "uueu", "ulel", false },
        { "5", "UER", "Liking", "Pride", "uhou", "uhsu", true },
        { "5", "UER", "Disgust", "Shame", "lleh", "llsh", true },
        { "5", "UER", "Frustration", "Sadness", "hleh", "hlel", false },
        { "5", "UER", "Hope", "Distress", "uhel", "llel", false },
        { "5", "UER", "Fear", "Surprise", "ulel", "uleu", false },
        { "5", "UER", "Joy", "Guilt", "hheu", "hhsh", true },
    };
    return rows;
}

const compiled_domain& dialogue_domain()
{
    static const compiled_domain domain = [] {
        auto parsed = parse_domain( fixture_text( "dialogue.cmt" ), "dialogue.cmt" );
        if ( !parsed.ok() )
            throw validation_failure( std::move( parsed.diagnostics ) );
        return compiled_domain{ std::move( *parsed.value ) };
    }();
    return domain;
}

trajectory dialogue_trajectory()
{
    const auto& domain = dialogue_domain();
    auto obs = parse_observations( fixture_text( "dialogue.cmto" ), "dialogue.cmto", &domain.description() );
    if ( !obs.ok() )
        throw validation_failure( std::move( obs.diagnostics ) );
    std::optional< trajectory > model;
    std::size_t count = 0;
    trajectory_models( domain, *obs.value, 6, {}, [ & ]( const trajectory& t ) {
        if ( !model )
            model = t;
        return ++count < 2;
    } );
    if ( count != 1 )
        throw std::logic_error( "dialogue fixture has " + std::to_string( count ) + " models" );
    return *model;
}

namespace
{

std::string verdict_string( const transition_checker& checker, const trajectory& t )
{
    std::string out;
    for ( std::size_t i = 0; i + 1 < t.states.size(); ++i )
        out += checker.judge( t.states[ i ], t.states[ i + 1 ] ).pass ? 'P' : 'V';
    return out;
}

std::string published_string( const std::array< bool, 6 >& verdicts )
{
    std::string out;
    for ( bool pass : verdicts )
        out += pass ? 'P' : 'V';
    return out;
}

} // namespace

std::vector< std::string > discrepancy_report::dialogue_matching_configs() const
{
    std::vector< std::string > out;
    for ( std::size_t c = 0; c < configs.size(); ++c )
        if ( dialogue_match[ c ] )
            out.push_back( configs[ c ].name() );
    return out;
}

bool discrepancy_report::dialogue_unique_listing_holding() const
{
    const auto m = dialogue_matching_configs();
    return m.size() == 1 && m.front() == "listing/as-written/holding";
}

discrepancy_report make_discrepancy_report( unsigned jobs )
{
    discrepancy_report report;
    report.configs = discrepancy_configs();
    const auto nc = report.configs.size();

    const auto dialogue = dialogue_trajectory();
    const auto her_expected = published_string( published_dialogue_her );
    const auto uer_expected = published_string( published_dialogue_uer );
    for ( const auto& c : report.configs )
    {
        const transition_checker her{ { builtin_theory( "HER", c.source ) }, c.config,
                                      dialogue_domain().description() };
        const transition_checker uer{ { builtin_theory( "UER", c.source ) }, c.config,
                                      dialogue_domain().description() };
        report.dialogue_her.push_back( verdict_string( her, dialogue ) );
        report.dialogue_uer.push_back( verdict_string( uer, dialogue ) );
        report.dialogue_match.push_back( report.dialogue_her.back() == her_expected &&
                                         report.dialogue_uer.back() == uer_expected );
    }

    // One compiled AE domain per (config, theory).
    std::vector< std::unique_ptr< compiled_domain > > domains;
    for ( const auto& c : report.configs )
        for ( auto name : { "HER", "UER" } )
            domains.push_back(
                std::make_unique< compiled_domain >( attach( ae_domain(), { builtin_theory( name, c.source ) } ) ) );

    const auto& published = published_rows();
    for ( const auto& row : published )
        report.rows.push_back( { row, std::vector< bool >( nc, false ) } );
    std::vector< char > sat( published.size() * nc, 0 );
    parallel_for( sat.size(), jobs, [ & ]( std::size_t k ) {
        const auto r = k / nc;
        const auto c = k % nc;
        const auto& row = published[ r ];
        const auto& domain = *domains[ c * 2 + ( row.theory == "HER" ? 0 : 1 ) ];
        const auto init = state_of_tuple( domain, row.init_tuple );
        const auto goal = state_of_tuple( domain, row.goal_tuple );
        if ( !init || !goal )
            throw std::logic_error( "bad tuple in published row" );
        sat[ k ] = plan_cell( domain, *init, *goal, report.horizon, report.configs[ c ].config ).sat;
    } );
    report.rows_matched.assign( nc, 0 );
    for ( std::size_t r = 0; r < published.size(); ++r )
        for ( std::size_t c = 0; c < nc; ++c )
        {
            report.rows[ r ].sat[ c ] = sat[ r * nc + c ];
            report.rows_matched[ c ] += report.rows[ r ].sat[ c ] == published[ r ].sat;
        }

    auto find_row = [ & ]( std::string_view table, std::string_view init, std::string_view goal ) {
        for ( const auto& r : report.rows )
            if ( r.row.table == table && r.row.init_label == init && r.row.goal_label == goal )
                return &r;
        throw std::logic_error( "missing published row" );
    };
    // A published verdict that only configurations of one firing mode reproduce.
    auto matched_only_by = [ & ]( const discrepancy_row& r, firing mode, std::string& matched ) {
        bool any = false, other = false;
        for ( std::size_t c = 0; c < nc; ++c )
            if ( r.sat[ c ] == r.row.sat )
            {
                matched += ( matched.empty() ? "" : ", " ) + report.configs[ c ].name();
                ( report.configs[ c ].config.firing == mode ? any : other ) = true;
            }
        if ( matched.empty() )
            matched = "none";
        return any && !other;
    };
    {
        const auto* r = find_row( "3", "Anger", "Liking" );
        std::string matched;
        conflict_check cc;
        cc.name = "Anger-Liking vs firing";
        cc.detected = matched_only_by( *r, firing::onset, matched );
        cc.description = "The published HER Anger-Liking row is SAT; configurations reproducing it: " + matched +
                         ". Under holding firing Anger has no admissible successor.";
        report.conflicts.push_back( std::move( cc ) );
    }
    {
        const auto* r = find_row( "3", "Fear", "Regret" );
        std::string matched;
        conflict_check cc;
        cc.name = "Fear-Regret HER vs firing";
        cc.detected = matched_only_by( *r, firing::holding, matched );
        cc.description = "The published HER Fear-Regret row is UNSAT; configurations reproducing it: " + matched +
                         ". Under onset firing the single ac change to self is admissible.";
        report.conflicts.push_back( std::move( cc ) );
    }
    {
        const auto m = reachability( { builtin_theory( "HER", theory_source::listing ) },
                                     { orientation::as_written, firing::onset, action_policy::singleton_or_empty },
                                     report.horizon, jobs );
        const auto anger = m.index_of( "Anger" );
        const auto n = m.reached_from_others( anger );
        std::string from;
        for ( std::size_t i = 0; i < m.labels.size(); ++i )
            if ( i != anger && m.cells[ i ][ anger ].sat )
                from += ( from.empty() ? "" : ", " ) + m.labels[ i ];
        conflict_check cc;
        cc.name = "HER Anger reachability vs onset";
        cc.detected = n > 0;
        cc.description = "The reachability prose says Anger is not reachable at all under HER; under "
                         "listing/as-written/onset it is reached from " +
                         std::to_string( n ) + " other initial state(s)" + ( from.empty() ? "" : " (" + from + ")" ) +
                         ".";
        report.conflicts.push_back( std::move( cc ) );
    }

    report.notes.push_back( "The published Relief-Joy row is labelled Relief but its initial tuple is (h,h,e,u), the Joy tuple; "
                            "the tuple is used." );
    report.notes.push_back( "The published Fear-Surprise goal is (u,l,e,u), not the catalog Surprise tuple (u,u,e,u); "
                            "the tuple is used." );
    report.notes.push_back( "Dislike-Anger is published twice; both rows are kept." );
    report.notes.push_back( "Rule numbers cited with the dialogue verdicts are not reproduced; only pass/violate is "
                            "compared." );
    return report;
}

std::string discrepancy_report::text() const
{
    std::ostringstream out;
    out << "discrepancy report (horizon " << horizon << ", policy singleton-or-empty)\n\n";
    out << "dialogue verdicts, published HER " << published_string( published_dialogue_her ) << " UER "
        << published_string( published_dialogue_uer ) << "\n";
    for ( std::size_t c = 0; c < configs.size(); ++c )
        out << "  " << configs[ c ].name() << ": HER " << dialogue_her[ c ] << " UER " << dialogue_uer[ c ]
            << ( dialogue_match[ c ] ? "  match" : "" ) << "\n";
    const auto matching = dialogue_matching_configs();
    out << "  matching configurations: " << matching.size() << "\n";
    out << "  listing/as-written/holding is the unique match: " << ( dialogue_unique_listing_holding() ? "yes" : "no" )
        << "\n\n";

    out << "published planning rows (S = SAT, U = UNSAT, * = differs from the published verdict)\n";
    out << "  configs:";
    for ( std::size_t c = 0; c < configs.size(); ++c )
        out << " [" << c << "] " << configs[ c ].name();
    out << "\n";
    for ( const auto& r : rows )
    {
        out << "  T" << r.row.table << " " << r.row.theory << " " << r.row.init_label << "-" << r.row.goal_label
            << " published " << ( r.row.sat ? "S" : "U" ) << " |";
        for ( std::size_t c = 0; c < configs.size(); ++c )
            out << " " << ( r.sat[ c ] ? "S" : "U" ) << ( r.sat[ c ] != r.row.sat ? "*" : " " );
        out << "\n";
    }
    out << "  rows matched per config:";
    for ( std::size_t c = 0; c < configs.size(); ++c )
        out << " [" << c << "] " << rows_matched[ c ] << "/" << rows.size();
    out << "\n\nconflicts\n";
    for ( const auto& cc : conflicts )
        out << "  " << cc.name << ": " << ( cc.detected ? "DETECTED" : "not detected" ) << "\n    " << cc.description
            << "\n";
    out << "\nnotes\n";
    for ( const auto& n : notes )
        out << "  " << n << "\n";
    return out.str();
}

nlohmann::ordered_json discrepancy_report::json() const
{
    nlohmann::ordered_json j;
    j[ "schema_version" ] = 1;
    j[ "horizon" ] = horizon;
    j[ "policy" ] = to_string( action_policy::singleton_or_empty );
    auto cfgs = nlohmann::ordered_json::array();
    for ( std::size_t c = 0; c < configs.size(); ++c )
    {
        auto cj = config_json( configs[ c ].source, configs[ c ].config, horizon );
        cj[ "name" ] = configs[ c ].name();
        cj[ "dialogue_her" ] = dialogue_her[ c ];
        cj[ "dialogue_uer" ] = dialogue_uer[ c ];
        cj[ "dialogue_match" ] = static_cast< bool >( dialogue_match[ c ] );
        cj[ "rows_matched" ] = rows_matched[ c ];
        cfgs.push_back( cj );
    }
    j[ "configs" ] = cfgs;
    j[ "dialogue_published" ] = { { "her", published_string( published_dialogue_her ) },
                                  { "uer", published_string( published_dialogue_uer ) } };
    j[ "dialogue_matching_configs" ] = dialogue_matching_configs();
    j[ "dialogue_unique_listing_holding" ] = dialogue_unique_listing_holding();
    auto rj = nlohmann::ordered_json::array();
    for ( const auto& r : rows )
    {
        nlohmann::ordered_json x;
        x[ "table" ] = r.row.table;
        x[ "theory" ] = r.row.theory;
        x[ "init" ] = r.row.init_label;
        x[ "goal" ] = r.row.goal_label;
        x[ "init_tuple" ] = r.row.init_tuple;
        x[ "goal_tuple" ] = r.row.goal_tuple;
        x[ "published" ] = r.row.sat ? "SAT" : "UNSAT";
        auto obs = nlohmann::ordered_json::array();
        for ( bool s : r.sat )
            obs.push_back( s ? "SAT" : "UNSAT" );
        x[ "observed" ] = obs;
        rj.push_back( x );
    }
    j[ "rows" ] = rj;
    auto cj = nlohmann::ordered_json::array();
    for ( const auto& cc : conflicts )
        cj.push_back( { { "name", cc.name }, { "detected", cc.detected }, { "description", cc.description } } );
    j[ "conflicts" ] = cj;
    j[ "notes" ] = notes;
    return j;
}

} // namespace cmt
