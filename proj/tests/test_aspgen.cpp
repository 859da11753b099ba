#include "cmt/aspgen.hpp"
#include "cmt/dsl.hpp"
#include "cmt/theories.hpp"

#include <gtest/gtest.h>

#include <regex>
#include <set>

using namespace cmt;

namespace
{

const semantics_config listing_holding{ orientation::as_written, firing::holding, action_policy::singleton_or_empty };

std::string data( const std::string& name )
{
    return read_file( std::string{ CMT_TEST_DATA_DIR } + "/" + name );
}

std::string squeeze( std::string text )
{
    std::string out;
    for ( char c : text )
        if ( !std::isspace( static_cast< unsigned char >( c ) ) )
            out += c;
    return out;
}

// Whitespace-free statements with the long class names shortened.
std::vector< std::string > normalize_listing( const std::string& text )
{
    auto flat = squeeze( text );
    for ( const auto& [ from, to ] : std::vector< std::pair< std::string, std::string > >{
              { "need_consistency", "ne" },
              { "goal_consistency", "go" },
              { "accountability", "ac" },
              { "control_potential", "co" } } )
        for ( auto pos = flat.find( from ); pos != std::string::npos; pos = flat.find( from, pos + to.size() ) )
            flat.replace( pos, from.size(), to );
    std::vector< std::string > out;
    for ( std::size_t pos = flat.find( ":-" ); pos != std::string::npos; )
    {
        const auto next = flat.find( ":-", pos + 2 );
        out.push_back( flat.substr( pos, next == std::string::npos ? std::string::npos : next - pos ) );
        pos = next;
    }
    return out;
}

std::vector< std::string > squeezed( const std::vector< std::string >& lines )
{
    std::vector< std::string > out;
    for ( const auto& l : lines )
        out.push_back( squeeze( l ) );
    return out;
}

compiled_domain ae_with( std::string_view theory )
{
    return compiled_domain{ attach( ae_domain(), { builtin_theory( theory, theory_source::listing ) } ) };
}

compiled_domain templates()
{
    auto r = parse_domain( data( "templates.cmt" ), "templates.cmt" );
    EXPECT_TRUE( r.ok() );
    return compiled_domain{ *r.value };
}

std::vector< observation > template_observations( const compiled_domain& d )
{
    auto r = parse_observations( data( "templates.cmto" ), "templates.cmto", &d.description() );
    EXPECT_TRUE( r.ok() );
    return r.value.value_or( std::vector< observation >{} );
}

bool contains_line( const emitted_program& p, const std::string& section, const std::string& line )
{
    const auto* s = p.find( section );
    if ( !s )
        return false;
    return std::find( s->lines.begin(), s->lines.end(), line ) != s->lines.end();
}

} // namespace

TEST( Emit, SectionOrderIsFixed )
{
    const auto p = emit_program( ae_with( "HER" ), {}, std::nullopt, 6, listing_holding );
    ASSERT_EQ( p.sections.size(), section_names().size() );
    for ( std::size_t i = 0; i < p.sections.size(); ++i )
        EXPECT_EQ( p.sections[ i ].name, section_names()[ i ] );
    EXPECT_NE( p.text().find( "#const t_max = 6." ), std::string::npos );
}

TEST( Emit, SingleEnvFluentMinimalProgram )
{
    auto r = parse_domain( "fluent door;\n" );
    ASSERT_TRUE( r.ok() );
    const compiled_domain d{ *r.value };
    const auto p = emit_program( d, {}, std::nullopt, 1, listing_holding );
    const auto* frame = p.find( "frame axioms" );
    ASSERT_NE( frame, nullptr );
    const std::vector< std::string > expected = {
        ":- holds(door,T), holds(neg(door),T), fluent(door), time(T).",
        "holds(door,T+1) :- holds(door,T), not holds(neg(door),T+1), not default(door), fluent(door), time(T), time(T+1).",
        "holds(neg(door),T+1) :- holds(neg(door),T), not holds(door,T+1), not default(neg(door)), fluent(door), time(T), time(T+1).",
        "holds(door,0) :- not holds(neg(door),0).",
        "holds(neg(door),0) :- not holds(door,0).",
    };
    EXPECT_EQ( frame->lines, expected );
    for ( const auto* name : { "dynamic laws", "static laws", "mental extension", "theory constraints", "observations", "goal" } )
    {
        const auto* s = p.find( name );
        ASSERT_NE( s, nullptr ) << name;
        EXPECT_TRUE( s->lines.empty() ) << name;
    }
}

TEST( Emit, HerConstraintsEqualListing )
{
    const auto lines = emit_theory_constraints( ae_with( "HER" ), listing_holding );
    EXPECT_EQ( squeezed( lines ), normalize_listing( data( "her_constraints.lp" ) ) );
    const auto p = emit_program( ae_with( "HER" ), {}, std::nullopt, 6, listing_holding );
    EXPECT_EQ( p.find( "theory constraints" )->lines, lines );
}

TEST( Emit, UerConstraintsEqualListing )
{
    const auto lines = emit_theory_constraints( ae_with( "UER" ), listing_holding );
    EXPECT_EQ( squeezed( lines ), normalize_listing( data( "uer_constraints.lp" ) ) );
}

TEST( Emit, ListingSizes )
{
    EXPECT_EQ( normalize_listing( data( "her_constraints.lp" ) ).size(), 13u );
    EXPECT_EQ( normalize_listing( data( "uer_constraints.lp" ) ).size(), 14u );
}

TEST( Emit, ForbiddingRuleTemplate )
{
    auto r = parse_domain( "class ne ordered { low, undecided, high }\nclass go ordered { low, undecided, high }\n"
                           "law f(ne,high) forbids_to_cause f(go,low);\n" );
    ASSERT_TRUE( r.ok() );
    const compiled_domain d{ *r.value };
    const auto lines = emit_theory_constraints( d, listing_holding );
    ASSERT_EQ( lines.size(), 1u );
    EXPECT_EQ( lines[ 0 ], ":- holds(mental_fluent(go,low),T+1), holds(mental_fluent(ne,high),T), time(T)." );
}

TEST( Emit, TemplatesGolden )
{
    const auto d = templates();
    const auto p = emit_program( d, template_observations( d ), literal_list{ literal::mental( "mood", "high" ) }, 2,
                                 listing_holding );
    EXPECT_EQ( p.text(), data( "templates.lp" ) );
}

TEST( Emit, TemplateInstances )
{
    const auto d = templates();
    const auto p = emit_program( d, template_observations( d ), literal_list{ literal::mental( "mood", "high" ) }, 2,
                                 listing_holding );
    EXPECT_TRUE( contains_line( p, "frame axioms", ":- holds(door,T), holds(neg(door),T), fluent(door), time(T)." ) );
    EXPECT_TRUE( contains_line( p, "frame axioms", "holds(door,0) :- not holds(neg(door),0)." ) );
    EXPECT_TRUE( contains_line( p, "dynamic laws",
                                "holds(door,T+1) :- holds(occurs(push),T), holds(neg(light),T), fluent(light), "
                                "fluent(door), action(push), time(T), time(T+1)." ) );
    EXPECT_TRUE( contains_line( p, "static laws", "holds(light,T) :- holds(door,T), fluent(door), fluent(light), time(T)." ) );
    EXPECT_TRUE( contains_line( p, "action rules",
                                "holds(occurs(pull),T) :- not holds(ab(occurs(pull)),T), holds(door,T), fluent(door), "
                                "action(pull), time(T), T < t_max." ) );
    EXPECT_TRUE( contains_line( p, "action rules",
                                ":- time(T), 2 { holds(occurs(push),T) : action(push); holds(occurs(pull),T) : action(pull) }." ) );
    EXPECT_TRUE( contains_line( p, "theory constraints",
                                ":- holds(mental_fluent(mood,high),T+1), holds(mental_fluent(mood,low),T), time(T)." ) );
    EXPECT_TRUE( contains_line( p, "goal", ":- not achieved." ) );
    EXPECT_TRUE( contains_line( p, "observations", ":- not holds(door,1)." ) );
}

TEST( Emit, Deterministic )
{
    const auto d = ae_with( "UER" );
    for ( auto f : { firing::holding, firing::onset } )
        for ( auto o : { orientation::as_written, orientation::reversed } )
        {
            const semantics_config c{ o, f, action_policy::singleton_or_empty };
            const auto a = emit_program( d, {}, literal_list{ literal::mental( "ne", "high" ) }, 6, c ).text();
            const auto b = emit_program( d, {}, literal_list{ literal::mental( "ne", "high" ) }, 6, c ).text();
            EXPECT_EQ( a, b );
        }
}

TEST( Emit, ConfigChangesConstraints )
{
    const auto d = ae_with( "HER" );
    const auto hold = emit_theory_constraints( d, listing_holding );
    const auto onset = emit_theory_constraints( d, { orientation::as_written, firing::onset, action_policy::singleton_or_empty } );
    const auto rev = emit_theory_constraints( d, { orientation::reversed, firing::holding, action_policy::singleton_or_empty } );
    EXPECT_NE( hold, onset );
    EXPECT_NE( hold, rev );
    EXPECT_EQ( hold.size(), onset.size() );
}

TEST( Emit, SelfContainedAtoms )
{
    const auto d = templates();
    const auto text = emit_program( d, template_observations( d ), literal_list{ literal::mental( "mood", "high" ) }, 2,
                                    listing_holding )
                          .text();
    std::set< std::string > fluents, actions, values;
    std::smatch m;
    for ( auto it = text.cbegin(); std::regex_search( it, text.cend(), m, std::regex{ R"(fluent_e\((\w+)\)\.)" } ); it = m.suffix().first )
        fluents.insert( m[ 1 ] );
    for ( auto it = text.cbegin(); std::regex_search( it, text.cend(), m, std::regex{ R"((?:action_e|human_action)\((\w+)\)\.)" } ); it = m.suffix().first )
        actions.insert( m[ 1 ] );
    for ( auto it = text.cbegin(); std::regex_search( it, text.cend(), m, std::regex{ R"(psych_value\((\w+),(\w+)\)\.)" } ); it = m.suffix().first )
        values.insert( std::string{ m[ 1 ] } + "," + std::string{ m[ 2 ] } );

    std::size_t checked = 0;
    auto each = [ & ]( const char* pattern, auto&& check ) {
        const std::regex re{ pattern };
        for ( auto it = text.cbegin(); std::regex_search( it, text.cend(), m, re ); it = m.suffix().first )
        {
            ++checked;
            check( m );
        }
    };
    each( R"(holds\((?:neg\()?([a-z]\w*)(?=[,)]))", [ & ]( const std::smatch& x ) {
        EXPECT_TRUE( fluents.count( x[ 1 ] ) ) << x[ 0 ];
    } );
    each( R"(occurs\(([a-z]\w*)\))", [ & ]( const std::smatch& x ) { EXPECT_TRUE( actions.count( x[ 1 ] ) ) << x[ 0 ]; } );
    each( R"(mental_fluent\(([a-z]\w*),([a-z]\w*)\))", [ & ]( const std::smatch& x ) {
        EXPECT_TRUE( values.count( std::string{ x[ 1 ] } + "," + std::string{ x[ 2 ] } ) ) << x[ 0 ];
    } );
    EXPECT_GT( checked, 20u );
}

TEST( Differential, EmptyTemplateSkips )
{
    const auto cases = random_battery( 1, 2 );
    const auto r = differential_check( cases, "" );
    EXPECT_EQ( r.skipped, cases.size() );
    EXPECT_EQ( r.disagree, 0u );
}

TEST( Differential, BatteryShape )
{
    const auto a = random_battery( 7, 25 );
    const auto b = random_battery( 7, 25 );
    ASSERT_EQ( a.size(), 50u );
    for ( std::size_t i = 0; i < a.size(); ++i )
    {
        EXPECT_EQ( a[ i ].name, b[ i ].name );
        EXPECT_EQ( a[ i ].domain, b[ i ].domain );
        EXPECT_EQ( a[ i ].domain.classes.size(), 2u );
        EXPECT_EQ( a[ i ].domain.actions.size(), 3u );
        EXPECT_LE( a[ i ].horizon, 4u );
        EXPECT_TRUE( validate_domain( a[ i ].domain ).ok() );
    }
}

TEST( Differential, AgreesWithSolver )
{
    const auto solver = detect_solver();
    if ( !solver )
        GTEST_SKIP() << "no ASP solver available";

    std::vector< differential_case > cases;
    differential_case empty;
    empty.name = "empty";
    empty.horizon = 1;
    cases.push_back( empty );

    differential_case unsat;
    unsat.name = "unsat_observation";
    unsat.domain = ae_domain();
    unsat.observations = { observation::at( literal::mental( "ne", "low" ), 0 ),
                           observation::at( literal::mental( "ne", "high" ), 0 ) };
    unsat.horizon = 1;
    cases.push_back( unsat );

    const auto battery = random_battery( 7, 25 );
    cases.insert( cases.end(), battery.begin(), battery.end() );

    const auto r = differential_check( cases, *solver );
    for ( const auto& row : r.rows )
        EXPECT_EQ( row.verdict, "AGREE" ) << row.case_name << " " << row.detail << "\n" << row.program;
    EXPECT_EQ( r.agree, cases.size() );
    EXPECT_FALSE( r.rows[ 1 ].native );
}
