#include "cmt/dsl.hpp"
#include "cmt/theories.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cmt;

namespace
{

std::string data_path( const std::string& name )
{
    return std::string{ CMT_TEST_DATA_DIR } + "/" + name;
}

} // namespace

TEST( ParseDomain, OrderedClass )
{
    auto r = parse_domain( "class ne ordered { low, undecided, high }" );
    ASSERT_TRUE( r.ok() );
    ASSERT_EQ( r.value->classes.size(), 1u );
    const auto& c = r.value->classes[ 0 ];
    EXPECT_EQ( c.name, "ne" );
    EXPECT_TRUE( c.ordered );
    EXPECT_EQ( c.values, ( std::vector< std::string >{ "low", "undecided", "high" } ) );
}

TEST( ParseDomain, ForbidsToCause )
{
    auto r = parse_domain( "class ne ordered { low, undecided, high }\nclass go ordered { low, undecided, high }\n"
                           "law f(ne,high) forbids_to_cause f(go,low);" );
    ASSERT_TRUE( r.ok() );
    ASSERT_EQ( r.value->laws.size(), 1u );
    const auto* f = std::get_if< law::forbids_to_cause >( &r.value->laws[ 0 ].body );
    ASSERT_NE( f, nullptr );
    EXPECT_EQ( f->left, literal_list{ literal::mental( "ne", "high" ) } );
    EXPECT_EQ( f->right, literal_list{ literal::mental( "go", "low" ) } );
    EXPECT_EQ( f->id, 1 );
}

TEST( ParseDomain, DynamicInfluence )
{
    auto r = parse_domain( "class go ordered { low, undecided, high }\naction human commitment;\n"
                           "law commitment influences f(go,high) if f(go,low);" );
    ASSERT_TRUE( r.ok() );
    const auto* l = std::get_if< law::influences_dynamic >( &r.value->laws[ 0 ].body );
    ASSERT_NE( l, nullptr );
    EXPECT_EQ( l->action, "commitment" );
    EXPECT_EQ( l->effects, literal_list{ literal::mental( "go", "high" ) } );
    EXPECT_EQ( l->conditions, literal_list{ literal::mental( "go", "low" ) } );
}

TEST( ParseDomain, EveryTemplateParses )
{
    auto r = parse_domain( read_file( data_path( "templates.cmt" ) ), "templates.cmt" );
    ASSERT_TRUE( r.ok() );
    std::set< std::size_t > kinds;
    for ( const auto& l : r.value->laws )
        kinds.insert( l.body.index() );
    EXPECT_EQ( kinds.size(), 12u );
}

TEST( ParseDomain, ErrorHasSpanAndExpectedTokens )
{
    auto r = parse_domain( "class ne ordered { low, high\nlaw x;", "bad.cmt" );
    ASSERT_FALSE( r.ok() );
    ASSERT_FALSE( r.diagnostics.empty() );
    const auto& d = r.diagnostics.front();
    EXPECT_EQ( d.kind, diagnostic_kind::parse_error );
    EXPECT_EQ( d.span.file, "bad.cmt" );
    EXPECT_GE( d.span.line, 1u );
    EXPECT_FALSE( d.expected.empty() );
}

TEST( ParseDomain, UppercaseIdentifierIsLexError )
{
    auto r = parse_domain( "class Ne { a }" );
    EXPECT_FALSE( r.ok() );
}

TEST( ParseObservations, FluentAt )
{
    auto r = parse_observations( "observe f(ne,high) at 0;" );
    ASSERT_TRUE( r.ok() );
    ASSERT_EQ( r.value->size(), 1u );
    EXPECT_EQ( ( *r.value )[ 0 ], observation::at( literal::mental( "ne", "high" ), 0 ) );
}

TEST( ParseObservations, OccursAt )
{
    auto r = parse_observations( "observe commitment occurs_at 0;" );
    ASSERT_TRUE( r.ok() );
    ASSERT_EQ( r.value->size(), 1u );
    EXPECT_EQ( ( *r.value )[ 0 ], observation::occurs( "commitment", 0 ) );
}

TEST( ParseObservations, EmptyFile )
{
    auto r = parse_observations( "" );
    ASSERT_TRUE( r.ok() );
    EXPECT_TRUE( r.value->empty() );
}

TEST( ParseObservations, ValidatedAgainstDomain )
{
    auto r = parse_observations( "observe f(ne, purple) at 0;", "", &ae_domain() );
    EXPECT_FALSE( r.ok() );
    auto ok = parse_observations( "observe set_ne_low occurs_at 1;", "", &ae_domain() );
    EXPECT_TRUE( ok.ok() );
}

TEST( ParseQuery, GoalOnly )
{
    auto r = parse_query( "query goal f(go,high) horizon 6;" );
    ASSERT_TRUE( r.ok() );
    EXPECT_EQ( r.value->goal, literal_list{ literal::mental( "go", "high" ) } );
    EXPECT_TRUE( r.value->schedule.empty() );
    EXPECT_EQ( r.value->horizon, 6u );
}

TEST( ParseQuery, Scheduled )
{
    auto r = parse_query( "query goal f(go,high) with {praise} occurs_at 2 horizon 6;" );
    ASSERT_TRUE( r.ok() );
    ASSERT_EQ( r.value->schedule.size(), 1u );
    EXPECT_EQ( r.value->schedule[ 0 ].actions, std::vector< std::string >{ "praise" } );
    EXPECT_EQ( r.value->schedule[ 0 ].time, 2u );
}

TEST( ParseQuery, ScheduleBeyondHorizonRejected )
{
    auto r = parse_query( "query goal f(go,high) with {praise} occurs_at 0 horizon 0;" );
    EXPECT_FALSE( r.ok() );
    ASSERT_FALSE( r.diagnostics.empty() );
    EXPECT_EQ( r.diagnostics.front().kind, diagnostic_kind::parse_error );
}

TEST( Print, EmptyDomainHasEmptyBody )
{
    const auto text = print_domain( domain_description{} );
    auto r = parse_domain( text );
    ASSERT_TRUE( r.ok() );
    EXPECT_EQ( *r.value, domain_description{} );
    EXPECT_EQ( text.find( "law" ), std::string::npos );
}

TEST( Print, CommentsAreDropped )
{
    const std::string text = "# a comment\nclass c { a } # trailing\n";
    auto r = parse_domain( text );
    ASSERT_TRUE( r.ok() );
    EXPECT_EQ( print_domain( *r.value ).find( '#' ), std::string::npos );
}

class FixtureRoundTrip : public ::testing::TestWithParam< std::string >
{
};

TEST_P( FixtureRoundTrip, Fixpoint )
{
    const auto name = GetParam();
    const auto text = std::string{ fixture_text( name ) };
    if ( name.ends_with( ".cmto" ) )
    {
        auto first = parse_observations( text, name );
        ASSERT_TRUE( first.ok() );
        const auto printed = print_observations( *first.value );
        auto second = parse_observations( printed );
        ASSERT_TRUE( second.ok() );
        EXPECT_EQ( *first.value, *second.value );
        EXPECT_EQ( printed, print_observations( *second.value ) );
        return;
    }
    auto first = parse_domain( text, name );
    if ( !first.ok() )
    {
        // Theory fragments have no declarations of their own.
        auto rules = parse_theory_rules( text, "T", name );
        ASSERT_TRUE( rules.ok() ) << name;
        std::string printed;
        for ( const auto& r : *rules.value )
            printed += print_law( causal_law{ r, {} } ) + "\n";
        auto again = parse_theory_rules( printed, "T" );
        ASSERT_TRUE( again.ok() ) << printed;
        EXPECT_EQ( *rules.value, *again.value );
        return;
    }
    const auto printed = print_domain( *first.value );
    auto second = parse_domain( printed );
    ASSERT_TRUE( second.ok() ) << printed;
    EXPECT_EQ( *first.value, *second.value );
    EXPECT_EQ( printed, print_domain( *second.value ) );
}

INSTANTIATE_TEST_SUITE_P( Shipped, FixtureRoundTrip,
                          ::testing::Values( "ae.cmt", "her_listing.cmt", "uer_listing.cmt", "her_definition.cmt",
                                             "uer_definition.cmt", "dialogue.cmt", "dialogue.cmto" ),
                          []( const auto& info ) {
                              std::string n = info.param;
                              for ( auto& c : n )
                                  if ( c == '.' )
                                      c = '_';
                              return n;
                          } );

TEST( RoundTrip, TemplatesAndQuery )
{
    auto d = parse_domain( read_file( data_path( "templates.cmt" ) ) );
    ASSERT_TRUE( d.ok() );
    auto again = parse_domain( print_domain( *d.value ) );
    ASSERT_TRUE( again.ok() );
    EXPECT_EQ( *d.value, *again.value );

    auto q = parse_query( "query goal f(go,high), neg door with {a, b} occurs_at 1, {c} occurs_at 3 horizon 6;" );
    ASSERT_TRUE( q.ok() );
    auto q2 = parse_query( print_query( *q.value ) );
    ASSERT_TRUE( q2.ok() ) << print_query( *q.value );
    EXPECT_EQ( *q.value, *q2.value );
}

TEST( RoundTrip, ParsedThenReprintedIsStable )
{
    const std::vector< std::string > texts = {
        "fluent a, b;\nclass k ordered { x, y }\naction env p;\nlaw p causes a, neg b if f(k, x);\n",
        "class k { x }\naction human h;\nlaw f(k, x) facilitates h;\nlaw f(k, x) contravenes h;\n",
        "class k ordered { x, y, z }\nlaw { f(k, x) } forbids_to_cause { f(k, y), f(k, z) };\n",
        "class k ordered { x, y, z }\nlaw f(k, >= y) forbids_to_cause f(k, x);\n",
        "fluent a;\ndefault neg a;\naction env p, q;\nnoconcurrency p, q;\nlaw a inhibits p;\n",
    };
    for ( const auto& t : texts )
    {
        auto r = parse_domain( t );
        ASSERT_TRUE( r.ok() ) << t << ( r.diagnostics.empty() ? "" : r.diagnostics.front().format() );
        const auto p = print_domain( *r.value );
        auto r2 = parse_domain( p );
        ASSERT_TRUE( r2.ok() ) << p;
        EXPECT_EQ( *r.value, *r2.value );
        EXPECT_EQ( p, print_domain( *r2.value ) );
    }
}

TEST( Fixtures, EmbeddedCopiesMatchFiles )
{
    for ( auto name : fixture_names() )
    {
        const auto disk = read_file( std::string{ CMT_FIXTURE_DIR } + "/" + std::string{ name } );
        EXPECT_EQ( disk, fixture_text( name ) ) << name;
    }
}

TEST( Fuzz, RandomBytesNeverCrash )
{
    std::mt19937_64 rng{ 20240611 };
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz_0123456789(){},;#!=<>.- \n\tfclassawobrdeyhigtu";
    std::size_t accepted = 0;
    for ( int i = 0; i < 10000; ++i )
    {
        std::string input;
        const auto len = rng() % 96;
        const bool bytes = i % 2 == 0;
        for ( std::size_t k = 0; k < len; ++k )
            input += bytes ? static_cast< char >( rng() & 0xff ) : alphabet[ rng() % alphabet.size() ];
        auto d = parse_domain( input );
        if ( d.ok() )
        {
            ++accepted;
            auto again = parse_domain( print_domain( *d.value ) );
            ASSERT_TRUE( again.ok() );
            EXPECT_EQ( *d.value, *again.value );
        }
        else
        {
            ASSERT_FALSE( d.diagnostics.empty() );
            for ( const auto& diag : d.diagnostics )
                EXPECT_LE( diag.span.line, static_cast< std::uint32_t >( std::count( input.begin(), input.end(), '\n' ) + 1 ) );
        }
        (void)parse_observations( input );
        (void)parse_query( input );
        (void)parse_theory_rules( input, "T" );
    }
    EXPECT_GT( accepted, 0u );
}

TEST( Fuzz, MutatedFixturesNeverCrash )
{
    std::mt19937_64 rng{ 5 };
    const std::string base{ fixture_text( "dialogue.cmt" ) };
    for ( int i = 0; i < 2000; ++i )
    {
        auto text = base;
        for ( int k = 0; k < 3; ++k )
        {
            const auto pos = rng() % text.size();
            switch ( rng() % 3 )
            {
            case 0: text.erase( pos, 1 ); break;
            case 1: text.insert( pos, 1, static_cast< char >( rng() % 128 ) ); break;
            default: text[ pos ] = static_cast< char >( rng() % 128 ); break;
            }
        }
        auto d = parse_domain( text );
        if ( d.ok() )
        {
            auto again = parse_domain( print_domain( *d.value ) );
            ASSERT_TRUE( again.ok() );
            EXPECT_EQ( *d.value, *again.value );
        }
    }
}
