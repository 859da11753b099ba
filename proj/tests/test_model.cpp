#include "cmt/dsl.hpp"
#include "cmt/state.hpp"
#include "cmt/theories.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace cmt;

namespace
{

domain_description parse_ok( std::string_view text )
{
    auto r = parse_domain( text );
    EXPECT_TRUE( r.ok() ) << ( r.diagnostics.empty() ? "" : r.diagnostics.front().format() );
    return r.value.value_or( domain_description{} );
}

bool has_kind( const validation_report& r, diagnostic_kind k )
{
    return std::any_of( r.errors.begin(), r.errors.end(), [ & ]( const diagnostic& d ) { return d.kind == k; } );
}

} // namespace

TEST( Validate, EmptyDomainIsValid )
{
    const auto r = validate_domain( domain_description{} );
    EXPECT_TRUE( r.ok() );
    EXPECT_TRUE( r.errors.empty() );
}

TEST( Validate, FacilitatesOnEnvActionIsKindMismatch )
{
    domain_description d;
    d.classes.push_back( { "mood", { "low", "high" }, true, {} } );
    d.actions.push_back( { "push", action_kind::environment, {} } );
    d.laws.push_back( { law::facilitates{ { literal::mental( "mood", "low" ) }, "push" }, {} } );
    const auto r = validate_domain( d );
    EXPECT_FALSE( r.ok() );
    EXPECT_TRUE( has_kind( r, diagnostic_kind::kind_mismatch ) );
}

TEST( Validate, AeWithListingRulesIsValid )
{
    const auto d = attach( ae_domain(), { builtin_theory( "HER", theory_source::listing ) } );
    EXPECT_TRUE( validate_domain( d ).ok() );
    const auto u = attach( ae_domain(), { builtin_theory( "UER", theory_source::listing ) } );
    EXPECT_TRUE( validate_domain( u ).ok() );
}

TEST( Validate, ReportsEachErrorKind )
{
    domain_description d;
    d.classes.push_back( { "ac", { "self", "other" }, false, {} } );
    d.classes.push_back( { "ac", { "x" }, false, {} } );
    d.actions.push_back( { "go", action_kind::environment, {} } );
    d.laws.push_back( { law::causes{ "nope", { literal::env( "door" ) }, {} }, {} } );
    d.laws.push_back( { law::static_law{ {}, { literal::mental( "ac", "self" ) } }, {} } );
    law::forbids_to_cause f;
    f.left = { literal::guard( "ac", guard_relation::lt, "other" ) };
    f.right = { literal::mental( "ac", "self" ) };
    d.laws.push_back( { f, {} } );
    d.laws.push_back( { law::influences_static{ { literal::mental( "ac", "self" ) }, { literal::env( "door" ) } }, {} } );

    const auto r = validate_domain( d );
    EXPECT_TRUE( has_kind( r, diagnostic_kind::duplicate_name ) );
    EXPECT_TRUE( has_kind( r, diagnostic_kind::undeclared_symbol ) );
    EXPECT_TRUE( has_kind( r, diagnostic_kind::empty_rule_side ) );
    EXPECT_TRUE( has_kind( r, diagnostic_kind::order_on_unordered ) );
    EXPECT_TRUE( has_kind( r, diagnostic_kind::kind_mismatch ) );
}

TEST( Validate, ErrorsCarrySpansFromText )
{
    auto r = parse_domain( "class c { a }\nlaw f(c, b) forbids_to_cause f(c, a);\n", "x.cmt" );
    ASSERT_FALSE( r.ok() );
    ASSERT_FALSE( r.diagnostics.empty() );
    EXPECT_EQ( r.diagnostics.front().span.file, "x.cmt" );
    EXPECT_EQ( r.diagnostics.front().span.line, 2u );
}

TEST( Validate, InfluencedEnvFluentRejectedByParser )
{
    auto r = parse_domain( "fluent door;\nclass c { a }\nlaw f(c, a) influences door;\n" );
    EXPECT_FALSE( r.ok() );
}

TEST( Validate, IdempotentAndInsensitiveToLawOrder )
{
    auto d = attach( ae_domain(), { builtin_theory( "UER", theory_source::definition ) } );
    d.laws.push_back( { law::facilitates{ { literal::mental( "ne", "high" ) }, "set_ne_low" }, {} } );
    const auto a = validate_domain( d );
    const auto b = validate_domain( d );
    std::mt19937 rng{ 3 };
    auto shuffled = d;
    std::shuffle( shuffled.laws.begin(), shuffled.laws.end(), rng );
    const auto c = validate_domain( shuffled );
    ASSERT_EQ( a.errors.size(), 1u );
    EXPECT_EQ( a.errors.size(), b.errors.size() );
    EXPECT_EQ( a.errors.size(), c.errors.size() );
    EXPECT_EQ( a.errors[ 0 ].kind, c.errors[ 0 ].kind );
}

TEST( StateSpace, OneClassTwoStates )
{
    const auto space = enumerate_state_space( { { "c", { "a", "b" }, false, {} } } );
    EXPECT_EQ( space.size(), 2u );
    EXPECT_EQ( std::distance( space.begin(), space.end() ), 2 );
}

TEST( StateSpace, EmptyClassListThrows )
{
    EXPECT_THROW( (void)enumerate_state_space( {} ), std::invalid_argument );
}

TEST( StateSpace, AeHas108States )
{
    const auto space = enumerate_state_space( ae_domain().classes );
    EXPECT_EQ( space.size(), 108u );
    std::set< std::vector< value_id > > seen( space.begin(), space.end() );
    EXPECT_EQ( seen.size(), 108u );
}

TEST( StateSpace, AeNeHighCountBruteForce )
{
    const auto& classes = ae_domain().classes;
    const auto ne_high = static_cast< value_id >(
        std::find( classes[ 0 ].values.begin(), classes[ 0 ].values.end(), "high" ) - classes[ 0 ].values.begin() );
    std::size_t count = 0;
    for ( const auto& m : enumerate_state_space( classes ) )
        count += m[ 0 ] == ne_high ? 1 : 0;
    std::size_t expected = 1;
    for ( std::size_t i = 1; i < classes.size(); ++i )
        expected *= classes[ i ].values.size();
    EXPECT_EQ( count, expected );
    EXPECT_EQ( count, 36u );
}

TEST( StateSpace, LexicographicOrder )
{
    const auto space = enumerate_state_space( { { "x", { "a", "b" }, false, {} }, { "y", { "p", "q", "r" }, false, {} } } );
    std::vector< std::vector< value_id > > all( space.begin(), space.end() );
    ASSERT_EQ( all.size(), 6u );
    EXPECT_TRUE( std::is_sorted( all.begin(), all.end() ) );
    EXPECT_EQ( all.front(), ( std::vector< value_id >{ 0, 0 } ) );
    EXPECT_EQ( all.back(), ( std::vector< value_id >{ 1, 2 } ) );
}

TEST( StateSpace, CountIsProductForSmallClassSets )
{
    std::mt19937 rng{ 11 };
    for ( int trial = 0; trial < 20; ++trial )
    {
        std::vector< psych_class > classes;
        std::size_t product = 1;
        const int n = 1 + static_cast< int >( rng() % 6 );
        for ( int i = 0; i < n; ++i )
        {
            psych_class c{ "c" + std::to_string( i ), {}, false, {} };
            const int k = 1 + static_cast< int >( rng() % 4 );
            for ( int v = 0; v < k; ++v )
                c.values.push_back( "v" + std::to_string( v ) );
            product *= static_cast< std::size_t >( k );
            classes.push_back( c );
        }
        const auto space = enumerate_state_space( classes );
        EXPECT_EQ( space.size(), product );
        EXPECT_EQ( static_cast< std::size_t >( std::distance( space.begin(), space.end() ) ), product );
    }
}

TEST( IsState, NoStaticLawsAcceptsEverything )
{
    const compiled_domain d{ ae_domain() };
    std::size_t n = 0;
    for ( const auto& m : enumerate_state_space( ae_domain().classes ) )
    {
        EXPECT_TRUE( is_state( d, state{ m } ).is_state );
        ++n;
    }
    EXPECT_EQ( n, 108u );
}

TEST( IsState, StaticInfluenceViolationListsLaw )
{
    auto dd = ae_domain();
    dd.laws.push_back( { law::influences_static{ { literal::mental( "go", "high" ) }, { literal::mental( "ne", "high" ) } }, {} } );
    const compiled_domain d{ dd };
    const auto s = d.make_state( { { "ne", "low" }, { "go", "high" }, { "ac", "self" }, { "co", "low" } } );
    const auto r = is_state( d, s );
    EXPECT_FALSE( r.is_state );
    ASSERT_EQ( r.violated_laws.size(), 1u );
    EXPECT_EQ( r.violated_laws[ 0 ], dd.laws.size() - 1 );
}

TEST( IsState, MonotoneInLawRemoval )
{
    auto dd = parse_ok( "fluent door, light;\nclass m { a, b }\nlaw light if door;\nlaw f(m, b) if neg light;\n" );
    const compiled_domain full{ dd };
    for ( std::size_t drop = 0; drop < dd.laws.size(); ++drop )
    {
        auto smaller = dd;
        smaller.laws.erase( smaller.laws.begin() + static_cast< std::ptrdiff_t >( drop ) );
        const compiled_domain reduced{ smaller };
        for ( value_id door = 0; door < 2; ++door )
            for ( value_id light = 0; light < 2; ++light )
                for ( value_id m = 0; m < 2; ++m )
                {
                    const state s{ { door, light, m } };
                    if ( is_state( full, s ).is_state )
                    {
                        EXPECT_TRUE( is_state( reduced, s ).is_state );
                    }
                }
    }
}

TEST( Compiled, RejectsInvalidDomain )
{
    domain_description d;
    d.laws.push_back( { law::causes{ "x", { literal::env( "y" ) }, {} }, {} } );
    EXPECT_THROW( compiled_domain{ d }, validation_failure );
}

TEST( Compiled, SlotLayoutEnvFirst )
{
    const compiled_domain d{ parse_ok( "fluent door;\nclass m { a, b }\n" ) };
    EXPECT_EQ( d.slot_count(), 2u );
    EXPECT_FALSE( d.is_mental_slot( 0 ) );
    EXPECT_TRUE( d.is_mental_slot( 1 ) );
    EXPECT_EQ( d.to_string( atom{ 1, 1 } ), "f(m,b)" );
    EXPECT_EQ( d.to_string( atom{ 0, 0 } ), "neg door" );
}
