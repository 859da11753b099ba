#include "cmt/aspgen.hpp"
#include "cmt/dsl.hpp"
#include "cmt/theories.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace cmt;

namespace
{

const semantics_config listing_onset{ orientation::as_written, firing::onset, action_policy::singleton_or_empty };
const semantics_config listing_holding{ orientation::as_written, firing::holding, action_policy::singleton_or_empty };
const semantics_config reversed_holding{ orientation::reversed, firing::holding, action_policy::singleton_or_empty };

std::vector< semantics_config > all_configs( action_policy policy = action_policy::singleton_or_empty )
{
    std::vector< semantics_config > out;
    for ( auto o : { orientation::as_written, orientation::reversed } )
        for ( auto f : { firing::holding, firing::onset } )
            out.push_back( { o, f, policy } );
    return out;
}

compiled_domain with_theory( std::string_view name, theory_source source = theory_source::listing )
{
    return compiled_domain{ attach( ae_domain(), { builtin_theory( name, source ) } ) };
}

const emotion& catalog_entry( std::string_view label )
{
    for ( const auto& e : emotion_catalog() )
        if ( e.label == label )
            return e;
    throw std::invalid_argument( "no such label" );
}

std::vector< observation > init_obs( std::string_view label )
{
    static const char* classes[] = { "ne", "go", "ac", "co" };
    std::vector< observation > out;
    const auto& e = catalog_entry( label );
    for ( int i = 0; i < 4; ++i )
        out.push_back( observation::at( literal::mental( classes[ i ], std::string{ e.values[ i ] } ), 0 ) );
    return out;
}

literal_list goal_of( std::string_view label )
{
    static const char* classes[] = { "ne", "go", "ac", "co" };
    literal_list out;
    const auto& e = catalog_entry( label );
    for ( int i = 0; i < 4; ++i )
        out.push_back( literal::mental( classes[ i ], std::string{ e.values[ i ] } ) );
    return out;
}

state labelled( const compiled_domain& d, std::string_view label )
{
    return *state_of_label( d, label );
}

std::set< oracle::nstate > engine_successors( const compiled_domain& d, const state& s, const action_set& a,
                                               const semantics_config& config )
{
    std::set< oracle::nstate > out;
    auto r = step( d, s, a, config );
    if ( r.ok() )
        out.insert( oracle::to_names( d, *r.next ) );
    return out;
}

std::vector< std::vector< state > > collect( const compiled_domain& d, const state& s0, std::uint32_t h,
                                             const semantics_config& config )
{
    std::vector< std::vector< state > > out;
    (void)trajectories( d, s0, h, config, [ & ]( const trajectory& t ) {
        out.push_back( t.states );
        return true;
    } );
    return out;
}

} // namespace

TEST( Activation, NoLawsAllEmpty )
{
    const compiled_domain d{ ae_domain() };
    const auto p = compute_activation( d, labelled( d, "Joy" ), listing_holding );
    EXPECT_TRUE( p.triggered.empty() );
    EXPECT_TRUE( p.trigger_blocked.empty() );
    EXPECT_TRUE( p.allowed.empty() );
    EXPECT_TRUE( p.allow_blocked.empty() );
    EXPECT_TRUE( p.inhibited.empty() );
    EXPECT_TRUE( p.facilitated.empty() );
    EXPECT_TRUE( p.facilitate_blocked.empty() );
    EXPECT_TRUE( p.contravened.empty() );
    EXPECT_TRUE( p.forbidden_next.empty() );
}

TEST( Activation, TriggeredAction )
{
    auto r = parse_domain( "class ne ordered { low, high }\naction env withdraw;\nlaw f(ne, high) triggers withdraw;\n" );
    ASSERT_TRUE( r.ok() );
    const compiled_domain d{ *r.value };
    const auto p = compute_activation( d, d.make_state( { { "ne", "high" } } ), listing_holding );
    EXPECT_EQ( p.triggered, action_set{ 0 } );
    const auto q = compute_activation( d, d.make_state( { { "ne", "low" } } ), listing_holding );
    EXPECT_TRUE( q.triggered.empty() );
    EXPECT_EQ( q.trigger_blocked, action_set{ 0 } );
}

namespace
{

std::set< std::string > forbidden_from( const compiled_domain& d, const state& s, const semantics_config& config )
{
    std::set< std::string > out;
    for ( const auto& f : compute_activation( d, s, config ).forbidden_next )
        out.insert( d.to_string( f.fluent ) );
    return out;
}

// Fluent values the oracle forbids after `s`: the target side of every rule
// whose condition side holds in `s`.
std::set< std::string > oracle_forbidden( const compiled_domain& d, const state& s, orientation o )
{
    const auto& dd = d.description();
    const auto named = oracle::to_names( d, s );
    std::set< std::string > out;
    for ( const auto& law : dd.laws )
        if ( const auto* f = std::get_if< law::forbids_to_cause >( &law.body ) )
        {
            const auto& condition = o == orientation::as_written ? f->left : f->right;
            const auto& target = o == orientation::as_written ? f->right : f->left;
            if ( !oracle::holds_all( dd, named, condition ) )
                continue;
            for ( const auto& lit : target )
                for ( const auto& v : dd.find_class( lit.name )->values )
                {
                    auto probe = named;
                    probe.mental[ lit.name ] = v;
                    if ( oracle::holds( dd, probe, lit ) )
                        out.insert( "f(" + lit.name + "," + v + ")" );
                }
        }
    return out;
}

} // namespace

TEST( Activation, HerForbiddenSetFromAnger )
{
    const auto d = with_theory( "HER" );
    const auto anger = labelled( d, "Anger" );
    EXPECT_EQ( forbidden_from( d, anger, reversed_holding ), oracle_forbidden( d, anger, orientation::reversed ) );
    const auto written = forbidden_from( d, anger, listing_holding );
    EXPECT_EQ( written, oracle_forbidden( d, anger, orientation::as_written ) );
    for ( const auto* must : { "f(ne,high)", "f(ne,undecided)", "f(co,high)" } )
        EXPECT_TRUE( written.count( must ) ) << must;
}

TEST( Step, EmptySetIsInertia )
{
    const compiled_domain d{ ae_domain() };
    for ( const auto& m : enumerate_state_space( ae_domain().classes ) )
    {
        const state s{ m };
        auto r = step( d, s, {}, listing_holding );
        ASSERT_TRUE( r.ok() );
        EXPECT_EQ( *r.next, s );
    }
}

TEST( Step, JoyWithSetAcSelfReachesGuilt )
{
    const compiled_domain d{ ae_domain() };
    auto r = step( d, labelled( d, "Joy" ), { *d.find_action( "set_ac_self" ) }, listing_holding );
    ASSERT_TRUE( r.ok() );
    EXPECT_EQ( *r.next, d.make_state( { { "ne", "high" }, { "go", "high" }, { "ac", "self" }, { "co", "undecided" } } ) );
    EXPECT_EQ( r.provenance.size(), d.slot_count() );
}

TEST( Step, HerReversedHoldingAngerHasNoSuccessor )
{
    const auto d = with_theory( "HER" );
    const auto anger = labelled( d, "Anger" );
    const auto& dd = d.description();
    const auto named = oracle::to_names( d, anger );
    for ( action_id a = 0; a < d.action_count(); ++a )
    {
        auto r = step( d, anger, { a }, reversed_holding );
        EXPECT_FALSE( r.ok() ) << d.action_name( a );
        EXPECT_TRUE( oracle::successors( dd, named, { d.action_name( a ) }, reversed_holding ).empty() );
        ASSERT_FALSE( r.violations.empty() );
        EXPECT_EQ( r.violations.back().kind, violation_kind::forbidden_fluent );
        EXPECT_EQ( r.violations.back().condition, 10 );
    }
}

TEST( Step, ReportsEveryViolatedCondition )
{
    auto r = parse_domain( "fluent a;\naction env p, q;\nlaw a triggers p;\nlaw a inhibits q;\nnoconcurrency p, q;\n" );
    ASSERT_TRUE( r.ok() );
    const compiled_domain d{ *r.value };
    const auto s = d.make_state( {}, { { "a", true } } );
    auto res = step( d, s, { 1 }, { orientation::as_written, firing::holding, action_policy::any_subset } );
    EXPECT_FALSE( res.ok() );
    std::set< int > conditions;
    for ( const auto& v : res.violations )
        conditions.insert( v.condition );
    EXPECT_TRUE( conditions.count( 2 ) );
    EXPECT_TRUE( conditions.count( 6 ) );
}

TEST( Step, ContradictoryEffectsAbort )
{
    auto r = parse_domain( "class m { a, b }\naction env p, q;\nlaw p influences f(m, a);\nlaw q influences f(m, b);\n" );
    ASSERT_TRUE( r.ok() );
    const compiled_domain d{ *r.value };
    auto res = step( d, d.make_state( { { "m", "a" } } ), { 0, 1 }, { orientation::as_written, firing::holding, action_policy::any_subset } );
    EXPECT_FALSE( res.ok() );
    EXPECT_FALSE( res.successor.has_value() );
    ASSERT_FALSE( res.violations.empty() );
    EXPECT_EQ( res.violations[ 0 ].kind, violation_kind::contradictory_effects );
}

TEST( Step, OracleAgreesOnAeTheories )
{
    for ( const char* name : { "HER", "UER" } )
        for ( auto source : { theory_source::listing, theory_source::definition } )
        {
            const auto d = with_theory( name, source );
            const auto& dd = d.description();
            for ( const auto& config : all_configs() )
                for ( const auto& m : enumerate_state_space( dd.classes ) )
                {
                    const state s{ m };
                    const auto named = oracle::to_names( d, s );
                    for ( const auto& a : oracle::action_sets( dd, config.policy ) )
                    {
                        const auto expected = oracle::successors( dd, named, a, config );
                        const auto got = engine_successors( d, s, oracle::to_ids( d, a ), config );
                        ASSERT_EQ( std::set< oracle::nstate >( expected.begin(), expected.end() ), got )
                            << name << " " << to_string( config.orientation ) << " " << to_string( config.firing );
                    }
                }
        }
}

TEST( Step, OracleAgreesOnRandomDomains )
{
    for ( const auto& c : random_battery( 99, 60 ) )
    {
        const compiled_domain d{ c.domain };
        for ( const auto& named : oracle::assignments( c.domain ) )
        {
            const auto s = oracle::from_names( d, named );
            for ( const auto& a : oracle::action_sets( c.domain, c.config.policy ) )
            {
                const auto expected = oracle::successors( c.domain, named, a, c.config );
                const auto got = engine_successors( d, s, oracle::to_ids( d, a ), c.config );
                ASSERT_EQ( std::set< oracle::nstate >( expected.begin(), expected.end() ), got ) << c.name;
            }
        }
    }
}

TEST( Step, OracleAgreesWithStaticLawsAndDefaults )
{
    auto r = parse_domain( read_file( std::string{ CMT_TEST_DATA_DIR } + "/templates.cmt" ) );
    ASSERT_TRUE( r.ok() );
    const compiled_domain d{ *r.value };
    for ( auto policy : { action_policy::singleton_or_empty, action_policy::any_subset } )
        for ( const auto& config : all_configs( policy ) )
            for ( const auto& named : oracle::states( *r.value ) )
            {
                const auto s = oracle::from_names( d, named );
                for ( const auto& a : oracle::action_sets( *r.value, policy ) )
                {
                    const auto expected = oracle::successors( *r.value, named, a, config );
                    const auto got = engine_successors( d, s, oracle::to_ids( d, a ), config );
                    ASSERT_EQ( std::set< oracle::nstate >( expected.begin(), expected.end() ), got );
                }
            }
}

TEST( Trajectories, HorizonZeroIsSingleton )
{
    const compiled_domain d{ ae_domain() };
    const auto all = collect( d, labelled( d, "Fear" ), 0, listing_holding );
    ASSERT_EQ( all.size(), 1u );
    EXPECT_EQ( all[ 0 ].size(), 1u );
}

TEST( Trajectories, OneClassTwoSetActions )
{
    auto r = parse_domain( "class c { a, b }\naction env set_a, set_b;\nlaw set_a influences f(c, a);\n"
                           "law set_b influences f(c, b);\n" );
    ASSERT_TRUE( r.ok() );
    const compiled_domain d{ *r.value };
    const auto s0 = d.make_state( { { "c", "a" } } );
    const auto n = trajectories( d, s0, 1, listing_holding, []( const trajectory& ) { return true; } );
    EXPECT_EQ( n, 3u );
    EXPECT_EQ( n, oracle::count_trajectories( *r.value, oracle::to_names( d, s0 ), 1, listing_holding ) );
}

TEST( Trajectories, HerReversedHoldingAngerHasNone )
{
    const auto d = with_theory( "HER" );
    const auto anger = labelled( d, "Anger" );
    const auto n = trajectories( d, anger, 1, reversed_holding, []( const trajectory& ) { return true; } );
    EXPECT_EQ( n, oracle::count_trajectories( d.description(), oracle::to_names( d, anger ), 1, reversed_holding ) );
    EXPECT_EQ( n, 0u );
}

TEST( Trajectories, CountsMatchOracle )
{
    for ( const auto& c : random_battery( 17, 30 ) )
    {
        const compiled_domain d{ c.domain };
        const auto h = std::min< std::uint32_t >( c.horizon, 3 );
        for ( const auto& named : oracle::states( c.domain ) )
        {
            const auto s0 = oracle::from_names( d, named );
            const auto n = trajectories( d, s0, h, c.config, []( const trajectory& ) { return true; } );
            ASSERT_EQ( n, oracle::count_trajectories( c.domain, named, h, c.config ) ) << c.name;
        }
    }
}

TEST( Trajectories, DeterministicAndReverified )
{
    for ( const auto& c : random_battery( 23, 20 ) )
    {
        const compiled_domain d{ c.domain };
        for ( const auto& s0 : initial_states( d, {} ) )
        {
            std::vector< trajectory > first, second;
            (void)trajectories( d, s0, c.horizon, c.config, [ & ]( const trajectory& t ) {
                first.push_back( t );
                return first.size() < 200;
            } );
            (void)trajectories( d, s0, c.horizon, c.config, [ & ]( const trajectory& t ) {
                second.push_back( t );
                return second.size() < 200;
            } );
            ASSERT_EQ( first.size(), second.size() );
            for ( std::size_t i = 0; i < first.size(); ++i )
            {
                EXPECT_EQ( first[ i ].states, second[ i ].states );
                EXPECT_EQ( first[ i ].actions, second[ i ].actions );
                EXPECT_TRUE( check_trajectory( d, first[ i ], c.config ).empty() ) << c.name;
            }
        }
    }
}

TEST( Trajectories, AddingForbidsRuleNeverEnlarges )
{
    std::mt19937 rng{ 41 };
    for ( const auto& c : random_battery( 31, 25 ) )
    {
        auto stricter = c.domain;
        law::forbids_to_cause extra;
        const auto& cls = stricter.classes[ rng() % 2 ];
        const auto& other = stricter.classes[ rng() % 2 ];
        extra.left = { literal::mental( cls.name, cls.values[ rng() % cls.values.size() ] ) };
        extra.right = { literal::mental( other.name, other.values[ rng() % other.values.size() ] ) };
        stricter.laws.push_back( { extra, {} } );
        const compiled_domain loose{ c.domain };
        const compiled_domain tight{ stricter };
        const auto h = std::min< std::uint32_t >( c.horizon, 3 );
        for ( const auto& s0 : initial_states( loose, {} ) )
        {
            auto a = collect( loose, s0, h, c.config );
            auto b = collect( tight, s0, h, c.config );
            std::set< std::vector< state > > big( a.begin(), a.end() );
            for ( const auto& t : b )
                EXPECT_TRUE( big.count( t ) ) << c.name;
            EXPECT_LE( b.size(), a.size() );
        }
    }
}

TEST( Models, InertiaOnlyGivesOneModel )
{
    auto r = parse_domain( "fluent door;\nclass m { a, b }\n" );
    ASSERT_TRUE( r.ok() );
    const compiled_domain d{ *r.value };
    const std::vector< observation > obs = { observation::at( literal::env( "door", true ), 0 ),
                                             observation::at( literal::mental( "m", "a" ), 0 ) };
    const auto n = trajectory_models( d, obs, 2, listing_holding, []( const trajectory& ) { return true; } );
    EXPECT_EQ( n, 1u );
}

TEST( Models, UncausableObservationGivesNone )
{
    auto r = parse_domain( "class ne ordered { low, undecided, high }\n" );
    ASSERT_TRUE( r.ok() );
    const compiled_domain bare{ *r.value };
    const std::vector< observation > o2 = { observation::at( literal::mental( "ne", "low" ), 0 ),
                                            observation::at( literal::mental( "ne", "high" ), 2 ) };
    EXPECT_EQ( trajectory_models( bare, o2, 2, listing_holding, []( const trajectory& ) { return true; } ), 0u );
}

TEST( Models, DialogueYieldsPublishedTrajectory )
{
    auto dom = parse_domain( fixture_text( "dialogue.cmt" ), "dialogue.cmt" );
    ASSERT_TRUE( dom.ok() );
    auto obs = parse_observations( fixture_text( "dialogue.cmto" ), "dialogue.cmto", &*dom.value );
    ASSERT_TRUE( obs.ok() );
    const compiled_domain d{ *dom.value };
    std::vector< trajectory > models;
    (void)trajectory_models( d, *obs.value, 6, listing_holding, [ & ]( const trajectory& t ) {
        models.push_back( t );
        return true;
    } );
    ASSERT_EQ( models.size(), 1u );
    const std::vector< std::string > labels = { "Anger", "Guilt", "Pride", "Hope", "Pride", "Hope", "Joy" };
    ASSERT_EQ( models[ 0 ].states.size(), labels.size() );
    for ( std::size_t i = 0; i < labels.size(); ++i )
        EXPECT_EQ( label_state( d, models[ 0 ].states[ i ] ).value_or( "?" ), labels[ i ] ) << i;
}

TEST( Consistency, EmptyTheory )
{
    const compiled_domain d{ domain_description{} };
    EXPECT_TRUE( consistent( d, {}, 1, listing_holding ).consistent );
}

TEST( Consistency, ObservationBeyondHorizon )
{
    const compiled_domain d{ ae_domain() };
    const auto r = consistent( d, { observation::at( literal::mental( "ne", "high" ), 5 ) }, 2, listing_holding );
    EXPECT_FALSE( r.consistent );
    EXPECT_FALSE( r.diagnostics.empty() );
}

TEST( Consistency, DialogueWithoutTheory )
{
    auto dom = parse_domain( fixture_text( "dialogue.cmt" ) );
    auto obs = parse_observations( fixture_text( "dialogue.cmto" ) );
    ASSERT_TRUE( dom.ok() && obs.ok() );
    const compiled_domain d{ *dom.value };
    for ( const auto& config : all_configs() )
        EXPECT_TRUE( consistent( d, *obs.value, 6, config ).consistent );
}

TEST( Consistency, MatchesOracleOnBattery )
{
    for ( const auto& c : random_battery( 7, 50 ) )
    {
        const compiled_domain d{ c.domain };
        const bool expected = oracle::satisfiable( c.domain, c.observations, c.horizon, c.goal.value_or( literal_list{} ), c.config );
        if ( c.goal )
        {
            EXPECT_EQ( plan( d, c.observations, *c.goal, c.horizon, c.config ).sat, expected ) << c.name;
        }
        else
        {
            EXPECT_EQ( consistent( d, c.observations, c.horizon, c.config ).consistent, expected ) << c.name;
        }
    }
}

TEST( Plan, InitEqualsGoalIsNoOps )
{
    const auto d = with_theory( "HER" );
    const auto r = plan( d, init_obs( "Joy" ), goal_of( "Joy" ), 6, listing_onset );
    ASSERT_TRUE( r.sat );
    for ( const auto& a : r.plan->actions )
        EXPECT_TRUE( a.empty() );
}

TEST( Plan, HerOnsetFearToHope )
{
    const auto d = with_theory( "HER" );
    const auto r = plan( d, init_obs( "Fear" ), goal_of( "Hope" ), 6, listing_onset );
    ASSERT_TRUE( r.sat );
    EXPECT_EQ( label_state( d, r.plan->states.back() ).value_or( "" ), "Hope" );
    EXPECT_EQ( r.plan->length(), 6u );
}

TEST( Plan, HerOnsetJoyToAngerUnsat )
{
    const auto d = with_theory( "HER" );
    EXPECT_FALSE( plan( d, init_obs( "Joy" ), goal_of( "Anger" ), 6, listing_onset ).sat );
}

TEST( Plan, ImpliesConsistentWithScheduledActions )
{
    for ( const char* theory : { "HER", "UER" } )
    {
        const auto d = with_theory( theory );
        for ( const auto& from : emotion_catalog() )
            for ( const auto& to : emotion_catalog() )
            {
                const auto r = plan( d, init_obs( from.label ), goal_of( to.label ), 6, listing_onset );
                if ( !r.sat )
                    continue;
                auto obs = init_obs( from.label );
                for ( std::size_t t = 0; t < r.plan->actions.size(); ++t )
                    for ( auto a : r.plan->actions[ t ] )
                        obs.push_back( observation::occurs( d.action_name( a ), static_cast< std::uint32_t >( t ) ) );
                for ( const auto& g : goal_of( to.label ) )
                    obs.push_back( observation::at( g, 6 ) );
                EXPECT_TRUE( consistent( d, obs, 6, listing_onset ).consistent ) << from.label << "->" << to.label;
                EXPECT_TRUE( check_trajectory( d, *r.plan, listing_onset, obs ).empty() );
            }
    }
}

TEST( Query, NoModelsIsSkepticallyTrueAndFlagged )
{
    const compiled_domain d{ ae_domain() };
    auto obs = init_obs( "Fear" );
    obs.push_back( observation::at( literal::mental( "ne", "low" ), 0 ) );
    query q;
    q.goal = { literal::mental( "go", "high" ) };
    q.horizon = 2;
    const auto r = holds_query( d, obs, q, query_mode::skeptical, listing_holding );
    EXPECT_TRUE( r.holds );
    EXPECT_TRUE( r.no_models );
    EXPECT_FALSE( holds_query( d, obs, q, query_mode::credulous, listing_holding ).holds );
}

TEST( Query, ForcedModelHoldsInBothModes )
{
    auto r = parse_domain( "class m { a, b }\naction env go;\nlaw f(m, a) triggers go;\nlaw go influences f(m, b);\n"
                           "law f(m, b) inhibits go;\n" );
    ASSERT_TRUE( r.ok() );
    const compiled_domain d{ *r.value };
    const std::vector< observation > obs = { observation::at( literal::mental( "m", "a" ), 0 ) };
    query q;
    q.goal = { literal::mental( "m", "b" ) };
    q.horizon = 2;
    EXPECT_EQ( trajectory_models( d, obs, 2, listing_holding, []( const trajectory& ) { return true; } ), 1u );
    EXPECT_TRUE( holds_query( d, obs, q, query_mode::skeptical, listing_holding ).holds );
    EXPECT_TRUE( holds_query( d, obs, q, query_mode::credulous, listing_holding ).holds );
}

TEST( Query, UerOnsetFearToRegretCredulous )
{
    const auto d = with_theory( "UER" );
    query q;
    q.goal = goal_of( "Regret" );
    q.horizon = 6;
    const auto r = holds_query( d, init_obs( "Fear" ), q, query_mode::credulous, listing_onset );
    EXPECT_TRUE( r.holds );
    ASSERT_TRUE( r.witness.has_value() );
    EXPECT_EQ( label_state( d, r.witness->states.back() ).value_or( "" ), "Regret" );
}

TEST( Query, SkepticalCounterexample )
{
    const compiled_domain d{ ae_domain() };
    query q;
    q.goal = { literal::mental( "ne", "undecided" ) };
    q.horizon = 1;
    const auto r = holds_query( d, init_obs( "Fear" ), q, query_mode::skeptical, listing_holding );
    EXPECT_FALSE( r.holds );
    ASSERT_TRUE( r.witness.has_value() );
    EXPECT_NE( label_state( d, r.witness->states.back() ).value_or( "" ), "Fear" );
}

TEST( CandidateSets, Enumeration )
{
    const compiled_domain d{ ae_domain() };
    const auto singles = candidate_action_sets( d, {}, action_policy::singleton_or_empty );
    ASSERT_EQ( singles.size(), d.action_count() + 1 );
    EXPECT_TRUE( singles.front().empty() );
    auto r = parse_domain( "action env a, b, c;\n" );
    const compiled_domain small{ *r.value };
    EXPECT_EQ( candidate_action_sets( small, {}, action_policy::any_subset ).size(), 8u );
    EXPECT_EQ( candidate_action_sets( small, { 1 }, action_policy::any_subset ).size(), 4u );
    EXPECT_TRUE( candidate_action_sets( small, { 0, 1 }, action_policy::singleton_or_empty ).empty() );
}
