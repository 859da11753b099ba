#include "cmt/theories.hpp"

#include "cmt/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace cmt
{

namespace detail
{
struct embedded_file
{
    std::string_view name;
    std::string_view text;
};
extern const embedded_file embedded_fixtures[];
extern const std::size_t embedded_fixture_count;
} // namespace detail

std::string_view fixture_text( std::string_view name )
{
    for ( std::size_t i = 0; i < detail::embedded_fixture_count; ++i )
        if ( detail::embedded_fixtures[ i ].name == name )
            return detail::embedded_fixtures[ i ].text;
    throw std::invalid_argument( "no embedded fixture named '" + std::string{ name } + "'" );
}

std::vector< std::string_view > fixture_names()
{
    std::vector< std::string_view > out;
    for ( std::size_t i = 0; i < detail::embedded_fixture_count; ++i )
        out.push_back( detail::embedded_fixtures[ i ].name );
    return out;
}

const char* to_string( theory_source s )
{
    switch ( s )
    {
    case theory_source::definition: return "definition";
    case theory_source::listing: return "listing";
    case theory_source::custom: return "custom";
    }
    return "?";
}

std::optional< theory_source > parse_theory_source( std::string_view text )
{
    if ( text == "definition" )
        return theory_source::definition;
    if ( text == "listing" )
        return theory_source::listing;
    if ( text == "custom" )
        return theory_source::custom;
    return std::nullopt;
}

namespace
{

std::string lower( std::string_view text )
{
    std::string out{ text };
    std::transform( out.begin(), out.end(), out.begin(), []( unsigned char c ) { return std::tolower( c ); } );
    return out;
}

bool relation_holds( guard_relation r, std::size_t v, std::size_t ref )
{
    switch ( r )
    {
    case guard_relation::eq: return v == ref;
    case guard_relation::ne: return v != ref;
    case guard_relation::lt: return v < ref;
    case guard_relation::le: return v <= ref;
    case guard_relation::gt: return v > ref;
    case guard_relation::ge: return v >= ref;
    }
    return false;
}

// All plain literals a (possibly guarded) literal stands for.
std::vector< literal > alternatives( const literal& lit, const domain_description& domain )
{
    if ( !lit.is_guard() )
        return { lit };
    const auto* cls = domain.find_class( lit.name );
    if ( !cls )
        throw std::invalid_argument( "undeclared class '" + lit.name + "'" );
    const auto ref = std::find( cls->values.begin(), cls->values.end(), lit.value ) - cls->values.begin();
    std::vector< literal > out;
    for ( std::size_t v = 0; v < cls->values.size(); ++v )
        if ( relation_holds( lit.relation, v, static_cast< std::size_t >( ref ) ) )
            out.push_back( literal::mental( lit.name, cls->values[ v ] ) );
    return out;
}

void expand_side( const literal_list& side, std::size_t i, literal_list& current,
                  const domain_description& domain, std::vector< literal_list >& out )
{
    if ( i == side.size() )
    {
        out.push_back( current );
        return;
    }
    for ( auto& alt : alternatives( side[ i ], domain ) )
    {
        current.push_back( std::move( alt ) );
        expand_side( side, i + 1, current, domain, out );
        current.pop_back();
    }
}

std::vector< literal_list > expand_side( const literal_list& side, const domain_description& domain )
{
    std::vector< literal_list > out;
    literal_list current;
    expand_side( side, 0, current, domain, out );
    return out;
}

const char* short_value( std::string_view value )
{
    if ( value == "low" )
        return "l";
    if ( value == "undecided" )
        return "u";
    if ( value == "high" )
        return "h";
    if ( value == "self" )
        return "s";
    if ( value == "other" )
        return "o";
    if ( value == "environment" )
        return "e";
    return "?";
}

constexpr std::array< std::string_view, 4 > ae_classes = { "ne", "go", "ac", "co" };

std::array< slot_id, 4 > ae_slots( const compiled_domain& domain )
{
    std::array< slot_id, 4 > out{};
    for ( std::size_t i = 0; i < 4; ++i )
    {
        auto slot = domain.find_class( ae_classes[ i ] );
        if ( !slot )
            throw std::invalid_argument( "domain does not declare class '" + std::string{ ae_classes[ i ] } + "'" );
        out[ i ] = *slot;
    }
    return out;
}

} // namespace

std::vector< law::forbids_to_cause > theory_spec::expanded( const domain_description& domain ) const
{
    std::vector< law::forbids_to_cause > out;
    for ( const auto& rule : rules )
        for ( auto& left : expand_side( rule.left, domain ) )
            for ( auto& right : expand_side( rule.right, domain ) )
            {
                law::forbids_to_cause r;
                r.left = left;
                r.right = std::move( right );
                r.origin = rule.origin;
                r.id = static_cast< int >( out.size() ) + 1;
                out.push_back( std::move( r ) );
            }
    return out;
}

theory_spec load_theory( std::string_view text, std::string name, std::string file )
{
    auto parsed = parse_theory_rules( text, name, std::move( file ) );
    if ( !parsed.ok() )
        throw validation_failure( std::move( parsed.diagnostics ) );
    theory_spec spec;
    spec.name = std::move( name );
    spec.source = theory_source::custom;
    spec.rules = std::move( *parsed.value );
    return spec;
}

theory_spec builtin_theory( std::string_view name, theory_source source )
{
    const auto key = lower( name );
    if ( key != "her" && key != "uer" )
        throw unknown_theory( "unknown theory '" + std::string{ name } + "' (expected HER or UER)" );
    if ( source == theory_source::custom )
        throw unknown_theory( "builtin theories come from the definition or listing source" );
    const std::string file = key + ( source == theory_source::listing ? "_listing.cmt" : "_definition.cmt" );
    auto spec = load_theory( fixture_text( file ), key == "her" ? "HER" : "UER", file );
    spec.source = source;
    return spec;
}

const domain_description& ae_domain()
{
    static const domain_description domain = [] {
        auto parsed = parse_domain( fixture_text( "ae.cmt" ), "ae.cmt" );
        if ( !parsed.ok() )
            throw validation_failure( std::move( parsed.diagnostics ) );
        return std::move( *parsed.value );
    }();
    return domain;
}

domain_description attach( domain_description domain, const std::vector< theory_spec >& theories )
{
    for ( const auto& t : theories )
        for ( auto rule : t.rules )
        {
            rule.origin = t.name;
            domain.laws.push_back( causal_law{ std::move( rule ), {} } );
        }
    return domain;
}

const std::array< emotion, 16 >& emotion_catalog()
{
    static const std::array< emotion, 16 > catalog = { {
        { "Anger", { "high", "low", "other", "high" } },
        { "Dislike", { "undecided", "low", "other", "low" } },
        { "Disgust", { "low", "low", "environment", "high" } },
        { "Sadness", { "high", "low", "environment", "low" } },
        { "Hope", { "undecided", "high", "environment", "low" } },
        { "Frustration", { "high", "low", "environment", "high" } },
        { "Fear", { "undecided", "low", "environment", "low" } },
        { "Distress", { "low", "low", "environment", "low" } },
        { "Joy", { "high", "high", "environment", "undecided" } },
        { "Liking", { "undecided", "high", "other", "undecided" } },
        { "Pride", { "undecided", "high", "self", "undecided" } },
        { "Surprise", { "undecided", "undecided", "environment", "undecided" } },
        { "Relief", { "undecided", "high", "environment", "undecided" } },
        { "Regret", { "undecided", "low", "self", "low" } },
        { "Shame", { "low", "low", "self", "high" } },
        { "Guilt", { "high", "high", "self", "high" } },
    } };
    return catalog;
}

std::optional< std::string > label_state( const compiled_domain& domain, const state& s )
{
    const auto slots = ae_slots( domain );
    for ( const auto& e : emotion_catalog() )
    {
        bool match = true;
        for ( std::size_t i = 0; i < 4 && match; ++i )
            match = domain.value_name( slots[ i ], s[ slots[ i ] ] ) == e.values[ i ];
        if ( match )
            return std::string{ e.label };
    }
    return std::nullopt;
}

std::optional< state > state_of_label( const compiled_domain& domain, std::string_view label )
{
    const auto key = lower( label );
    for ( const auto& e : emotion_catalog() )
    {
        if ( lower( e.label ) != key )
            continue;
        std::vector< std::pair< std::string, std::string > > mental;
        for ( std::size_t i = 0; i < 4; ++i )
            mental.emplace_back( std::string{ ae_classes[ i ] }, std::string{ e.values[ i ] } );
        return domain.make_state( mental );
    }
    return std::nullopt;
}

std::string short_tuple( const compiled_domain& domain, const state& s )
{
    const auto slots = ae_slots( domain );
    std::string out = "(";
    for ( std::size_t i = 0; i < 4; ++i )
    {
        out += i ? "," : "";
        out += short_value( domain.value_name( slots[ i ], s[ slots[ i ] ] ) );
    }
    return out + ")";
}

std::optional< state > state_of_tuple( const compiled_domain& domain, std::string_view tuple )
{
    std::string letters;
    for ( char c : tuple )
        if ( std::isalpha( static_cast< unsigned char >( c ) ) )
            letters += static_cast< char >( std::tolower( static_cast< unsigned char >( c ) ) );
    if ( letters.size() != 4 )
        return std::nullopt;
    const auto slots = ae_slots( domain );
    std::vector< std::pair< std::string, std::string > > mental;
    for ( std::size_t i = 0; i < 4; ++i )
    {
        std::optional< std::string > value;
        for ( value_id v = 0; v < domain.arity( slots[ i ] ); ++v )
        {
            const auto& name = domain.value_name( slots[ i ], v );
            if ( short_value( name ) == std::string{ letters[ i ] } )
                value = name;
        }
        if ( !value )
            return std::nullopt;
        mental.emplace_back( std::string{ ae_classes[ i ] }, *value );
    }
    return domain.make_state( mental );
}

transition_checker::transition_checker( std::vector< theory_spec > theories, semantics_config config,
                                        const domain_description& base )
    : _theories( std::move( theories ) ), _config( config )
{
    _domain = std::make_shared< const compiled_domain >( attach( base, _theories ) );
}

transition_judgment transition_checker::judge( const state& s, const state& next ) const
{
    transition_judgment out;
    out.config = _config;
    for ( const auto& f : fired_forbids( *_domain, _config, s, next ) )
    {
        const auto& rule = _domain->forbids()[ f.rule ];
        fired_rule fr;
        fr.theory = rule.origin;
        fr.rule_id = rule.id;
        fr.forbidden = _domain->to_string( f.fluent );
        const auto& cond = _config.orientation == orientation::as_written ? rule.left : rule.right;
        for ( const auto& p : cond )
            fr.conditions.push_back( _domain->to_string( p ) );
        out.fired.push_back( std::move( fr ) );
    }
    out.pass = out.fired.empty();
    return out;
}

transition_judgment check_transition( const theory_spec& spec, const semantics_config& config, const state& s,
                                      const state& next )
{
    return transition_checker{ { spec }, config }.judge( s, next );
}

theory_spec swap_sides( theory_spec spec )
{
    for ( auto& r : spec.rules )
        std::swap( r.left, r.right );
    return spec;
}

bool invariant_state_holds( invariant which, const compiled_domain& domain, const state& s )
{
    const auto slots = ae_slots( domain );
    const auto ne = s[ slots[ 0 ] ];
    const auto go = s[ slots[ 1 ] ];
    if ( which == invariant::ei_her )
        return ne <= go;
    const auto& ac = domain.value_name( slots[ 2 ], s[ slots[ 2 ] ] );
    const auto& co = domain.value_name( slots[ 3 ], s[ slots[ 3 ] ] );
    return domain.value_name( slots[ 0 ], ne ) == "high" && go <= ne && co == "high" && ac != "other"
           && ac != "undecided";
}

invariant_result eval_invariant( invariant which, const compiled_domain& domain, const std::vector< state >& states )
{
    invariant_result out;
    for ( std::size_t i = 1; i < states.size(); ++i )
        if ( !invariant_state_holds( which, domain, states[ i ] ) )
        {
            out.holds = false;
            out.first_violation = i;
            break;
        }
    return out;
}

} // namespace cmt
