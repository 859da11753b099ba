#include "cmt/trace_io.hpp"

#include "cmt/dsl.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmt
{

nlohmann::ordered_json trajectory_to_json( const compiled_domain& domain, const trajectory& t )
{
    nlohmann::ordered_json j;
    j[ "schema_version" ] = trace_schema_version;
    auto states = nlohmann::ordered_json::array();
    for ( const auto& s : t.states )
    {
        nlohmann::ordered_json sj;
        nlohmann::ordered_json mental = nlohmann::ordered_json::object();
        for ( std::size_t c = 0; c < domain.class_count(); ++c )
        {
            const auto slot = domain.class_slot( c );
            mental[ domain.slot_name( slot ) ] = domain.value_name( slot, s[ slot ] );
        }
        sj[ "mental" ] = mental;
        if ( domain.env_count() )
        {
            nlohmann::ordered_json env = nlohmann::ordered_json::object();
            for ( slot_id f = 0; f < domain.env_count(); ++f )
                env[ domain.slot_name( f ) ] = s[ f ] != 0;
            sj[ "env" ] = env;
        }
        states.push_back( sj );
    }
    j[ "states" ] = states;
    auto actions = nlohmann::ordered_json::array();
    for ( const auto& a : t.actions )
    {
        auto step = nlohmann::ordered_json::array();
        for ( auto id : a )
            step.push_back( domain.action_name( id ) );
        actions.push_back( step );
    }
    j[ "actions" ] = actions;
    if ( !t.provenance.empty() )
    {
        auto prov = nlohmann::ordered_json::array();
        for ( const auto& entries : t.provenance )
        {
            auto pj = nlohmann::ordered_json::array();
            for ( const auto& e : entries )
            {
                nlohmann::ordered_json ej;
                ej[ "slot" ] = domain.slot_name( e.slot );
                ej[ "cause" ] = to_string( e.cause );
                if ( e.cause == cause_kind::dynamic_law || e.cause == cause_kind::static_law )
                    ej[ "law" ] = e.law;
                pj.push_back( ej );
            }
            prov.push_back( pj );
        }
        j[ "provenance" ] = prov;
    }
    return j;
}

trajectory trajectory_from_json( const compiled_domain& domain, const nlohmann::json& j )
{
    if ( !j.is_object() || !j.contains( "states" ) || !j.contains( "actions" ) )
        throw std::invalid_argument( "trajectory JSON needs \"states\" and \"actions\"" );
    if ( j.contains( "schema_version" ) && j.at( "schema_version" ) != trace_schema_version )
        throw std::invalid_argument( "unsupported trajectory schema_version" );
    trajectory t;
    for ( const auto& sj : j.at( "states" ) )
    {
        std::vector< std::pair< std::string, std::string > > mental;
        std::vector< std::pair< std::string, bool > > env;
        for ( const auto& [ cls, value ] : sj.at( "mental" ).items() )
            mental.emplace_back( cls, value.get< std::string >() );
        if ( sj.contains( "env" ) )
            for ( const auto& [ name, value ] : sj.at( "env" ).items() )
                env.emplace_back( name, value.get< bool >() );
        t.states.push_back( domain.make_state( mental, env ) );
    }
    for ( const auto& aj : j.at( "actions" ) )
    {
        action_set step;
        for ( const auto& name : aj )
        {
            const auto id = domain.find_action( name.get< std::string >() );
            if ( !id )
                throw std::invalid_argument( "unknown action '" + name.get< std::string >() + "'" );
            step.push_back( *id );
        }
        std::sort( step.begin(), step.end() );
        step.erase( std::unique( step.begin(), step.end() ), step.end() );
        t.actions.push_back( std::move( step ) );
    }
    if ( t.states.empty() || t.states.size() != t.actions.size() + 1 )
        throw std::invalid_argument( "trajectory JSON needs exactly one more state than action steps" );
    return t;
}

trajectory read_trajectory( const compiled_domain& domain, const std::string& path )
{
    try
    {
        return trajectory_from_json( domain, nlohmann::json::parse( read_file( path ) ) );
    }
    catch ( const nlohmann::json::exception& e )
    {
        throw std::invalid_argument( path + ": " + e.what() );
    }
}

} // namespace cmt
