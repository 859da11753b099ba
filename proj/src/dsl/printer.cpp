#include "cmt/dsl.hpp"

#include <sstream>

namespace cmt
{

namespace
{

std::string join( const literal_list& lits )
{
    std::string out;
    for ( std::size_t i = 0; i < lits.size(); ++i )
    {
        if ( i != 0 )
            out += ", ";
        out += print_literal( lits[ i ] );
    }
    return out;
}

std::string join( const std::vector< std::string >& names )
{
    std::string out;
    for ( std::size_t i = 0; i < names.size(); ++i )
    {
        if ( i != 0 )
            out += ", ";
        out += names[ i ];
    }
    return out;
}

std::string with_conditions( std::string head, const literal_list& conditions )
{
    if ( !conditions.empty() )
        head += " if " + join( conditions );
    return head;
}

std::string prefixed( const literal_list& conditions, const char* keyword, const std::string& action )
{
    if ( conditions.empty() )
        return std::string{ keyword } + " " + action;
    return join( conditions ) + " " + keyword + " " + action;
}

struct law_printer
{
    std::string operator()( const law::causes& l ) const
    {
        return "law " + with_conditions( l.action + " causes " + join( l.effects ), l.conditions ) + ";";
    }
    std::string operator()( const law::static_law& l ) const
    {
        return "law " + join( l.effects ) + " if " + join( l.conditions ) + ";";
    }
    std::string operator()( const law::triggers& l ) const
    {
        return "law " + prefixed( l.conditions, "triggers", l.action ) + ";";
    }
    std::string operator()( const law::allows& l ) const
    {
        return "law " + prefixed( l.conditions, "allows", l.action ) + ";";
    }
    std::string operator()( const law::inhibits& l ) const
    {
        return "law " + prefixed( l.conditions, "inhibits", l.action ) + ";";
    }
    std::string operator()( const law::no_concurrency& l ) const { return "noconcurrency " + join( l.actions ) + ";"; }
    std::string operator()( const law::default_value& l ) const { return "default " + print_literal( l.value ) + ";"; }
    std::string operator()( const law::influences_dynamic& l ) const
    {
        return "law " + with_conditions( l.action + " influences " + join( l.effects ), l.conditions ) + ";";
    }
    std::string operator()( const law::influences_static& l ) const
    {
        return "law " + join( l.conditions ) + " influences " + join( l.effects ) + ";";
    }
    std::string operator()( const law::facilitates& l ) const
    {
        return "law " + join( l.conditions ) + " facilitates " + l.action + ";";
    }
    std::string operator()( const law::contravenes& l ) const
    {
        return "law " + join( l.conditions ) + " contravenes " + l.action + ";";
    }
    std::string operator()( const law::forbids_to_cause& l ) const
    {
        return "law " + join( l.left ) + " forbids_to_cause " + join( l.right ) + ";";
    }
};

} // namespace

std::string print_literal( const literal& lit )
{
    if ( lit.is_env() )
        return lit.positive ? lit.name : "neg " + lit.name;
    if ( lit.relation == guard_relation::eq )
        return "f(" + lit.name + ", " + lit.value + ")";
    return "f(" + lit.name + ", " + to_string( lit.relation ) + " " + lit.value + ")";
}

std::string print_law( const causal_law& law )
{
    return std::visit( law_printer{}, law.body );
}

std::string print_domain( const domain_description& domain )
{
    std::ostringstream out;
    for ( const auto& c : domain.classes )
    {
        out << "class " << c.name << ( c.ordered ? " ordered" : "" ) << " { ";
        for ( std::size_t i = 0; i < c.values.size(); ++i )
            out << ( i ? ", " : "" ) << c.values[ i ];
        out << " }\n";
    }
    if ( !domain.fluents.empty() )
    {
        out << "fluent ";
        for ( std::size_t i = 0; i < domain.fluents.size(); ++i )
            out << ( i ? ", " : "" ) << domain.fluents[ i ].name;
        out << ";\n";
    }
    // Consecutive actions of one kind share a declaration so that the
    // declaration order survives a round trip.
    for ( std::size_t i = 0; i < domain.actions.size(); )
    {
        const auto kind = domain.actions[ i ].kind;
        out << "action " << ( kind == action_kind::human ? "human " : "env " );
        std::size_t j = i;
        for ( ; j < domain.actions.size() && domain.actions[ j ].kind == kind; ++j )
            out << ( j > i ? ", " : "" ) << domain.actions[ j ].name;
        out << ";\n";
        i = j;
    }
    if ( !domain.laws.empty() && ( !domain.classes.empty() || !domain.fluents.empty() || !domain.actions.empty() ) )
        out << '\n';
    for ( const auto& law : domain.laws )
        out << print_law( law ) << '\n';
    return out.str();
}

std::string print_observations( const std::vector< observation >& observations )
{
    std::ostringstream out;
    for ( const auto& o : observations )
    {
        if ( o.kind == observation::kind_t::fluent_at )
            out << "observe " << print_literal( o.fluent ) << " at " << o.time << ";\n";
        else
            out << "observe " << o.action << " occurs_at " << o.time << ";\n";
    }
    return out.str();
}

std::string print_query( const query& q )
{
    std::ostringstream out;
    out << "query goal " << join( q.goal );
    for ( std::size_t i = 0; i < q.schedule.size(); ++i )
        out << ( i == 0 ? " with " : ", " ) << "{" << join( q.schedule[ i ].actions ) << "} occurs_at "
            << q.schedule[ i ].time;
    out << " horizon " << q.horizon << ";\n";
    return out.str();
}

} // namespace cmt
