#include "cmt/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace cmt
{

const char* to_string( diagnostic_kind kind )
{
    switch ( kind )
    {
    case diagnostic_kind::lex_error: return "LexError";
    case diagnostic_kind::parse_error: return "ParseError";
    case diagnostic_kind::undeclared_symbol: return "UndeclaredSymbol";
    case diagnostic_kind::kind_mismatch: return "KindMismatch";
    case diagnostic_kind::empty_rule_side: return "EmptyRuleSide";
    case diagnostic_kind::duplicate_name: return "DuplicateName";
    case diagnostic_kind::order_on_unordered: return "OrderOnUnordered";
    case diagnostic_kind::invalid_value: return "InvalidValue";
    case diagnostic_kind::observation_out_of_range: return "ObservationOutOfRange";
    case diagnostic_kind::warning: return "Warning";
    }
    return "?";
}

std::string diagnostic::format() const
{
    std::ostringstream out;
    if ( !span.file.empty() )
        out << span.file << ':';
    if ( span.line != 0 )
        out << span.line << ':' << span.column << ':';
    if ( out.tellp() > 0 )
        out << ' ';
    out << to_string( kind ) << ": " << message;
    if ( !expected.empty() )
    {
        out << " (expected ";
        for ( std::size_t i = 0; i < expected.size(); ++i )
        {
            if ( i != 0 )
                out << ( i + 1 == expected.size() ? " or " : ", " );
            out << expected[ i ];
        }
        out << ')';
    }
    return out.str();
}

namespace
{

std::string join_messages( const std::vector< diagnostic >& diagnostics )
{
    std::string text;
    for ( const auto& d : diagnostics )
    {
        if ( !text.empty() )
            text += '\n';
        text += d.format();
    }
    return text.empty() ? std::string{ "validation failed" } : text;
}

} // namespace

validation_failure::validation_failure( std::vector< diagnostic > diagnostics )
    : std::runtime_error( join_messages( diagnostics ) ), _diagnostics( std::move( diagnostics ) )
{
}

const char* to_string( guard_relation relation )
{
    switch ( relation )
    {
    case guard_relation::eq: return "=";
    case guard_relation::ne: return "!=";
    case guard_relation::lt: return "<";
    case guard_relation::le: return "<=";
    case guard_relation::gt: return ">";
    case guard_relation::ge: return ">=";
    }
    return "?";
}

literal literal::env( std::string fluent, bool positive )
{
    literal l;
    l.kind = kind_t::env;
    l.name = std::move( fluent );
    l.positive = positive;
    return l;
}

literal literal::mental( std::string cls, std::string value )
{
    literal l;
    l.kind = kind_t::mental;
    l.name = std::move( cls );
    l.value = std::move( value );
    return l;
}

literal literal::guard( std::string cls, guard_relation relation, std::string value )
{
    literal l = mental( std::move( cls ), std::move( value ) );
    l.relation = relation;
    return l;
}

bool literal::operator==( const literal& other ) const
{
    return kind == other.kind && name == other.name && value == other.value && positive == other.positive
           && relation == other.relation;
}

bool psych_class::operator==( const psych_class& other ) const
{
    return name == other.name && values == other.values && ordered == other.ordered;
}

const char* law_keyword( const law_body& body )
{
    struct visitor
    {
        const char* operator()( const law::causes& ) const { return "causes"; }
        const char* operator()( const law::static_law& ) const { return "if"; }
        const char* operator()( const law::triggers& ) const { return "triggers"; }
        const char* operator()( const law::allows& ) const { return "allows"; }
        const char* operator()( const law::inhibits& ) const { return "inhibits"; }
        const char* operator()( const law::no_concurrency& ) const { return "noconcurrency"; }
        const char* operator()( const law::default_value& ) const { return "default"; }
        const char* operator()( const law::influences_dynamic& ) const { return "influences"; }
        const char* operator()( const law::influences_static& ) const { return "influences"; }
        const char* operator()( const law::facilitates& ) const { return "facilitates"; }
        const char* operator()( const law::contravenes& ) const { return "contravenes"; }
        const char* operator()( const law::forbids_to_cause& ) const { return "forbids_to_cause"; }
    };
    return std::visit( visitor{}, body );
}

const psych_class* domain_description::find_class( std::string_view name ) const
{
    auto it = std::find_if( classes.begin(), classes.end(), [ & ]( const auto& c ) { return c.name == name; } );
    return it == classes.end() ? nullptr : &*it;
}

const action_decl* domain_description::find_action( std::string_view name ) const
{
    auto it = std::find_if( actions.begin(), actions.end(), [ & ]( const auto& a ) { return a.name == name; } );
    return it == actions.end() ? nullptr : &*it;
}

bool domain_description::has_fluent( std::string_view name ) const
{
    return std::any_of( fluents.begin(), fluents.end(), [ & ]( const auto& f ) { return f.name == name; } );
}

int domain_description::forbids_count( std::string_view origin ) const
{
    int n = 0;
    for ( const auto& l : laws )
        if ( const auto* f = std::get_if< law::forbids_to_cause >( &l.body ) )
            if ( f->origin == origin )
                ++n;
    return n;
}

observation observation::at( literal fluent, std::uint32_t time )
{
    observation o;
    o.kind = kind_t::fluent_at;
    o.fluent = std::move( fluent );
    o.time = time;
    return o;
}

observation observation::occurs( std::string action, std::uint32_t time )
{
    observation o;
    o.kind = kind_t::occurs_at;
    o.action = std::move( action );
    o.time = time;
    return o;
}

bool observation::operator==( const observation& other ) const
{
    if ( kind != other.kind || time != other.time )
        return false;
    return kind == kind_t::fluent_at ? fluent == other.fluent : action == other.action;
}

namespace
{

class validator
{
public:
    explicit validator( const domain_description& d ) : _d( d ) {}

    validation_report take() { return std::move( _report ); }

    validation_report run()
    {
        check_declarations();
        for ( const auto& law : _d.laws )
            std::visit( [ & ]( const auto& body ) { check( body, law.span ); }, law.body );
        return std::move( _report );
    }

    void check_literal( const literal& l, const source_span& fallback, bool allow_guard )
    {
        const auto& span = l.span.line != 0 ? l.span : fallback;
        if ( l.is_env() )
        {
            if ( !_d.has_fluent( l.name ) )
                error( diagnostic_kind::undeclared_symbol, "undeclared fluent '" + l.name + "'", span );
            return;
        }
        const auto* cls = _d.find_class( l.name );
        if ( cls == nullptr )
        {
            error( diagnostic_kind::undeclared_symbol, "undeclared psychological class '" + l.name + "'", span );
            return;
        }
        if ( std::find( cls->values.begin(), cls->values.end(), l.value ) == cls->values.end() )
            error( diagnostic_kind::invalid_value, "'" + l.value + "' is not a value of class '" + l.name + "'",
                   span );
        if ( l.is_guard() )
        {
            if ( !allow_guard )
                error( diagnostic_kind::kind_mismatch,
                       "value guards are only allowed in forbids_to_cause rules", span );
            else if ( l.relation != guard_relation::ne && !cls->ordered )
                error( diagnostic_kind::order_on_unordered,
                       std::string{ "order comparison '" } + to_string( l.relation ) + "' on unordered class '"
                           + l.name + "'",
                       span );
        }
    }

    void check_literals( const literal_list& lits, const source_span& span, bool allow_guard = false )
    {
        for ( const auto& l : lits )
            check_literal( l, span, allow_guard );
    }

    void check_all_mental( const literal_list& lits, const source_span& span, std::string_view what )
    {
        for ( const auto& l : lits )
            if ( !l.is_mental() )
                error( diagnostic_kind::kind_mismatch,
                       std::string{ what } + " must be a mental fluent, got '" + l.name + "'",
                       l.span.line != 0 ? l.span : span );
    }

    void check_action( const std::string& name, const source_span& span, bool require_human = false )
    {
        const auto* a = _d.find_action( name );
        if ( a == nullptr )
        {
            error( diagnostic_kind::undeclared_symbol, "undeclared action '" + name + "'", span );
            return;
        }
        if ( require_human && a->kind != action_kind::human )
            error( diagnostic_kind::kind_mismatch, "action '" + name + "' must be declared human", span );
    }

    void non_empty( const literal_list& lits, const source_span& span, std::string_view what )
    {
        if ( lits.empty() )
            error( diagnostic_kind::empty_rule_side, std::string{ what } + " must not be empty", span );
    }

    void check( const law::causes& l, const source_span& span )
    {
        check_action( l.action, span );
        non_empty( l.effects, span, "effect list" );
        check_literals( l.effects, span );
        check_literals( l.conditions, span );
    }

    void check( const law::static_law& l, const source_span& span )
    {
        non_empty( l.effects, span, "effect list" );
        non_empty( l.conditions, span, "condition list" );
        check_literals( l.effects, span );
        check_literals( l.conditions, span );
    }

    void check( const law::triggers& l, const source_span& span )
    {
        check_action( l.action, span );
        check_literals( l.conditions, span );
    }

    void check( const law::allows& l, const source_span& span )
    {
        check_action( l.action, span );
        check_literals( l.conditions, span );
    }

    void check( const law::inhibits& l, const source_span& span )
    {
        check_action( l.action, span );
        check_literals( l.conditions, span );
    }

    void check( const law::no_concurrency& l, const source_span& span )
    {
        if ( l.actions.empty() )
            error( diagnostic_kind::empty_rule_side, "noconcurrency needs at least one action", span );
        std::set< std::string > seen;
        for ( const auto& a : l.actions )
        {
            check_action( a, span );
            if ( !seen.insert( a ).second )
                error( diagnostic_kind::duplicate_name, "action '" + a + "' listed twice in noconcurrency", span );
        }
    }

    void check( const law::default_value& l, const source_span& span )
    {
        check_literal( l.value, span, false );
        const std::string key = ( l.value.is_env() ? "e:" : "m:" ) + l.value.name;
        if ( !_defaults.insert( key ).second )
            error( diagnostic_kind::invalid_value, "more than one default for '" + l.value.name + "'", span );
    }

    void check( const law::influences_dynamic& l, const source_span& span )
    {
        check_action( l.action, span );
        non_empty( l.effects, span, "effect list" );
        check_all_mental( l.effects, span, "influenced fluent" );
        check_literals( l.effects, span );
        check_literals( l.conditions, span );
    }

    void check( const law::influences_static& l, const source_span& span )
    {
        non_empty( l.effects, span, "effect list" );
        non_empty( l.conditions, span, "condition list" );
        check_all_mental( l.effects, span, "influenced fluent" );
        check_literals( l.effects, span );
        check_literals( l.conditions, span );
    }

    void check( const law::facilitates& l, const source_span& span )
    {
        check_action( l.action, span, true );
        non_empty( l.conditions, span, "condition list" );
        check_all_mental( l.conditions, span, "facilitating condition" );
        check_literals( l.conditions, span );
    }

    void check( const law::contravenes& l, const source_span& span )
    {
        check_action( l.action, span, true );
        non_empty( l.conditions, span, "condition list" );
        check_all_mental( l.conditions, span, "contravening condition" );
        check_literals( l.conditions, span );
    }

    void check( const law::forbids_to_cause& l, const source_span& span )
    {
        non_empty( l.left, span, "left side of forbids_to_cause" );
        non_empty( l.right, span, "right side of forbids_to_cause" );
        check_all_mental( l.left, span, "forbids_to_cause operand" );
        check_all_mental( l.right, span, "forbids_to_cause operand" );
        check_literals( l.left, span, true );
        check_literals( l.right, span, true );
    }

private:
    void check_declarations()
    {
        std::unordered_set< std::string > names;
        auto claim = [ & ]( const std::string& name, const source_span& span, std::string_view what ) {
            if ( !names.insert( name ).second )
                error( diagnostic_kind::duplicate_name, std::string{ what } + " '" + name + "' is already declared",
                       span );
        };
        for ( const auto& c : _d.classes )
        {
            claim( c.name, c.span, "class" );
            if ( c.values.empty() )
                error( diagnostic_kind::empty_rule_side, "class '" + c.name + "' has no values", c.span );
            if ( c.values.size() > 255 )
                error( diagnostic_kind::invalid_value, "class '" + c.name + "' has too many values", c.span );
            std::set< std::string > values;
            for ( const auto& v : c.values )
                if ( !values.insert( v ).second )
                    error( diagnostic_kind::duplicate_name,
                           "value '" + v + "' appears twice in class '" + c.name + "'", c.span );
        }
        for ( const auto& f : _d.fluents )
            claim( f.name, f.span, "fluent" );
        for ( const auto& a : _d.actions )
            claim( a.name, a.span, "action" );
    }

    void error( diagnostic_kind kind, std::string message, const source_span& span )
    {
        _report.errors.push_back( diagnostic{ kind, std::move( message ), span, {} } );
    }

    const domain_description& _d;
    validation_report _report;
    std::set< std::string > _defaults;
};

} // namespace

validation_report validate_domain( const domain_description& domain )
{
    return validator{ domain }.run();
}

validation_report validate_observations( const domain_description& domain,
                                         const std::vector< observation >& observations )
{
    validation_report report;
    for ( const auto& o : observations )
    {
        validator single{ domain };
        if ( o.kind == observation::kind_t::fluent_at )
            single.check_literal( o.fluent, o.span, false );
        else
            single.check_action( o.action, o.span );
        auto partial = single.take();
        report.errors.insert( report.errors.end(), partial.errors.begin(), partial.errors.end() );
    }
    return report;
}

validation_report validate_query( const domain_description& domain, const query& q )
{
    validator v{ domain };
    v.check_literals( q.goal, {} );
    validation_report report = v.take();
    std::uint32_t previous = 0;
    bool first = true;
    for ( const auto& step : q.schedule )
    {
        for ( const auto& a : step.actions )
            if ( domain.find_action( a ) == nullptr )
                report.errors.push_back(
                    diagnostic{ diagnostic_kind::undeclared_symbol, "undeclared action '" + a + "'", step.span, {} } );
        if ( step.time >= q.horizon )
            report.errors.push_back( diagnostic{ diagnostic_kind::observation_out_of_range,
                                                 "scheduled time " + std::to_string( step.time )
                                                     + " is not before the horizon " + std::to_string( q.horizon ),
                                                 step.span,
                                                 {} } );
        if ( !first && step.time <= previous )
            report.errors.push_back( diagnostic{
                diagnostic_kind::invalid_value, "schedule times must be strictly increasing", step.span, {} } );
        previous = step.time;
        first = false;
    }
    return report;
}

} // namespace cmt
