#include "cmt/dsl.hpp"
#include "dsl/lexer.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cmt
{

namespace
{

using dsl::token;
using dsl::token_kind;

constexpr std::size_t max_errors = 64;
constexpr std::uint32_t max_integer = 1000000;

// Thrown inside the parser to unwind to the statement loop after an error
// has been recorded.
struct syntax_error
{
};

class parser
{
public:
    parser( std::string_view text, std::string file ) : _file( std::move( file ) )
    {
        _tokens = dsl::lex( text, _file, _diagnostics );
    }

    std::vector< diagnostic >& diagnostics() { return _diagnostics; }

    bool has_errors() const
    {
        for ( const auto& d : _diagnostics )
            if ( d.kind != diagnostic_kind::warning )
                return true;
        return false;
    }

    // --- domain ------------------------------------------------------------

    domain_description domain()
    {
        domain_description d;
        while ( !at( token_kind::end ) && _diagnostics.size() < max_errors )
        {
            try
            {
                statement( d );
            }
            catch ( const syntax_error& )
            {
                synchronize();
            }
        }
        resolve_influences( d );
        int next_id = 1;
        for ( auto& l : d.laws )
            if ( auto* f = std::get_if< law::forbids_to_cause >( &l.body ) )
                f->id = next_id++;
        return d;
    }

    std::vector< law::forbids_to_cause > theory_rules( const std::string& origin )
    {
        std::vector< law::forbids_to_cause > rules;
        while ( !at( token_kind::end ) && _diagnostics.size() < max_errors )
        {
            try
            {
                const token& start = expect_keyword( "law", { "'law'" } );
                auto body = parse_law();
                expect( token_kind::semicolon, "';'" );
                if ( auto* f = std::get_if< law::forbids_to_cause >( &body ) )
                {
                    f->id = static_cast< int >( rules.size() ) + 1;
                    f->origin = origin;
                    rules.push_back( std::move( *f ) );
                }
                else
                    error( span_of( start ), "theory files may only contain forbids_to_cause laws" );
            }
            catch ( const syntax_error& )
            {
                synchronize();
            }
        }
        return rules;
    }

    std::vector< observation > observations()
    {
        std::vector< observation > out;
        while ( !at( token_kind::end ) && _diagnostics.size() < max_errors )
        {
            try
            {
                const token& start = expect_keyword( "observe", { "'observe'" } );
                literal lit = parse_literal();
                observation o;
                if ( accept_keyword( "occurs_at" ) )
                {
                    if ( !lit.is_env() || !lit.positive )
                        error( lit.span, "only an action name may precede 'occurs_at'" );
                    o = observation::occurs( lit.name, integer() );
                }
                else
                {
                    expect_keyword( "at", { "'at'", "'occurs_at'" } );
                    if ( lit.is_guard() )
                        error( lit.span, "value guards cannot be observed" );
                    o = observation::at( lit, integer() );
                }
                o.span = span_from( start );
                expect( token_kind::semicolon, "';'" );
                out.push_back( std::move( o ) );
            }
            catch ( const syntax_error& )
            {
                synchronize();
            }
        }
        return out;
    }

    std::optional< query > parse_query()
    {
        std::optional< query > out;
        while ( !at( token_kind::end ) && _diagnostics.size() < max_errors )
        {
            try
            {
                const token& start = expect_keyword( "query", { "'query'" } );
                query q;
                expect_keyword( "goal", { "'goal'" } );
                q.goal = literals();
                if ( accept_keyword( "with" ) )
                {
                    do
                    {
                        scheduled_actions step;
                        const token& open = expect( token_kind::lbrace, "'{'" );
                        if ( !at( token_kind::rbrace ) )
                        {
                            do
                                step.actions.push_back( identifier( "action name" ).text );
                            while ( accept( token_kind::comma ) );
                        }
                        expect( token_kind::rbrace, "'}'" );
                        expect_keyword( "occurs_at", { "'occurs_at'" } );
                        step.time = integer();
                        step.span = span_from( open );
                        q.schedule.push_back( std::move( step ) );
                    } while ( accept( token_kind::comma ) );
                }
                expect_keyword( "horizon", { "'horizon'", "'with'", "','" } );
                q.horizon = integer();
                expect( token_kind::semicolon, "';'" );
                const auto span = span_from( start );
                for ( std::size_t i = 0; i < q.schedule.size(); ++i )
                {
                    if ( q.schedule[ i ].time >= q.horizon )
                        error( q.schedule[ i ].span, "scheduled actions at time " + std::to_string( q.schedule[ i ].time )
                                                         + " lie beyond horizon " + std::to_string( q.horizon ) );
                    if ( i > 0 && q.schedule[ i ].time <= q.schedule[ i - 1 ].time )
                        error( q.schedule[ i ].span, "schedule times must be strictly increasing" );
                }
                if ( out )
                    error( span, "only one query per file" );
                else
                    out = std::move( q );
            }
            catch ( const syntax_error& )
            {
                synchronize();
            }
        }
        if ( !out && !has_errors() )
            error( span_of( peek() ), "missing query statement" );
        return out;
    }

private:
    void statement( domain_description& d )
    {
        const token& start = peek();
        if ( accept_keyword( "class" ) )
        {
            psych_class c;
            c.name = identifier( "class name" ).text;
            c.ordered = accept_keyword( "ordered" );
            expect( token_kind::lbrace, "'{'" );
            do
                c.values.push_back( identifier( "value name" ).text );
            while ( accept( token_kind::comma ) );
            expect( token_kind::rbrace, "'}'" );
            accept( token_kind::semicolon );
            c.span = span_from( start );
            d.classes.push_back( std::move( c ) );
        }
        else if ( accept_keyword( "fluent" ) )
        {
            do
            {
                const token& name = identifier( "fluent name" );
                d.fluents.push_back( env_fluent_decl{ name.text, span_of( name ) } );
            } while ( accept( token_kind::comma ) );
            expect( token_kind::semicolon, "';'" );
        }
        else if ( accept_keyword( "action" ) )
        {
            action_kind kind = action_kind::environment;
            if ( accept_keyword( "human" ) )
                kind = action_kind::human;
            else
                expect_keyword( "env", { "'env'", "'human'" } );
            do
            {
                const token& name = identifier( "action name" );
                d.actions.push_back( action_decl{ name.text, kind, span_of( name ) } );
            } while ( accept( token_kind::comma ) );
            expect( token_kind::semicolon, "';'" );
        }
        else if ( accept_keyword( "law" ) )
        {
            auto body = parse_law();
            expect( token_kind::semicolon, "';'" );
            d.laws.push_back( causal_law{ std::move( body ), span_from( start ) } );
        }
        else if ( accept_keyword( "noconcurrency" ) )
        {
            law::no_concurrency nc;
            do
                nc.actions.push_back( identifier( "action name" ).text );
            while ( accept( token_kind::comma ) );
            expect( token_kind::semicolon, "';'" );
            d.laws.push_back( causal_law{ std::move( nc ), span_from( start ) } );
        }
        else if ( accept_keyword( "default" ) )
        {
            law::default_value dv{ parse_literal() };
            expect( token_kind::semicolon, "';'" );
            d.laws.push_back( causal_law{ std::move( dv ), span_from( start ) } );
        }
        else
            fail( peek(), { "'class'", "'fluent'", "'action'", "'law'", "'noconcurrency'", "'default'" } );
    }

    cmt::law_body parse_law()
    {
        literal_list lhs;
        if ( !( at_keyword( "triggers" ) || at_keyword( "allows" ) || at_keyword( "inhibits" ) ) )
            lhs = literals();

        auto single_name = [ & ]( const char* keyword ) -> std::string {
            if ( lhs.size() != 1 || !lhs[ 0 ].is_env() || !lhs[ 0 ].positive )
            {
                error( lhs.empty() ? span_of( peek() ) : lhs[ 0 ].span,
                       std::string{ "expected a single action name before '" } + keyword + "'" );
                throw syntax_error{};
            }
            return lhs[ 0 ].name;
        };

        const token& kw = peek();
        if ( accept_keyword( "causes" ) )
        {
            law::causes l{ single_name( "causes" ), literals(), {} };
            if ( accept_keyword( "if" ) )
                l.conditions = literals();
            return l;
        }
        if ( accept_keyword( "influences" ) )
        {
            auto rhs = literals();
            if ( accept_keyword( "if" ) )
                return law::influences_dynamic{ single_name( "influences" ), std::move( rhs ), literals() };
            if ( lhs.size() == 1 && lhs[ 0 ].is_env() && lhs[ 0 ].positive )
                return law::influences_dynamic{ lhs[ 0 ].name, std::move( rhs ), {} };
            return law::influences_static{ std::move( lhs ), std::move( rhs ) };
        }
        if ( accept_keyword( "if" ) )
            return law::static_law{ std::move( lhs ), literals() };
        if ( accept_keyword( "triggers" ) )
            return law::triggers{ std::move( lhs ), identifier( "action name" ).text };
        if ( accept_keyword( "allows" ) )
            return law::allows{ std::move( lhs ), identifier( "action name" ).text };
        if ( accept_keyword( "inhibits" ) )
            return law::inhibits{ std::move( lhs ), identifier( "action name" ).text };
        if ( accept_keyword( "facilitates" ) )
            return law::facilitates{ std::move( lhs ), identifier( "action name" ).text };
        if ( accept_keyword( "contravenes" ) )
            return law::contravenes{ std::move( lhs ), identifier( "action name" ).text };
        if ( accept_keyword( "forbids_to_cause" ) )
            return law::forbids_to_cause{ std::move( lhs ), literals(), 0, {} };
        fail( kw, { "'causes'", "'influences'", "'if'", "'triggers'", "'allows'", "'inhibits'", "'facilitates'",
                    "'contravenes'", "'forbids_to_cause'", "','" } );
    }

    // A bare name before `influences` is an action (dynamic influence) when
    // declared as one; otherwise it is an environment fluent condition.
    static void resolve_influences( domain_description& d )
    {
        for ( auto& l : d.laws )
        {
            auto* dyn = std::get_if< law::influences_dynamic >( &l.body );
            if ( dyn == nullptr || !dyn->conditions.empty() || d.find_action( dyn->action ) != nullptr
                 || !d.has_fluent( dyn->action ) )
                continue;
            law::influences_static st{ { literal::env( dyn->action ) }, std::move( dyn->effects ) };
            st.conditions[ 0 ].span = l.span;
            l.body = std::move( st );
        }
    }

    cmt::literal_list literals()
    {
        cmt::literal_list out;
        const bool braced = accept( token_kind::lbrace );
        do
            out.push_back( parse_literal() );
        while ( accept( token_kind::comma ) );
        if ( braced )
            expect( token_kind::rbrace, "'}'" );
        return out;
    }

    literal parse_literal()
    {
        const token& start = peek();
        literal lit;
        if ( accept_keyword( "neg" ) )
            lit = literal::env( identifier( "fluent name" ).text, false );
        else if ( accept_keyword( "f" ) )
        {
            expect( token_kind::lparen, "'('" );
            std::string cls = identifier( "class name" ).text;
            expect( token_kind::comma, "','" );
            guard_relation relation = guard_relation::eq;
            if ( at( token_kind::relation ) )
            {
                const auto& text = advance().text;
                relation = text == "!="   ? guard_relation::ne
                           : text == "<"  ? guard_relation::lt
                           : text == "<=" ? guard_relation::le
                           : text == ">"  ? guard_relation::gt
                                          : guard_relation::ge;
            }
            std::string value = identifier( "value name" ).text;
            expect( token_kind::rparen, "')'" );
            lit = literal::guard( std::move( cls ), relation, std::move( value ) );
        }
        else if ( at( token_kind::identifier ) )
            lit = literal::env( advance().text, true );
        else
            fail( start, { "fluent literal", "'neg'", "'f'" } );
        lit.span = span_from( start );
        return lit;
    }

    std::uint32_t integer()
    {
        const token& t = peek();
        if ( !at( token_kind::integer ) )
            fail( t, { "integer" } );
        advance();
        std::uint64_t value = 0;
        auto [ ptr, ec ] = std::from_chars( t.text.data(), t.text.data() + t.text.size(), value );
        if ( ec != std::errc{} || value > max_integer )
        {
            error( span_of( t ), "integer " + t.text + " is out of range" );
            throw syntax_error{};
        }
        return static_cast< std::uint32_t >( value );
    }

    // --- token plumbing ----------------------------------------------------

    const token& peek( std::size_t k = 0 ) const
    {
        return _tokens[ std::min( _pos + k, _tokens.size() - 1 ) ];
    }

    const token& advance()
    {
        const token& t = peek();
        if ( _pos + 1 < _tokens.size() )
            ++_pos;
        return t;
    }

    bool at( token_kind kind ) const { return peek().kind == kind; }
    bool at_keyword( std::string_view kw ) const { return at( token_kind::keyword ) && peek().text == kw; }

    bool accept( token_kind kind )
    {
        if ( !at( kind ) )
            return false;
        advance();
        return true;
    }

    bool accept_keyword( std::string_view kw )
    {
        if ( !at_keyword( kw ) )
            return false;
        advance();
        return true;
    }

    const token& expect( token_kind kind, const char* what )
    {
        if ( !at( kind ) )
            fail( peek(), { what } );
        return advance();
    }

    const token& expect_keyword( std::string_view kw, std::vector< std::string > expected )
    {
        if ( !at_keyword( kw ) )
            fail( peek(), std::move( expected ) );
        return advance();
    }

    const token& identifier( const char* what )
    {
        if ( at( token_kind::keyword ) )
        {
            error( span_of( peek() ), "'" + peek().text + "' is a reserved keyword and cannot be used as a "
                                          + what );
            throw syntax_error{};
        }
        if ( !at( token_kind::identifier ) )
            fail( peek(), { what } );
        return advance();
    }

    [[noreturn]] void fail( const token& t, std::vector< std::string > expected )
    {
        _diagnostics.push_back(
            diagnostic{ diagnostic_kind::parse_error, "unexpected " + dsl::describe( t ), span_of( t ),
                        std::move( expected ) } );
        throw syntax_error{};
    }

    void error( const source_span& span, std::string message )
    {
        _diagnostics.push_back( diagnostic{ diagnostic_kind::parse_error, std::move( message ), span, {} } );
    }

    source_span span_of( const token& t ) const
    {
        return source_span{ _file, t.line, t.column, std::max< std::uint32_t >( t.length, 1 ) };
    }

    // Span from `start` to the last consumed token (same line only counts
    // columns; multi-line statements keep the start position).
    source_span span_from( const token& start ) const
    {
        const token& last = _pos > 0 ? _tokens[ _pos - 1 ] : start;
        std::uint32_t length = start.length;
        if ( last.line == start.line && last.column + last.length > start.column )
            length = last.column + last.length - start.column;
        return source_span{ _file, start.line, start.column, std::max< std::uint32_t >( length, 1 ) };
    }

    void synchronize()
    {
        while ( !at( token_kind::end ) )
        {
            if ( accept( token_kind::semicolon ) )
                return;
            if ( at( token_kind::keyword )
                 && ( peek().text == "class" || peek().text == "fluent" || peek().text == "action"
                      || peek().text == "law" || peek().text == "noconcurrency" || peek().text == "default"
                      || peek().text == "observe" || peek().text == "query" ) )
                return;
            advance();
        }
    }

    std::string _file;
    std::vector< token > _tokens;
    std::size_t _pos = 0;
    std::vector< diagnostic > _diagnostics;
};

template < typename T >
void append( std::vector< T >& to, std::vector< T > from )
{
    to.insert( to.end(), std::make_move_iterator( from.begin() ), std::make_move_iterator( from.end() ) );
}

} // namespace

parse_result< domain_description > parse_domain( std::string_view text, std::string file )
{
    parser p{ text, std::move( file ) };
    auto d = p.domain();
    parse_result< domain_description > result;
    if ( !p.has_errors() )
    {
        auto report = validate_domain( d );
        const bool ok = report.ok();
        append( p.diagnostics(), std::move( report.errors ) );
        append( p.diagnostics(), std::move( report.warnings ) );
        if ( ok )
            result.value = std::move( d );
    }
    result.diagnostics = std::move( p.diagnostics() );
    return result;
}

parse_result< std::vector< observation > > parse_observations( std::string_view text, std::string file,
                                                               const domain_description* domain )
{
    parser p{ text, std::move( file ) };
    auto obs = p.observations();
    parse_result< std::vector< observation > > result;
    if ( !p.has_errors() )
    {
        bool ok = true;
        if ( domain != nullptr )
        {
            auto report = validate_observations( *domain, obs );
            ok = report.ok();
            append( p.diagnostics(), std::move( report.errors ) );
        }
        if ( ok )
            result.value = std::move( obs );
    }
    result.diagnostics = std::move( p.diagnostics() );
    return result;
}

parse_result< query > parse_query( std::string_view text, std::string file, const domain_description* domain )
{
    parser p{ text, std::move( file ) };
    auto q = p.parse_query();
    parse_result< query > result;
    if ( !p.has_errors() && q )
    {
        bool ok = true;
        if ( domain != nullptr )
        {
            auto report = validate_query( *domain, *q );
            ok = report.ok();
            append( p.diagnostics(), std::move( report.errors ) );
        }
        if ( ok )
            result.value = std::move( q );
    }
    result.diagnostics = std::move( p.diagnostics() );
    return result;
}

parse_result< std::vector< law::forbids_to_cause > > parse_theory_rules( std::string_view text, std::string origin,
                                                                         std::string file )
{
    parser p{ text, std::move( file ) };
    auto rules = p.theory_rules( origin );
    parse_result< std::vector< law::forbids_to_cause > > result;
    if ( !p.has_errors() )
        result.value = std::move( rules );
    result.diagnostics = std::move( p.diagnostics() );
    return result;
}

std::string read_file( const std::string& path )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        throw std::runtime_error( "cannot open '" + path + "'" );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace cmt
