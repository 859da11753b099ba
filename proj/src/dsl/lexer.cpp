#include "dsl/lexer.hpp"

#include <algorithm>
#include <array>

namespace cmt::dsl
{

namespace
{

constexpr std::array keywords = { "action",  "allows",      "at",       "causes",          "class",
                                  "contravenes", "default", "env",      "f",               "facilitates",
                                  "fluent",  "forbids_to_cause", "goal", "horizon",        "human",
                                  "if",      "influences",  "inhibits", "law",             "neg",
                                  "noconcurrency", "observe", "occurs_at", "ordered",      "query",
                                  "triggers", "with" };

bool ident_start( char c ) { return c >= 'a' && c <= 'z'; }
bool ident_char( char c ) { return ident_start( c ) || ( c >= '0' && c <= '9' ) || c == '_'; }
bool digit( char c ) { return c >= '0' && c <= '9'; }

} // namespace

bool is_keyword( std::string_view word )
{
    return std::find( keywords.begin(), keywords.end(), word ) != keywords.end();
}

std::string describe( const token& t )
{
    switch ( t.kind )
    {
    case token_kind::identifier: return "identifier '" + t.text + "'";
    case token_kind::keyword: return "keyword '" + t.text + "'";
    case token_kind::integer: return "integer " + t.text;
    case token_kind::end: return "end of input";
    default: return "'" + t.text + "'";
    }
}

std::vector< token > lex( std::string_view text, const std::string& file, std::vector< diagnostic >& diagnostics )
{
    std::vector< token > out;
    std::uint32_t line = 1;
    std::uint32_t column = 1;
    std::size_t i = 0;

    auto push = [ & ]( token_kind kind, std::size_t start, std::size_t len ) {
        out.push_back( token{ kind, std::string{ text.substr( start, len ) }, line, column,
                              static_cast< std::uint32_t >( len ) } );
        column += static_cast< std::uint32_t >( len );
        i = start + len;
    };

    while ( i < text.size() )
    {
        const char c = text[ i ];
        if ( c == '\n' )
        {
            ++line;
            column = 1;
            ++i;
            continue;
        }
        if ( c == ' ' || c == '\t' || c == '\r' )
        {
            ++column;
            ++i;
            continue;
        }
        if ( c == '#' )
        {
            while ( i < text.size() && text[ i ] != '\n' )
                ++i;
            continue;
        }
        if ( ident_start( c ) )
        {
            std::size_t j = i;
            while ( j < text.size() && ident_char( text[ j ] ) )
                ++j;
            const auto word = text.substr( i, j - i );
            push( is_keyword( word ) ? token_kind::keyword : token_kind::identifier, i, j - i );
            continue;
        }
        if ( digit( c ) )
        {
            std::size_t j = i;
            while ( j < text.size() && digit( text[ j ] ) )
                ++j;
            push( token_kind::integer, i, j - i );
            continue;
        }
        switch ( c )
        {
        case '{': push( token_kind::lbrace, i, 1 ); continue;
        case '}': push( token_kind::rbrace, i, 1 ); continue;
        case '(': push( token_kind::lparen, i, 1 ); continue;
        case ')': push( token_kind::rparen, i, 1 ); continue;
        case ',': push( token_kind::comma, i, 1 ); continue;
        case ';': push( token_kind::semicolon, i, 1 ); continue;
        case '<':
        case '>':
            push( token_kind::relation, i, i + 1 < text.size() && text[ i + 1 ] == '=' ? 2 : 1 );
            continue;
        case '!':
            if ( i + 1 < text.size() && text[ i + 1 ] == '=' )
            {
                push( token_kind::relation, i, 2 );
                continue;
            }
            break;
        default: break;
        }

        // Anything else is reported once per run of bad bytes.
        std::size_t j = i;
        while ( j < text.size() )
        {
            const char b = text[ j ];
            if ( b == '\n' || b == ' ' || b == '\t' || b == '\r' || b == '#' || ident_start( b ) || digit( b )
                 || std::string_view{ "{}(),;<>" }.find( b ) != std::string_view::npos
                 || ( b == '!' && j + 1 < text.size() && text[ j + 1 ] == '=' ) )
                break;
            ++j;
        }
        std::string shown;
        for ( std::size_t k = i; k < j && shown.size() < 16; ++k )
        {
            const auto b = static_cast< unsigned char >( text[ k ] );
            if ( b >= 0x20 && b < 0x7f )
                shown += static_cast< char >( b );
            else
            {
                static const char hex[] = "0123456789abcdef";
                shown += "\\x";
                shown += hex[ b >> 4 ];
                shown += hex[ b & 0xf ];
            }
        }
        diagnostics.push_back( diagnostic{ diagnostic_kind::lex_error,
                                           "unexpected character(s) '" + shown + "'",
                                           source_span{ file, line, column, static_cast< std::uint32_t >( j - i ) },
                                           {} } );
        column += static_cast< std::uint32_t >( j - i );
        i = j;
    }
    out.push_back( token{ token_kind::end, "", line, column, 0 } );
    return out;
}

} // namespace cmt::dsl
