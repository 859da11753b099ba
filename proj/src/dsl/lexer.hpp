#pragma once

#include "cmt/diagnostics.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cmt::dsl
{

enum class token_kind
{
    identifier,
    keyword,
    integer,
    lbrace,
    rbrace,
    lparen,
    rparen,
    comma,
    semicolon,
    relation, // != < <= > >=
    end
};

struct token
{
    token_kind kind = token_kind::end;
    std::string text;
    std::uint32_t line = 1;
    std::uint32_t column = 1;
    std::uint32_t length = 0;
};

[[nodiscard]] bool is_keyword( std::string_view word );
[[nodiscard]] std::string describe( const token& t );

// Lexes the whole input. Bad characters become diagnostics and are skipped;
// the returned stream always ends with an `end` token.
std::vector< token > lex( std::string_view text, const std::string& file, std::vector< diagnostic >& diagnostics );

} // namespace cmt::dsl
