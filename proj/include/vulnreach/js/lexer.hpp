#pragma once

/**
 * @file lexer.hpp
 * @brief On-demand JavaScript tokenizer.
 *
 * The `/` ambiguity (division vs. regex literal) is resolved by the parser:
 * it asks for the next token in operand position (`regex_ok = true`) or
 * operator position (`regex_ok = false`), and may rewind and re-lex a
 * cached token when the mode it was lexed under turns out wrong.
 */

#include <cstdint>
#include <string>
#include <string_view>

#include "vulnreach/js/ast.hpp"

namespace vulnreach::js {

enum class Tok : std::uint8_t {
    Eof,
    Ident,           // identifiers and keywords; text is the name
    Num,             // text is raw
    Str,             // text is the cooked value
    Regex,           // text is raw including delimiters and flags
    Punct,           // text is the punctuator
    TemplateWhole,   // `abc`
    TemplateHead,    // `abc${
    TemplateMiddle,  // }abc${
    TemplateTail,    // }abc`
};

struct Token {
    Tok kind = Tok::Eof;
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    std::uint32_t line = 1;
    std::uint32_t col = 1;
    bool newline_before = false;
    std::string text;

    bool is_punct(std::string_view p) const { return kind == Tok::Punct && text == p; }
    bool is_ident(std::string_view name) const { return kind == Tok::Ident && text == name; }
};

class Lexer {
public:
    explicit Lexer(std::string_view source);

    Token next(bool regex_ok);

    /// Re-scan a template continuation whose interpolation ended with the
    /// `}` previously lexed at `brace`.
    Token template_continue(const Token& brace);

    /// Restart lexing from the start of a previously returned token.
    void rewind(const Token& at);

    std::string_view source() const { return src_; }

    /// Byte offset just past the end of trivia following `from`; used for
    /// lightweight lookahead scans.
    std::uint32_t skip_trivia(std::uint32_t from) const;

private:
    std::string_view src_;
    std::uint32_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;

    char peek(std::uint32_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    bool at(std::string_view s) const { return src_.compare(pos_, s.size(), s) == 0; }
    void advance();
    bool skip_whitespace_and_comments();  // returns true if a newline was crossed
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    Token make(Tok kind, std::uint32_t start, std::uint32_t line, std::uint32_t col,
               bool newline, std::string text) const;

    Token lex_string(std::uint32_t start, std::uint32_t line, std::uint32_t col, bool newline);
    Token lex_number(std::uint32_t start, std::uint32_t line, std::uint32_t col, bool newline);
    Token lex_regex(std::uint32_t start, std::uint32_t line, std::uint32_t col, bool newline);
    Token lex_template(std::uint32_t start, std::uint32_t line, std::uint32_t col, bool newline,
                       bool head);
    std::string scan_escape();
};

}  // namespace vulnreach::js
