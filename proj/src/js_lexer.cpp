#include "vulnreach/js/lexer.hpp"

#include <array>
#include <cstring>

namespace vulnreach::js {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

// Non-ASCII bytes count as identifier characters; that accepts a superset
// of Unicode identifiers, and files using exotic whitespace fail loudly in
// the parser instead of being silently misread.
bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
           static_cast<unsigned char>(c) >= 0x80;
}
bool is_ident_part(char c) { return is_ident_start(c) || is_digit(c); }

void append_codepoint(std::string& out, std::uint32_t cp) {
    if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0xFFFD;  // lone surrogate
    if (cp > 0x10FFFF) cp = 0xFFFD;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Longest-match punctuator table ('?'-family is handled separately).
constexpr std::array<std::string_view, 49> kPuncts = {
    ">>>=",
    "===", "!==", "**=", "<<=", ">>=", ">>>", "&&=", "||=", "...",
    "=>", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=",
    "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "**",
    "{", "}", "(", ")", "[", "]", ";", ",", "<", ">", "+", "-", "*", "/",
    "%", "&", "|", "^", "!",
};

}  // namespace

Lexer::Lexer(std::string_view source) : src_(source) {
    // UTF-8 BOM
    if (src_.size() >= 3 && src_.compare(0, 3, "\xEF\xBB\xBF") == 0) pos_ = 3;
    // hashbang
    if (src_.compare(pos_, 2, "#!") == 0) {
        while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') pos_++;
    }
}

void Lexer::advance() {
    char c = src_[pos_];
    if (c == '\n') {
        line_++;
        col_ = 1;
        pos_++;
    } else if (c == '\r') {
        line_++;
        col_ = 1;
        pos_++;
        if (pos_ < src_.size() && src_[pos_] == '\n') pos_++;
    } else if (static_cast<unsigned char>(c) == 0xE2 && pos_ + 2 < src_.size() &&
               static_cast<unsigned char>(src_[pos_ + 1]) == 0x80 &&
               (static_cast<unsigned char>(src_[pos_ + 2]) == 0xA8 ||
                static_cast<unsigned char>(src_[pos_ + 2]) == 0xA9)) {
        line_++;  // U+2028 / U+2029
        col_ = 1;
        pos_ += 3;
    } else {
        col_++;
        pos_++;
    }
}

bool Lexer::skip_whitespace_and_comments() {
    bool newline = false;
    while (pos_ < src_.size()) {
        char c = src_[pos_];
        if (c == '\n' || c == '\r') {
            newline = true;
            advance();
        } else if (c == ' ' || c == '\t' || c == '\v' || c == '\f') {
            advance();
        } else if (static_cast<unsigned char>(c) == 0xC2 && pos_ + 1 < src_.size() &&
                   static_cast<unsigned char>(src_[pos_ + 1]) == 0xA0) {
            col_++;  // NBSP
            pos_ += 2;
        } else if (static_cast<unsigned char>(c) == 0xEF && src_.compare(pos_, 3, "\xEF\xBB\xBF") == 0) {
            pos_ += 3;
        } else if (static_cast<unsigned char>(c) == 0xE2 && pos_ + 2 < src_.size() &&
                   static_cast<unsigned char>(src_[pos_ + 1]) == 0x80 &&
                   (static_cast<unsigned char>(src_[pos_ + 2]) == 0xA8 ||
                    static_cast<unsigned char>(src_[pos_ + 2]) == 0xA9)) {
            newline = true;
            advance();
        } else if (c == '/' && peek(1) == '/') {
            while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') advance();
        } else if (c == '/' && peek(1) == '*') {
            std::uint32_t l = line_, co = col_;
            advance();
            advance();
            bool closed = false;
            while (pos_ < src_.size()) {
                if (src_[pos_] == '*' && peek(1) == '/') {
                    advance();
                    advance();
                    closed = true;
                    break;
                }
                if (src_[pos_] == '\n' || src_[pos_] == '\r') newline = true;
                advance();
            }
            if (!closed) throw ParseError("unterminated block comment", l, co);
        } else {
            break;
        }
    }
    return newline;
}

std::uint32_t Lexer::skip_trivia(std::uint32_t from) const {
    Lexer probe(src_);
    probe.pos_ = from;
    probe.skip_whitespace_and_comments();
    return probe.pos_;
}

Token Lexer::make(Tok kind, std::uint32_t start, std::uint32_t line, std::uint32_t col,
                  bool newline, std::string text) const {
    Token t;
    t.kind = kind;
    t.start = start;
    t.end = pos_;
    t.line = line;
    t.col = col;
    t.newline_before = newline;
    t.text = std::move(text);
    return t;
}

void Lexer::rewind(const Token& at) {
    pos_ = at.start;
    line_ = at.line;
    col_ = at.col;
}

std::string Lexer::scan_escape() {
    // called with pos_ at the backslash
    std::uint32_t l = line_, c = col_;
    advance();  // backslash
    if (pos_ >= src_.size()) throw ParseError("unterminated escape sequence", l, c);
    char e = src_[pos_];
    switch (e) {
        case 'n': advance(); return "\n";
        case 't': advance(); return "\t";
        case 'r': advance(); return "\r";
        case 'b': advance(); return "\b";
        case 'f': advance(); return "\f";
        case 'v': advance(); return "\v";
        case '0':
            if (!is_digit(peek(1))) {
                advance();
                return std::string(1, '\0');
            }
            advance();
            return "0";  // legacy octal; value irrelevant here
        case 'x': {
            advance();
            std::uint32_t cp = 0;
            for (int i = 0; i < 2; ++i) {
                if (!is_hex(peek())) throw ParseError("bad \\x escape", l, c);
                cp = cp * 16 + (is_digit(peek()) ? peek() - '0' : (peek() | 0x20) - 'a' + 10);
                advance();
            }
            std::string out;
            append_codepoint(out, cp);
            return out;
        }
        case 'u': {
            advance();
            std::uint32_t cp = 0;
            if (peek() == '{') {
                advance();
                if (!is_hex(peek())) throw ParseError("bad \\u{} escape", l, c);
                while (is_hex(peek())) {
                    cp = cp * 16 + (is_digit(peek()) ? peek() - '0' : (peek() | 0x20) - 'a' + 10);
                    advance();
                }
                if (peek() != '}') throw ParseError("bad \\u{} escape", l, c);
                advance();
            } else {
                for (int i = 0; i < 4; ++i) {
                    if (!is_hex(peek())) throw ParseError("bad \\u escape", l, c);
                    cp = cp * 16 + (is_digit(peek()) ? peek() - '0' : (peek() | 0x20) - 'a' + 10);
                    advance();
                }
                // combine surrogate pairs written as two \u escapes
                if (cp >= 0xD800 && cp <= 0xDBFF && peek() == '\\' && peek(1) == 'u') {
                    std::uint32_t save_pos = pos_, save_line = line_, save_col = col_;
                    advance();
                    advance();
                    std::uint32_t lo = 0;
                    bool ok = true;
                    for (int i = 0; i < 4; ++i) {
                        if (!is_hex(peek())) {
                            ok = false;
                            break;
                        }
                        lo = lo * 16 + (is_digit(peek()) ? peek() - '0' : (peek() | 0x20) - 'a' + 10);
                        advance();
                    }
                    if (ok && lo >= 0xDC00 && lo <= 0xDFFF) {
                        cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
                    } else {
                        pos_ = save_pos;
                        line_ = save_line;
                        col_ = save_col;
                    }
                }
            }
            std::string out;
            append_codepoint(out, cp);
            return out;
        }
        case '\r':
        case '\n':
            advance();  // line continuation; advance() folds CRLF itself
            return "";
        default:
            advance();
            return std::string(1, e);
    }
}

Token Lexer::lex_string(std::uint32_t start, std::uint32_t line, std::uint32_t col, bool newline) {
    char quote = src_[pos_];
    advance();
    std::string value;
    while (true) {
        if (pos_ >= src_.size()) throw ParseError("unterminated string literal", line, col);
        char c = src_[pos_];
        if (c == quote) {
            advance();
            break;
        }
        if (c == '\n' || c == '\r') throw ParseError("unterminated string literal", line, col);
        if (c == '\\') {
            value += scan_escape();
        } else {
            value.push_back(c);
            advance();
        }
    }
    return make(Tok::Str, start, line, col, newline, std::move(value));
}

Token Lexer::lex_number(std::uint32_t start, std::uint32_t line, std::uint32_t col, bool newline) {
    auto digits = [&](auto pred) {
        bool any = false;
        while (pred(peek()) || (peek() == '_' && pred(peek(1)))) {
            if (peek() == '_') advance();
            advance();
            any = true;
        }
        return any;
    };
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
        advance();
        advance();
        if (!digits(is_hex)) fail("bad hex literal");
    } else if (peek() == '0' && (peek(1) == 'o' || peek(1) == 'O')) {
        advance();
        advance();
        if (!digits([](char c) { return c >= '0' && c <= '7'; })) fail("bad octal literal");
    } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
        advance();
        advance();
        if (!digits([](char c) { return c == '0' || c == '1'; })) fail("bad binary literal");
    } else {
        digits(is_digit);
        if (peek() == '.') {
            advance();
            digits(is_digit);
        }
        if (peek() == 'e' || peek() == 'E') {
            advance();
            if (peek() == '+' || peek() == '-') advance();
            if (!digits(is_digit)) fail("bad exponent");
        }
    }
    if (peek() == 'n') advance();  // BigInt
    if (is_ident_start(peek())) fail("identifier cannot follow a number");
    return make(Tok::Num, start, line, col, newline,
                std::string(src_.substr(start, pos_ - start)));
}

Token Lexer::lex_regex(std::uint32_t start, std::uint32_t line, std::uint32_t col, bool newline) {
    advance();  // '/'
    bool in_class = false;
    while (true) {
        if (pos_ >= src_.size()) throw ParseError("unterminated regular expression", line, col);
        char c = src_[pos_];
        if (c == '\n' || c == '\r') throw ParseError("unterminated regular expression", line, col);
        if (c == '\\') {
            advance();
            if (pos_ >= src_.size()) throw ParseError("unterminated regular expression", line, col);
            advance();
            continue;
        }
        if (c == '[') in_class = true;
        if (c == ']') in_class = false;
        if (c == '/' && !in_class) {
            advance();
            break;
        }
        advance();
    }
    while (is_ident_part(peek())) advance();  // flags
    return make(Tok::Regex, start, line, col, newline,
                std::string(src_.substr(start, pos_ - start)));
}

Token Lexer::lex_template(std::uint32_t start, std::uint32_t line, std::uint32_t col, bool newline,
                          bool head) {
    advance();  // '`' or '}'
    std::string value;
    while (true) {
        if (pos_ >= src_.size()) throw ParseError("unterminated template literal", line, col);
        char c = src_[pos_];
        if (c == '`') {
            advance();
            return make(head ? Tok::TemplateWhole : Tok::TemplateTail, start, line, col, newline,
                        std::move(value));
        }
        if (c == '$' && peek(1) == '{') {
            advance();
            advance();
            return make(head ? Tok::TemplateHead : Tok::TemplateMiddle, start, line, col, newline,
                        std::move(value));
        }
        if (c == '\\') {
            value += scan_escape();
        } else {
            value.push_back(c);
            advance();
        }
    }
}

Token Lexer::template_continue(const Token& brace) {
    rewind(brace);
    if (peek() != '}') fail("expected '}' to continue template literal");
    return lex_template(pos_, line_, col_, false, /*head=*/false);
}

Token Lexer::next(bool regex_ok) {
    bool newline = skip_whitespace_and_comments();
    std::uint32_t start = pos_, line = line_, col = col_;

    if (pos_ >= src_.size()) return make(Tok::Eof, start, line, col, newline, "");

    char c = src_[pos_];

    if (is_ident_start(c)) {
        while (pos_ < src_.size() && is_ident_part(src_[pos_])) advance();
        return make(Tok::Ident, start, line, col, newline,
                    std::string(src_.substr(start, pos_ - start)));
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
        return lex_number(start, line, col, newline);
    }
    if (c == '"' || c == '\'') return lex_string(start, line, col, newline);
    if (c == '`') return lex_template(start, line, col, newline, /*head=*/true);
    if (c == '/' && regex_ok) return lex_regex(start, line, col, newline);

    if (c == '#') {  // private name: '#' + identifier, one token
        advance();
        if (!is_ident_start(peek())) fail("expected identifier after '#'");
        while (pos_ < src_.size() && is_ident_part(src_[pos_])) advance();
        return make(Tok::Ident, start, line, col, newline,
                    std::string(src_.substr(start, pos_ - start)));
    }

    if (c == '?') {  // '?.' unless followed by a digit ("x?.5:y")
        if (peek(1) == '.' && !is_digit(peek(2))) {
            advance();
            advance();
            return make(Tok::Punct, start, line, col, newline, "?.");
        }
        if (peek(1) == '?') {
            if (peek(2) == '=') {
                advance(); advance(); advance();
                return make(Tok::Punct, start, line, col, newline, "?\?=");
            }
            advance();
            advance();
            return make(Tok::Punct, start, line, col, newline, "??");
        }
        advance();
        return make(Tok::Punct, start, line, col, newline, "?");
    }

    for (std::string_view p : kPuncts) {
        if (src_.compare(pos_, p.size(), p) == 0) {
            for (std::size_t i = 0; i < p.size(); ++i) advance();
            return make(Tok::Punct, start, line, col, newline, std::string(p));
        }
    }
    switch (c) {
        case '=': case '.': case ':': case '~': case '@':
            advance();
            return make(Tok::Punct, start, line, col, newline, std::string(1, c));
        default:
            break;
    }
    fail(std::string("unexpected character '") + c + "'");
}

}  // namespace vulnreach::js
