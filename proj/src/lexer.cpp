#include "lexer.hpp"

#include <cstdio>

namespace vchain::detail {

namespace {

bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9');
}

bool digit(char c) { return c >= '0' && c <= '9'; }

} // namespace

void fail(SourcePos pos, std::string message) {
    throw SyntaxError{{Severity::Error, std::move(message), pos, {}}};
}

std::string describe(const Token& token) {
    switch (token.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::String: return "string \"" + token.text + "\"";
    case TokenKind::Number: return "number " + token.text;
    case TokenKind::Ident: return "'" + token.text + "'";
    default: return "\"" + token.text + "\"";
    }
}

void Lexer::advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
        ++here_.line;
        here_.column = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        ++here_.column;
    }
}

const Token& Lexer::peek() {
    if (!has_lookahead_) {
        lookahead_ = scan();
        end_of_lookahead_ = here_;
        has_lookahead_ = true;
    }
    return lookahead_;
}

Token Lexer::next() {
    peek();
    if (lookahead_.kind != TokenKind::End) last_end_ = end_of_lookahead_;
    has_lookahead_ = false;
    return std::move(lookahead_);
}

void Lexer::skip_trivia() {
    while (!at_end()) {
        const char c = cur();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance();
        } else if (c == '#') {
            while (!at_end() && cur() != '\n') advance();
        } else {
            break;
        }
    }
}

Token Lexer::scan() {
    skip_trivia();
    Token tok;
    tok.pos = here_;
    if (at_end()) {
        tok.pos = last_end_;
        return tok;
    }

    const char c = cur();
    if (ident_start(c)) {
        tok.kind = TokenKind::Ident;
        while (!at_end() && ident_char(cur())) {
            tok.text += cur();
            advance();
        }
        return tok;
    }
    if (digit(c)) {
        tok.kind = TokenKind::Number;
        while (!at_end() && digit(cur())) {
            tok.text += cur();
            advance();
        }
        if (!at_end() && (cur() == '.' || cur() == '/')) {
            tok.text += cur();
            advance();
            if (at_end() || !digit(cur())) fail(here_, "malformed number '" + tok.text + "'");
            while (!at_end() && digit(cur())) {
                tok.text += cur();
                advance();
            }
        }
        if (!at_end() && ident_char(cur())) fail(here_, "malformed number '" + tok.text + "'");
        return tok;
    }
    if (c == '"') {
        tok.kind = TokenKind::String;
        advance();
        for (;;) {
            if (at_end() || cur() == '\n') fail(tok.pos, "unterminated string");
            const char s = cur();
            if (s == '"') {
                advance();
                break;
            }
            if (s == '\\') {
                const SourcePos esc = here_;
                advance();
                if (at_end()) fail(tok.pos, "unterminated string");
                switch (cur()) {
                case '"': tok.text += '"'; break;
                case '\\': tok.text += '\\'; break;
                case 'n': tok.text += '\n'; break;
                case 't': tok.text += '\t'; break;
                default: fail(esc, "unknown escape sequence in string");
                }
                advance();
                continue;
            }
            tok.text += s;
            advance();
        }
        return tok;
    }

    switch (c) {
    case '{': tok.kind = TokenKind::LBrace; tok.text = "{"; advance(); return tok;
    case '}': tok.kind = TokenKind::RBrace; tok.text = "}"; advance(); return tok;
    case ':': tok.kind = TokenKind::Colon; tok.text = ":"; advance(); return tok;
    case '=': tok.kind = TokenKind::Op; tok.text = "="; advance(); return tok;
    case '<':
    case '>':
        tok.kind = TokenKind::Op;
        tok.text = c;
        advance();
        if (!at_end() && cur() == '=') {
            tok.text += '=';
            advance();
        }
        return tok;
    default: break;
    }

    char buf[48];
    const auto byte = static_cast<unsigned char>(c);
    if (byte >= 0x20 && byte < 0x7F)
        std::snprintf(buf, sizeof buf, "unexpected character '%c'", c);
    else
        std::snprintf(buf, sizeof buf, "unexpected byte 0x%02X", byte);
    fail(tok.pos, buf);
}

} // namespace vchain::detail
