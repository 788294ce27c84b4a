#pragma once

#include "vchain/diagnostic.hpp"

#include <string>
#include <string_view>

namespace vchain::detail {

enum class TokenKind { Ident, String, Number, LBrace, RBrace, Colon, Op, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;   // identifier, decoded string, number or operator spelling
    SourcePos pos;
};

/// Thrown by the lexer and parser on the first unrecoverable syntax error.
struct SyntaxError {
    Diagnostic diagnostic;
};

[[noreturn]] void fail(SourcePos pos, std::string message);

std::string describe(const Token& token);

/// On-demand tokenizer with one token of lookahead. `#` starts a line
/// comment. Columns count UTF-8 code points. The end-of-input token is
/// positioned just past the last real token.
class Lexer {
public:
    explicit Lexer(std::string_view source) : src_(source) {}

    const Token& peek();
    Token next();

private:
    Token scan();
    void skip_trivia();
    char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    bool at_end() const { return pos_ >= src_.size(); }
    void advance();

    std::string_view src_;
    std::size_t pos_ = 0;
    SourcePos here_{1, 1};
    SourcePos last_end_{1, 1};   // just past the last consumed token
    SourcePos end_of_lookahead_{1, 1};
    Token lookahead_;
    bool has_lookahead_ = false;
};

} // namespace vchain::detail
