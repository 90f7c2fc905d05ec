#pragma once

#include <string>
#include <vector>

#include "gatwb/dsl.hpp"

namespace gatwb::dsl {

enum class Tok {
    Ident,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Equals,
    Tilde,
    Arrow,   // ->
    MapsTo,  // |->
    End,
    Bad,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

std::vector<Token> lex(const std::string& text, std::vector<Diagnostic>& diags);

// Shared recursive-descent state over a token stream.
struct Cursor {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    std::vector<Diagnostic>& diags;

    const Token& peek(int ahead = 0) const {
        std::size_t i = pos + static_cast<std::size_t>(ahead);
        return i < toks.size() ? toks[i] : toks.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (pos < toks.size() - 1) ++pos;
        return t;
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        next();
        return true;
    }
    bool expect(Tok k, const std::string& what) {
        if (accept(k)) return true;
        error("expected " + what + ", got '" + peek().text + "'");
        return false;
    }
    void error(const std::string& msg) {
        diags.push_back({Diagnostic::Severity::Error, msg, peek().line, peek().col});
    }
    void error_at(const Token& t, const std::string& msg) {
        diags.push_back({Diagnostic::Severity::Error, msg, t.line, t.col});
    }
};

} // namespace gatwb::dsl
