#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dkb/kb.hpp"

namespace dkb::detail {

struct Token {
    enum class Kind { Ident, Sym, End };
    Kind kind = Kind::End;
    std::string text;
    SourceSpan span;
};

class ParseFailure : public Error {
public:
    ParseFailure(const std::string& msg, SourceSpan s) : Error(msg), span(s) {}
    SourceSpan span;
};

// Identifiers are ASCII [A-Za-z_][A-Za-z0-9_]*; '#' starts a comment.
inline std::vector<Token> tokenize(std::string_view in) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < in.size(); ++k, ++i) {
            if (in[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto is_start = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto is_cont = [&](char c) { return is_start(c) || (c >= '0' && c <= '9'); };

    while (i < in.size()) {
        char c = in[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < in.size() && in[i] != '\n') advance(1);
            continue;
        }
        SourceSpan sp{line, col, 1};
        if (is_start(c)) {
            std::size_t j = i;
            while (j < in.size() && is_cont(in[j])) ++j;
            sp.length = int(j - i);
            out.push_back({Token::Kind::Ident, std::string(in.substr(i, j - i)), sp});
            advance(j - i);
            continue;
        }
        static const char* twos[] = {"[=", "^-", ":-"};
        bool matched = false;
        for (const char* t : twos) {
            if (in.substr(i, 2) == t) {
                sp.length = 2;
                out.push_back({Token::Kind::Sym, t, sp});
                advance(2);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (std::string_view("(),.:@[]?").find(c) != std::string_view::npos) {
            out.push_back({Token::Kind::Sym, std::string(1, c), sp});
            advance(1);
            continue;
        }
        std::string shown = (unsigned char)c >= 0x20 && (unsigned char)c < 0x7f
                                ? std::string(1, c)
                                : "\\x" + std::string(1, "0123456789abcdef"[(unsigned char)c >> 4]) +
                                      std::string(1, "0123456789abcdef"[(unsigned char)c & 15]);
        throw ParseFailure("unexpected character '" + shown + "'", sp);
    }
    out.push_back({Token::Kind::End, "", {line, col, 1}});
    return out;
}

class Cursor {
public:
    explicit Cursor(std::vector<Token> toks) : t_(std::move(toks)) {}

    const Token& peek(std::size_t k = 0) const {
        std::size_t j = std::min(p_ + k, t_.size() - 1);
        return t_[j];
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    bool is_sym(const char* s, std::size_t k = 0) const {
        return peek(k).kind == Token::Kind::Sym && peek(k).text == s;
    }
    bool is_ident(const char* s = nullptr, std::size_t k = 0) const {
        return peek(k).kind == Token::Kind::Ident && (!s || peek(k).text == s);
    }
    const Token& next() {
        const Token& t = t_[p_];
        if (p_ + 1 < t_.size()) ++p_;
        return t;
    }
    bool accept(const char* sym) {
        if (!is_sym(sym)) return false;
        next();
        return true;
    }
    void expect(const char* sym) {
        if (!accept(sym)) fail(std::string("expected '") + sym + "'");
    }
    std::string ident(const char* what = "identifier") {
        if (!is_ident()) fail(std::string("expected ") + what);
        return next().text;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw ParseFailure(msg + ", got " + got, t.span);
    }

private:
    std::vector<Token> t_;
    std::size_t p_ = 0;
};

}  // namespace dkb::detail
