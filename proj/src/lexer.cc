#include "lexer.hh"

#include <cctype>

using namespace pathdual;
using namespace pathdual::innards;

using std::move;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace
{
    auto is_identifier_char(char c) -> bool
    {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '@' || c == '\'' || c == '-';
    }
}

auto pathdual::innards::tokenise(string_view text) -> vector<Token>
{
    vector<Token> result;
    size_t line = 1, column = 1, i = 0;

    auto advance = [&](size_t n) {
        for (size_t m = 0; m < n; ++m, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            }
            else
                ++column;
        }
    };

    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        }
        else if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
        }
        else if (text.substr(i, 2) == ":-" || text.substr(i, 2) == "!=") {
            result.push_back(Token{TokenKind::punctuation, string(text.substr(i, 2)), line, column});
            advance(2);
        }
        else if (string_view("(){};,/|!=").find(c) != string_view::npos) {
            result.push_back(Token{TokenKind::punctuation, string(1, c), line, column});
            advance(1);
        }
        else if (is_identifier_char(c)) {
            size_t j = i;
            while (j < text.size() && is_identifier_char(text[j]))
                ++j;
            size_t end = j;
            while (end > i && text[end - 1] == '.')
                --end;
            if (end > i) {
                result.push_back(Token{TokenKind::identifier, string(text.substr(i, end - i)), line, column});
                advance(end - i);
            }
            while (i < j) {
                result.push_back(Token{TokenKind::punctuation, ".", line, column});
                advance(1);
            }
        }
        else
            throw ParseError(string("unexpected character '") + c + "'", line, column);
    }
    result.push_back(Token{TokenKind::end, "", line, column});
    return result;
}

TokenStream::TokenStream(string_view text) :
    _tokens(tokenise(text))
{
}

auto TokenStream::peek(size_t ahead) const -> const Token &
{
    auto p = std::min(_position + ahead, _tokens.size() - 1);
    return _tokens[p];
}

auto TokenStream::next() -> const Token &
{
    auto & t = _tokens[_position];
    if (_position + 1 < _tokens.size())
        ++_position;
    return t;
}

auto TokenStream::at_end() const -> bool
{
    return peek().kind == TokenKind::end;
}

auto TokenStream::is(string_view punctuation, size_t ahead) const -> bool
{
    auto & t = peek(ahead);
    return t.kind == TokenKind::punctuation && t.text == punctuation;
}

auto TokenStream::fail(const string & message) const -> void
{
    auto & t = peek();
    throw ParseError(message + (t.kind == TokenKind::end ? " at end of input" : " near '" + t.text + "'"), t.line, t.column);
}

auto TokenStream::expect(string_view punctuation) -> void
{
    if (! is(punctuation))
        fail("expected '" + string(punctuation) + "'");
    next();
}

auto TokenStream::expect_identifier(string_view what) -> string
{
    if (peek().kind != TokenKind::identifier)
        fail("expected " + string(what));
    return next().text;
}

auto TokenStream::expect_keyword(string_view keyword) -> void
{
    if (peek().kind != TokenKind::identifier || peek().text != keyword)
        fail("expected keyword '" + string(keyword) + "'");
    next();
}

auto TokenStream::expect_number(string_view what) -> size_t
{
    auto & t = peek();
    if (t.kind != TokenKind::identifier || t.text.empty() || t.text.find_first_not_of("0123456789") != string::npos)
        fail("expected " + string(what));
    return std::stoul(next().text);
}

auto TokenStream::expect_end() -> void
{
    if (! at_end())
        fail("unexpected trailing input");
}
