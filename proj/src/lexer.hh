#ifndef PATHDUAL_GUARD_SRC_LEXER_HH
#define PATHDUAL_GUARD_SRC_LEXER_HH 1

#include <pathdual/errors.hh>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pathdual::innards
{
    enum class TokenKind
    {
        identifier,
        punctuation,
        end
    };

    struct Token
    {
        TokenKind kind;
        std::string text;
        std::size_t line, column;
    };

    /// Identifiers are runs of letters, digits and _ . @ ' - with any trailing dots split off.
    /// Punctuation: ( ) { } ; , / | ! = != :- and a lone dot. '#' starts a comment.
    auto tokenise(std::string_view text) -> std::vector<Token>;

    class TokenStream
    {
    public:
        explicit TokenStream(std::string_view text);

        [[nodiscard]] auto peek(std::size_t ahead = 0) const -> const Token &;
        auto next() -> const Token &;
        [[nodiscard]] auto at_end() const -> bool;
        [[nodiscard]] auto is(std::string_view punctuation, std::size_t ahead = 0) const -> bool;

        auto expect(std::string_view punctuation) -> void;
        auto expect_identifier(std::string_view what) -> std::string;
        auto expect_keyword(std::string_view keyword) -> void;
        auto expect_number(std::string_view what) -> std::size_t;
        auto expect_end() -> void;

        [[noreturn]] auto fail(const std::string & message) const -> void;

    private:
        std::vector<Token> _tokens;
        std::size_t _position = 0;
    };
}

#endif
