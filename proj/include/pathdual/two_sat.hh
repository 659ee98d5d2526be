#ifndef PATHDUAL_GUARD_PATHDUAL_TWO_SAT_HH
#define PATHDUAL_GUARD_PATHDUAL_TWO_SAT_HH 1

#include <cstddef>
#include <optional>
#include <vector>

namespace pathdual
{
    struct Literal2
    {
        std::size_t variable;
        bool positive;

        auto operator<=>(const Literal2 &) const = default;
    };

    /// Implication graph plus strongly connected components.
    class TwoSat
    {
    public:
        explicit TwoSat(std::size_t variables);

        auto add_clause(Literal2 a, Literal2 b) -> void;
        auto add_unit(Literal2 a) -> void;

        [[nodiscard]] auto variables() const -> std::size_t;

        /// A satisfying assignment, or nothing.
        [[nodiscard]] auto solve() const -> std::optional<std::vector<bool>>;

    private:
        std::size_t _variables;
        std::vector<std::vector<std::size_t>> _implications;
    };
}

#endif
