#ifndef PATHDUAL_GUARD_PATHDUAL_TWO_SAT_ENCODING_HH
#define PATHDUAL_GUARD_PATHDUAL_TWO_SAT_ENCODING_HH 1

#include <pathdual/structure.hh>

#include <utility>
#include <vector>

namespace pathdual
{
    /// Literals follow DIMACS: +i is variable i, -i its negation, variables numbered from 1.
    struct TwoCnf
    {
        std::size_t variables = 0;
        std::vector<std::pair<int, int>> clauses;

        auto operator==(const TwoCnf &) const -> bool = default;
    };

    /// Vocabulary {P0/2, P1/2, P2/2}.
    [[nodiscard]] auto b_2sat_vocabulary() -> Vocabulary;

    /// Universe x1..xn. Positive clauses go to P0, mixed ones to P1 with the positive variable
    /// first, negative ones to P2.
    auto encode_2sat(const TwoCnf & cnf) -> Structure;

    /// Reads a structure over the P0/P1/P2 vocabulary back as clauses, numbering elements from 1.
    auto decode_2sat(const Structure & s) -> TwoCnf;

    [[nodiscard]] auto satisfies(const TwoCnf & cnf, const std::vector<bool> & values) -> bool;
}

#endif
