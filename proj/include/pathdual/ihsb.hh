#ifndef PATHDUAL_GUARD_PATHDUAL_IHSB_HH
#define PATHDUAL_GUARD_PATHDUAL_IHSB_HH 1

#include <pathdual/pathwidth.hh>
#include <pathdual/structure.hh>

#include <optional>
#include <vector>

namespace pathdual
{
    enum class IhsbSign
    {
        plus,
        minus
    };

    /// A disjunction of literals over the coordinates of a relation.
    struct IhsbClause
    {
        std::vector<std::size_t> positive;
        std::vector<std::size_t> negative;

        auto operator<=>(const IhsbClause &) const = default;
    };

    struct IhsbClass
    {
        IhsbSign sign;
        std::size_t k;
        std::vector<std::vector<IhsbClause>> clauses;
    };

    /// b must have universe {"0", "1"}. Keeps every allowed clause that holds on the relation and
    /// succeeds when those clauses define it exactly.
    auto classify_ihsb(const Structure & b, std::size_t k, IhsbSign sign) -> std::optional<IhsbClass>;

    [[nodiscard]] auto ihsb_duality_width(const Structure & b, const IhsbClass & c) -> WidthPair;

    struct IhsbVerdict
    {
        bool satisfiable;
        std::optional<Assignment> assignment;
    };

    auto solve_ihsb(const Structure & a, const Structure & b, const IhsbClass & c) -> IhsbVerdict;
}

#endif
