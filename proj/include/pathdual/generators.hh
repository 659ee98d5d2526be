#ifndef PATHDUAL_GUARD_PATHDUAL_GENERATORS_HH
#define PATHDUAL_GUARD_PATHDUAL_GENERATORS_HH 1

#include <pathdual/structure.hh>

#include <string_view>

namespace pathdual
{
    /// Vocabulary {E/2}.
    [[nodiscard]] auto edge_vocabulary() -> Vocabulary;

    /// Irreflexive complete graph, both directions.
    auto k_clique(std::size_t k) -> Structure;

    /// Symmetric cycle with E = {(i, i+1 mod n), (i+1 mod n, i)}.
    auto sym_cycle(std::size_t n) -> Structure;

    auto directed_cycle(std::size_t n) -> Structure;

    /// One edge per character: '+' gives (i, i+1), '-' gives (i+1, i).
    auto oriented_path(std::string_view shape) -> Structure;

    /// Universe {0, 1} with P0, P1, P2 each missing one pair: (0,0), (0,1), (1,1).
    auto b_2sat() -> Structure;
}

#endif
