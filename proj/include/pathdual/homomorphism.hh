#ifndef PATHDUAL_GUARD_PATHDUAL_HOMOMORPHISM_HH
#define PATHDUAL_GUARD_PATHDUAL_HOMOMORPHISM_HH 1

#include <pathdual/structure.hh>

#include <functional>
#include <optional>
#include <vector>

namespace pathdual
{
    /// Backtracking with forward checking. Variables are chosen by smallest remaining domain,
    /// ties broken by universe order; values are tried in the target's universe order.
    /// Symbols are matched by name, and every symbol of a must occur in b with the same arity.
    auto find_homomorphism(const Structure & a, const Structure & b, const PartialMap & pins = {}) -> std::optional<Assignment>;

    /// Every homomorphism, sorted lexicographically. For an empty a with no 0-ary facts, this is {lambda}.
    auto all_homomorphisms(const Structure & a, const Structure & b) -> std::vector<Assignment>;

    /// Visits homomorphisms extending pins until the callback returns false.
    auto for_each_homomorphism(const Structure & a, const Structure & b, const PartialMap & pins,
        const std::function<bool(const Assignment &)> & callback) -> void;

    [[nodiscard]] auto homomorphic(const Structure & a, const Structure & b) -> bool;

    /// Direct check that every tuple of a is preserved.
    [[nodiscard]] auto is_homomorphism(const Structure & a, const Structure & b, const Assignment & h) -> bool;

    /// For each symbol of a, the index of the same-named symbol in b.
    auto match_vocabularies(const Vocabulary & a, const Vocabulary & b) -> std::vector<std::size_t>;
}

#endif
