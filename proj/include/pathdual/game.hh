#ifndef PATHDUAL_GUARD_PATHDUAL_GAME_HH
#define PATHDUAL_GUARD_PATHDUAL_GAME_HH 1

#include <pathdual/pathwidth.hh>
#include <pathdual/structure.hh>

#include <optional>
#include <vector>

namespace pathdual
{
    /// Pebbled set I (sorted) and relation T; each map lists images in the order of I. T is sorted.
    struct GameConfiguration
    {
        std::vector<Element> pebbled;
        std::vector<Assignment> relation;

        auto operator==(const GameConfiguration &) const -> bool = default;
    };

    enum class MoveKind
    {
        shrink,
        blow
    };

    struct Move
    {
        MoveKind kind;
        std::vector<Element> target;

        auto operator==(const Move &) const -> bool = default;
    };

    struct SpoilerPlay
    {
        std::vector<Move> moves;

        auto operator==(const SpoilerPlay &) const -> bool = default;
    };

    enum class Winner
    {
        duplicator,
        spoiler
    };

    struct GameOptions
    {
        /// Spoiler only shrinks to sets of size at most j.
        bool restrict_shrinks = true;
    };

    struct GameResult
    {
        Winner winner;
        std::optional<SpoilerPlay> play;
        std::size_t configurations = 0;
    };

    /// (empty set, {lambda}).
    [[nodiscard]] auto initial_configuration() -> GameConfiguration;

    /// Projects every map onto the target, which must be a subset of the pebbled set.
    auto canonical_shrink(const GameConfiguration & c, const std::vector<Element> & to) -> GameConfiguration;

    /// The maximal Duplicator answer: every h in hom(A|to, B) whose restriction lies in T.
    auto canonical_blow(const GameConfiguration & c, const std::vector<Element> & to, const Structure & a, const Structure & b,
        std::size_t j, std::size_t k) -> GameConfiguration;

    /// Configurations after each move, starting with the initial one. Throws GameError on an illegal move.
    auto replay(const Structure & a, const Structure & b, std::size_t j, std::size_t k, const SpoilerPlay & play)
        -> std::vector<GameConfiguration>;

    /// Breadth-first search over configurations under canonical Duplicator answers. A Spoiler win
    /// comes with a shortest play ending in the blow that empties T.
    auto decide_game(const Structure & a, const Structure & b, std::size_t j, std::size_t k, const GameOptions & options = {}) -> GameResult;

    struct Obstruction
    {
        Structure structure;
        PathDecomposition decomposition;
        Assignment to_instance;
    };

    /// Unfolds a winning Spoiler play into P: a copy of A|I_t for each round t, with an element kept
    /// while its pebble stays. One bag per round. Width, P -> A and P -/-> B are re-checked.
    auto extract_obstruction(const Structure & a, const Structure & b, std::size_t j, std::size_t k, const SpoilerPlay & play) -> Obstruction;

    struct DualityReport
    {
        std::vector<Structure> counterexamples;
        std::size_t structures_checked = 0;
    };

    /// Every structure on {1..n}, 1 <= n <= n_max, on which Duplicator wins yet there is no
    /// homomorphism to b.
    auto check_path_duality_bounded(const Structure & b, std::size_t j, std::size_t k, std::size_t n_max) -> DualityReport;
}

#endif
