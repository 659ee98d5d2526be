#ifndef PATHDUAL_GUARD_PATHDUAL_PATHWIDTH_HH
#define PATHDUAL_GUARD_PATHDUAL_PATHWIDTH_HH 1

#include <pathdual/structure.hh>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace pathdual
{
    /// Sorted, duplicate-free.
    using Bag = std::vector<Element>;

    struct PathDecomposition
    {
        std::vector<Bag> bags;

        auto operator==(const PathDecomposition &) const -> bool = default;
    };

    /// j bounds consecutive-bag intersections, k bounds bag sizes.
    struct WidthPair
    {
        std::size_t j = 0;
        std::size_t k = 0;

        auto operator<=>(const WidthPair &) const = default;
    };

    [[nodiscard]] auto fits_within(const WidthPair & w, const WidthPair & bound) -> bool;

    [[nodiscard]] auto make_bag(std::vector<Element> elements) -> Bag;

    /// Width pair of the bag sequence, without any validity check.
    [[nodiscard]] auto width_of(const PathDecomposition & d) -> WidthPair;

    /// Validates cover, connectivity and that every element occurs in some bag, and returns
    /// the exact width. Throws DecompositionError naming the offending tuple or element.
    auto check_path_decomposition(const Structure & s, const PathDecomposition & d) -> WidthPair;

    [[nodiscard]] auto is_canonical(const PathDecomposition & d) -> bool;

    /// Inserts S_i intersect S_{i+1} between incomparable neighbours and appends an empty bag.
    auto canonicalize_decomposition(const Structure & s, const PathDecomposition & d) -> PathDecomposition;

    /// As above, checking only the connectivity condition.
    auto canonicalize_decomposition(const PathDecomposition & d) -> PathDecomposition;

    /// Exact search for a decomposition of width at most the bound. Intended for small universes.
    auto find_decomposition(const Structure & s, const WidthPair & bound) -> std::optional<PathDecomposition>;

    /// Pareto-minimal achievable widths with j <= k <= k_cap; empty when nothing fits under the cap.
    auto minimal_widths(const Structure & s, std::size_t k_cap) -> std::vector<WidthPair>;

    /// Bit positions for all possible facts over universe {0..n-1}, symbol-major, tuples in
    /// lexicographic order. Bit i of a mask says whether fact i is present.
    class StructureSpace
    {
    public:
        StructureSpace(Vocabulary vocabulary, std::size_t n);

        [[nodiscard]] auto bits() const -> std::size_t;
        [[nodiscard]] auto universe_size() const -> std::size_t;
        [[nodiscard]] auto fact(std::size_t bit) const -> const std::pair<std::size_t, Tuple> &;
        [[nodiscard]] auto bit_of(std::size_t symbol, const Tuple & t) const -> std::size_t;

        /// Universe names are "1".."n".
        [[nodiscard]] auto structure(std::uint64_t mask) const -> Structure;
        [[nodiscard]] auto mask_of(const Structure & s) const -> std::uint64_t;

    private:
        Vocabulary _vocabulary;
        std::size_t _n;
        std::vector<std::pair<std::size_t, Tuple>> _facts;
        std::vector<std::size_t> _offsets;
    };

    struct EnumeratedStructure
    {
        Structure structure;
        PathDecomposition decomposition;
    };

    /// Every structure with universe {1..n}, 1 <= n <= n_max, that has a decomposition of width
    /// at most (j,k), in increasing mask order per n. Restartable.
    class StructureEnumerator
    {
    public:
        StructureEnumerator(Vocabulary vocabulary, std::size_t n_max, std::size_t j, std::size_t k);

        auto next() -> std::optional<EnumeratedStructure>;
        auto restart() -> void;

    private:
        Vocabulary _vocabulary;
        std::size_t _n_max;
        WidthPair _bound;
        std::size_t _n = 1;
        std::uint64_t _mask = 0;
        std::optional<StructureSpace> _space;
        std::map<std::vector<std::uint32_t>, std::optional<PathDecomposition>> _cache;
    };

    auto enumerate_structures(const Vocabulary & vocabulary, std::size_t n_max, std::size_t j, std::size_t k) -> StructureEnumerator;
}

#endif
