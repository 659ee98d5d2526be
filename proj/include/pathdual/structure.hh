#ifndef PATHDUAL_GUARD_PATHDUAL_STRUCTURE_HH
#define PATHDUAL_GUARD_PATHDUAL_STRUCTURE_HH 1

#include <pathdual/errors.hh>

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pathdual
{
    /// Elements are dense indices into a structure's universe; names live in the structure.
    using Element = int;
    using Tuple = std::vector<Element>;
    using TupleSet = std::set<Tuple>;

    /// A total map, indexed by source element.
    using Assignment = std::vector<Element>;

    /// A finite partial map. The empty map plays the role of lambda.
    using PartialMap = std::map<Element, Element>;

    struct RelationSymbol
    {
        std::string name;
        std::size_t arity = 0;

        auto operator==(const RelationSymbol &) const -> bool = default;
    };

    class Vocabulary
    {
    public:
        Vocabulary() = default;
        Vocabulary(std::initializer_list<RelationSymbol> symbols);

        /// Appends a symbol, throwing StructureError on a duplicate name.
        auto add(std::string name, std::size_t arity) -> std::size_t;

        [[nodiscard]] auto find(std::string_view name) const -> std::optional<std::size_t>;
        [[nodiscard]] auto index_of(std::string_view name) const -> std::size_t;
        [[nodiscard]] auto contains(std::string_view name) const -> bool;
        [[nodiscard]] auto size() const -> std::size_t;
        [[nodiscard]] auto empty() const -> bool;
        [[nodiscard]] auto max_arity() const -> std::size_t;
        [[nodiscard]] auto operator[](std::size_t index) const -> const RelationSymbol &;
        [[nodiscard]] auto symbols() const -> const std::vector<RelationSymbol> &;

        auto operator==(const Vocabulary &) const -> bool = default;

    private:
        std::vector<RelationSymbol> _symbols;
    };

    class Structure
    {
    public:
        explicit Structure(Vocabulary vocabulary = {});

        /// Builds a structure whose universe is the given names, in order.
        static auto with_universe(Vocabulary vocabulary, const std::vector<std::string> & names) -> Structure;

        /// Builds a structure with universe "0", "1", ..., "n-1".
        static auto with_size(Vocabulary vocabulary, std::size_t n) -> Structure;

        auto add_element(std::string name) -> Element;

        /// Checked insertion by symbol index.
        auto add_tuple(std::size_t symbol, Tuple tuple) -> void;

        /// Checked insertion by names.
        auto add_tuple(std::string_view symbol, const std::vector<std::string> & element_names) -> void;

        /// No arity or range checks; pair with validate_structure.
        auto add_tuple_unchecked(std::size_t symbol, Tuple tuple) -> void;

        [[nodiscard]] auto vocabulary() const -> const Vocabulary &;
        [[nodiscard]] auto size() const -> std::size_t;
        [[nodiscard]] auto name(Element e) const -> const std::string &;
        [[nodiscard]] auto names() const -> const std::vector<std::string> &;
        [[nodiscard]] auto find(std::string_view name) const -> std::optional<Element>;
        [[nodiscard]] auto element(std::string_view name) const -> Element;
        [[nodiscard]] auto relation(std::size_t symbol) const -> const TupleSet &;
        [[nodiscard]] auto relation(std::string_view symbol) const -> const TupleSet &;
        [[nodiscard]] auto has_tuple(std::size_t symbol, const Tuple & tuple) const -> bool;
        [[nodiscard]] auto tuple_count() const -> std::size_t;
        [[nodiscard]] auto stored_relation_count() const -> std::size_t;

        /// Literal equality: same vocabulary, same universe order and names, same tuples.
        auto operator==(const Structure & other) const -> bool;

    private:
        Vocabulary _vocabulary;
        std::vector<std::string> _names;
        std::map<std::string, Element, std::less<>> _index;
        std::vector<TupleSet> _relations;
    };

    /// Throws StructureError describing the first violated invariant.
    auto validate_structure(const Structure & s) -> void;

    /// Universe is the subset, kept in the original universe order.
    auto induced_substructure(const Structure & s, std::span<const Element> subset) -> Structure;

    /// Elements of the i-th structure are renamed "<i>.<name>".
    auto disjoint_union(std::span<const Structure> structures) -> Structure;

    /// Vocabulary {adj/2}; symmetric and irreflexive.
    auto gaifman_graph(const Structure & s) -> Structure;

    /// Elements occurring together in some tuple, as an adjacency list without self-loops.
    auto gaifman_neighbours(const Structure & s) -> std::vector<std::set<Element>>;

    [[nodiscard]] auto restrict_map(const Assignment & h, std::span<const Element> subset) -> Assignment;
    [[nodiscard]] auto to_partial_map(const Assignment & h) -> PartialMap;
}

#endif
