#ifndef PATHDUAL_GUARD_PATHDUAL_IMPLICATIONAL_HH
#define PATHDUAL_GUARD_PATHDUAL_IMPLICATIONAL_HH 1

#include <pathdual/game.hh>
#include <pathdual/structure.hh>

#include <map>
#include <optional>
#include <vector>

namespace pathdual
{
    enum class ImplicationalShape
    {
        rectangle,
        injective_graph,
        cross,
        not_implicational
    };

    /// Rectangle: first x second. InjectiveGraph: the graph of function, defined on first.
    /// Cross: ({pivot_first} x second) u (first x {pivot_second}).
    struct ImplicationalForm
    {
        ImplicationalShape shape = ImplicationalShape::not_implicational;
        std::vector<Element> first;
        std::vector<Element> second;
        std::map<Element, Element> function;
        Element pivot_first = -1;
        Element pivot_second = -1;

        auto operator==(const ImplicationalForm &) const -> bool = default;
    };

    /// One form per relation symbol, in vocabulary order. Throws SolverError on a non-binary symbol.
    auto classify_implicational(const Structure & b) -> std::vector<ImplicationalForm>;

    [[nodiscard]] auto is_implicational(const Structure & b) -> bool;

    enum class ArcRule
    {
        unique_forward,
        unique_backward,
        empty_row,
        empty_column
    };

    struct ConflictArc
    {
        std::size_t from;
        std::size_t to;
        ArcRule rule;
        std::size_t symbol;
        Tuple instance_tuple;
    };

    /// Node a * |B| + b stands for (a, b); the last node is the box.
    class ConflictGraph
    {
    public:
        ConflictGraph(std::size_t instance_size, std::size_t template_size);

        [[nodiscard]] auto node(Element a, Element b) const -> std::size_t;
        [[nodiscard]] auto box() const -> std::size_t;
        [[nodiscard]] auto node_count() const -> std::size_t;
        [[nodiscard]] auto instance_size() const -> std::size_t;
        [[nodiscard]] auto template_size() const -> std::size_t;

        /// Parallel arcs are kept once, with the first provenance seen.
        auto add_arc(ConflictArc arc) -> void;

        [[nodiscard]] auto arcs() const -> const std::vector<ConflictArc> &;
        [[nodiscard]] auto outgoing(std::size_t node) const -> const std::vector<std::size_t> &;
        [[nodiscard]] auto has_arc(std::size_t from, std::size_t to) const -> bool;

        /// Arc indices of a shortest path from the start into the target set, if any.
        [[nodiscard]] auto shortest_path(std::size_t start, const std::vector<char> & targets) const
            -> std::optional<std::vector<std::size_t>>;

    private:
        std::size_t _instance_size, _template_size;
        std::vector<ConflictArc> _arcs;
        std::vector<std::vector<std::size_t>> _outgoing;
    };

    auto build_conflict_graph(const Structure & a, const Structure & b) -> ConflictGraph;

    struct ImplicationalVerdict
    {
        bool satisfiable;
        std::optional<Assignment> assignment;
        std::optional<Element> failing_element;
    };

    /// Decides a -> b by reachability. A positive verdict carries a homomorphism from the
    /// backtracking search; SolverError if the two disagree.
    auto solve_implicational(const Structure & a, const Structure & b) -> ImplicationalVerdict;

    /// Width (2,3) structure P with P -> a and P not -> b, glued from one conflict path per value of b.
    auto implicational_obstruction(const Structure & a, const Structure & b) -> Obstruction;
}

#endif
