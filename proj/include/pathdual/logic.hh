#ifndef PATHDUAL_GUARD_PATHDUAL_LOGIC_HH
#define PATHDUAL_GUARD_PATHDUAL_LOGIC_HH 1

#include <pathdual/pathwidth.hh>
#include <pathdual/structure.hh>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace pathdual
{
    struct FormulaNode;

    /// Immutable existential-positive formula; copies share structure.
    class Formula
    {
    public:
        explicit Formula(std::shared_ptr<const FormulaNode> node);

        [[nodiscard]] auto node() const -> const FormulaNode &;

        auto operator==(const Formula & other) const -> bool;

    private:
        std::shared_ptr<const FormulaNode> _node;
    };

    struct TrueFormula
    {
        auto operator==(const TrueFormula &) const -> bool = default;
    };

    struct FalseFormula
    {
        auto operator==(const FalseFormula &) const -> bool = default;
    };

    struct AtomFormula
    {
        std::string relation;
        std::vector<std::string> arguments;

        auto operator==(const AtomFormula &) const -> bool = default;
    };

    struct EqualityFormula
    {
        std::string lhs, rhs;

        auto operator==(const EqualityFormula &) const -> bool = default;
    };

    struct AndFormula
    {
        std::vector<Formula> conjuncts;

        auto operator==(const AndFormula &) const -> bool = default;
    };

    struct OrFormula
    {
        std::vector<Formula> disjuncts;

        auto operator==(const OrFormula &) const -> bool = default;
    };

    struct ExistsFormula
    {
        std::string variable;
        Formula body;

        auto operator==(const ExistsFormula &) const -> bool = default;
    };

    struct FormulaNode
    {
        std::variant<TrueFormula, FalseFormula, AtomFormula, EqualityFormula, AndFormula, OrFormula, ExistsFormula> value;
    };

    [[nodiscard]] auto make_true() -> Formula;
    [[nodiscard]] auto make_false() -> Formula;
    [[nodiscard]] auto make_atom(std::string relation, std::vector<std::string> arguments) -> Formula;
    [[nodiscard]] auto make_equality(std::string lhs, std::string rhs) -> Formula;

    /// No conjuncts gives TRUE, one conjunct gives that conjunct.
    [[nodiscard]] auto make_and(std::vector<Formula> conjuncts) -> Formula;

    /// No disjuncts gives FALSE, one disjunct gives that disjunct.
    [[nodiscard]] auto make_or(std::vector<Formula> disjuncts) -> Formula;

    [[nodiscard]] auto make_exists(std::string variable, Formula body) -> Formula;

    /// Nests one quantifier per variable, the first variable outermost.
    [[nodiscard]] auto make_exists(const std::vector<std::string> & variables, Formula body) -> Formula;

    [[nodiscard]] auto free_variables(const Formula & f) -> std::set<std::string>;

    /// Every variable name occurring anywhere, bound or free.
    [[nodiscard]] auto variable_names(const Formula & f) -> std::set<std::string>;

    [[nodiscard]] auto is_quantifier_free(const Formula & f) -> bool;
    [[nodiscard]] auto is_sentence(const Formula & f) -> bool;

    using VariableAssignment = std::map<std::string, Element>;

    /// Tarskian truth. Throws FormulaError on an unbound free variable or unknown relation.
    auto evaluate(const Structure & d, const Formula & f, const VariableAssignment & assignment = {}) -> bool;

    /// Conjunction of one atom per tuple of A restricted to the listed elements, over v1..vm, each
    /// element written with the lowest index at which it occurs, plus vi = vj for every pair of
    /// positions holding the same element.
    auto theta_query(const Structure & a, const std::vector<Element> & elements) -> Formula;

    struct RestrictionReport
    {
        std::size_t budget_k = 0;
        std::size_t conj_bound_j = 0;
        bool ok = true;
        /// Child indices from the root to the offending subformula.
        std::vector<std::size_t> offending_path;
        std::string reason;
    };

    /// At most k distinct variables, and in every conjunction each conjunct with more than j free
    /// variables is quantifier-free and at most one quantified conjunct is not a sentence.
    auto check_restriction(const Formula & f, std::size_t j, std::size_t k) -> RestrictionReport;

    struct CompiledFormula
    {
        Formula formula;
        /// Variable names given to the elements of the first bag.
        std::map<Element, std::string> first_bag_variables;
    };

    /// The formula built along the decomposition, free in the variables of the first bag.
    auto compile_decomposition_to_open_formula(const Structure & p, const PathDecomposition & d,
        const std::optional<WidthPair> & bound = std::nullopt) -> CompiledFormula;

    /// A sentence satisfied by D exactly when P maps to D. The decomposition must be canonical.
    auto compile_decomposition_to_formula(const Structure & p, const PathDecomposition & d,
        const std::optional<WidthPair> & bound = std::nullopt) -> Formula;

    /// S-expressions: (exists x F), (and F...), (or F...), (= x y), (R x y). TRUE is (and), FALSE is (or).
    [[nodiscard]] auto format_formula(const Formula & f) -> std::string;
    auto parse_formula(const std::string & text) -> Formula;
}

#endif
