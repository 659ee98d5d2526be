#ifndef PATHDUAL_GUARD_PATHDUAL_DATALOG_HH
#define PATHDUAL_GUARD_PATHDUAL_DATALOG_HH 1

#include <pathdual/pathwidth.hh>
#include <pathdual/structure.hh>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pathdual
{
    struct Atom
    {
        std::string predicate;
        std::vector<std::string> arguments;

        auto operator==(const Atom &) const -> bool = default;
    };

    struct Rule
    {
        Atom head;
        std::vector<Atom> body;

        auto operator==(const Rule &) const -> bool = default;
    };

    class Program
    {
    public:
        /// Validates the program. When no EDB vocabulary is given it is inferred from the bodies,
        /// in order of first occurrence.
        Program(std::string name, Vocabulary idb, std::string goal, std::vector<Rule> rules,
            std::optional<Vocabulary> edb = std::nullopt, std::optional<WidthPair> declared_bounds = std::nullopt);

        [[nodiscard]] auto name() const -> const std::string &;
        [[nodiscard]] auto edb() const -> const Vocabulary &;
        [[nodiscard]] auto idb() const -> const Vocabulary &;
        [[nodiscard]] auto goal() const -> const std::string &;
        [[nodiscard]] auto rules() const -> const std::vector<Rule> &;
        [[nodiscard]] auto declared_bounds() const -> const std::optional<WidthPair> &;

        /// EDB symbols followed by IDB symbols.
        [[nodiscard]] auto joint_vocabulary() const -> Vocabulary;

        auto operator==(const Program &) const -> bool = default;

    private:
        std::string _name;
        Vocabulary _edb, _idb;
        std::string _goal;
        std::vector<Rule> _rules;
        std::optional<WidthPair> _declared_bounds;
    };

    [[nodiscard]] auto rule_variables(const Rule & r) -> std::vector<std::string>;

    /// (distinct head variables, distinct variables) of a rule.
    [[nodiscard]] auto rule_bounds(const Rule & r) -> WidthPair;

    /// Componentwise maximum over the rules.
    [[nodiscard]] auto program_bounds(const Program & p) -> WidthPair;

    [[nodiscard]] auto is_linear(const Program & p) -> bool;

    /// Throws ProgramError unless every body has at most one IDB atom and the program fits the bound.
    auto require_linear_bounded(const Program & p, const WidthPair & bound) -> void;

    /// The input's universe and EDB relations, with empty IDB relations, over the joint vocabulary.
    auto extend_with_idbs(const Program & p, const Structure & a) -> Structure;

    /// One application of every rule under every grounding. s must carry every EDB and IDB symbol.
    auto immediate_consequence(const Program & p, const Structure & s) -> Structure;

    /// Least fixpoint by semi-naive evaluation; the result is over the joint vocabulary.
    auto least_fixpoint(const Program & p, const Structure & a) -> Structure;

    /// Least fixpoint by iterating immediate_consequence until nothing changes.
    auto least_fixpoint_naive(const Program & p, const Structure & a) -> Structure;

    auto accepts(const Program & p, const Structure & a) -> bool;

    struct DerivationStep
    {
        std::size_t rule;
        std::map<std::string, Element> grounding;

        auto operator==(const DerivationStep &) const -> bool = default;
    };

    /// The chain of rule applications deriving a goal fact, base rule first. Linear programs only.
    auto derivation_trace(const Program & p, const Structure & a) -> std::optional<std::vector<DerivationStep>>;

    struct DerivationWitness
    {
        Structure structure;
        PathDecomposition decomposition;
        Assignment to_input;
        std::vector<DerivationStep> trace;
    };

    /// Unfolds the derivation into a structure P with one bag per step. Its width fits the bound,
    /// P maps to a, and the program accepts P; all three are re-checked before returning.
    /// The bound defaults to the declared bounds, then to program_bounds.
    auto derivation_witness(const Program & p, const Structure & a, const std::optional<WidthPair> & bound = std::nullopt)
        -> std::optional<DerivationWitness>;

    /// P(x,y) :- E(x,y).  P(x,y) :- P(x,z), E(z,u), E(u,y).  Q() :- P(x,x).
    auto non_two_colourability_program() -> Program;
}

#endif
