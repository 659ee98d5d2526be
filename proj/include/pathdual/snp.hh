#ifndef PATHDUAL_GUARD_PATHDUAL_SNP_HH
#define PATHDUAL_GUARD_PATHDUAL_SNP_HH 1

#include <pathdual/datalog.hh>
#include <pathdual/structure.hh>
#include <pathdual/two_sat.hh>

#include <string>
#include <utility>
#include <vector>

namespace pathdual
{
    enum class LiteralKind
    {
        second_order,
        edb,
        equality
    };

    /// An equality literal has predicate "=" and two arguments.
    struct SnpLiteral
    {
        bool positive;
        LiteralKind kind;
        std::string predicate;
        std::vector<std::string> arguments;

        auto operator==(const SnpLiteral &) const -> bool = default;
    };

    using SnpClause = std::vector<SnpLiteral>;

    /// exists S_1..S_l forall v_1..v_m, a conjunction of clauses.
    struct KromSnpSentence
    {
        std::string name;
        Vocabulary so_vocabulary;
        std::vector<std::string> fo_variables;
        std::vector<SnpClause> clauses;

        auto operator==(const KromSnpSentence &) const -> bool = default;
    };

    struct SentenceFlags
    {
        bool krom = true;
        bool restricted = true;
        bool monotone = true;
        bool equality_free = true;
        /// Largest second-order arity.
        std::size_t adicity = 0;
        /// Number of first-order variables.
        std::size_t arity = 0;
    };

    [[nodiscard]] auto sentence_flags(const KromSnpSentence & f) -> SentenceFlags;

    /// Declared variables, second-order arities, and consistent EDB arities. Throws SentenceError.
    auto validate_sentence(const KromSnpSentence & f) -> void;

    /// EDB symbols in order of first occurrence.
    [[nodiscard]] auto edb_vocabulary(const KromSnpSentence & f) -> Vocabulary;

    /// The goal clause first, then one clause per rule with its variables renamed to v1, v2, ...
    auto datalog_to_snp(const Program & p, const WidthPair & bound) -> KromSnpSentence;

    /// Needs a restricted, monotone, equality-free sentence. The program accepts exactly the
    /// structures falsifying the sentence, through a fresh 0-ary goal.
    auto snp_to_datalog(const KromSnpSentence & f) -> Program;

    struct GroundKromFormula
    {
        /// Propositional variable i is the ground second-order atom atoms[i].
        std::vector<std::pair<std::size_t, Tuple>> atoms;
        /// Residual clauses with one or two literals, deduplicated.
        std::vector<std::vector<Literal2>> clauses;
        /// Some ground clause has every literal false with no second-order literal left.
        bool violated = false;
    };

    /// Grounds each clause over assignments to its own variables.
    auto ground(const KromSnpSentence & f, const Structure & a) -> GroundKromFormula;

    /// True when some interpretation of the second-order predicates satisfies every clause.
    auto evaluate_snp(const KromSnpSentence & f, const Structure & a) -> bool;
}

#endif
