#include <pathdual/datalog.hh>
#include <pathdual/errors.hh>
#include <pathdual/generators.hh>
#include <pathdual/homomorphism.hh>
#include <pathdual/snp.hh>

#include <support/oracles.hh>
#include <support/random_instances.hh>

#include <gtest/gtest.h>

using namespace pathdual;

using std::move;
using std::size_t;
using std::vector;

namespace
{
    auto so(bool positive, std::string predicate, vector<std::string> arguments) -> SnpLiteral
    {
        return SnpLiteral{positive, LiteralKind::second_order, std::move(predicate), std::move(arguments)};
    }

    auto edb(std::string predicate, vector<std::string> arguments) -> SnpLiteral
    {
        return SnpLiteral{false, LiteralKind::edb, std::move(predicate), std::move(arguments)};
    }

    auto all_graphs(size_t n) -> vector<Structure>
    {
        vector<std::pair<Element, Element>> pairs;
        for (Element x = 0; x < Element(n); ++x)
            for (Element y = x + 1; y < Element(n); ++y)
                pairs.emplace_back(x, y);
        vector<Structure> result;
        for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
            auto g = Structure::with_size(edge_vocabulary(), n);
            for (size_t i = 0; i < pairs.size(); ++i)
                if (mask >> i & 1) {
                    g.add_tuple(0, {pairs[i].first, pairs[i].second});
                    g.add_tuple(0, {pairs[i].second, pairs[i].first});
                }
            result.push_back(std::move(g));
        }
        return result;
    }
}

TEST(DatalogToSnp, OneClausePerRulePlusGoal)
{
    auto p = non_two_colourability_program();
    auto f = datalog_to_snp(p, {2, 4});
    EXPECT_EQ(f.clauses.size(), p.rules().size() + 1);
    EXPECT_EQ(f.so_vocabulary, p.idb());
}

TEST(DatalogToSnp, IntroProgramShape)
{
    auto f = datalog_to_snp(non_two_colourability_program(), {2, 4});
    ASSERT_EQ(f.clauses.front().size(), 1u);
    EXPECT_EQ(f.clauses.front().front(), so(false, "Q", {}));
    for (size_t c = 1; c < f.clauses.size(); ++c) {
        EXPECT_TRUE(f.clauses[c].front().positive);
        for (size_t l = 1; l < f.clauses[c].size(); ++l)
            EXPECT_FALSE(f.clauses[c][l].positive);
    }
    EXPECT_EQ(f.clauses[1], (SnpClause{so(true, "P", {"v1", "v2"}), edb("E", {"v1", "v2"})}));

    auto flags = sentence_flags(f);
    EXPECT_TRUE(flags.krom);
    EXPECT_TRUE(flags.restricted);
    EXPECT_TRUE(flags.monotone);
    EXPECT_LE(flags.adicity, 2u);
    EXPECT_LE(flags.arity, 4u);
}

TEST(DatalogToSnp, RejectsUnboundedProgram)
{
    EXPECT_THROW(datalog_to_snp(non_two_colourability_program(), {2, 3}), ProgramError);
}

TEST(DatalogToSnp, SentenceHoldsExactlyWhenProgramRejects)
{
    random_instances::Rng rng(61);
    for (int i = 0; i < 10; ++i) {
        auto p = random_instances::linear_program(rng);
        auto f = datalog_to_snp(p, {2, 3});
        for (int s = 0; s < 50; ++s) {
            auto a = random_instances::structure(rng, p.edb(), 1 + size_t(s % 4), 0.3);
            EXPECT_EQ(evaluate_snp(f, a), ! accepts(p, a));
        }
    }
}

TEST(SnpToDatalog, IntroRoundTripOnAllSmallGraphs)
{
    auto p = non_two_colourability_program();
    auto q = snp_to_datalog(datalog_to_snp(p, {2, 4}));
    for (size_t n = 1; n <= 5; ++n)
        for (auto & g : all_graphs(n))
            ASSERT_EQ(accepts(q, g), accepts(p, g));
}

TEST(SnpToDatalog, RejectsTwoPositiveSecondOrderLiterals)
{
    KromSnpSentence f{"bad", Vocabulary{{"S", 1}, {"T", 1}}, {"x"}, {{so(true, "S", {"x"}), so(true, "T", {"x"})}}};
    EXPECT_FALSE(sentence_flags(f).restricted);
    EXPECT_THROW(snp_to_datalog(f), SentenceError);
}

TEST(SnpToDatalog, EmptySentenceAcceptsNothing)
{
    KromSnpSentence f{"empty", Vocabulary{{"S", 1}}, {"x"}, {}};
    auto p = snp_to_datalog(f);
    EXPECT_FALSE(accepts(p, Structure::with_size(Vocabulary{}, 3)));
    EXPECT_FALSE(accepts(p, Structure::with_size(Vocabulary{}, 0)));
}

TEST(SnpToDatalog, FreshGoalAvoidsClashes)
{
    KromSnpSentence f{"clash", Vocabulary{{"goal", 0}}, {}, {{so(false, "goal", {})}}};
    auto p = snp_to_datalog(f);
    EXPECT_EQ(p.goal(), "goal'");
}

TEST(EvaluateSnp, IntroSentenceOnCycles)
{
    auto f = datalog_to_snp(non_two_colourability_program(), {2, 4});
    EXPECT_TRUE(evaluate_snp(f, sym_cycle(4)));
    EXPECT_FALSE(evaluate_snp(f, sym_cycle(3)));
    EXPECT_TRUE(oracles::snp_holds(f, sym_cycle(4)));
    EXPECT_FALSE(oracles::snp_holds(f, sym_cycle(3)));
}

TEST(EvaluateSnp, ViolatedGroundClause)
{
    KromSnpSentence f{"noloop", Vocabulary{}, {"v1"}, {{edb("E", {"v1", "v1"})}}};
    auto loop = Structure::with_size(edge_vocabulary(), 1);
    loop.add_tuple(0, {0, 0});
    EXPECT_FALSE(evaluate_snp(f, loop));
    EXPECT_TRUE(ground(f, loop).violated);
    EXPECT_TRUE(evaluate_snp(f, k_clique(2)));
}

TEST(EvaluateSnp, AgreesWithBruteForceOnRandomSentences)
{
    random_instances::Rng rng(67);
    for (int i = 0; i < 10; ++i) {
        auto p = random_instances::linear_program(rng);
        auto f = datalog_to_snp(p, {2, 3});
        for (int s = 0; s < 8; ++s) {
            auto a = random_instances::structure(rng, p.edb(), 1 + size_t(s % 2), 0.4);
            EXPECT_EQ(evaluate_snp(f, a), oracles::snp_holds(f, a));
        }
    }
}

TEST(EvaluateSnp, EqualityLiterals)
{
    // the first clause forces S(x) when x = y; a self-loop on y forbids S(y)
    KromSnpSentence f{"eq", Vocabulary{{"S", 1}}, {"x", "y"},
        {{so(true, "S", {"x"}), SnpLiteral{false, LiteralKind::equality, "=", {"x", "y"}}}, {so(false, "S", {"y"}), edb("E", {"y", "y"})}}};
    auto one = Structure::with_size(edge_vocabulary(), 1);
    EXPECT_TRUE(evaluate_snp(f, one));
    one.add_tuple(0, {0, 0});
    EXPECT_FALSE(evaluate_snp(f, one));
    EXPECT_EQ(evaluate_snp(f, one), oracles::snp_holds(f, one));
}

TEST(EvaluateSnp, MonotoneSentencesAreAntiPreserved)
{
    random_instances::Rng rng(71);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        auto p = random_instances::linear_program(rng);
        auto f = datalog_to_snp(p, {2, 3});
        auto a = random_instances::structure(rng, p.edb(), 3, 0.3);
        auto b = random_instances::structure(rng, p.edb(), 3, 0.5);
        if (! homomorphic(a, b) || ! evaluate_snp(f, b))
            continue;
        EXPECT_TRUE(evaluate_snp(f, a));
        ++checked;
    }
    EXPECT_GT(checked, 10);
}

TEST(ValidateSentence, RejectsUndeclaredVariable)
{
    KromSnpSentence f{"bad", Vocabulary{{"S", 1}}, {"x"}, {{so(true, "S", {"y"})}}};
    EXPECT_THROW(validate_sentence(f), SentenceError);
}
