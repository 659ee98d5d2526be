#include <pathdual/errors.hh>
#include <pathdual/generators.hh>
#include <pathdual/pathwidth.hh>

#include <support/oracles.hh>
#include <support/random_instances.hh>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace pathdual;

using std::move;
using std::size_t;
using std::vector;

namespace
{
    auto path3() -> Structure
    {
        auto s = Structure::with_universe(edge_vocabulary(), {"a", "b", "c"});
        s.add_tuple("E", {"a", "b"});
        s.add_tuple("E", {"b", "c"});
        return s;
    }

    auto all_binary(size_t n) -> vector<Structure>
    {
        vector<Structure> result;
        for (unsigned mask = 0; mask < (1u << (n * n)); ++mask) {
            auto s = Structure::with_size(edge_vocabulary(), n);
            for (size_t bit = 0; bit < n * n; ++bit)
                if (mask >> bit & 1)
                    s.add_tuple(0, {Element(bit / n), Element(bit % n)});
            result.push_back(std::move(s));
        }
        return result;
    }

    /// Classic pathwidth as the vertex separation number, minimised over all orderings.
    auto classic_pathwidth(const Structure & s) -> size_t
    {
        auto n = s.size();
        auto neighbours = gaifman_neighbours(s);
        vector<Element> order(n);
        std::iota(order.begin(), order.end(), 0);
        size_t best = n;
        do {
            size_t worst = 0;
            for (size_t i = 0; i < n; ++i) {
                size_t separated = 0;
                for (size_t u = 0; u <= i; ++u)
                    for (size_t v = i + 1; v < n; ++v)
                        if (neighbours[size_t(order[u])].contains(order[v])) {
                            ++separated;
                            break;
                        }
                worst = std::max(worst, separated);
            }
            best = std::min(best, worst);
        } while (std::next_permutation(order.begin(), order.end()));
        return best;
    }

    auto random_valid_decomposition(random_instances::Rng & rng, size_t n) -> PathDecomposition
    {
        // each element lives on a random interval of a fixed number of bags
        size_t length = 1 + rng() % 5;
        PathDecomposition d{vector<Bag>(length)};
        for (size_t e = 0; e < n; ++e) {
            auto from = rng() % length, to = rng() % length;
            if (from > to)
                std::swap(from, to);
            for (auto i = from; i <= to; ++i)
                d.bags[i].push_back(Element(e));
        }
        return d;
    }

    auto structure_within(random_instances::Rng & rng, size_t n, const PathDecomposition & d) -> Structure
    {
        auto s = Structure::with_size(edge_vocabulary(), n);
        for (auto & bag : d.bags)
            for (auto x : bag)
                for (auto y : bag)
                    if (rng() % 2)
                        s.add_tuple(0, {x, y});
        return s;
    }
}

TEST(CheckPathDecomposition, SingleBagTriangle)
{
    EXPECT_EQ(check_path_decomposition(k_clique(3), {{{0, 1, 2}}}), (WidthPair{0, 3}));
}

TEST(CheckPathDecomposition, PathOfThree)
{
    EXPECT_EQ(check_path_decomposition(path3(), {{{0, 1}, {1, 2}}}), (WidthPair{1, 2}));
}

TEST(CheckPathDecomposition, CyclesHaveWidthTwoThree)
{
    for (size_t n = 3; n <= 8; ++n) {
        PathDecomposition d;
        for (size_t i = 1; i + 1 < n; ++i)
            d.bags.push_back(make_bag({0, Element(i), Element(i + 1)}));
        EXPECT_EQ(check_path_decomposition(sym_cycle(n), d), (WidthPair{n > 3 ? 2u : 0u, 3})) << n;
    }
}

TEST(CheckPathDecomposition, EmptyDecompositionOfEmptyStructure)
{
    EXPECT_EQ(check_path_decomposition(Structure::with_size(edge_vocabulary(), 0), {}), (WidthPair{0, 0}));
}

TEST(CheckPathDecomposition, ReportsUncoveredTuple)
{
    EXPECT_THROW(check_path_decomposition(path3(), {{{0, 1}, {2}}}), DecompositionError);
}

TEST(CheckPathDecomposition, ReportsIntervalViolation)
{
    EXPECT_THROW(check_path_decomposition(path3(), {{{0, 1}, {1, 2}, {0}}}), DecompositionError);
}

TEST(CheckPathDecomposition, ReportsMissingElement)
{
    auto s = path3();
    s.add_element("d");
    EXPECT_THROW(check_path_decomposition(s, {{{0, 1}, {1, 2}}}), DecompositionError);
}

TEST(CheckPathDecomposition, ReportsElementOutsideUniverse)
{
    EXPECT_THROW(check_path_decomposition(path3(), {{{0, 1}, {1, 2, 7}}}), DecompositionError);
}

TEST(Canonicalize, AlreadyCanonicalOnlyGainsEmptyBag)
{
    PathDecomposition d{{{0, 1}, {1}, {1, 2}}};
    EXPECT_EQ(canonicalize_decomposition(path3(), d).bags, (vector<Bag>{{0, 1}, {1}, {1, 2}, {}}));
}

TEST(Canonicalize, InsertsIntersections)
{
    auto c = canonicalize_decomposition(path3(), {{{0, 1}, {1, 2}}});
    EXPECT_EQ(c.bags, (vector<Bag>{{0, 1}, {1}, {1, 2}, {}}));
    EXPECT_TRUE(is_canonical(c));
}

TEST(Canonicalize, RejectsInvalidInput)
{
    EXPECT_THROW(canonicalize_decomposition(path3(), {{{0, 1}, {2}}}), DecompositionError);
}

TEST(Canonicalize, PreservesValidityAndWidthOnRandomDecompositions)
{
    random_instances::Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        auto n = 1 + size_t(rng() % 6);
        auto d = random_valid_decomposition(rng, n);
        auto s = structure_within(rng, n, d);
        bool complete = true;
        for (size_t e = 0; e < n; ++e)
            complete = complete && std::any_of(d.bags.begin(), d.bags.end(), [&](auto & b) { return std::count(b.begin(), b.end(), Element(e)); });
        if (! complete)
            continue;
        auto before = check_path_decomposition(s, d);
        auto c = canonicalize_decomposition(s, d);
        auto after = check_path_decomposition(s, c);
        EXPECT_TRUE(is_canonical(c));
        EXPECT_EQ(after.k, before.k);
        EXPECT_LE(after.j, before.j);
        EXPECT_EQ(canonicalize_decomposition(s, c), c);
    }
}

TEST(Canonicalize, PrefixingWithSubsetOfFirstBagStaysValid)
{
    random_instances::Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        auto n = 1 + size_t(rng() % 5);
        auto d = random_valid_decomposition(rng, n);
        auto s = structure_within(rng, n, d);
        try {
            check_path_decomposition(s, d);
        }
        catch (const DecompositionError &) {
            continue;
        }
        Bag prefix;
        for (auto x : d.bags.front())
            if (rng() % 2)
                prefix.push_back(x);
        auto longer = d;
        longer.bags.insert(longer.bags.begin(), prefix);
        EXPECT_NO_THROW(check_path_decomposition(s, longer));
    }
}

TEST(MinimalWidths, SingleVertex)
{
    EXPECT_EQ(minimal_widths(Structure::with_size(edge_vocabulary(), 1), 3), (vector<WidthPair>{{0, 1}}));
}

TEST(MinimalWidths, PathOfThreeContainsOneTwo)
{
    auto w = minimal_widths(path3(), 3);
    EXPECT_NE(std::find(w.begin(), w.end(), WidthPair{1, 2}), w.end());
}

TEST(MinimalWidths, TriangleNeedsThree)
{
    auto w = minimal_widths(k_clique(3), 3);
    EXPECT_EQ(w, (vector<WidthPair>{{0, 3}}));
    EXPECT_TRUE(find_decomposition(k_clique(3), {2, 3}));
    EXPECT_FALSE(find_decomposition(k_clique(3), {2, 2}));
}

TEST(MinimalWidths, EmptyWhenCapTooSmall)
{
    EXPECT_TRUE(minimal_widths(k_clique(4), 3).empty());
}

TEST(FindDecomposition, AgreesWithOracleOnAllSmallStructures)
{
    for (size_t n = 1; n <= 3; ++n)
        for (auto & s : all_binary(n))
            for (size_t k = 1; k <= 3; ++k)
                for (size_t j = 0; j <= k; ++j) {
                    auto d = find_decomposition(s, {j, k});
                    ASSERT_EQ(d.has_value(), oracles::has_decomposition(s, {j, k}));
                    if (d)
                        ASSERT_TRUE(fits_within(check_path_decomposition(s, *d), {j, k}));
                }
}

TEST(FindDecomposition, AgreesWithOracleOnRandomFourElementStructures)
{
    random_instances::Rng rng(4);
    Vocabulary v{{"E", 2}, {"T", 3}};
    for (int i = 0; i < 60; ++i) {
        auto s = random_instances::structure(rng, v, 4, 0.08);
        for (size_t k = 1; k <= 4; ++k)
            for (size_t j = 0; j <= k; ++j)
                EXPECT_EQ(find_decomposition(s, {j, k}).has_value(), oracles::has_decomposition(s, {j, k}));
    }
}

TEST(FindDecomposition, GaifmanConsistency)
{
    for (size_t n = 1; n <= 4; ++n)
        for (auto & s : all_binary(n)) {
            size_t k = 1;
            while (! find_decomposition(s, {k - 1, k}))
                ++k;
            ASSERT_EQ(k, classic_pathwidth(s) + 1);
        }
}

TEST(StructureSpace, BitsAreSymbolMajorLexicographic)
{
    StructureSpace space(Vocabulary{{"U", 1}, {"E", 2}}, 2);
    EXPECT_EQ(space.bits(), 6u);
    EXPECT_EQ(space.fact(0), (std::pair<size_t, Tuple>{0, {0}}));
    EXPECT_EQ(space.fact(2), (std::pair<size_t, Tuple>{1, {0, 0}}));
    EXPECT_EQ(space.bit_of(1, {1, 0}), 4u);
    auto s = space.structure(0b010001);
    EXPECT_EQ(space.mask_of(s), 0b010001u);
    EXPECT_EQ(s.name(0), "1");
}

TEST(EnumerateStructures, OneElementGivesTwo)
{
    auto e = enumerate_structures(edge_vocabulary(), 1, 0, 1);
    size_t count = 0;
    while (e.next())
        ++count;
    EXPECT_EQ(count, 2u);
}

TEST(EnumerateStructures, CountMatchesOracleFilter)
{
    size_t expected = 0;
    for (size_t n = 1; n <= 2; ++n)
        for (auto & s : all_binary(n))
            if (oracles::has_decomposition(s, {1, 2}))
                ++expected;

    auto e = enumerate_structures(edge_vocabulary(), 2, 1, 2);
    size_t count = 0;
    while (auto item = e.next()) {
        ++count;
        EXPECT_TRUE(fits_within(check_path_decomposition(item->structure, item->decomposition), {1, 2}));
    }
    EXPECT_EQ(count, expected);
}

TEST(EnumerateStructures, EveryEmittedPairVerifiesAndRestartRepeats)
{
    auto e = enumerate_structures(Vocabulary{{"E", 2}, {"U", 1}}, 3, 1, 2);
    vector<Structure> first;
    while (auto item = e.next()) {
        EXPECT_TRUE(fits_within(check_path_decomposition(item->structure, item->decomposition), {1, 2}));
        first.push_back(item->structure);
    }
    e.restart();
    size_t i = 0;
    while (auto item = e.next())
        EXPECT_EQ(item->structure, first.at(i++));
    EXPECT_EQ(i, first.size());
}
