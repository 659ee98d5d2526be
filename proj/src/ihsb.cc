#include <pathdual/errors.hh>
#include <pathdual/homomorphism.hh>
#include <pathdual/ihsb.hh>

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

using namespace pathdual;

using std::deque;
using std::move;
using std::optional;
using std::set;
using std::size_t;
using std::to_string;
using std::vector;

namespace
{
    struct BooleanUniverse
    {
        Element zero, one;
    };

    auto boolean_universe(const Structure & b) -> BooleanUniverse
    {
        auto zero = b.find("0"), one = b.find("1");
        if (b.size() != 2 || ! zero || ! one)
            throw SolverError("IHS-B needs the universe {0, 1}");
        return {*zero, *one};
    }

    auto flipped(const IhsbClause & c) -> IhsbClause
    {
        return IhsbClause{c.negative, c.positive};
    }

    auto holds(const IhsbClause & c, const vector<int> & values) -> bool
    {
        return std::any_of(c.positive.begin(), c.positive.end(), [&](size_t i) { return values[i] == 1; })
            || std::any_of(c.negative.begin(), c.negative.end(), [&](size_t i) { return values[i] == 0; });
    }

    /// Clause shapes of the plus sign over r coordinates.
    auto plus_clauses(size_t r, size_t k) -> vector<IhsbClause>
    {
        vector<IhsbClause> result;
        for (size_t v = 0; v < r; ++v)
            result.push_back(IhsbClause{{}, {v}});
        for (size_t v = 0; v < r; ++v)
            for (size_t w = 0; w < r; ++w)
                if (v != w)
                    result.push_back(IhsbClause{{w}, {v}});
        if (r > 0) {
            vector<size_t> chosen;
            std::function<void(size_t)> rec = [&](size_t from) {
                if (chosen.size() == k) {
                    result.push_back(IhsbClause{chosen, {}});
                    return;
                }
                for (size_t i = from; i < r; ++i) {
                    chosen.push_back(i);
                    rec(i);
                    chosen.pop_back();
                }
            };
            rec(0);
        }
        return result;
    }
}

auto pathdual::classify_ihsb(const Structure & b, size_t k, IhsbSign sign) -> optional<IhsbClass>
{
    auto universe = boolean_universe(b);
    if (k < 2)
        throw SolverError("IHS-B needs k >= 2");

    IhsbClass result{sign, k, {}};
    for (size_t r = 0; r < b.vocabulary().size(); ++r) {
        auto arity = b.vocabulary()[r].arity;
        if (arity > 20)
            throw SolverError("relation " + b.vocabulary()[r].name + " is too wide to classify");

        // values in the plus-sign view: minus relations are complemented
        set<vector<int>> tuples;
        for (auto & t : b.relation(r)) {
            vector<int> values;
            for (auto e : t)
                values.push_back((e == universe.one) != (sign == IhsbSign::minus) ? 1 : 0);
            tuples.insert(move(values));
        }

        vector<IhsbClause> kept;
        for (auto & c : plus_clauses(arity, k))
            if (std::all_of(tuples.begin(), tuples.end(), [&](auto & t) { return holds(c, t); }))
                kept.push_back(c);

        vector<int> values(arity);
        for (size_t bits = 0; bits < (size_t(1) << arity); ++bits) {
            for (size_t i = 0; i < arity; ++i)
                values[i] = int(bits >> i & 1);
            bool model = std::all_of(kept.begin(), kept.end(), [&](auto & c) { return holds(c, values); });
            if (model != tuples.contains(values))
                return std::nullopt;
        }

        if (sign == IhsbSign::minus)
            for (auto & c : kept)
                c = flipped(c);
        result.clauses.push_back(move(kept));
    }
    return result;
}

auto pathdual::ihsb_duality_width(const Structure & b, const IhsbClass & c) -> WidthPair
{
    return WidthPair{c.k, c.k - 1 + b.vocabulary().max_arity()};
}

auto pathdual::solve_ihsb(const Structure & a, const Structure & b, const IhsbClass & c) -> IhsbVerdict
{
    auto universe = boolean_universe(b);
    auto symbols = match_vocabularies(a.vocabulary(), b.vocabulary());
    if (c.clauses.size() != b.vocabulary().size())
        throw SolverError("IHS-B class does not match the template");

    auto n = a.size();
    vector<char> forced_zero(n, 0);
    deque<Element> queue;
    // implied_by[y] lists x with clause (not x or y)
    vector<vector<Element>> implied_by(n);
    vector<vector<Element>> wide;

    for (size_t r = 0; r < symbols.size(); ++r)
        for (auto & t : a.relation(r))
            for (auto & clause : c.clauses[symbols[r]]) {
                auto plus = c.sign == IhsbSign::minus ? flipped(clause) : clause;
                if (plus.negative.size() == 1 && plus.positive.empty()) {
                    auto x = t[plus.negative[0]];
                    if (! forced_zero[size_t(x)]) {
                        forced_zero[size_t(x)] = 1;
                        queue.push_back(x);
                    }
                }
                else if (plus.negative.size() == 1)
                    implied_by[size_t(t[plus.positive[0]])].push_back(t[plus.negative[0]]);
                else {
                    vector<Element> variables;
                    for (auto i : plus.positive)
                        variables.push_back(t[i]);
                    wide.push_back(move(variables));
                }
            }

    while (! queue.empty()) {
        auto y = queue.front();
        queue.pop_front();
        for (auto x : implied_by[size_t(y)])
            if (! forced_zero[size_t(x)]) {
                forced_zero[size_t(x)] = 1;
                queue.push_back(x);
            }
    }

    for (auto & clause : wide)
        if (std::all_of(clause.begin(), clause.end(), [&](Element x) { return forced_zero[size_t(x)]; }))
            return IhsbVerdict{false, std::nullopt};

    Assignment h(n);
    for (size_t x = 0; x < n; ++x) {
        bool one = ! forced_zero[x];
        if (c.sign == IhsbSign::minus)
            one = ! one;
        h[x] = one ? universe.one : universe.zero;
    }
    if (! is_homomorphism(a, b, h))
        throw SolverError("IHS-B propagation produced a non-homomorphism");
    return IhsbVerdict{true, move(h)};
}
