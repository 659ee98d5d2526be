#include <support/random_instances.hh>

#include <algorithm>
#include <set>
#include <string>

using namespace pathdual;
using random_instances::Rng;

using std::move;
using std::set;
using std::size_t;
using std::string;
using std::uniform_int_distribution;
using std::uniform_real_distribution;
using std::vector;

namespace
{
    auto pick(Rng & rng, size_t n) -> size_t
    {
        return uniform_int_distribution<size_t>(0, n - 1)(rng);
    }

    auto coin(Rng & rng, double p) -> bool
    {
        return uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    }

    auto random_subset(Rng & rng, size_t m, bool non_empty) -> vector<Element>
    {
        while (true) {
            vector<Element> result;
            for (size_t i = 0; i < m; ++i)
                if (coin(rng, 0.5))
                    result.push_back(Element(i));
            if (! non_empty || ! result.empty())
                return result;
        }
    }

    auto for_each_tuple(size_t arity, size_t n, const auto & callback) -> void
    {
        if (arity > 0 && n == 0)
            return;
        Tuple t(arity, 0);
        while (true) {
            callback(t);
            size_t i = arity;
            while (i > 0 && t[i - 1] + 1 == Element(n))
                t[--i] = 0;
            if (i == 0)
                return;
            ++t[i - 1];
        }
    }
}

auto random_instances::structure(Rng & rng, const Vocabulary & v, size_t n, double density) -> Structure
{
    auto s = Structure::with_size(v, n);
    for (size_t r = 0; r < v.size(); ++r)
        for_each_tuple(v[r].arity, n, [&](const Tuple & t) {
            if (coin(rng, density))
                s.add_tuple(r, t);
        });
    return s;
}

auto random_instances::graph(Rng & rng, size_t n, size_t edges) -> Structure
{
    auto g = Structure::with_size(Vocabulary{{"E", 2}}, n);
    for (size_t e = 0; e < edges && n >= 2; ++e) {
        auto x = Element(pick(rng, n)), y = Element(pick(rng, n));
        if (x == y)
            continue;
        g.add_tuple(0, {x, y});
        g.add_tuple(0, {y, x});
    }
    return g;
}

auto random_instances::implicational_vocabulary() -> Vocabulary
{
    return Vocabulary{{"R", 2}, {"S", 2}};
}

auto random_instances::implicational_template(Rng & rng, size_t m) -> Structure
{
    auto b = Structure::with_size(implicational_vocabulary(), m);
    for (size_t r = 0; r < 2; ++r) {
        switch (pick(rng, 3)) {
        case 0: {
            auto rows = random_subset(rng, m, false), columns = random_subset(rng, m, false);
            for (auto x : rows)
                for (auto y : columns)
                    b.add_tuple(r, {x, y});
            break;
        }
        case 1: {
            auto domain = random_subset(rng, m, false);
            vector<Element> images(m);
            for (size_t i = 0; i < m; ++i)
                images[i] = Element(i);
            std::shuffle(images.begin(), images.end(), rng);
            for (size_t i = 0; i < domain.size(); ++i)
                b.add_tuple(r, {domain[i], images[i]});
            break;
        }
        default: {
            auto rows = random_subset(rng, m, true), columns = random_subset(rng, m, true);
            auto pivot_row = rows[pick(rng, rows.size())], pivot_column = columns[pick(rng, columns.size())];
            for (auto y : columns)
                b.add_tuple(r, {pivot_row, y});
            for (auto x : rows)
                b.add_tuple(r, {x, pivot_column});
            break;
        }
        }
    }
    return b;
}

auto random_instances::linear_program(Rng & rng) -> Program
{
    // (head, allowed IDB body atom or none, EDB atom choices), variables drawn from x y z
    const vector<string> variables{"x", "y", "z"};
    auto var = [&](size_t limit) { return variables[pick(rng, limit)]; };

    auto random_edb_atom = [&]() -> Atom {
        if (coin(rng, 0.7))
            return Atom{"E", {var(3), var(3)}};
        return Atom{"U", {var(3)}};
    };

    struct Head
    {
        string predicate;
        size_t arity;
    };
    const vector<Head> heads{{"P", 2}, {"R", 1}, {"Goal", 0}};
    const vector<Head> idbs{{"P", 2}, {"R", 1}};

    vector<Rule> rules;
    auto count = 2 + pick(rng, 4);
    while (rules.size() < count) {
        auto head = heads[pick(rng, heads.size())];
        Rule rule{Atom{head.predicate, {}}, {}};
        for (size_t i = 0; i < head.arity; ++i)
            rule.head.arguments.push_back(variables[i]);
        if (coin(rng, 0.6)) {
            auto idb = idbs[pick(rng, idbs.size())];
            Atom atom{idb.predicate, {}};
            for (size_t i = 0; i < idb.arity; ++i)
                atom.arguments.push_back(var(3));
            rule.body.push_back(move(atom));
        }
        auto edb_atoms = 1 + pick(rng, 2);
        for (size_t i = 0; i < edb_atoms; ++i)
            rule.body.push_back(random_edb_atom());

        set<string> body_variables;
        for (auto & atom : rule.body)
            body_variables.insert(atom.arguments.begin(), atom.arguments.end());
        bool safe = std::all_of(rule.head.arguments.begin(), rule.head.arguments.end(),
            [&](auto & v) { return body_variables.contains(v); });
        if (! safe)
            continue;
        if (! fits_within(rule_bounds(rule), WidthPair{2, 3}))
            continue;
        rules.push_back(move(rule));
    }

    return Program("random", Vocabulary{{"P", 2}, {"R", 1}, {"Goal", 0}}, "Goal", move(rules),
        Vocabulary{{"E", 2}, {"U", 1}}, WidthPair{2, 3});
}

auto random_instances::two_cnf(Rng & rng, size_t variables, size_t clauses) -> TwoCnf
{
    TwoCnf cnf{variables, {}};
    auto literal = [&]() {
        auto v = int(pick(rng, variables)) + 1;
        return coin(rng, 0.5) ? v : -v;
    };
    for (size_t c = 0; c < clauses; ++c)
        cnf.clauses.emplace_back(literal(), literal());
    return cnf;
}

auto random_instances::ihsb_vocabulary() -> Vocabulary
{
    return Vocabulary{{"R", 2}, {"T", 3}};
}

auto random_instances::ihsb_template(Rng & rng, size_t k, IhsbSign sign) -> Structure
{
    auto b = Structure::with_size(ihsb_vocabulary(), 2);
    auto v = ihsb_vocabulary();
    for (size_t r = 0; r < v.size(); ++r) {
        auto arity = v[r].arity;
        vector<IhsbClause> clauses;
        auto count = pick(rng, 4);
        for (size_t c = 0; c < count; ++c) {
            switch (pick(rng, 3)) {
            case 0: clauses.push_back(IhsbClause{{}, {pick(rng, arity)}}); break;
            case 1: clauses.push_back(IhsbClause{{pick(rng, arity)}, {pick(rng, arity)}}); break;
            default: {
                IhsbClause wide;
                for (size_t i = 0; i < k; ++i)
                    wide.positive.push_back(pick(rng, arity));
                clauses.push_back(wide);
            }
            }
        }
        for_each_tuple(arity, 2, [&](const Tuple & t) {
            auto value = [&](size_t i) { return (t[i] == 1) != (sign == IhsbSign::minus); };
            bool model = std::all_of(clauses.begin(), clauses.end(), [&](const IhsbClause & c) {
                return std::any_of(c.positive.begin(), c.positive.end(), [&](size_t i) { return value(i); })
                    || std::any_of(c.negative.begin(), c.negative.end(), [&](size_t i) { return ! value(i); });
            });
            if (model)
                b.add_tuple(r, t);
        });
    }
    return b;
}
