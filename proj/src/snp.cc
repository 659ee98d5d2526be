#include <pathdual/homomorphism.hh>
#include <pathdual/snp.hh>

#include <algorithm>
#include <map>
#include <set>

using namespace pathdual;

using std::map;
using std::move;
using std::pair;
using std::set;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace
{
    auto clause_variables(const SnpClause & c) -> vector<string>
    {
        vector<string> result;
        for (auto & l : c)
            for (auto & v : l.arguments)
                if (std::find(result.begin(), result.end(), v) == result.end())
                    result.push_back(v);
        return result;
    }

    auto second_order_count(const SnpClause & c, bool positive) -> size_t
    {
        return size_t(std::count_if(c.begin(), c.end(), [&](const SnpLiteral & l) { return l.kind == LiteralKind::second_order && l.positive == positive; }));
    }
}

auto pathdual::sentence_flags(const KromSnpSentence & f) -> SentenceFlags
{
    SentenceFlags flags;
    flags.arity = f.fo_variables.size();
    flags.adicity = f.so_vocabulary.max_arity();
    for (auto & c : f.clauses) {
        auto positive = second_order_count(c, true), negative = second_order_count(c, false);
        if (positive + negative > 2)
            flags.krom = false;
        if (positive > 1 || negative > 1)
            flags.restricted = false;
        for (auto & l : c) {
            if (l.kind == LiteralKind::edb && l.positive)
                flags.monotone = false;
            if (l.kind == LiteralKind::equality)
                flags.equality_free = false;
        }
    }
    return flags;
}

auto pathdual::validate_sentence(const KromSnpSentence & f) -> void
{
    set<string> declared(f.fo_variables.begin(), f.fo_variables.end());
    if (declared.size() != f.fo_variables.size())
        throw SentenceError("duplicate first-order variable");

    map<string, size_t> edb_arity;
    for (size_t i = 0; i < f.clauses.size(); ++i) {
        auto where = " in clause " + to_string(i + 1);
        for (auto & l : f.clauses[i]) {
            for (auto & v : l.arguments)
                if (! declared.contains(v))
                    throw SentenceError("undeclared variable " + v + where);
            switch (l.kind) {
            case LiteralKind::second_order: {
                auto s = f.so_vocabulary.find(l.predicate);
                if (! s)
                    throw SentenceError("unknown second-order predicate " + l.predicate + where);
                if (f.so_vocabulary[*s].arity != l.arguments.size())
                    throw SentenceError("arity mismatch for " + l.predicate + where);
                break;
            }
            case LiteralKind::edb: {
                if (f.so_vocabulary.contains(l.predicate))
                    throw SentenceError("predicate " + l.predicate + " is second-order but used as EDB" + where);
                auto [it, fresh] = edb_arity.emplace(l.predicate, l.arguments.size());
                if (! fresh && it->second != l.arguments.size())
                    throw SentenceError("arity mismatch for " + l.predicate + where);
                break;
            }
            case LiteralKind::equality:
                if (l.arguments.size() != 2)
                    throw SentenceError("equality literal needs two arguments" + where);
                break;
            }
        }
    }
}

auto pathdual::edb_vocabulary(const KromSnpSentence & f) -> Vocabulary
{
    Vocabulary result;
    for (auto & c : f.clauses)
        for (auto & l : c)
            if (l.kind == LiteralKind::edb && ! result.contains(l.predicate))
                result.add(l.predicate, l.arguments.size());
    return result;
}

auto pathdual::datalog_to_snp(const Program & p, const WidthPair & bound) -> KromSnpSentence
{
    require_linear_bounded(p, bound);

    KromSnpSentence result{p.name(), p.idb(), {}, {}};
    size_t variables = p.idb()[p.idb().index_of(p.goal())].arity;

    auto v = [](size_t i) { return "v" + to_string(i + 1); };

    SnpClause goal_clause{SnpLiteral{false, LiteralKind::second_order, p.goal(), {}}};
    for (size_t i = 0; i < variables; ++i)
        goal_clause.front().arguments.push_back(v(i));
    result.clauses.push_back(goal_clause);

    for (auto & rule : p.rules()) {
        auto names = rule_variables(rule);
        variables = std::max(variables, names.size());
        auto rename = [&](const Atom & atom) {
            vector<string> arguments;
            for (auto & a : atom.arguments)
                arguments.push_back(v(size_t(std::find(names.begin(), names.end(), a) - names.begin())));
            return arguments;
        };
        SnpClause clause{SnpLiteral{true, LiteralKind::second_order, rule.head.predicate, rename(rule.head)}};
        for (auto & atom : rule.body)
            clause.push_back(SnpLiteral{false, p.idb().contains(atom.predicate) ? LiteralKind::second_order : LiteralKind::edb, atom.predicate, rename(atom)});
        result.clauses.push_back(move(clause));
    }

    for (size_t i = 0; i < variables; ++i)
        result.fo_variables.push_back(v(i));
    return result;
}

auto pathdual::snp_to_datalog(const KromSnpSentence & f) -> Program
{
    validate_sentence(f);
    for (size_t i = 0; i < f.clauses.size(); ++i) {
        auto & c = f.clauses[i];
        auto where = " in clause " + to_string(i + 1);
        if (second_order_count(c, true) > 1 || second_order_count(c, false) > 1)
            throw SentenceError("sentence is not restricted" + where);
        for (auto & l : c) {
            if (l.kind == LiteralKind::edb && l.positive)
                throw SentenceError("sentence is not monotone" + where);
            if (l.kind == LiteralKind::equality)
                throw SentenceError("equality literals are not supported" + where);
        }
    }

    string goal = "goal";
    while (f.so_vocabulary.contains(goal) || edb_vocabulary(f).contains(goal))
        goal += "'";

    Vocabulary idb = f.so_vocabulary;
    idb.add(goal, 0);

    vector<Rule> rules;
    for (auto & c : f.clauses) {
        Rule rule{Atom{goal, {}}, {}};
        for (auto & l : c) {
            if (l.positive)
                rule.head = Atom{l.predicate, l.arguments};
            else
                rule.body.push_back(Atom{l.predicate, l.arguments});
        }
        rules.push_back(move(rule));
    }
    return Program(f.name, idb, goal, move(rules), edb_vocabulary(f));
}

auto pathdual::ground(const KromSnpSentence & f, const Structure & a) -> GroundKromFormula
{
    validate_sentence(f);
    auto flags = sentence_flags(f);
    if (! flags.krom)
        throw SentenceError("sentence is not Krom");

    auto edb = edb_vocabulary(f);
    vector<size_t> edb_map;
    for (auto & s : edb.symbols()) {
        auto r = a.vocabulary().find(s.name);
        if (! r || a.vocabulary()[*r].arity != s.arity)
            throw SentenceError("arity mismatch: structure lacks " + s.name + "/" + to_string(s.arity));
        edb_map.push_back(*r);
    }

    GroundKromFormula result;
    map<pair<size_t, Tuple>, size_t> atom_ids;
    set<vector<Literal2>> seen;

    for (auto & clause : f.clauses) {
        auto names = clause_variables(clause);
        vector<vector<size_t>> positions;
        for (auto & l : clause) {
            positions.emplace_back();
            for (auto & v : l.arguments)
                positions.back().push_back(size_t(std::find(names.begin(), names.end(), v) - names.begin()));
        }

        vector<Element> values(names.size(), 0);
        if (a.size() == 0 && ! names.empty())
            continue;
        while (true) {
            bool satisfied = false;
            vector<Literal2> residual;
            for (size_t i = 0; i < clause.size() && ! satisfied; ++i) {
                auto & l = clause[i];
                Tuple t;
                for (auto p : positions[i])
                    t.push_back(values[p]);
                switch (l.kind) {
                case LiteralKind::equality:
                    satisfied = (t[0] == t[1]) == l.positive;
                    break;
                case LiteralKind::edb:
                    satisfied = a.has_tuple(edb_map[edb.index_of(l.predicate)], t) == l.positive;
                    break;
                case LiteralKind::second_order: {
                    auto key = pair{f.so_vocabulary.index_of(l.predicate), t};
                    auto it = atom_ids.find(key);
                    if (it == atom_ids.end()) {
                        it = atom_ids.emplace(key, result.atoms.size()).first;
                        result.atoms.push_back(key);
                    }
                    residual.push_back(Literal2{it->second, l.positive});
                    break;
                }
                }
            }

            if (! satisfied) {
                std::sort(residual.begin(), residual.end());
                residual.erase(std::unique(residual.begin(), residual.end()), residual.end());
                bool tautology = residual.size() == 2 && residual[0].variable == residual[1].variable;
                if (residual.empty()) {
                    result.violated = true;
                    return result;
                }
                if (! tautology && seen.insert(residual).second)
                    result.clauses.push_back(residual);
            }

            size_t p = 0;
            while (p < values.size() && size_t(++values[p]) == a.size())
                values[p++] = 0;
            if (p == values.size())
                break;
        }
    }
    return result;
}

auto pathdual::evaluate_snp(const KromSnpSentence & f, const Structure & a) -> bool
{
    auto g = ground(f, a);
    if (g.violated)
        return false;
    TwoSat solver(g.atoms.size());
    for (auto & c : g.clauses) {
        if (c.size() == 1)
            solver.add_unit(c[0]);
        else
            solver.add_clause(c[0], c[1]);
    }
    return solver.solve().has_value();
}
