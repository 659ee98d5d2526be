#include <pathdual/datalog.hh>
#include <pathdual/homomorphism.hh>

#include "datalog_engine.hh"

#include <algorithm>
#include <numeric>

using namespace pathdual;
using namespace pathdual::innards;

using std::map;
using std::move;
using std::optional;
using std::pair;
using std::set;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace
{
    auto describe(const Atom & a) -> string
    {
        string result = a.predicate + "(";
        for (size_t i = 0; i < a.arguments.size(); ++i)
            result += (i ? "," : "") + a.arguments[i];
        return result + ")";
    }

    auto distinct(const vector<string> & names) -> size_t
    {
        return set<string>(names.begin(), names.end()).size();
    }

    auto find_symbol(const Structure & s, const string & name, size_t arity) -> size_t
    {
        auto r = s.vocabulary().find(name);
        if (! r || s.vocabulary()[*r].arity != arity)
            throw ProgramError("vocabulary mismatch: structure lacks " + name + "/" + to_string(arity));
        return *r;
    }

    /// Backtracking over the body in written order, scanning each relation from the longest bound prefix.
    auto for_each_grounding(const Structure & s, const Rule & rule, const vector<size_t> & symbols,
        const std::function<void(const map<string, Element> &)> & callback) -> void
    {
        map<string, Element> binding;
        std::function<void(size_t)> step = [&](size_t i) {
            if (i == rule.body.size()) {
                vector<string> free_head;
                for (auto & v : rule.head.arguments)
                    if (! binding.contains(v) && std::find(free_head.begin(), free_head.end(), v) == free_head.end())
                        free_head.push_back(v);
                std::function<void(size_t)> extend = [&](size_t h) {
                    if (h == free_head.size()) {
                        callback(binding);
                        return;
                    }
                    for (size_t e = 0; e < s.size(); ++e) {
                        binding[free_head[h]] = Element(e);
                        extend(h + 1);
                    }
                    binding.erase(free_head[h]);
                };
                extend(0);
                return;
            }

            auto & atom = rule.body[i];
            auto & relation = s.relation(symbols[i]);
            Tuple prefix;
            for (auto & v : atom.arguments) {
                auto b = binding.find(v);
                if (b == binding.end())
                    break;
                prefix.push_back(b->second);
            }
            for (auto it = relation.lower_bound(prefix); it != relation.end() && std::equal(prefix.begin(), prefix.end(), it->begin()); ++it) {
                auto & t = *it;
                vector<string> added;
                bool ok = true;
                for (size_t p = 0; p < t.size() && ok; ++p) {
                    auto b = binding.find(atom.arguments[p]);
                    if (b == binding.end()) {
                        binding.emplace(atom.arguments[p], t[p]);
                        added.push_back(atom.arguments[p]);
                    }
                    else
                        ok = b->second == t[p];
                }
                if (ok)
                    step(i + 1);
                for (auto & v : added)
                    binding.erase(v);
            }
        };
        step(0);
    }
}

Program::Program(string name, Vocabulary idb, string goal, vector<Rule> rules, optional<Vocabulary> edb, optional<WidthPair> declared_bounds) :
    _name(move(name)),
    _idb(move(idb)),
    _goal(move(goal)),
    _rules(move(rules)),
    _declared_bounds(declared_bounds)
{
    if (! _idb.contains(_goal))
        throw ProgramError("goal " + _goal + " is not a declared IDB predicate");

    if (edb) {
        _edb = *edb;
        for (auto & s : _edb.symbols())
            if (_idb.contains(s.name))
                throw ProgramError("predicate " + s.name + " is declared both EDB and IDB");
    }

    for (size_t r = 0; r < _rules.size(); ++r) {
        auto & rule = _rules[r];
        auto where = " in rule " + to_string(r + 1);
        auto head = _idb.find(rule.head.predicate);
        if (! head)
            throw ProgramError("head predicate " + rule.head.predicate + " is not an IDB" + where);
        if (_idb[*head].arity != rule.head.arguments.size())
            throw ProgramError("arity mismatch for " + describe(rule.head) + where);
        for (auto & atom : rule.body) {
            if (auto i = _idb.find(atom.predicate)) {
                if (_idb[*i].arity != atom.arguments.size())
                    throw ProgramError("arity mismatch for " + describe(atom) + where);
            }
            else if (auto e = _edb.find(atom.predicate)) {
                if (_edb[*e].arity != atom.arguments.size())
                    throw ProgramError("arity mismatch for " + describe(atom) + where);
            }
            else if (edb)
                throw ProgramError("predicate " + atom.predicate + " is neither EDB nor IDB" + where);
            else
                _edb.add(atom.predicate, atom.arguments.size());
        }
    }

    if (_declared_bounds) {
        if (_declared_bounds->j > _declared_bounds->k)
            throw ProgramError("declared bounds have j > k");
        auto actual = program_bounds(*this);
        if (! fits_within(actual, *_declared_bounds))
            throw ProgramError("program exceeds its declared bounds (" + to_string(_declared_bounds->j) + "," + to_string(_declared_bounds->k) + ")");
    }
}

auto Program::name() const -> const string &
{
    return _name;
}

auto Program::edb() const -> const Vocabulary &
{
    return _edb;
}

auto Program::idb() const -> const Vocabulary &
{
    return _idb;
}

auto Program::goal() const -> const string &
{
    return _goal;
}

auto Program::rules() const -> const vector<Rule> &
{
    return _rules;
}

auto Program::declared_bounds() const -> const optional<WidthPair> &
{
    return _declared_bounds;
}

auto Program::joint_vocabulary() const -> Vocabulary
{
    Vocabulary result = _edb;
    for (auto & s : _idb.symbols())
        result.add(s.name, s.arity);
    return result;
}

auto pathdual::rule_variables(const Rule & r) -> vector<string>
{
    vector<string> result;
    auto add = [&](const Atom & a) {
        for (auto & v : a.arguments)
            if (std::find(result.begin(), result.end(), v) == result.end())
                result.push_back(v);
    };
    add(r.head);
    for (auto & a : r.body)
        add(a);
    return result;
}

auto pathdual::rule_bounds(const Rule & r) -> WidthPair
{
    return WidthPair{distinct(r.head.arguments), rule_variables(r).size()};
}

auto pathdual::program_bounds(const Program & p) -> WidthPair
{
    WidthPair result;
    for (auto & r : p.rules()) {
        auto b = rule_bounds(r);
        result.j = std::max(result.j, b.j);
        result.k = std::max(result.k, b.k);
    }
    return result;
}

auto pathdual::is_linear(const Program & p) -> bool
{
    for (auto & r : p.rules())
        if (std::count_if(r.body.begin(), r.body.end(), [&](const Atom & a) { return p.idb().contains(a.predicate); }) > 1)
            return false;
    return true;
}

auto pathdual::require_linear_bounded(const Program & p, const WidthPair & bound) -> void
{
    for (size_t i = 0; i < p.rules().size(); ++i) {
        auto & r = p.rules()[i];
        if (std::count_if(r.body.begin(), r.body.end(), [&](const Atom & a) { return p.idb().contains(a.predicate); }) > 1)
            throw ProgramError("program is not linear: rule " + to_string(i + 1) + " has more than one IDB atom in its body");
        auto b = rule_bounds(r);
        if (b.k > bound.k)
            throw ProgramError("rule " + to_string(i + 1) + " has " + to_string(b.k) + " variables, more than k = " + to_string(bound.k));
        if (b.j > bound.j)
            throw ProgramError("rule " + to_string(i + 1) + " has " + to_string(b.j) + " head variables, more than j = " + to_string(bound.j));
    }
}

auto pathdual::extend_with_idbs(const Program & p, const Structure & a) -> Structure
{
    Structure result = Structure::with_universe(p.joint_vocabulary(), a.names());
    for (size_t r = 0; r < p.edb().size(); ++r) {
        auto source = find_symbol(a, p.edb()[r].name, p.edb()[r].arity);
        for (auto & t : a.relation(source))
            result.add_tuple_unchecked(r, t);
    }
    return result;
}

auto pathdual::immediate_consequence(const Program & p, const Structure & s) -> Structure
{
    Structure result = s;
    for (auto & rule : p.rules()) {
        vector<size_t> symbols;
        for (auto & atom : rule.body)
            symbols.push_back(find_symbol(s, atom.predicate, atom.arguments.size()));
        auto head = find_symbol(s, rule.head.predicate, rule.head.arguments.size());
        for_each_grounding(s, rule, symbols, [&](const map<string, Element> & binding) {
            Tuple t;
            for (auto & v : rule.head.arguments)
                t.push_back(binding.at(v));
            result.add_tuple_unchecked(head, move(t));
        });
    }
    return result;
}

auto pathdual::least_fixpoint(const Program & p, const Structure & a) -> Structure
{
    return semi_naive_fixpoint(p, a, FixpointOptions{}).structure;
}

auto pathdual::least_fixpoint_naive(const Program & p, const Structure & a) -> Structure
{
    auto current = extend_with_idbs(p, a);
    while (true) {
        auto next = immediate_consequence(p, current);
        if (next.tuple_count() == current.tuple_count())
            return current;
        current = move(next);
    }
}

auto pathdual::accepts(const Program & p, const Structure & a) -> bool
{
    auto result = semi_naive_fixpoint(p, a, FixpointOptions{false, true});
    return ! result.structure.relation(p.goal()).empty();
}

auto pathdual::derivation_trace(const Program & p, const Structure & a) -> optional<vector<DerivationStep>>
{
    if (! is_linear(p))
        throw ProgramError("derivation traces need a linear program");

    auto result = semi_naive_fixpoint(p, a, FixpointOptions{true, true});
    auto & goal_facts = result.structure.relation(p.goal());
    if (goal_facts.empty())
        return std::nullopt;

    vector<DerivationStep> trace;
    pair<size_t, Tuple> fact{p.idb().index_of(p.goal()), *goal_facts.begin()};
    while (true) {
        auto & provenance = result.provenance.at(fact);
        auto & rule = p.rules()[provenance.rule];
        auto names = rule_variables(rule);
        DerivationStep step{provenance.rule, {}};
        for (size_t i = 0; i < names.size(); ++i)
            step.grounding.emplace(names[i], provenance.values[i]);
        trace.push_back(step);

        auto idb_atom = std::find_if(rule.body.begin(), rule.body.end(), [&](const Atom & atom) { return p.idb().contains(atom.predicate); });
        if (idb_atom == rule.body.end())
            break;
        Tuple t;
        for (auto & v : idb_atom->arguments)
            t.push_back(step.grounding.at(v));
        fact = {p.idb().index_of(idb_atom->predicate), t};
    }
    std::reverse(trace.begin(), trace.end());
    return trace;
}

auto pathdual::derivation_witness(const Program & p, const Structure & a, const optional<WidthPair> & requested) -> optional<DerivationWitness>
{
    auto bound = requested ? *requested : p.declared_bounds() ? *p.declared_bounds() : program_bounds(p);
    require_linear_bounded(p, bound);

    auto trace = derivation_trace(p, a);
    if (! trace)
        return std::nullopt;

    // nodes (element of a, step); a head element is identified with the same element one step later
    auto steps = trace->size();
    auto node = [&](Element e, size_t step) { return step * a.size() + size_t(e); };
    vector<size_t> parent(steps * a.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> root = [&](size_t x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };

    for (size_t i = 0; i + 1 < steps; ++i) {
        auto & rule = p.rules()[(*trace)[i].rule];
        for (auto & v : rule.head.arguments) {
            auto e = (*trace)[i].grounding.at(v);
            auto x = root(node(e, i)), y = root(node(e, i + 1));
            if (x != y)
                parent[std::max(x, y)] = std::min(x, y);
        }
    }

    DerivationWitness witness{Structure(p.edb()), {}, {}, *trace};
    map<size_t, Element> element_of;
    vector<Bag> bags;
    for (size_t i = 0; i < steps; ++i) {
        Bag bag;
        for (auto & [v, e] : (*trace)[i].grounding) {
            auto r = root(node(e, i));
            auto it = element_of.find(r);
            if (it == element_of.end()) {
                auto added = witness.structure.add_element(a.name(e) + "@" + to_string(r / a.size() + 1));
                witness.to_input.push_back(e);
                it = element_of.emplace(r, added).first;
            }
            bag.push_back(it->second);
        }
        bags.push_back(make_bag(bag));

        auto & step = (*trace)[i];
        for (auto & atom : p.rules()[step.rule].body) {
            auto r = p.edb().find(atom.predicate);
            if (! r)
                continue;
            Tuple t;
            for (auto & v : atom.arguments)
                t.push_back(element_of.at(root(node(step.grounding.at(v), i))));
            witness.structure.add_tuple(*r, move(t));
        }
    }
    witness.decomposition.bags = move(bags);

    auto width = check_path_decomposition(witness.structure, witness.decomposition);
    if (! fits_within(width, bound))
        throw Error("derivation witness exceeds the width bound");
    if (! is_homomorphism(witness.structure, a, witness.to_input))
        throw Error("derivation witness does not map to the input");
    if (! accepts(p, witness.structure))
        throw Error("derivation witness is not accepted by the program");
    return witness;
}

auto pathdual::non_two_colourability_program() -> Program
{
    vector<Rule> rules{
        Rule{Atom{"P", {"x", "y"}}, {Atom{"E", {"x", "y"}}}},
        Rule{Atom{"P", {"x", "y"}}, {Atom{"P", {"x", "z"}}, Atom{"E", {"z", "u"}}, Atom{"E", {"u", "y"}}}},
        Rule{Atom{"Q", {}}, {Atom{"P", {"x", "x"}}}}};
    return Program("non2col", Vocabulary{{"P", 2}, {"Q", 0}}, "Q", move(rules), Vocabulary{{"E", 2}}, WidthPair{2, 4});
}
