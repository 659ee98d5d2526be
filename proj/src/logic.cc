#include <pathdual/logic.hh>

#include "lexer.hh"

#include <algorithm>

using namespace pathdual;
using namespace pathdual::innards;

using std::make_shared;
using std::map;
using std::move;
using std::optional;
using std::set;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace
{
    template <typename... Ts_>
    struct Overloaded : Ts_...
    {
        using Ts_::operator()...;
    };

    template <typename... Ts_>
    Overloaded(Ts_...) -> Overloaded<Ts_...>;

    auto wrap(FormulaNode node) -> Formula
    {
        return Formula(make_shared<const FormulaNode>(move(node)));
    }

    auto collect_free(const Formula & f, set<string> & bound, set<string> & out) -> void
    {
        std::visit(Overloaded{
                       [](const TrueFormula &) {},
                       [](const FalseFormula &) {},
                       [&](const AtomFormula & a) {
                           for (auto & v : a.arguments)
                               if (! bound.contains(v))
                                   out.insert(v);
                       },
                       [&](const EqualityFormula & e) {
                           for (auto & v : {e.lhs, e.rhs})
                               if (! bound.contains(v))
                                   out.insert(v);
                       },
                       [&](const AndFormula & a) {
                           for (auto & c : a.conjuncts)
                               collect_free(c, bound, out);
                       },
                       [&](const OrFormula & o) {
                           for (auto & c : o.disjuncts)
                               collect_free(c, bound, out);
                       },
                       [&](const ExistsFormula & e) {
                           bool fresh = bound.insert(e.variable).second;
                           collect_free(e.body, bound, out);
                           if (fresh)
                               bound.erase(e.variable);
                       }},
            f.node().value);
    }

    auto collect_names(const Formula & f, set<string> & out) -> void
    {
        std::visit(Overloaded{
                       [](const TrueFormula &) {},
                       [](const FalseFormula &) {},
                       [&](const AtomFormula & a) { out.insert(a.arguments.begin(), a.arguments.end()); },
                       [&](const EqualityFormula & e) {
                           out.insert(e.lhs);
                           out.insert(e.rhs);
                       },
                       [&](const AndFormula & a) {
                           for (auto & c : a.conjuncts)
                               collect_names(c, out);
                       },
                       [&](const OrFormula & o) {
                           for (auto & c : o.disjuncts)
                               collect_names(c, out);
                       },
                       [&](const ExistsFormula & e) {
                           out.insert(e.variable);
                           collect_names(e.body, out);
                       }},
            f.node().value);
    }

    auto lookup(const VariableAssignment & assignment, const string & v) -> Element
    {
        auto i = assignment.find(v);
        if (i == assignment.end())
            throw FormulaError("unbound free variable '" + v + "'");
        return i->second;
    }

    auto evaluate_in(const Structure & d, const Formula & f, VariableAssignment & assignment) -> bool
    {
        return std::visit(Overloaded{
                              [](const TrueFormula &) { return true; },
                              [](const FalseFormula &) { return false; },
                              [&](const AtomFormula & a) {
                                  auto r = d.vocabulary().find(a.relation);
                                  if (! r || d.vocabulary()[*r].arity != a.arguments.size())
                                      throw FormulaError("relation " + a.relation + "/" + to_string(a.arguments.size()) + " is not in the structure's vocabulary");
                                  Tuple t;
                                  for (auto & v : a.arguments)
                                      t.push_back(lookup(assignment, v));
                                  return d.has_tuple(*r, t);
                              },
                              [&](const EqualityFormula & e) { return lookup(assignment, e.lhs) == lookup(assignment, e.rhs); },
                              [&](const AndFormula & a) {
                                  for (auto & c : a.conjuncts)
                                      if (! evaluate_in(d, c, assignment))
                                          return false;
                                  return true;
                              },
                              [&](const OrFormula & o) {
                                  for (auto & c : o.disjuncts)
                                      if (evaluate_in(d, c, assignment))
                                          return true;
                                  return false;
                              },
                              [&](const ExistsFormula & e) {
                                  auto saved = assignment.find(e.variable);
                                  optional<Element> previous;
                                  if (saved != assignment.end())
                                      previous = saved->second;
                                  bool result = false;
                                  for (size_t x = 0; x < d.size() && ! result; ++x) {
                                      assignment[e.variable] = Element(x);
                                      result = evaluate_in(d, e.body, assignment);
                                  }
                                  if (previous)
                                      assignment[e.variable] = *previous;
                                  else
                                      assignment.erase(e.variable);
                                  return result;
                              }},
            f.node().value);
    }

    auto check_in(const Formula & f, size_t j, vector<size_t> & path, RestrictionReport & report) -> void
    {
        if (! report.ok)
            return;
        if (auto a = std::get_if<AndFormula>(&f.node().value)) {
            size_t open_quantified = 0;
            for (size_t i = 0; i < a->conjuncts.size(); ++i) {
                auto & c = a->conjuncts[i];
                bool quantifier_free = is_quantifier_free(c);
                auto free = free_variables(c).size();
                if (free > j && ! quantifier_free) {
                    report.ok = false;
                    report.offending_path = path;
                    report.offending_path.push_back(i);
                    report.reason = "conjunct with " + to_string(free) + " free variables contains a quantifier";
                    return;
                }
                if (! quantifier_free && free > 0 && ++open_quantified > 1) {
                    report.ok = false;
                    report.offending_path = path;
                    report.offending_path.push_back(i);
                    report.reason = "conjunction has more than one quantified conjunct that is not a sentence";
                    return;
                }
            }
            for (size_t i = 0; i < a->conjuncts.size(); ++i) {
                path.push_back(i);
                check_in(a->conjuncts[i], j, path, report);
                path.pop_back();
            }
        }
        else if (auto o = std::get_if<OrFormula>(&f.node().value)) {
            for (size_t i = 0; i < o->disjuncts.size(); ++i) {
                path.push_back(i);
                check_in(o->disjuncts[i], j, path, report);
                path.pop_back();
            }
        }
        else if (auto e = std::get_if<ExistsFormula>(&f.node().value)) {
            path.push_back(0);
            check_in(e->body, j, path, report);
            path.pop_back();
        }
    }

    auto theta_with_names(const Structure & a, const Bag & bag, const map<Element, string> & names) -> Formula
    {
        vector<Formula> atoms;
        for (size_t r = 0; r < a.vocabulary().size(); ++r)
            for (auto & t : a.relation(r)) {
                if (! std::all_of(t.begin(), t.end(), [&](Element e) { return std::binary_search(bag.begin(), bag.end(), e); }))
                    continue;
                vector<string> arguments;
                for (auto e : t)
                    arguments.push_back(names.at(e));
                atoms.push_back(make_atom(a.vocabulary()[r].name, move(arguments)));
            }
        return make_and(move(atoms));
    }

    auto is_subset(const Bag & x, const Bag & y) -> bool
    {
        return std::includes(y.begin(), y.end(), x.begin(), x.end());
    }

    auto format_into(const Formula & f, string & out) -> void
    {
        std::visit(Overloaded{
                       [&](const TrueFormula &) { out += "(and)"; },
                       [&](const FalseFormula &) { out += "(or)"; },
                       [&](const AtomFormula & a) {
                           out += "(" + a.relation;
                           for (auto & v : a.arguments)
                               out += " " + v;
                           out += ")";
                       },
                       [&](const EqualityFormula & e) { out += "(= " + e.lhs + " " + e.rhs + ")"; },
                       [&](const AndFormula & a) {
                           out += "(and";
                           for (auto & c : a.conjuncts) {
                               out += " ";
                               format_into(c, out);
                           }
                           out += ")";
                       },
                       [&](const OrFormula & o) {
                           out += "(or";
                           for (auto & c : o.disjuncts) {
                               out += " ";
                               format_into(c, out);
                           }
                           out += ")";
                       },
                       [&](const ExistsFormula & e) {
                           out += "(exists " + e.variable + " ";
                           format_into(e.body, out);
                           out += ")";
                       }},
            f.node().value);
    }

    auto parse_sexpr(TokenStream & tokens) -> Formula
    {
        tokens.expect("(");
        string head;
        if (tokens.is("="))
            head = tokens.next().text;
        else
            head = tokens.expect_identifier("a connective or relation name");

        if (head == "and" || head == "or") {
            vector<Formula> children;
            while (! tokens.is(")"))
                children.push_back(parse_sexpr(tokens));
            tokens.expect(")");
            return head == "and" ? make_and(move(children)) : make_or(move(children));
        }
        else if (head == "exists") {
            auto variable = tokens.expect_identifier("a variable");
            auto body = parse_sexpr(tokens);
            tokens.expect(")");
            return make_exists(variable, body);
        }
        else if (head == "=") {
            auto lhs = tokens.expect_identifier("a variable");
            auto rhs = tokens.expect_identifier("a variable");
            tokens.expect(")");
            return make_equality(lhs, rhs);
        }
        else {
            vector<string> arguments;
            while (! tokens.is(")"))
                arguments.push_back(tokens.expect_identifier("a variable"));
            tokens.expect(")");
            return make_atom(head, move(arguments));
        }
    }
}

Formula::Formula(std::shared_ptr<const FormulaNode> node) :
    _node(move(node))
{
}

auto Formula::node() const -> const FormulaNode &
{
    return *_node;
}

auto Formula::operator==(const Formula & other) const -> bool
{
    return _node == other._node || _node->value == other._node->value;
}

auto pathdual::make_true() -> Formula
{
    return wrap(FormulaNode{TrueFormula{}});
}

auto pathdual::make_false() -> Formula
{
    return wrap(FormulaNode{FalseFormula{}});
}

auto pathdual::make_atom(string relation, vector<string> arguments) -> Formula
{
    return wrap(FormulaNode{AtomFormula{move(relation), move(arguments)}});
}

auto pathdual::make_equality(string lhs, string rhs) -> Formula
{
    return wrap(FormulaNode{EqualityFormula{move(lhs), move(rhs)}});
}

auto pathdual::make_and(vector<Formula> conjuncts) -> Formula
{
    if (conjuncts.empty())
        return make_true();
    if (conjuncts.size() == 1)
        return conjuncts.front();
    return wrap(FormulaNode{AndFormula{move(conjuncts)}});
}

auto pathdual::make_or(vector<Formula> disjuncts) -> Formula
{
    if (disjuncts.empty())
        return make_false();
    if (disjuncts.size() == 1)
        return disjuncts.front();
    return wrap(FormulaNode{OrFormula{move(disjuncts)}});
}

auto pathdual::make_exists(string variable, Formula body) -> Formula
{
    return wrap(FormulaNode{ExistsFormula{move(variable), move(body)}});
}

auto pathdual::make_exists(const vector<string> & variables, Formula body) -> Formula
{
    for (auto v = variables.rbegin(); v != variables.rend(); ++v)
        body = make_exists(*v, move(body));
    return body;
}

auto pathdual::free_variables(const Formula & f) -> set<string>
{
    set<string> bound, result;
    collect_free(f, bound, result);
    return result;
}

auto pathdual::variable_names(const Formula & f) -> set<string>
{
    set<string> result;
    collect_names(f, result);
    return result;
}

auto pathdual::is_quantifier_free(const Formula & f) -> bool
{
    return std::visit(Overloaded{
                          [](const ExistsFormula &) { return false; },
                          [](const AndFormula & a) { return std::all_of(a.conjuncts.begin(), a.conjuncts.end(), is_quantifier_free); },
                          [](const OrFormula & o) { return std::all_of(o.disjuncts.begin(), o.disjuncts.end(), is_quantifier_free); },
                          [](const auto &) { return true; }},
        f.node().value);
}

auto pathdual::is_sentence(const Formula & f) -> bool
{
    return free_variables(f).empty();
}

auto pathdual::evaluate(const Structure & d, const Formula & f, const VariableAssignment & assignment) -> bool
{
    for (auto & v : free_variables(f))
        if (! assignment.contains(v))
            throw FormulaError("unbound free variable '" + v + "'");
    for (auto & [v, e] : assignment)
        if (e < 0 || size_t(e) >= d.size())
            throw FormulaError("variable '" + v + "' is assigned an element outside the universe");
    auto copy = assignment;
    return evaluate_in(d, f, copy);
}

auto pathdual::theta_query(const Structure & a, const vector<Element> & elements) -> Formula
{
    map<Element, size_t> first;
    for (size_t i = 0; i < elements.size(); ++i) {
        if (elements[i] < 0 || size_t(elements[i]) >= a.size())
            throw FormulaError("theta query mentions an element outside the universe");
        first.emplace(elements[i], i);
    }

    map<Element, string> names;
    for (auto & [e, i] : first)
        names.emplace(e, "v" + to_string(i + 1));

    vector<Formula> conjuncts;
    Bag bag;
    for (auto & [e, i] : first)
        bag.push_back(e);
    auto atoms = theta_with_names(a, bag, names);
    if (auto and_node = std::get_if<AndFormula>(&atoms.node().value))
        conjuncts = and_node->conjuncts;
    else if (! std::holds_alternative<TrueFormula>(atoms.node().value))
        conjuncts.push_back(atoms);

    for (size_t i = 0; i < elements.size(); ++i)
        for (size_t j = i + 1; j < elements.size(); ++j)
            if (elements[i] == elements[j])
                conjuncts.push_back(make_equality("v" + to_string(i + 1), "v" + to_string(j + 1)));

    return make_and(move(conjuncts));
}

auto pathdual::check_restriction(const Formula & f, size_t j, size_t k) -> RestrictionReport
{
    RestrictionReport report;
    report.budget_k = k;
    report.conj_bound_j = j;
    auto names = variable_names(f).size();
    if (names > k) {
        report.ok = false;
        report.reason = "uses " + to_string(names) + " distinct variables";
        return report;
    }
    vector<size_t> path;
    check_in(f, j, path, report);
    return report;
}

auto pathdual::compile_decomposition_to_open_formula(const Structure & p, const PathDecomposition & d,
    const optional<WidthPair> & bound) -> CompiledFormula
{
    if (! is_canonical(d))
        throw FormulaError("decomposition is not canonical");
    auto width = check_path_decomposition(p, d);
    if (bound && ! fits_within(width, *bound))
        throw FormulaError("decomposition width (" + to_string(width.j) + "," + to_string(width.k) + ") exceeds the bound");

    // left to right: each element keeps one variable from the pool v1..vk while it is pebbled
    auto k = width.k;
    vector<map<Element, string>> names(d.bags.size());
    map<Element, string> current;
    vector<char> in_use(k + 1, 0);
    for (size_t i = 0; i < d.bags.size(); ++i) {
        for (auto it = current.begin(); it != current.end();) {
            if (! std::binary_search(d.bags[i].begin(), d.bags[i].end(), it->first)) {
                in_use[std::stoul(it->second.substr(1))] = 0;
                it = current.erase(it);
            }
            else
                ++it;
        }
        for (auto e : d.bags[i])
            if (! current.contains(e)) {
                size_t v = 1;
                while (in_use[v])
                    ++v;
                in_use[v] = 1;
                current.emplace(e, "v" + to_string(v));
            }
        names[i] = current;
    }

    Formula phi = make_true();
    for (size_t i = d.bags.size() - 1; i-- > 0;) {
        auto & here = d.bags[i];
        auto & there = d.bags[i + 1];
        if (is_subset(there, here)) {
            auto theta = theta_with_names(p, here, names[i]);
            if (std::holds_alternative<TrueFormula>(phi.node().value))
                phi = theta;
            else if (! std::holds_alternative<TrueFormula>(theta.node().value))
                phi = make_and({theta, phi});
        }
        else {
            vector<string> fresh;
            for (auto e : there)
                if (! std::binary_search(here.begin(), here.end(), e))
                    fresh.push_back(names[i + 1].at(e));
            phi = make_exists(fresh, phi);
        }
    }

    CompiledFormula result{phi, {}};
    if (! d.bags.empty())
        result.first_bag_variables = names.front();
    return result;
}

auto pathdual::compile_decomposition_to_formula(const Structure & p, const PathDecomposition & d,
    const optional<WidthPair> & bound) -> Formula
{
    auto compiled = compile_decomposition_to_open_formula(p, d, bound);
    vector<string> outer;
    for (auto & [e, v] : compiled.first_bag_variables)
        outer.push_back(v);
    return make_exists(outer, compiled.formula);
}

auto pathdual::format_formula(const Formula & f) -> string
{
    string result;
    format_into(f, result);
    return result;
}

auto pathdual::parse_formula(const string & text) -> Formula
{
    TokenStream tokens(text);
    auto result = parse_sexpr(tokens);
    tokens.expect_end();
    return result;
}
