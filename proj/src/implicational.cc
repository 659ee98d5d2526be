#include <pathdual/errors.hh>
#include <pathdual/homomorphism.hh>
#include <pathdual/implicational.hh>
#include <pathdual/pathwidth.hh>

#include <algorithm>
#include <deque>
#include <set>
#include <string>

using namespace pathdual;

using std::deque;
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
    auto classify_relation(const TupleSet & r) -> ImplicationalForm
    {
        set<Element> first, second;
        for (auto & t : r) {
            first.insert(t[0]);
            second.insert(t[1]);
        }

        ImplicationalForm form;
        if (r.size() == first.size() * second.size()) {
            form.shape = ImplicationalShape::rectangle;
            form.first.assign(first.begin(), first.end());
            form.second.assign(second.begin(), second.end());
            return form;
        }

        if (r.size() == first.size() && r.size() == second.size()) {
            form.shape = ImplicationalShape::injective_graph;
            form.first.assign(first.begin(), first.end());
            for (auto & t : r)
                form.function.emplace(t[0], t[1]);
            return form;
        }

        for (auto & pivot : r) {
            auto b = pivot[0], c = pivot[1];
            vector<Element> rows, columns;
            for (auto & t : r) {
                if (t[1] == c)
                    rows.push_back(t[0]);
                if (t[0] == b)
                    columns.push_back(t[1]);
            }
            if (rows.size() + columns.size() - 1 == r.size()) {
                form.shape = ImplicationalShape::cross;
                form.first = move(rows);
                form.second = move(columns);
                form.pivot_first = b;
                form.pivot_second = c;
                return form;
            }
        }

        return form;
    }

    auto require_implicational(const Structure & b) -> void
    {
        auto forms = classify_implicational(b);
        for (size_t r = 0; r < forms.size(); ++r)
            if (forms[r].shape == ImplicationalShape::not_implicational)
                throw SolverError("relation " + b.vocabulary()[r].name + " is not implicational");
    }

    auto failing_element(const ConflictGraph & g) -> optional<Element>
    {
        auto m = g.template_size();
        for (size_t a = 0; a < g.instance_size(); ++a) {
            bool some_value_free = false;
            for (size_t b = 0; b < m && ! some_value_free; ++b) {
                vector<char> targets(g.node_count(), 0);
                targets[g.box()] = 1;
                for (size_t other = 0; other < m; ++other)
                    if (other != b)
                        targets[g.node(Element(a), Element(other))] = 1;
                some_value_free = ! g.shortest_path(g.node(Element(a), Element(b)), targets);
            }
            if (! some_value_free)
                return Element(a);
        }
        return std::nullopt;
    }
}

auto pathdual::classify_implicational(const Structure & b) -> vector<ImplicationalForm>
{
    vector<ImplicationalForm> result;
    for (size_t r = 0; r < b.vocabulary().size(); ++r) {
        if (b.vocabulary()[r].arity != 2)
            throw SolverError("relation " + b.vocabulary()[r].name + " is not binary");
        result.push_back(classify_relation(b.relation(r)));
    }
    return result;
}

auto pathdual::is_implicational(const Structure & b) -> bool
{
    auto forms = classify_implicational(b);
    return std::none_of(forms.begin(), forms.end(), [](auto & f) { return f.shape == ImplicationalShape::not_implicational; });
}

ConflictGraph::ConflictGraph(size_t instance_size, size_t template_size) :
    _instance_size(instance_size),
    _template_size(template_size),
    _outgoing(instance_size * template_size + 1)
{
}

auto ConflictGraph::node(Element a, Element b) const -> size_t
{
    return size_t(a) * _template_size + size_t(b);
}

auto ConflictGraph::box() const -> size_t
{
    return _instance_size * _template_size;
}

auto ConflictGraph::node_count() const -> size_t
{
    return _outgoing.size();
}

auto ConflictGraph::instance_size() const -> size_t
{
    return _instance_size;
}

auto ConflictGraph::template_size() const -> size_t
{
    return _template_size;
}

auto ConflictGraph::add_arc(ConflictArc arc) -> void
{
    if (has_arc(arc.from, arc.to))
        return;
    _outgoing[arc.from].push_back(_arcs.size());
    _arcs.push_back(move(arc));
}

auto ConflictGraph::arcs() const -> const vector<ConflictArc> &
{
    return _arcs;
}

auto ConflictGraph::outgoing(size_t node) const -> const vector<size_t> &
{
    return _outgoing[node];
}

auto ConflictGraph::has_arc(size_t from, size_t to) const -> bool
{
    return std::any_of(_outgoing[from].begin(), _outgoing[from].end(), [&](size_t i) { return _arcs[i].to == to; });
}

auto ConflictGraph::shortest_path(size_t start, const vector<char> & targets) const -> optional<vector<size_t>>
{
    const auto none = size_t(-1);
    vector<size_t> via(node_count(), none);
    vector<char> seen(node_count(), 0);
    deque<size_t> queue{start};
    seen[start] = 1;
    while (! queue.empty()) {
        auto n = queue.front();
        queue.pop_front();
        for (auto i : _outgoing[n]) {
            auto to = _arcs[i].to;
            if (seen[to])
                continue;
            seen[to] = 1;
            via[to] = i;
            if (targets[to]) {
                vector<size_t> path;
                for (auto at = to; at != start; at = _arcs[via[at]].from)
                    path.push_back(via[at]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (to != box())
                queue.push_back(to);
        }
    }
    return std::nullopt;
}

auto pathdual::build_conflict_graph(const Structure & a, const Structure & b) -> ConflictGraph
{
    require_implicational(b);
    auto symbols = match_vocabularies(a.vocabulary(), b.vocabulary());
    auto m = b.size();
    ConflictGraph g(a.size(), m);

    for (size_t r = 0; r < symbols.size(); ++r) {
        auto & rb = b.relation(symbols[r]);
        vector<vector<Element>> row(m), column(m);
        for (auto & t : rb) {
            row[size_t(t[0])].push_back(t[1]);
            column[size_t(t[1])].push_back(t[0]);
        }

        for (auto & t : a.relation(r)) {
            auto x = t[0], y = t[1];
            for (size_t v = 0; v < m; ++v) {
                auto value = Element(v);
                if (row[v].size() == 1)
                    g.add_arc({g.node(x, value), g.node(y, row[v][0]), ArcRule::unique_forward, r, t});
                if (column[v].size() == 1)
                    g.add_arc({g.node(y, value), g.node(x, column[v][0]), ArcRule::unique_backward, r, t});
                if (row[v].empty())
                    g.add_arc({g.node(x, value), g.box(), ArcRule::empty_row, r, t});
                if (column[v].empty())
                    g.add_arc({g.node(y, value), g.box(), ArcRule::empty_column, r, t});
            }
        }
    }
    return g;
}

auto pathdual::solve_implicational(const Structure & a, const Structure & b) -> ImplicationalVerdict
{
    auto g = build_conflict_graph(a, b);
    auto failing = failing_element(g);
    auto assignment = find_homomorphism(a, b);
    if (failing.has_value() == assignment.has_value())
        throw SolverError("conflict graph and homomorphism search disagree");
    return ImplicationalVerdict{! failing, move(assignment), failing};
}

auto pathdual::implicational_obstruction(const Structure & a, const Structure & b) -> Obstruction
{
    auto g = build_conflict_graph(a, b);
    auto failing = failing_element(g);
    if (! failing)
        throw SolverError("instance is satisfiable, so there is no obstruction");
    auto star = *failing;
    auto m = b.size();

    Obstruction result{Structure(a.vocabulary()), {}, {}};
    auto w = result.structure.add_element("w");
    result.to_instance.push_back(star);

    auto fresh = [&](const string & name, Element image) {
        auto e = result.structure.add_element(name);
        result.to_instance.push_back(image);
        return e;
    };

    for (size_t i = 0; i < m; ++i) {
        vector<char> targets(g.node_count(), 0);
        targets[g.box()] = 1;
        for (size_t other = 0; other < m; ++other)
            if (other != i)
                targets[g.node(star, Element(other))] = 1;
        auto path = *g.shortest_path(g.node(star, Element(i)), targets);

        auto current = w;
        for (size_t j = 0; j < path.size(); ++j) {
            auto & arc = g.arcs()[path[j]];
            auto x = arc.instance_tuple[0], y = arc.instance_tuple[1];
            auto suffix = to_string(i + 1) + "_" + to_string(j + 2);
            Element next = w;
            Tuple tuple;
            switch (arc.rule) {
            case ArcRule::unique_forward:
                next = (j + 1 == path.size()) ? w : fresh("w" + suffix, y);
                tuple = {current, next};
                break;
            case ArcRule::unique_backward:
                next = (j + 1 == path.size()) ? w : fresh("w" + suffix, x);
                tuple = {next, current};
                break;
            case ArcRule::empty_row:
                next = fresh("x" + suffix, y);
                tuple = {current, next};
                break;
            case ArcRule::empty_column:
                next = fresh("x" + suffix, x);
                tuple = {next, current};
                break;
            }
            result.structure.add_tuple(arc.symbol, tuple);
            result.decomposition.bags.push_back(make_bag({w, current, next}));
            current = next;
        }
    }
    if (result.decomposition.bags.empty())
        result.decomposition.bags.push_back({w});

    auto width = check_path_decomposition(result.structure, result.decomposition);
    if (! fits_within(width, WidthPair{2, 3}))
        throw Error("implicational obstruction exceeds width (2,3)");
    if (! is_homomorphism(result.structure, a, result.to_instance))
        throw Error("implicational obstruction does not map to the instance");
    if (homomorphic(result.structure, b))
        throw Error("implicational obstruction maps to the template");
    return result;
}
