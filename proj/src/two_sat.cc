#include <pathdual/two_sat.hh>

#include <stdexcept>
#include <utility>

using namespace pathdual;

using std::move;
using std::optional;
using std::pair;
using std::size_t;
using std::vector;

namespace
{
    auto node(Literal2 l) -> size_t
    {
        return 2 * l.variable + (l.positive ? 0 : 1);
    }

    /// Iterative Tarjan; components are numbered in reverse topological order.
    auto strongly_connected_components(const vector<vector<size_t>> & graph) -> vector<size_t>
    {
        auto n = graph.size();
        const size_t unvisited = size_t(-1);
        vector<size_t> index(n, unvisited), low(n, 0), component(n, unvisited), stack;
        vector<char> on_stack(n, 0);
        size_t counter = 0, components = 0;

        for (size_t start = 0; start < n; ++start) {
            if (index[start] != unvisited)
                continue;
            vector<pair<size_t, size_t>> calls{{start, 0}};
            index[start] = low[start] = counter++;
            stack.push_back(start);
            on_stack[start] = 1;

            while (! calls.empty()) {
                auto & [v, edge] = calls.back();
                if (edge < graph[v].size()) {
                    auto w = graph[v][edge++];
                    if (index[w] == unvisited) {
                        index[w] = low[w] = counter++;
                        stack.push_back(w);
                        on_stack[w] = 1;
                        calls.emplace_back(w, 0);
                    }
                    else if (on_stack[w])
                        low[v] = std::min(low[v], index[w]);
                }
                else {
                    if (low[v] == index[v]) {
                        while (true) {
                            auto w = stack.back();
                            stack.pop_back();
                            on_stack[w] = 0;
                            component[w] = components;
                            if (w == v)
                                break;
                        }
                        ++components;
                    }
                    auto finished = v;
                    calls.pop_back();
                    if (! calls.empty())
                        low[calls.back().first] = std::min(low[calls.back().first], low[finished]);
                }
            }
        }
        return component;
    }
}

TwoSat::TwoSat(size_t variables) :
    _variables(variables),
    _implications(2 * variables)
{
}

auto TwoSat::add_clause(Literal2 a, Literal2 b) -> void
{
    if (a.variable >= _variables || b.variable >= _variables)
        throw std::out_of_range("2-SAT literal refers to an unknown variable");
    _implications[node(Literal2{a.variable, ! a.positive})].push_back(node(b));
    _implications[node(Literal2{b.variable, ! b.positive})].push_back(node(a));
}

auto TwoSat::add_unit(Literal2 a) -> void
{
    add_clause(a, a);
}

auto TwoSat::variables() const -> size_t
{
    return _variables;
}

auto TwoSat::solve() const -> optional<vector<bool>>
{
    auto component = strongly_connected_components(_implications);
    vector<bool> result(_variables);
    for (size_t v = 0; v < _variables; ++v) {
        auto pos = component[2 * v], neg = component[2 * v + 1];
        if (pos == neg)
            return std::nullopt;
        // Tarjan numbers sinks first, so the literal closer to the sinks is set true
        result[v] = pos < neg;
    }
    return result;
}
