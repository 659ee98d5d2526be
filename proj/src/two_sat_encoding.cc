#include <pathdual/errors.hh>
#include <pathdual/two_sat_encoding.hh>

#include <cstdlib>
#include <string>

using namespace pathdual;

using std::move;
using std::pair;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace
{
    auto variable_of(int literal, size_t variables) -> Element
    {
        if (literal == 0 || size_t(std::abs(literal)) > variables)
            throw SolverError("literal " + to_string(literal) + " is out of range");
        return Element(std::abs(literal) - 1);
    }
}

auto pathdual::b_2sat_vocabulary() -> Vocabulary
{
    return Vocabulary{{"P0", 2}, {"P1", 2}, {"P2", 2}};
}

auto pathdual::encode_2sat(const TwoCnf & cnf) -> Structure
{
    vector<string> names;
    for (size_t v = 1; v <= cnf.variables; ++v)
        names.push_back("x" + to_string(v));
    auto s = Structure::with_universe(b_2sat_vocabulary(), names);

    for (auto [first, second] : cnf.clauses) {
        auto x = variable_of(first, cnf.variables), y = variable_of(second, cnf.variables);
        if (first > 0 && second > 0)
            s.add_tuple(0, {x, y});
        else if (first > 0)
            s.add_tuple(1, {x, y});
        else if (second > 0)
            s.add_tuple(1, {y, x});
        else
            s.add_tuple(2, {x, y});
    }
    return s;
}

auto pathdual::decode_2sat(const Structure & s) -> TwoCnf
{
    if (! (s.vocabulary() == b_2sat_vocabulary()))
        throw SolverError("structure is not over the P0, P1, P2 vocabulary");
    TwoCnf cnf{s.size(), {}};
    auto literal = [](Element e, bool positive) { return positive ? e + 1 : -(e + 1); };
    for (auto & t : s.relation(0))
        cnf.clauses.emplace_back(literal(t[0], true), literal(t[1], true));
    for (auto & t : s.relation(1))
        cnf.clauses.emplace_back(literal(t[0], true), literal(t[1], false));
    for (auto & t : s.relation(2))
        cnf.clauses.emplace_back(literal(t[0], false), literal(t[1], false));
    return cnf;
}

auto pathdual::satisfies(const TwoCnf & cnf, const vector<bool> & values) -> bool
{
    auto value = [&](int literal) { return values.at(size_t(std::abs(literal) - 1)) == (literal > 0); };
    for (auto [first, second] : cnf.clauses)
        if (! value(first) && ! value(second))
            return false;
    return true;
}
