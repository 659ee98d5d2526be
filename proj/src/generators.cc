#include <pathdual/errors.hh>
#include <pathdual/generators.hh>
#include <pathdual/two_sat_encoding.hh>

using namespace pathdual;

using std::move;
using std::size_t;
using std::string_view;

auto pathdual::edge_vocabulary() -> Vocabulary
{
    return Vocabulary{{"E", 2}};
}

auto pathdual::k_clique(size_t k) -> Structure
{
    auto s = Structure::with_size(edge_vocabulary(), k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            if (i != j)
                s.add_tuple(0, {Element(i), Element(j)});
    return s;
}

auto pathdual::sym_cycle(size_t n) -> Structure
{
    auto s = Structure::with_size(edge_vocabulary(), n);
    for (size_t i = 0; i < n; ++i) {
        auto next = Element((i + 1) % n);
        s.add_tuple(0, {Element(i), next});
        s.add_tuple(0, {next, Element(i)});
    }
    return s;
}

auto pathdual::directed_cycle(size_t n) -> Structure
{
    auto s = Structure::with_size(edge_vocabulary(), n);
    for (size_t i = 0; i < n; ++i)
        s.add_tuple(0, {Element(i), Element((i + 1) % n)});
    return s;
}

auto pathdual::oriented_path(string_view shape) -> Structure
{
    auto s = Structure::with_size(edge_vocabulary(), shape.size() + 1);
    for (size_t i = 0; i < shape.size(); ++i) {
        auto here = Element(i), there = Element(i + 1);
        if (shape[i] == '+')
            s.add_tuple(0, {here, there});
        else if (shape[i] == '-')
            s.add_tuple(0, {there, here});
        else
            throw StructureError("oriented path shapes use only '+' and '-'");
    }
    return s;
}

auto pathdual::b_2sat() -> Structure
{
    auto s = Structure::with_size(b_2sat_vocabulary(), 2);
    for (Element x = 0; x < 2; ++x)
        for (Element y = 0; y < 2; ++y) {
            if (x + y != 0)
                s.add_tuple(0, {x, y});
            if (! (x == 0 && y == 1))
                s.add_tuple(1, {x, y});
            if (x + y != 2)
                s.add_tuple(2, {x, y});
        }
    return s;
}
