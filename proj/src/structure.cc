#include <pathdual/structure.hh>

#include <algorithm>

using namespace pathdual;

using std::move;
using std::optional;
using std::set;
using std::size_t;
using std::span;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

Vocabulary::Vocabulary(std::initializer_list<RelationSymbol> symbols)
{
    for (auto & s : symbols)
        add(s.name, s.arity);
}

auto Vocabulary::add(string name, size_t arity) -> size_t
{
    if (contains(name))
        throw StructureError("duplicate relation symbol '" + name + "'");
    _symbols.push_back(RelationSymbol{move(name), arity});
    return _symbols.size() - 1;
}

auto Vocabulary::find(string_view name) const -> optional<size_t>
{
    for (size_t i = 0; i < _symbols.size(); ++i)
        if (_symbols[i].name == name)
            return i;
    return std::nullopt;
}

auto Vocabulary::index_of(string_view name) const -> size_t
{
    auto i = find(name);
    if (! i)
        throw StructureError("unknown relation symbol '" + string(name) + "'");
    return *i;
}

auto Vocabulary::contains(string_view name) const -> bool
{
    return find(name).has_value();
}

auto Vocabulary::size() const -> size_t
{
    return _symbols.size();
}

auto Vocabulary::empty() const -> bool
{
    return _symbols.empty();
}

auto Vocabulary::max_arity() const -> size_t
{
    size_t result = 0;
    for (auto & s : _symbols)
        result = std::max(result, s.arity);
    return result;
}

auto Vocabulary::operator[](size_t index) const -> const RelationSymbol &
{
    return _symbols.at(index);
}

auto Vocabulary::symbols() const -> const vector<RelationSymbol> &
{
    return _symbols;
}

Structure::Structure(Vocabulary vocabulary) :
    _vocabulary(move(vocabulary)),
    _relations(_vocabulary.size())
{
}

auto Structure::with_universe(Vocabulary vocabulary, const vector<string> & names) -> Structure
{
    Structure result(move(vocabulary));
    for (auto & n : names)
        result.add_element(n);
    return result;
}

auto Structure::with_size(Vocabulary vocabulary, size_t n) -> Structure
{
    Structure result(move(vocabulary));
    for (size_t i = 0; i < n; ++i)
        result.add_element(to_string(i));
    return result;
}

auto Structure::add_element(string name) -> Element
{
    if (_index.contains(name))
        throw StructureError("duplicate element '" + name + "'");
    auto e = Element(_names.size());
    _index.emplace(name, e);
    _names.push_back(move(name));
    return e;
}

auto Structure::add_tuple(size_t symbol, Tuple tuple) -> void
{
    if (symbol >= _vocabulary.size())
        throw StructureError("unknown relation symbol index " + to_string(symbol));
    auto & sym = _vocabulary[symbol];
    if (tuple.size() != sym.arity)
        throw StructureError("arity error: " + sym.name + " has arity " + to_string(sym.arity) + " but tuple has length " + to_string(tuple.size()));
    for (auto e : tuple)
        if (e < 0 || size_t(e) >= _names.size())
            throw StructureError("unknown element index " + to_string(e) + " in a tuple of " + sym.name);
    _relations[symbol].insert(move(tuple));
}

auto Structure::add_tuple(string_view symbol, const vector<string> & element_names) -> void
{
    auto s = _vocabulary.find(symbol);
    if (! s)
        throw StructureError("unknown relation symbol '" + string(symbol) + "'");
    Tuple t;
    for (auto & n : element_names) {
        auto e = find(n);
        if (! e)
            throw StructureError("unknown element '" + n + "' in a tuple of " + string(symbol));
        t.push_back(*e);
    }
    add_tuple(*s, move(t));
}

auto Structure::add_tuple_unchecked(size_t symbol, Tuple tuple) -> void
{
    if (symbol >= _relations.size())
        _relations.resize(symbol + 1);
    _relations[symbol].insert(move(tuple));
}

auto Structure::vocabulary() const -> const Vocabulary &
{
    return _vocabulary;
}

auto Structure::size() const -> size_t
{
    return _names.size();
}

auto Structure::name(Element e) const -> const string &
{
    return _names.at(size_t(e));
}

auto Structure::names() const -> const vector<string> &
{
    return _names;
}

auto Structure::find(string_view name) const -> optional<Element>
{
    auto i = _index.find(name);
    if (i == _index.end())
        return std::nullopt;
    return i->second;
}

auto Structure::element(string_view name) const -> Element
{
    auto e = find(name);
    if (! e)
        throw StructureError("unknown element '" + string(name) + "'");
    return *e;
}

auto Structure::relation(size_t symbol) const -> const TupleSet &
{
    return _relations.at(symbol);
}

auto Structure::relation(string_view symbol) const -> const TupleSet &
{
    return _relations.at(_vocabulary.index_of(symbol));
}

auto Structure::has_tuple(size_t symbol, const Tuple & tuple) const -> bool
{
    return _relations.at(symbol).contains(tuple);
}

auto Structure::stored_relation_count() const -> size_t
{
    return _relations.size();
}

auto Structure::tuple_count() const -> size_t
{
    size_t result = 0;
    for (auto & r : _relations)
        result += r.size();
    return result;
}

auto Structure::operator==(const Structure & other) const -> bool
{
    return _vocabulary == other._vocabulary && _names == other._names && _relations == other._relations;
}

auto pathdual::validate_structure(const Structure & s) -> void
{
    auto & voc = s.vocabulary();
    for (size_t r = 0; r < voc.size(); ++r)
        for (auto & t : s.relation(r)) {
            if (t.size() != voc[r].arity)
                throw StructureError("arity error: " + voc[r].name + " has arity " + to_string(voc[r].arity) + " but a tuple has length " + to_string(t.size()));
            for (auto e : t)
                if (e < 0 || size_t(e) >= s.size())
                    throw StructureError("unknown element index " + to_string(e) + " in a tuple of " + voc[r].name);
        }

    if (s.stored_relation_count() > voc.size())
        for (size_t r = voc.size(); r < s.stored_relation_count(); ++r)
            if (! s.relation(r).empty())
                throw StructureError("unknown relation symbol index " + to_string(r));
}

auto pathdual::induced_substructure(const Structure & s, span<const Element> subset) -> Structure
{
    vector<Element> remap(s.size(), -1);
    for (auto e : subset) {
        if (e < 0 || size_t(e) >= s.size())
            throw StructureError("element index " + to_string(e) + " is outside the universe");
        remap[size_t(e)] = 0;
    }

    Structure result(s.vocabulary());
    for (size_t e = 0; e < s.size(); ++e)
        if (remap[e] != -1)
            remap[e] = result.add_element(s.name(Element(e)));

    for (size_t r = 0; r < s.vocabulary().size(); ++r)
        for (auto & t : s.relation(r)) {
            Tuple u;
            u.reserve(t.size());
            bool inside = true;
            for (auto e : t) {
                if (remap[size_t(e)] == -1) {
                    inside = false;
                    break;
                }
                u.push_back(remap[size_t(e)]);
            }
            if (inside)
                result.add_tuple_unchecked(r, move(u));
        }
    return result;
}

auto pathdual::disjoint_union(span<const Structure> structures) -> Structure
{
    if (structures.empty())
        return Structure{};

    Structure result(structures.front().vocabulary());
    for (size_t i = 0; i < structures.size(); ++i) {
        auto & s = structures[i];
        if (! (s.vocabulary() == result.vocabulary()))
            throw StructureError("vocabulary mismatch in disjoint union at structure " + to_string(i));
        auto offset = Element(result.size());
        for (auto & n : s.names())
            result.add_element(to_string(i) + "." + n);
        for (size_t r = 0; r < s.vocabulary().size(); ++r)
            for (auto & t : s.relation(r)) {
                Tuple u = t;
                for (auto & e : u)
                    e += offset;
                result.add_tuple_unchecked(r, move(u));
            }
    }
    return result;
}

auto pathdual::gaifman_neighbours(const Structure & s) -> vector<set<Element>>
{
    vector<set<Element>> result(s.size());
    for (size_t r = 0; r < s.vocabulary().size(); ++r)
        for (auto & t : s.relation(r))
            for (auto x : t)
                for (auto y : t)
                    if (x != y)
                        result[size_t(x)].insert(y);
    return result;
}

auto pathdual::gaifman_graph(const Structure & s) -> Structure
{
    Structure result = Structure::with_universe(Vocabulary{{"adj", 2}}, s.names());
    auto adj = gaifman_neighbours(s);
    for (size_t x = 0; x < adj.size(); ++x)
        for (auto y : adj[x])
            result.add_tuple_unchecked(0, Tuple{Element(x), y});
    return result;
}

auto pathdual::restrict_map(const Assignment & h, span<const Element> subset) -> Assignment
{
    Assignment result;
    result.reserve(subset.size());
    for (auto e : subset)
        result.push_back(h.at(size_t(e)));
    return result;
}

auto pathdual::to_partial_map(const Assignment & h) -> PartialMap
{
    PartialMap result;
    for (size_t i = 0; i < h.size(); ++i)
        result.emplace(Element(i), h[i]);
    return result;
}
