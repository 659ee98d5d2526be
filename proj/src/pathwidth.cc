#include <pathdual/homomorphism.hh>
#include <pathdual/pathwidth.hh>

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_set>

using namespace pathdual;

using std::move;
using std::optional;
using std::pair;
using std::size_t;
using std::to_string;
using std::uint32_t;
using std::uint64_t;
using std::unordered_set;
using std::vector;

namespace
{
    auto describe_tuple(const Structure & s, size_t symbol, const Tuple & t) -> std::string
    {
        std::string result = s.vocabulary()[symbol].name + "(";
        for (size_t i = 0; i < t.size(); ++i)
            result += (i ? " " : "") + s.name(t[i]);
        return result + ")";
    }

    auto is_subset(const Bag & x, const Bag & y) -> bool
    {
        return std::includes(y.begin(), y.end(), x.begin(), x.end());
    }

    auto intersection(const Bag & x, const Bag & y) -> Bag
    {
        Bag result;
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(result));
        return result;
    }

    auto check_connectivity(const PathDecomposition & d) -> void
    {
        std::map<Element, size_t> last_seen;
        for (size_t i = 0; i < d.bags.size(); ++i)
            for (auto e : d.bags[i]) {
                auto it = last_seen.find(e);
                if (it != last_seen.end() && it->second + 1 != i)
                    throw DecompositionError("interval violation: element index " + to_string(e) + " leaves bag " + to_string(it->second) + " and reappears in bag " + to_string(i));
                last_seen[e] = i;
            }
    }

    auto bag_mask(uint32_t m) -> Bag
    {
        Bag result;
        for (int i = 0; m; ++i, m >>= 1)
            if (m & 1)
                result.push_back(i);
        return result;
    }

    class DecompositionSearch
    {
    private:
        uint32_t _full;
        size_t _j, _k;
        vector<uint32_t> _edges;
        unordered_set<uint64_t> _dead;
        vector<pair<uint32_t, uint32_t>> _steps;

        auto admissible(uint32_t y, uint32_t forgotten, uint32_t dropped) const -> bool
        {
            for (auto e : _edges)
                if ((e & dropped) && ! (e & forgotten) && (e & ~y))
                    return false;
            return true;
        }

        auto search(uint32_t x, uint32_t forgotten) -> bool
        {
            if (forgotten == _full)
                return true;
            auto key = (uint64_t(forgotten) << 32) | x;
            if (_dead.contains(key))
                return false;

            auto room = _k - size_t(std::popcount(x));
            auto rest = _full & ~forgotten & ~x;
            for (uint32_t add = rest;; add = (add - 1) & rest) {
                if (size_t(std::popcount(add)) <= room) {
                    auto y = x | add;
                    for (uint32_t z = y;; z = (z - 1) & y) {
                        if (z != y && size_t(std::popcount(z)) <= _j) {
                            auto dropped = y & ~z;
                            if (admissible(y, forgotten, dropped) && search(z, forgotten | dropped)) {
                                _steps.emplace_back(y, z);
                                return true;
                            }
                        }
                        if (z == 0)
                            break;
                    }
                }
                if (add == 0)
                    break;
            }

            _dead.insert(key);
            return false;
        }

    public:
        DecompositionSearch(size_t n, WidthPair bound, vector<uint32_t> edges) :
            _full(n == 32 ? ~uint32_t(0) : (uint32_t(1) << n) - 1),
            _j(std::min(bound.j, bound.k)),
            _k(bound.k),
            _edges(move(edges))
        {
        }

        auto run() -> optional<PathDecomposition>
        {
            if (! search(0, 0))
                return std::nullopt;
            std::reverse(_steps.begin(), _steps.end());
            PathDecomposition result;
            for (auto & [y, z] : _steps) {
                for (auto m : {y, z}) {
                    auto bag = bag_mask(m);
                    if (result.bags.empty() || result.bags.back() != bag)
                        result.bags.push_back(move(bag));
                }
            }
            return result;
        }
    };

    auto edge_masks(const Structure & s) -> vector<uint32_t>
    {
        vector<uint32_t> edges;
        for (size_t r = 0; r < s.vocabulary().size(); ++r)
            for (auto & t : s.relation(r)) {
                uint32_t m = 0;
                for (auto e : t)
                    m |= uint32_t(1) << e;
                if (std::popcount(m) >= 2)
                    edges.push_back(m);
            }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return edges;
    }

    auto has_nullary_fact(const Structure & s) -> bool
    {
        for (size_t r = 0; r < s.vocabulary().size(); ++r)
            if (s.vocabulary()[r].arity == 0 && ! s.relation(r).empty())
                return true;
        return false;
    }
}

auto pathdual::fits_within(const WidthPair & w, const WidthPair & bound) -> bool
{
    return w.j <= bound.j && w.k <= bound.k;
}

auto pathdual::make_bag(vector<Element> elements) -> Bag
{
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return elements;
}

auto pathdual::width_of(const PathDecomposition & d) -> WidthPair
{
    WidthPair result;
    for (size_t i = 0; i < d.bags.size(); ++i) {
        result.k = std::max(result.k, d.bags[i].size());
        if (i + 1 < d.bags.size())
            result.j = std::max(result.j, intersection(d.bags[i], d.bags[i + 1]).size());
    }
    return result;
}

auto pathdual::check_path_decomposition(const Structure & s, const PathDecomposition & d) -> WidthPair
{
    vector<char> covered(s.size(), 0);
    for (size_t i = 0; i < d.bags.size(); ++i) {
        auto & bag = d.bags[i];
        if (! std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end())
            throw DecompositionError("bag " + to_string(i) + " is not a sorted set");
        for (auto e : bag) {
            if (e < 0 || size_t(e) >= s.size())
                throw DecompositionError("bag " + to_string(i) + " mentions an element outside the universe");
            covered[size_t(e)] = 1;
        }
    }
    for (size_t e = 0; e < s.size(); ++e)
        if (! covered[e])
            throw DecompositionError("element " + s.name(Element(e)) + " occurs in no bag");

    check_connectivity(d);

    for (size_t r = 0; r < s.vocabulary().size(); ++r)
        for (auto & t : s.relation(r)) {
            auto sorted_tuple = make_bag(t);
            bool ok = false;
            for (auto & bag : d.bags)
                if (is_subset(sorted_tuple, bag)) {
                    ok = true;
                    break;
                }
            if (! ok)
                throw DecompositionError("uncovered tuple " + describe_tuple(s, r, t));
        }

    return width_of(d);
}

auto pathdual::is_canonical(const PathDecomposition & d) -> bool
{
    if (d.bags.empty() || ! d.bags.back().empty())
        return false;
    for (size_t i = 0; i + 1 < d.bags.size(); ++i)
        if (! is_subset(d.bags[i], d.bags[i + 1]) && ! is_subset(d.bags[i + 1], d.bags[i]))
            return false;
    return true;
}

auto pathdual::canonicalize_decomposition(const PathDecomposition & d) -> PathDecomposition
{
    check_connectivity(d);
    PathDecomposition result;
    for (size_t i = 0; i < d.bags.size(); ++i) {
        result.bags.push_back(d.bags[i]);
        if (i + 1 < d.bags.size() && ! is_subset(d.bags[i], d.bags[i + 1]) && ! is_subset(d.bags[i + 1], d.bags[i]))
            result.bags.push_back(intersection(d.bags[i], d.bags[i + 1]));
    }
    if (result.bags.empty() || ! result.bags.back().empty())
        result.bags.emplace_back();
    return result;
}

auto pathdual::canonicalize_decomposition(const Structure & s, const PathDecomposition & d) -> PathDecomposition
{
    check_path_decomposition(s, d);
    return canonicalize_decomposition(d);
}

auto pathdual::find_decomposition(const Structure & s, const WidthPair & bound) -> optional<PathDecomposition>
{
    if (s.size() > 32)
        throw DecompositionError("exact decomposition search supports at most 32 elements");
    if (s.size() == 0) {
        PathDecomposition result;
        if (has_nullary_fact(s))
            result.bags.emplace_back();
        return result;
    }
    if (bound.k == 0)
        return std::nullopt;

    DecompositionSearch search(s.size(), bound, edge_masks(s));
    return search.run();
}

auto pathdual::minimal_widths(const Structure & s, size_t k_cap) -> vector<WidthPair>
{
    vector<WidthPair> feasible;
    for (size_t k = 0; k <= k_cap; ++k)
        for (size_t j = 0; j <= k; ++j)
            if (find_decomposition(s, WidthPair{j, k}))
                feasible.push_back(WidthPair{j, k});

    vector<WidthPair> result;
    for (auto & w : feasible) {
        bool dominated = false;
        for (auto & v : feasible)
            if (v != w && fits_within(v, w))
                dominated = true;
        if (! dominated)
            result.push_back(w);
    }
    return result;
}

StructureSpace::StructureSpace(Vocabulary vocabulary, size_t n) :
    _vocabulary(move(vocabulary)),
    _n(n)
{
    for (size_t r = 0; r < _vocabulary.size(); ++r) {
        _offsets.push_back(_facts.size());
        auto arity = _vocabulary[r].arity;
        Tuple t(arity, 0);
        if (arity > 0 && n == 0)
            continue;
        while (true) {
            _facts.emplace_back(r, t);
            size_t p = arity;
            while (p > 0 && size_t(t[p - 1]) + 1 == n)
                t[--p] = 0;
            if (p == 0)
                break;
            ++t[p - 1];
        }
    }
}

auto StructureSpace::bits() const -> size_t
{
    return _facts.size();
}

auto StructureSpace::universe_size() const -> size_t
{
    return _n;
}

auto StructureSpace::fact(size_t bit) const -> const pair<size_t, Tuple> &
{
    return _facts.at(bit);
}

auto StructureSpace::bit_of(size_t symbol, const Tuple & t) const -> size_t
{
    size_t index = 0;
    for (auto e : t)
        index = index * _n + size_t(e);
    return _offsets.at(symbol) + index;
}

auto StructureSpace::structure(uint64_t mask) const -> Structure
{
    Structure result(_vocabulary);
    for (size_t i = 1; i <= _n; ++i)
        result.add_element(to_string(i));
    for (size_t b = 0; b < _facts.size(); ++b)
        if (mask >> b & 1)
            result.add_tuple_unchecked(_facts[b].first, _facts[b].second);
    return result;
}

auto StructureSpace::mask_of(const Structure & s) const -> uint64_t
{
    if (s.size() != _n)
        throw StructureError("structure size does not match the enumeration space");
    if (_facts.size() > 64)
        throw StructureError("enumeration space has more than 64 facts");
    auto symbol_map = match_vocabularies(s.vocabulary(), _vocabulary);
    uint64_t mask = 0;
    for (size_t r = 0; r < s.vocabulary().size(); ++r)
        for (auto & t : s.relation(r))
            mask |= uint64_t(1) << bit_of(symbol_map[r], t);
    return mask;
}

StructureEnumerator::StructureEnumerator(Vocabulary vocabulary, size_t n_max, size_t j, size_t k) :
    _vocabulary(move(vocabulary)),
    _n_max(n_max),
    _bound{j, k}
{
}

auto StructureEnumerator::restart() -> void
{
    _n = 1;
    _mask = 0;
    _space.reset();
}

auto StructureEnumerator::next() -> optional<EnumeratedStructure>
{
    while (_n <= _n_max) {
        if (! _space) {
            _space.emplace(_vocabulary, _n);
            if (_space->bits() > 62)
                throw StructureError("enumeration space too large: " + to_string(_space->bits()) + " facts");
            _mask = 0;
        }

        vector<uint32_t> fact_elements;
        for (size_t b = 0; b < _space->bits(); ++b) {
            uint32_t m = 0;
            for (auto e : _space->fact(b).second)
                m |= uint32_t(1) << e;
            fact_elements.push_back(m);
        }

        auto limit = uint64_t(1) << _space->bits();
        while (_mask < limit) {
            auto mask = _mask++;
            vector<uint32_t> key{uint32_t(_n)};
            for (size_t b = 0; b < _space->bits(); ++b)
                if ((mask >> b & 1) && std::popcount(fact_elements[b]) >= 2)
                    key.push_back(fact_elements[b]);
            std::sort(key.begin() + 1, key.end());
            key.erase(std::unique(key.begin() + 1, key.end()), key.end());

            auto it = _cache.find(key);
            if (it == _cache.end())
                it = _cache.emplace(key, find_decomposition(_space->structure(mask), _bound)).first;
            if (it->second)
                return EnumeratedStructure{_space->structure(mask), *it->second};
        }

        ++_n;
        _space.reset();
    }
    return std::nullopt;
}

auto pathdual::enumerate_structures(const Vocabulary & vocabulary, size_t n_max, size_t j, size_t k) -> StructureEnumerator
{
    return StructureEnumerator(vocabulary, n_max, j, k);
}
