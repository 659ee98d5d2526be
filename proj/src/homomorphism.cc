#include <pathdual/homomorphism.hh>

#include <algorithm>
#include <bit>
#include <cstdint>

using namespace pathdual;

using std::move;
using std::function;
using std::optional;
using std::size_t;
using std::to_string;
using std::vector;

namespace
{
    using Word = std::uint64_t;

    enum class ConstraintKind
    {
        binary,
        binary_loop,
        general
    };

    /// One source tuple. Its variables, and for each position the slot of that variable among the
    /// tuple's distinct variables, live in the searcher's flat arrays.
    struct Constraint
    {
        ConstraintKind kind;
        size_t target_symbol;
        size_t arity;
        size_t offset;
        size_t distinct_offset;
        size_t distinct_count;
    };

    /// Backtracking with forward checking. Domains are bitsets; binary constraints are revised
    /// through successor and predecessor bitsets of the target relation, others by scanning tuples.
    class HomomorphismSearcher
    {
    private:
        size_t _n, _m, _words;
        const function<bool(const Assignment &)> & _callback;
        bool _stopped = false;

        vector<Constraint> _constraints;
        vector<Element> _variables, _distinct;
        vector<size_t> _slots;
        vector<size_t> _constraints_start, _constraints_of;

        /// Target tuples of every symbol back to back, starting at _target_offsets[symbol].
        vector<Element> _target_tuples;
        vector<size_t> _target_offsets, _target_counts;

        /// For binary symbols: m successor sets, m predecessor sets, then the loop set.
        vector<Word> _adjacency;
        vector<size_t> _adjacency_offsets;

        /// Per depth: n domains of _words words each, and n domain sizes.
        vector<Word> _domains;
        vector<int> _sizes;
        vector<Word> _scratch;

        auto domains_at(size_t depth) -> Word *
        {
            return _domains.data() + depth * _n * _words;
        }

        auto sizes_at(size_t depth) -> int *
        {
            return _sizes.data() + depth * _n;
        }

        static auto test(const Word * set, size_t v) -> bool
        {
            return set[v / 64] >> (v % 64) & 1;
        }

        static auto set_bit(Word * set, size_t v) -> void
        {
            set[v / 64] |= Word(1) << (v % 64);
        }

        auto count(const Word * set) const -> int
        {
            int result = 0;
            for (size_t w = 0; w < _words; ++w)
                result += std::popcount(set[w]);
            return result;
        }

        auto revise_binary(const Constraint & c, Word * domains, int * sizes) -> bool
        {
            auto x = size_t(_variables[c.offset]), y = size_t(_variables[c.offset + 1]);
            auto successors = _adjacency.data() + _adjacency_offsets[c.target_symbol];
            auto dx = domains + x * _words, dy = domains + y * _words;

            // y keeps values with a predecessor in D(x)
            auto reach = _scratch.data();
            std::fill(reach, reach + _words, 0);
            for (size_t w = 0; w < _words; ++w)
                for (Word bits = dx[w]; bits; bits &= bits - 1) {
                    auto a = w * 64 + size_t(std::countr_zero(bits));
                    auto row = successors + a * _words;
                    for (size_t u = 0; u < _words; ++u)
                        reach[u] |= row[u];
                }
            for (size_t u = 0; u < _words; ++u)
                dy[u] &= reach[u];
            sizes[y] = count(dy);
            if (sizes[y] == 0)
                return false;

            // x keeps values with a successor in D(y)
            for (size_t w = 0; w < _words; ++w)
                for (Word bits = dx[w]; bits; bits &= bits - 1) {
                    auto a = w * 64 + size_t(std::countr_zero(bits));
                    auto row = successors + a * _words;
                    bool supported = false;
                    for (size_t u = 0; u < _words && ! supported; ++u)
                        supported = row[u] & dy[u];
                    if (! supported)
                        dx[w] &= ~(Word(1) << (a % 64));
                }
            sizes[x] = count(dx);
            return sizes[x] != 0;
        }

        auto revise_loop(const Constraint & c, Word * domains, int * sizes) -> bool
        {
            auto x = size_t(_variables[c.offset]);
            auto loops = _adjacency.data() + _adjacency_offsets[c.target_symbol] + 2 * _m * _words;
            auto dx = domains + x * _words;
            for (size_t w = 0; w < _words; ++w)
                dx[w] &= loops[w];
            sizes[x] = count(dx);
            return sizes[x] != 0;
        }

        auto revise_general(const Constraint & c, Word * domains, int * sizes) -> bool
        {
            auto tuples = _target_tuples.data() + _target_offsets[c.target_symbol];
            auto r = c.arity;
            auto vars = _variables.data() + c.offset;
            auto slots = _slots.data() + c.offset;
            auto distinct = _distinct.data() + c.distinct_offset;
            auto support = _scratch.data();
            std::fill(support, support + c.distinct_count * _words, 0);

            bool any = false;
            for (size_t i = 0; i < _target_counts[c.target_symbol]; ++i) {
                auto t = tuples + i * r;
                bool ok = true;
                for (size_t p = 0; p < r && ok; ++p) {
                    ok = test(domains + size_t(vars[p]) * _words, size_t(t[p]));
                    for (size_t q = 0; q < p && ok; ++q)
                        if (vars[q] == vars[p])
                            ok = t[q] == t[p];
                }
                if (! ok)
                    continue;
                any = true;
                for (size_t p = 0; p < r; ++p)
                    set_bit(support + slots[p] * _words, size_t(t[p]));
            }
            if (! any)
                return false;

            for (size_t i = 0; i < c.distinct_count; ++i) {
                auto x = size_t(distinct[i]);
                auto d = domains + x * _words;
                for (size_t w = 0; w < _words; ++w)
                    d[w] &= support[i * _words + w];
                sizes[x] = count(d);
                if (sizes[x] == 0)
                    return false;
            }
            return true;
        }

        auto revise(const Constraint & c, Word * domains, int * sizes) -> bool
        {
            switch (c.kind) {
            case ConstraintKind::binary: return revise_binary(c, domains, sizes);
            case ConstraintKind::binary_loop: return revise_loop(c, domains, sizes);
            case ConstraintKind::general: return revise_general(c, domains, sizes);
            }
            return false;
        }

        auto search(Assignment & values, size_t depth) -> void
        {
            if (depth == _n) {
                if (! _callback(values))
                    _stopped = true;
                return;
            }

            auto domains = domains_at(depth);
            auto sizes = sizes_at(depth);
            size_t branch = _n;
            for (size_t x = 0; x < _n; ++x)
                if (values[x] == -1 && (branch == _n || sizes[x] < sizes[branch]))
                    branch = x;

            auto next_domains = domains_at(depth + 1);
            auto next_sizes = sizes_at(depth + 1);
            auto choices = domains + branch * _words;
            for (size_t v = 0; v < _m && ! _stopped; ++v) {
                if (! test(choices, v))
                    continue;
                std::copy(domains, domains + _n * _words, next_domains);
                std::copy(sizes, sizes + _n, next_sizes);
                values[branch] = Element(v);
                std::fill(next_domains + branch * _words, next_domains + (branch + 1) * _words, 0);
                set_bit(next_domains + branch * _words, v);
                next_sizes[branch] = 1;

                bool ok = true;
                for (auto i = _constraints_start[branch]; i < _constraints_start[branch + 1]; ++i)
                    if (! revise(_constraints[_constraints_of[i]], next_domains, next_sizes)) {
                        ok = false;
                        break;
                    }
                if (ok)
                    search(values, depth + 1);
                values[branch] = -1;
            }
        }

    public:
        HomomorphismSearcher(const Structure & a, const Structure & b, const function<bool(const Assignment &)> & callback) :
            _n(a.size()),
            _m(b.size()),
            _words((b.size() + 63) / 64),
            _callback(callback)
        {
            auto symbol_map = match_vocabularies(a.vocabulary(), b.vocabulary());
            auto & target = b.vocabulary();
            auto symbols = target.size();
            _target_offsets.resize(symbols);
            _target_counts.resize(symbols);
            _adjacency_offsets.resize(symbols);
            size_t target_positions = 0, binary = 0;
            for (size_t r = 0; r < symbols; ++r) {
                target_positions += b.relation(r).size() * target[r].arity;
                binary += target[r].arity == 2;
            }
            _target_tuples.reserve(target_positions);
            _adjacency.assign(binary * (2 * _m + 1) * _words, 0);
            size_t adjacency_offset = 0;
            for (size_t r = 0; r < symbols; ++r) {
                _target_offsets[r] = _target_tuples.size();
                _target_counts[r] = b.relation(r).size();
                for (auto & t : b.relation(r))
                    _target_tuples.insert(_target_tuples.end(), t.begin(), t.end());
                if (target[r].arity == 2) {
                    _adjacency_offsets[r] = adjacency_offset;
                    auto base = _adjacency.data() + adjacency_offset;
                    for (auto & t : b.relation(r)) {
                        set_bit(base + size_t(t[0]) * _words, size_t(t[1]));
                        set_bit(base + (_m + size_t(t[1])) * _words, size_t(t[0]));
                        if (t[0] == t[1])
                            set_bit(base + 2 * _m * _words, size_t(t[0]));
                    }
                    adjacency_offset += (2 * _m + 1) * _words;
                }
            }

            size_t positions = 0, tuples = 0;
            for (size_t r = 0; r < a.vocabulary().size(); ++r) {
                positions += a.relation(r).size() * a.vocabulary()[r].arity;
                tuples += a.relation(r).size();
            }
            _variables.reserve(positions);
            _slots.reserve(positions);
            _distinct.reserve(positions);
            _constraints.reserve(tuples);

            // counts per element first, then prefix sums
            _constraints_start.assign(_n + 1, 0);
            size_t widest = 1;
            for (size_t r = 0; r < a.vocabulary().size(); ++r)
                for (auto & t : a.relation(r)) {
                    Constraint c{ConstraintKind::general, symbol_map[r], t.size(), _variables.size(), _distinct.size(), 0};
                    for (auto x : t) {
                        auto first = std::find(_distinct.begin() + std::ptrdiff_t(c.distinct_offset), _distinct.end(), x);
                        _slots.push_back(size_t(first - _distinct.begin()) - c.distinct_offset);
                        if (first == _distinct.end()) {
                            _distinct.push_back(x);
                            ++_constraints_start[size_t(x) + 1];
                        }
                        _variables.push_back(x);
                    }
                    c.distinct_count = _distinct.size() - c.distinct_offset;
                    if (t.size() == 2)
                        c.kind = c.distinct_count == 2 ? ConstraintKind::binary : ConstraintKind::binary_loop;
                    widest = std::max(widest, c.distinct_count);
                    _constraints.push_back(c);
                }

            for (size_t x = 0; x < _n; ++x)
                _constraints_start[x + 1] += _constraints_start[x];

            // filling from the back leaves the start of element x in slot x + 1
            auto total = _constraints_start[_n];
            _constraints_of.resize(total);
            for (size_t i = _constraints.size(); i-- > 0;)
                for (size_t d = 0; d < _constraints[i].distinct_count; ++d)
                    _constraints_of[--_constraints_start[size_t(_distinct[_constraints[i].distinct_offset + d]) + 1]] = i;
            for (size_t x = 0; x < _n; ++x)
                _constraints_start[x] = _constraints_start[x + 1];
            _constraints_start[_n] = total;

            _scratch.resize(widest * _words);
        }

        auto run(const PartialMap & pins) -> void
        {
            for (auto & [x, v] : pins) {
                if (x < 0 || size_t(x) >= _n)
                    throw StructureError("pin references unknown source element index " + to_string(x));
                if (v < 0 || size_t(v) >= _m)
                    throw StructureError("pin references unknown target element index " + to_string(v));
            }

            _domains.assign((_n + 1) * _n * _words, 0);
            _sizes.assign((_n + 1) * _n, int(_m));
            Assignment values(_n, -1);
            size_t depth = 0;
            auto domains = domains_at(0);
            auto sizes = sizes_at(0);
            for (size_t x = 0; x < _n; ++x)
                for (size_t v = 0; v < _m; ++v)
                    set_bit(domains + x * _words, v);
            for (auto & [x, v] : pins) {
                std::fill(domains + size_t(x) * _words, domains + size_t(x + 1) * _words, 0);
                set_bit(domains + size_t(x) * _words, size_t(v));
                sizes[x] = 1;
                values[size_t(x)] = v;
                ++depth;
            }

            for (size_t x = 0; x < _n; ++x)
                if (sizes[x] == 0)
                    return;
            for (auto & c : _constraints)
                if (! revise(c, domains, sizes))
                    return;

            // pinned elements count as placed levels, so the root state moves up to the start depth
            if (depth > 0) {
                std::copy(domains, domains + _n * _words, domains_at(depth));
                std::copy(sizes, sizes + _n, sizes_at(depth));
            }
            search(values, depth);
        }
    };
}

auto pathdual::match_vocabularies(const Vocabulary & a, const Vocabulary & b) -> vector<size_t>
{
    vector<size_t> result;
    for (size_t r = 0; r < a.size(); ++r) {
        auto s = b.find(a[r].name);
        if (! s || b[*s].arity != a[r].arity)
            throw StructureError("vocabulary mismatch: symbol " + a[r].name + "/" + to_string(a[r].arity) + " is missing from the target");
        result.push_back(*s);
    }
    return result;
}

auto pathdual::for_each_homomorphism(const Structure & a, const Structure & b, const PartialMap & pins,
    const function<bool(const Assignment &)> & callback) -> void
{
    HomomorphismSearcher searcher(a, b, callback);
    searcher.run(pins);
}

auto pathdual::find_homomorphism(const Structure & a, const Structure & b, const PartialMap & pins) -> optional<Assignment>
{
    optional<Assignment> result;
    for_each_homomorphism(a, b, pins, [&](const Assignment & h) {
        result = h;
        return false;
    });
    return result;
}

auto pathdual::all_homomorphisms(const Structure & a, const Structure & b) -> vector<Assignment>
{
    vector<Assignment> result;
    for_each_homomorphism(a, b, {}, [&](const Assignment & h) {
        result.push_back(h);
        return true;
    });
    std::sort(result.begin(), result.end());
    return result;
}

auto pathdual::homomorphic(const Structure & a, const Structure & b) -> bool
{
    return find_homomorphism(a, b).has_value();
}

auto pathdual::is_homomorphism(const Structure & a, const Structure & b, const Assignment & h) -> bool
{
    if (h.size() != a.size())
        return false;
    for (auto v : h)
        if (v < 0 || size_t(v) >= b.size())
            return false;
    auto symbol_map = match_vocabularies(a.vocabulary(), b.vocabulary());
    for (size_t r = 0; r < a.vocabulary().size(); ++r)
        for (auto & t : a.relation(r)) {
            Tuple image;
            image.reserve(t.size());
            for (auto x : t)
                image.push_back(h[size_t(x)]);
            if (! b.has_tuple(symbol_map[r], image))
                return false;
        }
    return true;
}
