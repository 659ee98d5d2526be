#include <support/isomorphism.hh>

#include <pathdual/homomorphism.hh>

#include <algorithm>
#include <bit>
#include <numeric>

using namespace pathdual;

using std::move;
using std::size_t;
using std::uint64_t;
using std::uint8_t;
using std::vector;

namespace
{
    auto identity(size_t n) -> vector<Element>
    {
        vector<Element> p(n);
        std::iota(p.begin(), p.end(), 0);
        return p;
    }

    auto relabel(const Structure & s, const vector<Element> & p) -> isomorphism::CanonicalKey
    {
        isomorphism::CanonicalKey key;
        for (size_t r = 0; r < s.vocabulary().size(); ++r) {
            vector<Tuple> tuples;
            for (auto & t : s.relation(r)) {
                Tuple u;
                for (auto x : t)
                    u.push_back(p[size_t(x)]);
                tuples.push_back(std::move(u));
            }
            std::sort(tuples.begin(), tuples.end());
            key.push_back(std::move(tuples));
        }
        return key;
    }
}

auto isomorphism::canonical_key(const Structure & s) -> CanonicalKey
{
    auto p = identity(s.size());
    auto best = relabel(s, p);
    while (std::next_permutation(p.begin(), p.end()))
        best = std::min(best, relabel(s, p));
    return best;
}

auto isomorphism::isomorphic(const Structure & a, const Structure & b) -> bool
{
    match_vocabularies(a.vocabulary(), b.vocabulary());
    if (a.size() != b.size() || a.tuple_count() != b.tuple_count())
        return false;
    return canonical_key(a) == canonical_key(b);
}

isomorphism::BinaryPermuter::BinaryPermuter(size_t n) :
    _n(n)
{
    auto p = identity(n);
    do {
        vector<uint8_t> bits(n * n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                bits[i * n + j] = uint8_t(size_t(p[i]) * n + size_t(p[j]));
        _bit_maps.push_back(std::move(bits));
    } while (std::next_permutation(p.begin(), p.end()));
}

auto isomorphism::BinaryPermuter::permutation_count() const -> size_t
{
    return _bit_maps.size();
}

auto isomorphism::BinaryPermuter::apply(size_t permutation, uint64_t mask) const -> uint64_t
{
    auto & bits = _bit_maps[permutation];
    uint64_t result = 0;
    for (; mask; mask &= mask - 1)
        result |= uint64_t(1) << bits[size_t(std::countr_zero(mask))];
    return result;
}

auto isomorphism::BinaryPermuter::is_orbit_minimum(uint64_t mask) const -> bool
{
    for (size_t p = 1; p < _bit_maps.size(); ++p)
        if (apply(p, mask) < mask)
            return false;
    return true;
}
