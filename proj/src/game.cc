#include <pathdual/game.hh>
#include <pathdual/homomorphism.hh>

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

using namespace pathdual;

using std::map;
using std::move;
using std::optional;
using std::pair;
using std::size_t;
using std::to_string;
using std::uint64_t;
using std::unordered_map;
using std::vector;

namespace
{
    auto is_sorted_set(const vector<Element> & v) -> bool
    {
        return std::is_sorted(v.begin(), v.end()) && std::adjacent_find(v.begin(), v.end()) == v.end();
    }

    auto positions_within(const vector<Element> & inner, const vector<Element> & outer) -> vector<size_t>
    {
        vector<size_t> result;
        for (auto e : inner) {
            auto it = std::lower_bound(outer.begin(), outer.end(), e);
            if (it == outer.end() || *it != e)
                throw GameError("element index " + to_string(e) + " is not pebbled");
            result.push_back(size_t(it - outer.begin()));
        }
        return result;
    }

    auto project(const vector<Assignment> & relation, const vector<size_t> & positions) -> vector<Assignment>
    {
        vector<Assignment> result;
        for (auto & h : relation) {
            Assignment g;
            for (auto p : positions)
                g.push_back(h[p]);
            result.push_back(move(g));
        }
        std::sort(result.begin(), result.end());
        result.erase(std::unique(result.begin(), result.end()), result.end());
        return result;
    }

    auto elements_of(uint64_t mask) -> vector<Element>
    {
        vector<Element> result;
        for (Element e = 0; mask; ++e, mask >>= 1)
            if (mask & 1)
                result.push_back(e);
        return result;
    }

    /// Calls back with every subset of the candidates of size at most limit.
    auto for_each_small_subset(const vector<Element> & candidates, size_t limit, const std::function<void(uint64_t)> & callback) -> void
    {
        std::function<void(size_t, size_t, uint64_t)> rec = [&](size_t from, size_t left, uint64_t chosen) {
            callback(chosen);
            if (left == 0)
                return;
            for (size_t i = from; i < candidates.size(); ++i)
                rec(i + 1, left - 1, chosen | (uint64_t(1) << candidates[i]));
        };
        rec(0, limit, 0);
    }

    class GameSolver
    {
    private:
        const Structure & _a;
        const Structure & _b;
        size_t _j, _k;
        GameOptions _options;
        unordered_map<uint64_t, vector<Assignment>> _local;

        struct Node
        {
            uint64_t mask;
            vector<Assignment> relation;
            size_t parent;
            Move move;
        };

        vector<Node> _nodes;
        map<pair<uint64_t, vector<Assignment>>, size_t> _seen;

        auto local_homomorphisms(uint64_t mask) -> const vector<Assignment> &
        {
            auto it = _local.find(mask);
            if (it == _local.end()) {
                auto elements = elements_of(mask);
                it = _local.emplace(mask, all_homomorphisms(induced_substructure(_a, elements), _b)).first;
            }
            return it->second;
        }

        auto blow(const Node & from, uint64_t to) -> vector<Assignment>
        {
            auto positions = positions_within(elements_of(from.mask), elements_of(to));
            vector<Assignment> result;
            Assignment restricted(positions.size());
            for (auto & h : local_homomorphisms(to)) {
                for (size_t i = 0; i < positions.size(); ++i)
                    restricted[i] = h[positions[i]];
                if (std::binary_search(from.relation.begin(), from.relation.end(), restricted))
                    result.push_back(h);
            }
            return result;
        }

        auto add(uint64_t mask, vector<Assignment> relation, size_t parent, Move move, std::deque<size_t> & queue) -> void
        {
            auto [_, inserted] = _seen.emplace(pair{mask, relation}, _nodes.size());
            if (! inserted)
                return;
            queue.push_back(_nodes.size());
            _nodes.push_back(Node{mask, std::move(relation), parent, std::move(move)});
        }

        auto play_to(size_t id, Move last) const -> SpoilerPlay
        {
            SpoilerPlay play;
            play.moves.push_back(std::move(last));
            for (auto at = id; at != 0; at = _nodes[at].parent)
                play.moves.push_back(_nodes[at].move);
            std::reverse(play.moves.begin(), play.moves.end());
            return play;
        }

    public:
        GameSolver(const Structure & a, const Structure & b, size_t j, size_t k, const GameOptions & options) :
            _a(a),
            _b(b),
            _j(j),
            _k(k),
            _options(options)
        {
            if (j > k)
                throw GameError("game needs j <= k");
            if (a.size() > 64)
                throw GameError("game search supports at most 64 elements");
            match_vocabularies(a.vocabulary(), b.vocabulary());
        }

        auto run() -> GameResult
        {
            std::deque<size_t> queue;
            add(0, {Assignment{}}, 0, Move{MoveKind::shrink, {}}, queue);

            vector<Element> all(_a.size());
            std::iota(all.begin(), all.end(), 0);

            while (! queue.empty()) {
                auto id = queue.front();
                queue.pop_front();
                auto mask = _nodes[id].mask;
                auto size = size_t(std::popcount(mask));

                if (size <= _j) {
                    vector<Element> outside;
                    for (auto e : all)
                        if (! (mask >> e & 1))
                            outside.push_back(e);
                    optional<GameResult> won;
                    for_each_small_subset(outside, _k - size, [&](uint64_t extra) {
                        if (won)
                            return;
                        auto to = mask | extra;
                        auto relation = blow(_nodes[id], to);
                        Move m{MoveKind::blow, elements_of(to)};
                        if (relation.empty())
                            won = GameResult{Winner::spoiler, play_to(id, m), _nodes.size()};
                        else
                            add(to, std::move(relation), id, m, queue);
                    });
                    if (won)
                        return *won;
                }

                auto pebbled = elements_of(mask);
                auto limit = _options.restrict_shrinks ? std::min(_j, size) : size;
                for_each_small_subset(pebbled, limit, [&](uint64_t to) {
                    if (to == mask)
                        return;
                    auto target = elements_of(to);
                    auto relation = project(_nodes[id].relation, positions_within(target, pebbled));
                    add(to, std::move(relation), id, Move{MoveKind::shrink, target}, queue);
                });
            }
            return GameResult{Winner::duplicator, std::nullopt, _nodes.size()};
        }
    };
}

auto pathdual::initial_configuration() -> GameConfiguration
{
    return GameConfiguration{{}, {Assignment{}}};
}

auto pathdual::canonical_shrink(const GameConfiguration & c, const vector<Element> & to) -> GameConfiguration
{
    if (! is_sorted_set(to))
        throw GameError("shrink target must be a sorted set");
    return GameConfiguration{to, project(c.relation, positions_within(to, c.pebbled))};
}

auto pathdual::canonical_blow(const GameConfiguration & c, const vector<Element> & to, const Structure & a, const Structure & b,
    size_t j, size_t k) -> GameConfiguration
{
    if (! is_sorted_set(to))
        throw GameError("blow target must be a sorted set");
    if (c.pebbled.size() > j)
        throw GameError("cannot blow from " + to_string(c.pebbled.size()) + " pebbles when j = " + to_string(j));
    if (to.size() > k)
        throw GameError("cannot blow to " + to_string(to.size()) + " pebbles when k = " + to_string(k));
    for (auto e : to)
        if (e < 0 || size_t(e) >= a.size())
            throw GameError("blow target mentions an element outside the universe");
    auto positions = positions_within(c.pebbled, to);

    GameConfiguration result{to, {}};
    for (auto & h : all_homomorphisms(induced_substructure(a, to), b)) {
        Assignment restricted;
        for (auto p : positions)
            restricted.push_back(h[p]);
        if (std::binary_search(c.relation.begin(), c.relation.end(), restricted))
            result.relation.push_back(h);
    }
    return result;
}

auto pathdual::replay(const Structure & a, const Structure & b, size_t j, size_t k, const SpoilerPlay & play) -> vector<GameConfiguration>
{
    vector<GameConfiguration> result{initial_configuration()};
    for (size_t i = 0; i < play.moves.size(); ++i) {
        auto & current = result.back();
        if (current.relation.empty())
            throw GameError("move " + to_string(i + 1) + " comes after the game is over");
        auto & m = play.moves[i];
        if (m.kind == MoveKind::shrink)
            result.push_back(canonical_shrink(current, m.target));
        else
            result.push_back(canonical_blow(current, m.target, a, b, j, k));
    }
    return result;
}

auto pathdual::decide_game(const Structure & a, const Structure & b, size_t j, size_t k, const GameOptions & options) -> GameResult
{
    GameSolver solver(a, b, j, k, options);
    return solver.run();
}

auto pathdual::extract_obstruction(const Structure & a, const Structure & b, size_t j, size_t k, const SpoilerPlay & play) -> Obstruction
{
    auto configurations = replay(a, b, j, k, play);
    if (! configurations.back().relation.empty())
        throw GameError("play is not winning for Spoiler");

    // drop repeated sets and the middle of every shrink-shrink pair
    vector<vector<Element>> rounds;
    for (auto & c : configurations) {
        if (! rounds.empty() && rounds.back() == c.pebbled)
            continue;
        if (rounds.size() >= 2) {
            auto & before = rounds[rounds.size() - 2];
            auto & middle = rounds.back();
            if (std::includes(before.begin(), before.end(), middle.begin(), middle.end())
                && std::includes(middle.begin(), middle.end(), c.pebbled.begin(), c.pebbled.end()))
                rounds.pop_back();
        }
        rounds.push_back(c.pebbled);
    }

    Obstruction result{Structure(a.vocabulary()), {}, {}};
    map<Element, Element> live;
    for (size_t t = 0; t < rounds.size(); ++t) {
        map<Element, Element> next;
        Bag bag;
        for (auto e : rounds[t]) {
            auto it = live.find(e);
            Element p;
            if (it != live.end())
                p = it->second;
            else {
                p = result.structure.add_element(a.name(e) + "@" + to_string(t));
                result.to_instance.push_back(e);
            }
            next.emplace(e, p);
            bag.push_back(p);
        }
        live = move(next);
        result.decomposition.bags.push_back(make_bag(bag));

        auto restricted = induced_substructure(a, rounds[t]);
        for (size_t r = 0; r < a.vocabulary().size(); ++r)
            for (auto & tuple : restricted.relation(r)) {
                Tuple u;
                for (auto x : tuple)
                    u.push_back(live.at(rounds[t][size_t(x)]));
                result.structure.add_tuple(r, move(u));
            }
    }

    auto width = check_path_decomposition(result.structure, result.decomposition);
    if (! fits_within(width, WidthPair{j, k}))
        throw Error("obstruction witness exceeds the width bound");
    if (! is_homomorphism(result.structure, a, result.to_instance))
        throw Error("obstruction witness does not map to the instance");
    if (homomorphic(result.structure, b))
        throw Error("obstruction witness maps to the template");
    return result;
}

auto pathdual::check_path_duality_bounded(const Structure & b, size_t j, size_t k, size_t n_max) -> DualityReport
{
    DualityReport report;
    vector<char> previous;
    optional<StructureSpace> previous_space;

    for (size_t n = 1; n <= n_max; ++n) {
        StructureSpace space(b.vocabulary(), n);
        if (space.bits() > 30)
            throw GameError("duality check over " + to_string(space.bits()) + " facts is too large");

        // for each deleted element, the bits of the remaining facts in the smaller space's order
        vector<vector<size_t>> keep(n);
        if (previous_space)
            for (size_t v = 0; v < n; ++v)
                for (size_t bit = 0; bit < previous_space->bits(); ++bit) {
                    auto [symbol, t] = previous_space->fact(bit);
                    for (auto & e : t)
                        if (size_t(e) >= v)
                            ++e;
                    keep[v].push_back(space.bit_of(symbol, t));
                }

        auto count = uint64_t(1) << space.bits();
        vector<char> spoiler(count, 0);
        for (uint64_t mask = 0; mask < count; ++mask) {
            ++report.structures_checked;
            bool inherited = false;
            for (size_t v = 0; v < n && previous_space && ! inherited; ++v) {
                uint64_t sub = 0;
                for (size_t p = 0; p < keep[v].size(); ++p)
                    sub |= (mask >> keep[v][p] & 1) << p;
                inherited = previous[sub];
            }
            if (inherited) {
                spoiler[mask] = 1;
                continue;
            }

            auto a = space.structure(mask);
            if (homomorphic(a, b))
                continue;
            if (decide_game(a, b, j, k).winner == Winner::spoiler)
                spoiler[mask] = 1;
            else
                report.counterexamples.push_back(move(a));
        }
        previous = move(spoiler);
        previous_space.emplace(space);
    }
    return report;
}
