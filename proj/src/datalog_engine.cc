#include "datalog_engine.hh"

#include <pathdual/homomorphism.hh>

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

using namespace pathdual;
using namespace pathdual::innards;

using std::map;
using std::move;
using std::pair;
using std::size_t;
using std::to_string;
using std::uint32_t;
using std::uint64_t;
using std::unordered_map;
using std::unordered_set;
using std::vector;

namespace
{
    class Relation
    {
    private:
        size_t _arity;
        uint64_t _base;
        vector<Element> _flat;
        unordered_set<uint64_t> _keys;
        map<uint32_t, unordered_map<uint64_t, vector<uint32_t>>> _indexes;

        auto key_of(const Element * t, uint32_t mask) const -> uint64_t
        {
            uint64_t key = 0;
            for (size_t p = 0; p < _arity; ++p)
                if (mask >> p & 1)
                    key = key * _base + uint64_t(t[p]);
            return key;
        }

        auto add_to_index(uint32_t mask, unordered_map<uint64_t, vector<uint32_t>> & index, uint32_t position) -> void
        {
            index[key_of(&_flat[size_t(position) * _arity], mask)].push_back(position);
        }

    public:
        Relation(size_t arity, uint64_t base) :
            _arity(arity),
            _base(base)
        {
        }

        [[nodiscard]] auto arity() const -> size_t
        {
            return _arity;
        }

        [[nodiscard]] auto size() const -> size_t
        {
            return _keys.size();
        }

        [[nodiscard]] auto tuple(size_t i) const -> const Element *
        {
            return _flat.data() + i * _arity;
        }

        [[nodiscard]] auto full_key(const Element * t) const -> uint64_t
        {
            return key_of(t, _arity >= 32 ? ~uint32_t(0) : (uint32_t(1) << _arity) - 1);
        }

        [[nodiscard]] auto contains(uint64_t key) const -> bool
        {
            return _keys.contains(key);
        }

        auto insert(const Element * t, uint64_t key) -> bool
        {
            if (! _keys.insert(key).second)
                return false;
            auto position = uint32_t(size() - 1);
            _flat.insert(_flat.end(), t, t + _arity);
            for (auto & [mask, index] : _indexes)
                add_to_index(mask, index, position);
            return true;
        }

        auto lookup(uint32_t mask, uint64_t key) -> const vector<uint32_t> *
        {
            auto it = _indexes.find(mask);
            if (it == _indexes.end()) {
                it = _indexes.emplace(mask, unordered_map<uint64_t, vector<uint32_t>>{}).first;
                for (uint32_t i = 0; i < uint32_t(size()); ++i)
                    add_to_index(mask, it->second, i);
            }
            auto found = it->second.find(key);
            return found == it->second.end() ? nullptr : &found->second;
        }

        auto clear() -> void
        {
            _flat.clear();
            _keys.clear();
            _indexes.clear();
        }
    };

    struct CompiledAtom
    {
        size_t predicate;
        vector<int> slots;
    };

    struct CompiledRule
    {
        CompiledAtom head;
        vector<CompiledAtom> body;
        vector<size_t> idb_positions;
        size_t variables;
    };

    struct PlanStep
    {
        size_t atom;
        uint32_t bound_mask;
        /// Positions that bind a slot for the first time.
        vector<size_t> binding_positions;
        /// Positions repeating a slot first bound earlier in the same atom, with that earlier position.
        vector<pair<size_t, size_t>> repeats;
    };

    struct Plan
    {
        vector<PlanStep> steps;
        vector<int> unbound_head_slots;
        bool first_from_delta;
    };

    class Engine
    {
    private:
        const Program & _program;
        const FixpointOptions & _options;
        size_t _n;
        size_t _edb_count;
        size_t _goal;
        vector<CompiledRule> _rules;
        vector<Relation> _full, _delta, _next;
        map<pair<size_t, Tuple>, Provenance> _provenance;
        bool _stop = false;

        auto make_plan(const CompiledRule & rule, int delta_position) const -> Plan
        {
            Plan plan;
            plan.first_from_delta = delta_position >= 0;
            vector<char> bound(rule.variables, 0), used(rule.body.size(), 0);

            for (size_t step = 0; step < rule.body.size(); ++step) {
                size_t choice = rule.body.size();
                if (step == 0 && delta_position >= 0)
                    choice = size_t(delta_position);
                else {
                    int best = -1;
                    for (size_t i = 0; i < rule.body.size(); ++i) {
                        if (used[i])
                            continue;
                        int score = 0;
                        for (auto s : rule.body[i].slots)
                            score += bound[size_t(s)];
                        if (score > best) {
                            best = score;
                            choice = i;
                        }
                    }
                }
                used[choice] = 1;

                PlanStep p{choice, 0, {}, {}};
                auto & slots = rule.body[choice].slots;
                for (size_t pos = 0; pos < slots.size(); ++pos) {
                    auto s = size_t(slots[pos]);
                    if (bound[s])
                        p.bound_mask |= uint32_t(1) << pos;
                    else {
                        auto first = size_t(std::find(slots.begin(), slots.end(), slots[pos]) - slots.begin());
                        if (first == pos)
                            p.binding_positions.push_back(pos);
                        else
                            p.repeats.emplace_back(pos, first);
                    }
                }
                for (auto pos : p.binding_positions)
                    bound[size_t(slots[pos])] = 1;
                plan.steps.push_back(move(p));
            }

            for (auto s : rule.head.slots)
                if (! bound[size_t(s)] && std::find(plan.unbound_head_slots.begin(), plan.unbound_head_slots.end(), s) == plan.unbound_head_slots.end())
                    plan.unbound_head_slots.push_back(s);
            return plan;
        }

        auto emit(size_t rule_index, const CompiledRule & rule, vector<Element> & values) -> void
        {
            auto predicate = rule.head.predicate;
            Tuple head;
            head.reserve(rule.head.slots.size());
            for (auto s : rule.head.slots)
                head.push_back(values[size_t(s)]);
            auto & full = _full[predicate];
            auto key = full.full_key(head.data());
            if (full.contains(key) || _next[predicate].contains(key))
                return;
            _next[predicate].insert(head.data(), key);
            if (_options.record_provenance)
                _provenance.emplace(pair{predicate - _edb_count, head}, Provenance{rule_index, values});
            if (_options.stop_at_goal && predicate == _goal)
                _stop = true;
        }

        auto emit_with_free_head(size_t rule_index, const CompiledRule & rule, const Plan & plan, vector<Element> & values, size_t i) -> void
        {
            if (_stop)
                return;
            if (i == plan.unbound_head_slots.size()) {
                emit(rule_index, rule, values);
                return;
            }
            auto s = size_t(plan.unbound_head_slots[i]);
            for (size_t e = 0; e < _n && ! _stop; ++e) {
                values[s] = Element(e);
                emit_with_free_head(rule_index, rule, plan, values, i + 1);
            }
            values[s] = -1;
        }

        auto join(size_t rule_index, const CompiledRule & rule, const Plan & plan, size_t step, vector<Element> & values) -> void
        {
            if (_stop)
                return;
            if (step == plan.steps.size()) {
                emit_with_free_head(rule_index, rule, plan, values, 0);
                return;
            }

            auto & ps = plan.steps[step];
            auto & atom = rule.body[ps.atom];
            auto & source = (step == 0 && plan.first_from_delta) ? _delta[atom.predicate] : _full[atom.predicate];

            auto visit = [&](const Element * t) {
                for (auto & [pos, first] : ps.repeats)
                    if (t[pos] != t[first])
                        return;
                for (auto pos : ps.binding_positions)
                    values[size_t(atom.slots[pos])] = t[pos];
                join(rule_index, rule, plan, step + 1, values);
                for (auto pos : ps.binding_positions)
                    values[size_t(atom.slots[pos])] = -1;
            };

            if (ps.bound_mask == 0) {
                auto count = source.size();
                for (size_t i = 0; i < count && ! _stop; ++i)
                    visit(source.tuple(i));
            }
            else {
                uint64_t key = 0;
                for (size_t pos = 0; pos < atom.slots.size(); ++pos)
                    if (ps.bound_mask >> pos & 1)
                        key = key * uint64_t(std::max<size_t>(_n, 1)) + uint64_t(values[size_t(atom.slots[pos])]);
                auto matches = source.lookup(ps.bound_mask, key);
                if (matches)
                    for (size_t i = 0; i < matches->size() && ! _stop; ++i)
                        visit(source.tuple((*matches)[i]));
            }
        }

        auto run_plan(size_t rule_index, const Plan & plan) -> void
        {
            auto & rule = _rules[rule_index];
            vector<Element> values(rule.variables, -1);
            join(rule_index, rule, plan, 0, values);
        }

        auto merge_next() -> bool
        {
            bool any = false;
            for (size_t r = _edb_count; r < _full.size(); ++r) {
                _delta[r].clear();
                for (size_t i = 0; i < _next[r].size(); ++i) {
                    auto t = _next[r].tuple(i);
                    auto key = _full[r].full_key(t);
                    _full[r].insert(t, key);
                    _delta[r].insert(t, key);
                    any = true;
                }
                _next[r].clear();
            }
            return any;
        }

    public:
        Engine(const Program & program, const Structure & a, const FixpointOptions & options) :
            _program(program),
            _options(options),
            _n(a.size()),
            _edb_count(program.edb().size())
        {
            auto joint = program.joint_vocabulary();
            auto base = uint64_t(std::max<size_t>(_n, 1));
            for (size_t r = 0; r < joint.size(); ++r) {
                long double space = 1;
                for (size_t i = 0; i < joint[r].arity; ++i)
                    space *= (long double)base;
                if (space > 4.0e18L)
                    throw ProgramError("relation " + joint[r].name + " is too large to index over this universe");
                _full.emplace_back(joint[r].arity, base);
                _delta.emplace_back(joint[r].arity, base);
                _next.emplace_back(joint[r].arity, base);
            }
            _goal = joint.index_of(program.goal());

            auto symbol_map = match_vocabularies(program.edb(), a.vocabulary());
            for (size_t r = 0; r < _edb_count; ++r)
                for (auto & t : a.relation(symbol_map[r]))
                    _full[r].insert(t.data(), _full[r].full_key(t.data()));

            for (auto & rule : program.rules()) {
                auto names = rule_variables(rule);
                auto compile_atom = [&](const Atom & atom) {
                    CompiledAtom c{joint.index_of(atom.predicate), {}};
                    for (auto & v : atom.arguments)
                        c.slots.push_back(int(std::find(names.begin(), names.end(), v) - names.begin()));
                    return c;
                };
                CompiledRule compiled{compile_atom(rule.head), {}, {}, names.size()};
                for (size_t i = 0; i < rule.body.size(); ++i) {
                    compiled.body.push_back(compile_atom(rule.body[i]));
                    if (compiled.body.back().predicate >= _edb_count)
                        compiled.idb_positions.push_back(i);
                }
                _rules.push_back(move(compiled));
            }
        }

        auto run() -> void
        {
            for (size_t r = 0; r < _rules.size() && ! _stop; ++r)
                if (_rules[r].idb_positions.empty())
                    run_plan(r, make_plan(_rules[r], -1));

            vector<vector<pair<size_t, Plan>>> delta_plans(_rules.size());
            for (size_t r = 0; r < _rules.size(); ++r)
                for (auto pos : _rules[r].idb_positions)
                    delta_plans[r].emplace_back(_rules[r].body[pos].predicate, make_plan(_rules[r], int(pos)));

            while (merge_next() && ! _stop)
                for (size_t r = 0; r < _rules.size() && ! _stop; ++r)
                    for (auto & [predicate, plan] : delta_plans[r])
                        if (_delta[predicate].size() > 0)
                            run_plan(r, plan);
            if (_stop)
                merge_next();
        }

        auto result(const Structure & a) -> FixpointResult
        {
            Structure s = Structure::with_universe(_program.joint_vocabulary(), a.names());
            for (size_t r = 0; r < _full.size(); ++r)
                for (size_t i = 0; i < _full[r].size(); ++i) {
                    auto t = _full[r].tuple(i);
                    s.add_tuple_unchecked(r, Tuple(t, t + _full[r].arity()));
                }
            return FixpointResult{move(s), move(_provenance)};
        }
    };
}

auto pathdual::innards::semi_naive_fixpoint(const Program & p, const Structure & a, const FixpointOptions & options) -> FixpointResult
{
    Engine engine(p, a, options);
    engine.run();
    return engine.result(a);
}
