#include <pathdual/datalog.hh>
#include <pathdual/errors.hh>
#include <pathdual/game.hh>
#include <pathdual/generators.hh>
#include <pathdual/homomorphism.hh>
#include <pathdual/ihsb.hh>
#include <pathdual/implicational.hh>
#include <pathdual/pathwidth.hh>
#include <pathdual/snp.hh>
#include <pathdual/two_sat_encoding.hh>

#include <support/isomorphism.hh>
#include <support/oracles.hh>
#include <support/random_instances.hh>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace pathdual;

using std::cout;
using std::function;
using std::move;
using std::size_t;
using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace
{
    struct Outcome
    {
        bool pass;
        string detail;
    };

    using Rng = random_instances::Rng;

    auto pick(Rng & rng, size_t lo, size_t hi) -> size_t
    {
        return std::uniform_int_distribution<size_t>(lo, hi)(rng);
    }

    auto real(Rng & rng, double lo, double hi) -> double
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    /// Every structure over {E/2} on exactly n elements, indexed by the mask of bit i * n + j.
    auto all_digraphs(size_t n) -> vector<Structure>
    {
        vector<Structure> result;
        StructureSpace space(edge_vocabulary(), n);
        for (uint64_t mask = 0; mask < (uint64_t(1) << (n * n)); ++mask)
            result.push_back(space.structure(mask));
        return result;
    }

    /// A digraph on {0..n-1} as an adjacency bitmask, bit i * n + j for the edge (i, j).
    struct SmallDigraph
    {
        size_t n;
        uint64_t mask;
        vector<std::pair<size_t, size_t>> edges;
    };

    auto small_digraph(size_t n, uint64_t mask) -> SmallDigraph
    {
        SmallDigraph g{n, mask, {}};
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (mask >> (i * n + j) & 1)
                    g.edges.emplace_back(i, j);
        return g;
    }

    auto maps_edges(const SmallDigraph & a, const SmallDigraph & b, const vector<size_t> & h) -> bool
    {
        for (auto [i, j] : a.edges)
            if (! (b.mask >> (h[i] * b.n + h[j]) & 1))
                return false;
        return true;
    }

    /// Tries every map from a to b, stopping at the first homomorphism unless counting.
    auto brute_force_count(const SmallDigraph & a, const SmallDigraph & b, bool stop_at_first) -> size_t
    {
        if (a.n == 0)
            return 1;
        if (b.n == 0)
            return 0;
        vector<size_t> h(a.n, 0);
        size_t count = 0;
        while (true) {
            if (maps_edges(a, b, h)) {
                ++count;
                if (stop_at_first)
                    return count;
            }
            size_t i = 0;
            while (i < a.n && ++h[i] == b.n)
                h[i++] = 0;
            if (i == a.n)
                return count;
        }
    }

    auto criterion_homomorphism_oracle() -> Outcome
    {
        vector<vector<Structure>> as, bs;
        vector<vector<SmallDigraph>> small_as, small_bs;
        for (size_t n = 0; n <= 4; ++n) {
            as.push_back(all_digraphs(n));
            small_as.emplace_back();
            for (uint64_t mask = 0; mask < as.back().size(); ++mask)
                small_as.back().push_back(small_digraph(n, mask));
        }
        for (size_t n = 0; n <= 3; ++n) {
            bs.push_back(all_digraphs(n));
            small_bs.emplace_back();
            for (uint64_t mask = 0; mask < bs.back().size(); ++mask)
                small_bs.back().push_back(small_digraph(n, mask));
        }

        size_t pairs = 0, disagreements = 0, counted = 0;
        vector<size_t> h;
        for (size_t na = 0; na < as.size(); ++na)
            for (uint64_t ma = 0; ma < as[na].size(); ++ma)
                for (size_t nb = 0; nb < bs.size(); ++nb)
                    for (uint64_t mb = 0; mb < bs[nb].size(); ++mb) {
                        auto & a = as[na][ma];
                        auto & b = bs[nb][mb];
                        auto & small_a = small_as[na][ma];
                        auto & small_b = small_bs[nb][mb];
                        ++pairs;
                        bool exists = brute_force_count(small_a, small_b, true) > 0;
                        auto found = find_homomorphism(a, b);
                        if (found.has_value() != exists)
                            ++disagreements;
                        else if (found) {
                            h.assign(found->begin(), found->end());
                            if (! maps_edges(small_a, small_b, h))
                                ++disagreements;
                        }
                        // full solution sets on a regular sample
                        if (pairs % 97 == 0) {
                            ++counted;
                            if (all_homomorphisms(a, b).size() != brute_force_count(small_a, small_b, false))
                                ++disagreements;
                        }
                    }
        return {disagreements == 0 && pairs == 66067u * 531u,
            to_string(pairs) + " pairs, " + to_string(counted) + " full counts, " + to_string(disagreements) + " disagreements"};
    }

    /// Symmetric loopless structure on n vertices from an undirected edge mask over pairs i < j.
    auto undirected_graph(size_t n, uint64_t edges) -> Structure
    {
        auto g = Structure::with_size(edge_vocabulary(), n);
        size_t bit = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j, ++bit)
                if (edges >> bit & 1) {
                    g.add_tuple(0, {Element(i), Element(j)});
                    g.add_tuple(0, {Element(j), Element(i)});
                }
        return g;
    }

    auto directed_mask(size_t n, uint64_t edges) -> uint64_t
    {
        uint64_t mask = 0;
        size_t bit = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j, ++bit)
                if (edges >> bit & 1)
                    mask |= (uint64_t(1) << (i * n + j)) | (uint64_t(1) << (j * n + i));
        return mask;
    }

    auto criterion_k2_duality() -> Outcome
    {
        auto program = non_two_colourability_program();
        auto sentence = datalog_to_snp(program, {2, 4});
        auto k2 = k_clique(2);

        vector<Structure> graphs;
        size_t labelled = 0;
        for (size_t n = 1; n <= 5; ++n)
            for (uint64_t e = 0; e < (uint64_t(1) << (n * (n - 1) / 2)); ++e, ++labelled)
                graphs.push_back(undirected_graph(n, e));

        isomorphism::BinaryPermuter permuter(6);
        size_t classes = 0;
        for (uint64_t e = 0; e < (uint64_t(1) << 15); ++e)
            if (permuter.is_orbit_minimum(directed_mask(6, e))) {
                ++classes;
                graphs.push_back(undirected_graph(6, e));
            }

        size_t disagreements = 0;
        for (auto & g : graphs) {
            bool colourable = oracles::two_colourable(g);
            bool not_accepted = ! accepts(program, g);
            bool sentence_holds = evaluate_snp(sentence, g);
            bool duplicator = decide_game(g, k2, 2, 3).winner == Winner::duplicator;
            if (colourable != not_accepted || colourable != sentence_holds || colourable != duplicator)
                ++disagreements;
        }
        return {disagreements == 0 && labelled == 1099 && classes == 156,
            to_string(labelled) + " labelled graphs on 1..5 vertices, " + to_string(classes) + " isomorphism classes on 6 vertices, "
                + to_string(disagreements) + " disagreements"};
    }

    auto is_connected(size_t n, uint64_t mask) -> bool
    {
        uint64_t reached = 1, frontier = 1;
        while (frontier) {
            uint64_t next = 0;
            for (size_t i = 0; i < n; ++i)
                if (frontier >> i & 1)
                    for (size_t j = 0; j < n; ++j)
                        if ((mask >> (i * n + j) & 1) || (mask >> (j * n + i) & 1))
                            next |= uint64_t(1) << j;
            frontier = next & ~reached;
            reached |= next;
        }
        return reached == (uint64_t(1) << n) - 1;
    }

    auto is_core(const Structure & s) -> bool
    {
        for (Element v = 0; v < Element(s.size()); ++v) {
            vector<Element> rest;
            for (Element u = 0; u < Element(s.size()); ++u)
                if (u != v)
                    rest.push_back(u);
            if (homomorphic(s, induced_substructure(s, rest)))
                return false;
        }
        return true;
    }

    /// Candidate obstructions of width (2,3): every structure on at most four elements, plus the
    /// five-element structures that are connected cores, one per isomorphism class. Any five-element
    /// P with P -> a and P -/-> b has a component, and that component a core, with the same two
    /// properties and no larger width; loops make the core a single vertex.
    auto obstruction_candidates(size_t & literal, size_t & cores) -> vector<Structure>
    {
        vector<Structure> result;
        auto enumerator = enumerate_structures(edge_vocabulary(), 4, 2, 3);
        while (auto e = enumerator.next())
            result.push_back(move(e->structure));
        literal = result.size();

        StructureSpace space(edge_vocabulary(), 5);
        isomorphism::BinaryPermuter permuter(5);
        vector<size_t> off_diagonal;
        for (size_t i = 0; i < 5; ++i)
            for (size_t j = 0; j < 5; ++j)
                if (i != j)
                    off_diagonal.push_back(i * 5 + j);
        cores = 0;
        for (uint64_t loopless = 0; loopless < (uint64_t(1) << off_diagonal.size()); ++loopless) {
            uint64_t mask = 0;
            for (size_t bit = 0; bit < off_diagonal.size(); ++bit)
                if (loopless >> bit & 1)
                    mask |= uint64_t(1) << off_diagonal[bit];
            if (! is_connected(5, mask) || ! permuter.is_orbit_minimum(mask))
                continue;
            auto s = space.structure(mask);
            if (! is_core(s) || ! find_decomposition(s, {2, 3}))
                continue;
            ++cores;
            result.push_back(move(s));
        }
        return result;
    }

    auto criterion_obstruction_bounded() -> Outcome
    {
        Rng rng(4101);
        size_t literal = 0, cores = 0;
        auto candidates = obstruction_candidates(literal, cores);

        size_t spoiler = 0, duplicator = 0, failures = 0;
        for (int i = 0; i < 200; ++i) {
            auto a = random_instances::structure(rng, edge_vocabulary(), pick(rng, 1, 4), real(rng, 0.15, 0.6));
            auto b = random_instances::structure(rng, edge_vocabulary(), pick(rng, 1, 3), real(rng, 0.2, 0.7));
            auto result = decide_game(a, b, 2, 3);
            if (result.winner == Winner::spoiler) {
                ++spoiler;
                try {
                    auto o = extract_obstruction(a, b, 2, 3, *result.play);
                    bool ok = is_homomorphism(o.structure, a, o.to_instance) && ! oracles::exhaustive_homomorphic(o.structure, b)
                        && fits_within(check_path_decomposition(o.structure, o.decomposition), {2, 3});
                    failures += ! ok;
                }
                catch (const Error &) {
                    ++failures;
                }
            }
            else {
                ++duplicator;
                for (auto & p : candidates)
                    if (homomorphic(p, a) && ! homomorphic(p, b)) {
                        ++failures;
                        break;
                    }
            }
        }
        return {failures == 0,
            to_string(spoiler) + " Spoiler wins, " + to_string(duplicator) + " Duplicator wins, " + to_string(literal)
                + " structures on <= 4 elements and " + to_string(cores) + " connected 5-element cores searched, " + to_string(failures)
                + " failures"};
    }

    auto criterion_datalog_snp_round_trip() -> Outcome
    {
        Rng rng(4102);
        size_t checks = 0, failures = 0;
        for (int i = 0; i < 20; ++i) {
            auto p = random_instances::linear_program(rng);
            auto f = datalog_to_snp(p, {2, 3});
            auto q = snp_to_datalog(f);
            for (int t = 0; t < 50; ++t) {
                auto a = random_instances::structure(rng, p.edb(), pick(rng, 1, 5), real(rng, 0.05, 0.4));
                bool accepted = accepts(p, a);
                ++checks;
                if (accepted != ! evaluate_snp(f, a) || accepts(q, a) != accepted)
                    ++failures;
            }
        }
        return {failures == 0, to_string(checks) + " structure checks, " + to_string(failures) + " failures"};
    }

    auto criterion_implicational() -> Outcome
    {
        Rng rng(4103);
        size_t unsat = 0, solver_failures = 0, witness_failures = 0, game_checks = 0, game_failures = 0;
        for (int i = 0; i < 200; ++i) {
            bool two_sat = i % 2 == 0;
            Structure a, b;
            if (two_sat) {
                auto variables = pick(rng, 1, 6);
                a = encode_2sat(random_instances::two_cnf(rng, variables, pick(rng, 0, 3 * variables)));
                b = b_2sat();
            }
            else {
                b = random_instances::implicational_template(rng, pick(rng, 1, 3));
                a = random_instances::structure(rng, b.vocabulary(), pick(rng, 1, 6), real(rng, 0.05, 0.3));
            }

            auto verdict = solve_implicational(a, b);
            if (verdict.satisfiable != oracles::exhaustive_homomorphic(a, b))
                ++solver_failures;
            if (! verdict.satisfiable) {
                ++unsat;
                try {
                    auto o = implicational_obstruction(a, b);
                    bool ok = is_homomorphism(o.structure, a, o.to_instance) && ! oracles::exhaustive_homomorphic(o.structure, b)
                        && fits_within(check_path_decomposition(o.structure, o.decomposition), {2, 3});
                    witness_failures += ! ok;
                }
                catch (const Error &) {
                    ++witness_failures;
                }
            }
            if (two_sat && a.size() <= 5) {
                ++game_checks;
                if ((decide_game(a, b, 2, 3).winner == Winner::duplicator) != verdict.satisfiable)
                    ++game_failures;
            }
        }
        return {solver_failures == 0 && witness_failures == 0 && game_failures == 0,
            "200 instances, " + to_string(unsat) + " unsatisfiable, " + to_string(solver_failures) + " solver disagreements, "
                + to_string(witness_failures) + " witness failures, " + to_string(game_checks) + " B_2SAT games with "
                + to_string(game_failures) + " incomplete"};
    }

    auto criterion_ihsb() -> Outcome
    {
        auto relation = [](std::initializer_list<Tuple> tuples) {
            auto b = Structure::with_size(Vocabulary{{"R", 2}}, 2);
            for (auto & t : tuples)
                b.add_tuple(0, t);
            return b;
        };
        auto p0 = relation({{0, 1}, {1, 0}, {1, 1}});
        auto xor_relation = relation({{0, 1}, {1, 0}});
        bool classifier = classify_ihsb(p0, 2, IhsbSign::plus).has_value();
        for (size_t k = 2; k <= 4; ++k)
            classifier = classifier && ! classify_ihsb(xor_relation, k, IhsbSign::plus) && ! classify_ihsb(xor_relation, k, IhsbSign::minus);

        Rng rng(4104);
        size_t failures = 0, unsat = 0;
        for (int i = 0; i < 200; ++i) {
            auto sign = i % 2 ? IhsbSign::minus : IhsbSign::plus;
            auto k = pick(rng, 2, 4);
            auto b = random_instances::ihsb_template(rng, k, sign);
            auto c = classify_ihsb(b, k, sign);
            if (! c) {
                ++failures;
                continue;
            }
            auto a = random_instances::structure(rng, b.vocabulary(), pick(rng, 1, 7), real(rng, 0.02, 0.12));
            auto verdict = solve_ihsb(a, b, *c);
            unsat += ! verdict.satisfiable;
            if (verdict.satisfiable != oracles::exhaustive_homomorphic(a, b)
                || (verdict.assignment && ! is_homomorphism(a, b, *verdict.assignment)))
                ++failures;
        }
        return {classifier && failures == 0, string("classifier ") + (classifier ? "ok" : "wrong") + ", 200 instances, "
                + to_string(unsat) + " unsatisfiable, " + to_string(failures) + " failures"};
    }

    auto criterion_negative_duality() -> Outcome
    {
        auto report = check_path_duality_bounded(k_clique(2), 1, 2, 3);
        bool found = std::any_of(report.counterexamples.begin(), report.counterexamples.end(),
            [](const Structure & s) { return isomorphism::isomorphic(s, sym_cycle(3)); });
        return {found, to_string(report.structures_checked) + " structures checked, " + to_string(report.counterexamples.size())
                + " counterexamples, C3 " + (found ? "present" : "missing")};
    }

    auto criterion_filter() -> Outcome
    {
        Rng rng(4105);
        size_t pairs = 0, failures = 0, attempts = 0;
        auto non2col = non_two_colourability_program();
        vector<Program> programs{non2col};
        for (int i = 0; i < 9; ++i)
            programs.push_back(random_instances::linear_program(rng));

        std::set<size_t> used;
        while (pairs < 100 && attempts < 100000) {
            auto index = attempts++ % programs.size();
            auto & p = programs[index];
            auto a = random_instances::structure(rng, p.edb(), pick(rng, 1, 6), real(rng, 0.1, 0.5));
            if (! accepts(p, a))
                continue;

            auto m = pick(rng, 1, a.size() + 2);
            Assignment h(a.size());
            for (auto & x : h)
                x = Element(pick(rng, 0, m - 1));
            auto image = Structure::with_size(p.edb(), m);
            for (size_t r = 0; r < p.edb().size(); ++r) {
                for (auto & t : a.relation(r)) {
                    Tuple u;
                    for (auto x : t)
                        u.push_back(h[size_t(x)]);
                    image.add_tuple(r, u);
                }
                auto extra = random_instances::structure(rng, p.edb(), m, 0.1);
                for (auto & t : extra.relation(r))
                    image.add_tuple(r, t);
            }
            ++pairs;
            used.insert(index);
            if (! is_homomorphism(a, image, h) || ! accepts(p, image))
                ++failures;
        }
        return {pairs == 100 && failures == 0, to_string(pairs) + " pairs from " + to_string(used.size()) + " of " + to_string(programs.size()) + " programs, "
                + to_string(failures) + " failures"};
    }

    auto criterion_performance() -> Outcome
    {
        auto p = non_two_colourability_program();
        Rng rng(4106);
        auto g = random_instances::graph(rng, 1000, 2000);
        auto start = std::chrono::steady_clock::now();
        auto fixpoint = least_fixpoint(p, g);
        bool accepted = accepts(p, g);
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        size_t mismatches = 0;
        for (int i = 0; i < 5; ++i) {
            auto h = random_instances::graph(rng, 100, 100 + 50 * size_t(i));
            if (least_fixpoint(p, h) != least_fixpoint_naive(p, h))
                ++mismatches;
        }
        std::ostringstream detail;
        detail.precision(2);
        detail << std::fixed << "1000 nodes, " << g.tuple_count() / 2 << " edges, " << fixpoint.relation("P").size() << " P facts, "
               << (accepted ? "accepted" : "rejected") << " in " << seconds << "s; " << mismatches << " naive mismatches on 5 graphs of 100 nodes";
        return {seconds < 10.0 && mismatches == 0, detail.str()};
    }

    struct Criterion
    {
        string name;
        double limit_seconds;
        function<Outcome()> run;
    };
}

auto main(int argc, char * argv[]) -> int
{
    std::set<size_t> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::stoul(argv[i]));

    vector<Criterion> criteria{
        {"homomorphism search matches exhaustive enumeration", 120, criterion_homomorphism_oracle},
        {"K2 duality: colouring, Datalog, SNP and game agree", 300, criterion_k2_duality},
        {"game winner matches bounded obstruction search at (2,3)", 0, criterion_obstruction_bounded},
        {"Datalog and Krom SNP translations agree", 0, criterion_datalog_snp_round_trip},
        {"implicational solver, obstructions and B_2SAT game", 0, criterion_implicational},
        {"IHS-B classifier and propagation solver", 0, criterion_ihsb},
        {"C3 is a (1,2) duality counterexample for K2", 0, criterion_negative_duality},
        {"Datalog acceptance is closed under homomorphic images", 0, criterion_filter},
        {"semi-naive fixpoint speed and agreement with naive", 0, criterion_performance},
    };

    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        if (! only.empty() && ! only.contains(i + 1))
            continue;
        auto & c = criteria[i];
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        }
        catch (const std::exception & e) {
            outcome = {false, string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && seconds >= c.limit_seconds) {
            outcome.pass = false;
            outcome.detail += ", over the time limit";
        }
        std::ostringstream time;
        time.precision(1);
        time << std::fixed << seconds;
        cout << (outcome.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << c.name << " (" << outcome.detail << "; " << time.str() << "s)"
             << std::endl;
        failed += ! outcome.pass;
    }
    return failed ? 1 : 0;
}
