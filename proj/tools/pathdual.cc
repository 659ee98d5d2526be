#include <pathdual/datalog.hh>
#include <pathdual/errors.hh>
#include <pathdual/game.hh>
#include <pathdual/homomorphism.hh>
#include <pathdual/ihsb.hh>
#include <pathdual/implicational.hh>
#include <pathdual/pathwidth.hh>
#include <pathdual/snp.hh>
#include <pathdual/text_format.hh>
#include <pathdual/two_sat_encoding.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace pathdual;

using nlohmann::json;

using std::cerr;
using std::cout;
using std::move;
using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace
{
    constexpr int exit_positive = 0, exit_negative = 1, exit_usage = 2, exit_verify = 3;

    struct VerifyFailure : Error
    {
        using Error::Error;
    };

    /// A parse error annotated with the file it came from.
    struct FileParseError : Error
    {
        using Error::Error;
    };

    struct Options
    {
        bool json = false;
        bool verify = false;
    };

    /// Collects the human-readable text and the JSON report side by side.
    class Report
    {
    public:
        Report(string command, const Options & options) :
            _options(options)
        {
            _json["schema"] = 1;
            _json["command"] = move(command);
        }

        /// Human-readable output is the bare payload, so it can be saved and parsed again.
        auto payload_only() -> void
        {
            _payload_only = true;
        }

        auto line(const string & text) -> void
        {
            if (_payload_only)
                cerr << text << "\n";
            else
                _text << text << "\n";
        }

        auto block(const string & text) -> void
        {
            _text << text;
        }

        auto field(const string & key, json value) -> void
        {
            _json[key] = move(value);
        }

        auto check(const string & what, bool holds) -> void
        {
            _json["checks"][what] = holds;
            if (! holds)
                throw VerifyFailure("verification failed: " + what);
            line("verified: " + what);
        }

        auto finish(const string & verdict, int code) -> int
        {
            _json["verdict"] = verdict;
            _json["exit"] = code;
            if (_options.json)
                cout << _json.dump(2) << "\n";
            else if (_payload_only)
                cout << _text.str();
            else
                cout << "verdict: " << verdict << "\n" << _text.str();
            return code;
        }

    private:
        const Options & _options;
        std::ostringstream _text;
        json _json;
        bool _payload_only = false;
    };

    auto read_file(const string & path) -> string
    {
        std::ifstream in(path);
        if (! in)
            throw Error("cannot read " + path);
        std::ostringstream text;
        text << in.rdbuf();
        return text.str();
    }

    auto load_structure(const string & path) -> Structure
    {
        try {
            return parse_structure(read_file(path));
        }
        catch (const ParseError & e) {
            throw FileParseError(path + ":" + e.what());
        }
    }

    auto load_program(const string & path) -> Program
    {
        try {
            return parse_program(read_file(path));
        }
        catch (const ParseError & e) {
            throw FileParseError(path + ":" + e.what());
        }
    }

    auto load_sentence(const string & path) -> KromSnpSentence
    {
        try {
            return parse_sentence(read_file(path));
        }
        catch (const ParseError & e) {
            throw FileParseError(path + ":" + e.what());
        }
    }

    auto load_dimacs(const string & path) -> TwoCnf
    {
        try {
            return parse_dimacs(read_file(path));
        }
        catch (const ParseError & e) {
            throw FileParseError(path + ":" + e.what());
        }
    }

    auto assignment_json(const Structure & a, const Structure & b, const Assignment & h) -> json
    {
        json result = json::object();
        for (size_t x = 0; x < h.size(); ++x)
            result[a.name(Element(x))] = b.name(h[x]);
        return result;
    }

    auto assignment_text(const Structure & a, const Structure & b, const Assignment & h) -> string
    {
        string result;
        for (size_t x = 0; x < h.size(); ++x)
            result += (x ? " " : "") + a.name(Element(x)) + "->" + b.name(h[x]);
        return result;
    }

    auto decomposition_json(const Structure & s, const PathDecomposition & d) -> json
    {
        json bags = json::array();
        for (auto & bag : d.bags) {
            json names = json::array();
            for (auto e : bag)
                names.push_back(s.name(e));
            bags.push_back(move(names));
        }
        return bags;
    }

    auto implicational_template(const Structure & b) -> bool
    {
        for (size_t r = 0; r < b.vocabulary().size(); ++r)
            if (b.vocabulary()[r].arity != 2)
                return false;
        return is_implicational(b);
    }

    /// Exhaustive map count is affordable.
    auto small_enough_for_brute_force(const Structure & a, const Structure & b) -> bool
    {
        double maps = 1;
        for (size_t i = 0; i < a.size(); ++i)
            maps *= double(b.size());
        return maps <= 2e6;
    }

    auto brute_force_homomorphic(const Structure & a, const Structure & b) -> bool
    {
        if (a.size() == 0)
            return is_homomorphism(a, b, {});
        if (b.size() == 0)
            return false;
        Assignment h(a.size(), 0);
        while (true) {
            if (is_homomorphism(a, b, h))
                return true;
            size_t i = 0;
            while (i < h.size() && ++h[i] == Element(b.size()))
                h[i++] = 0;
            if (i == h.size())
                return false;
        }
    }

    auto find_ihsb_class(const Structure & b, optional<size_t> k, optional<IhsbSign> sign) -> optional<IhsbClass>
    {
        vector<size_t> ks;
        if (k)
            ks.push_back(*k);
        else
            for (size_t i = 2; i <= std::max<size_t>(2, b.vocabulary().max_arity()); ++i)
                ks.push_back(i);
        vector<IhsbSign> signs;
        if (sign)
            signs.push_back(*sign);
        else
            signs = {IhsbSign::plus, IhsbSign::minus};
        for (auto s : signs)
            for (auto i : ks)
                if (auto c = classify_ihsb(b, i, s))
                    return c;
        return std::nullopt;
    }

    auto emit_obstruction(Report & report, const Obstruction & o, const string & name) -> void
    {
        report.field("witness", {{"structure", format_structure(o.structure, name)},
                                    {"decomposition", decomposition_json(o.structure, o.decomposition)},
                                    {"width", {check_path_decomposition(o.structure, o.decomposition).j,
                                                  check_path_decomposition(o.structure, o.decomposition).k}}});
        report.line("witness:");
        report.block(format_structure(o.structure, name));
        report.block(format_decomposition(o.structure, o.decomposition));
    }

    auto run_hom(const Options & options, const string & command, const string & a_path, const string & b_path) -> int
    {
        Report report(command, options);
        auto a = load_structure(a_path);
        auto b = load_structure(b_path);

        optional<Assignment> h;
        string solver = "backtracking";
        if (command == "csp" && implicational_template(b)) {
            solver = "implicational";
            auto verdict = solve_implicational(a, b);
            h = verdict.assignment;
        }
        else
            h = find_homomorphism(a, b);
        report.field("solver", solver);

        if (options.verify) {
            if (h)
                report.check("returned map is a homomorphism", is_homomorphism(a, b, *h));
            if (small_enough_for_brute_force(a, b))
                report.check("exhaustive search agrees", brute_force_homomorphic(a, b) == h.has_value());
            if (implicational_template(b))
                report.check("conflict graph solver agrees", solve_implicational(a, b).satisfiable == h.has_value());
            if (b.size() == 2 && b.find("0") && b.find("1") && b.vocabulary().max_arity() <= 20)
                if (auto c = find_ihsb_class(b, std::nullopt, std::nullopt))
                    report.check("IHS-B propagation agrees", solve_ihsb(a, b, *c).satisfiable == h.has_value());
        }

        if (h) {
            report.field("homomorphism", assignment_json(a, b, *h));
            report.line("homomorphism: " + assignment_text(a, b, *h));
            return report.finish("homomorphism", exit_positive);
        }
        return report.finish("no homomorphism", exit_negative);
    }

    auto run_datalog(const Options & options, const string & program_path, const string & input_path, bool witness) -> int
    {
        Report report("datalog", options);
        auto p = load_program(program_path);
        auto a = load_structure(input_path);
        auto fixpoint = least_fixpoint(p, a);
        bool accepted = ! fixpoint.relation(p.goal()).empty();

        size_t idb_facts = 0;
        for (size_t r = 0; r < p.idb().size(); ++r)
            idb_facts += fixpoint.relation(p.idb()[r].name).size();
        report.field("idb_facts", idb_facts);

        if (options.verify) {
            report.check("naive iteration reaches the same fixpoint", least_fixpoint_naive(p, a) == fixpoint);
            if (is_linear(p)) {
                auto bound = p.declared_bounds().value_or(program_bounds(p));
                report.check("Krom SNP translation agrees", evaluate_snp(datalog_to_snp(p, bound), a) == ! accepted);
            }
        }

        if (accepted && witness && is_linear(p)) {
            if (auto w = derivation_witness(p, a)) {
                report.field("witness", {{"structure", format_structure(w->structure, "P")},
                                            {"decomposition", decomposition_json(w->structure, w->decomposition)},
                                            {"steps", w->trace.size()}});
                report.line("witness:");
                report.block(format_structure(w->structure, "P"));
                report.block(format_decomposition(w->structure, w->decomposition));
            }
        }
        return accepted ? report.finish("accepted", exit_positive) : report.finish("rejected", exit_negative);
    }

    auto run_snp(const Options & options, const string & sentence_path, const string & input_path) -> int
    {
        Report report("snp", options);
        auto f = load_sentence(sentence_path);
        auto a = load_structure(input_path);
        bool holds = evaluate_snp(f, a);

        if (options.verify) {
            auto flags = sentence_flags(f);
            if (flags.restricted && flags.monotone && flags.equality_free)
                report.check("Datalog translation agrees", accepts(snp_to_datalog(f), a) == ! holds);
        }
        return holds ? report.finish("satisfied", exit_positive) : report.finish("falsified", exit_negative);
    }

    auto run_game(const Options & options, const string & a_path, const string & b_path, size_t j, size_t k, bool unrestricted) -> int
    {
        Report report("game", options);
        auto a = load_structure(a_path);
        auto b = load_structure(b_path);
        GameOptions game_options;
        game_options.restrict_shrinks = ! unrestricted;
        auto result = decide_game(a, b, j, k, game_options);
        report.field("configurations", result.configurations);

        if (options.verify && result.winner == Winner::spoiler)
            report.check("Spoiler win implies no homomorphism", ! homomorphic(a, b));
        if (options.verify && result.winner == Winner::duplicator && homomorphic(a, b))
            report.check("homomorphism implies Duplicator win", true);

        if (result.winner == Winner::duplicator)
            return report.finish("Duplicator", exit_positive);

        report.field("play", format_play(a, *result.play));
        report.line("play:");
        report.block(format_play(a, *result.play));
        auto o = extract_obstruction(a, b, j, k, *result.play);
        if (options.verify) {
            report.check("witness maps to a", is_homomorphism(o.structure, a, o.to_instance));
            report.check("witness does not map to b", ! homomorphic(o.structure, b));
            report.check("witness width fits", fits_within(check_path_decomposition(o.structure, o.decomposition), {j, k}));
        }
        emit_obstruction(report, o, "P");
        return report.finish("Spoiler", exit_negative);
    }

    auto run_pathwidth(const Options & options, const string & path, optional<size_t> j, optional<size_t> k, const string & decomp_path) -> int
    {
        Report report("pathwidth", options);
        auto s = load_structure(path);

        if (! decomp_path.empty()) {
            auto d = parse_decomposition(read_file(decomp_path), s);
            auto w = check_path_decomposition(s, d);
            report.field("width", {w.j, w.k});
            report.line("width: (" + std::to_string(w.j) + "," + std::to_string(w.k) + ")");
            bool fits = ! j || ! k || fits_within(w, {*j, *k});
            return fits ? report.finish("valid", exit_positive) : report.finish("too wide", exit_negative);
        }

        if (j && k) {
            auto d = find_decomposition(s, {*j, *k});
            if (! d)
                return report.finish("no decomposition", exit_negative);
            if (options.verify)
                report.check("decomposition fits", fits_within(check_path_decomposition(s, *d), {*j, *k}));
            report.field("decomposition", decomposition_json(s, *d));
            report.block(format_decomposition(s, *d));
            return report.finish("decomposition", exit_positive);
        }

        auto widths = minimal_widths(s, std::max<size_t>(1, s.size()));
        json pairs = json::array();
        for (auto & w : widths) {
            pairs.push_back({w.j, w.k});
            report.line("minimal width: (" + std::to_string(w.j) + "," + std::to_string(w.k) + ")");
            if (options.verify) {
                auto d = find_decomposition(s, w);
                report.check("width (" + std::to_string(w.j) + "," + std::to_string(w.k) + ") is attained",
                    d && check_path_decomposition(s, *d) == w);
            }
        }
        report.field("minimal_widths", pairs);
        return report.finish("widths", exit_positive);
    }

    auto run_duality(const Options & options, const string & template_path, size_t j, size_t k, size_t n_max, optional<size_t> random,
        unsigned long long seed) -> int
    {
        Report report("duality", options);
        auto b = load_structure(template_path);
        vector<Structure> counterexamples;
        size_t checked = 0;

        if (random) {
            std::mt19937_64 rng(seed);
            for (size_t i = 0; i < *random; ++i) {
                auto n = std::uniform_int_distribution<size_t>(1, std::max<size_t>(1, n_max))(rng);
                auto density = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
                auto a = Structure::with_size(b.vocabulary(), n);
                for (size_t r = 0; r < b.vocabulary().size(); ++r) {
                    auto arity = b.vocabulary()[r].arity;
                    Tuple t(arity, 0);
                    while (true) {
                        if (std::uniform_real_distribution<double>(0, 1)(rng) < density)
                            a.add_tuple(r, t);
                        size_t p = arity;
                        while (p > 0 && t[p - 1] + 1 == Element(n))
                            t[--p] = 0;
                        if (p == 0)
                            break;
                        ++t[p - 1];
                    }
                }
                ++checked;
                if (decide_game(a, b, j, k).winner == Winner::duplicator && ! homomorphic(a, b))
                    counterexamples.push_back(move(a));
            }
        }
        else {
            auto result = check_path_duality_bounded(b, j, k, n_max);
            counterexamples = move(result.counterexamples);
            checked = result.structures_checked;
        }

        if (options.verify)
            for (auto & c : counterexamples) {
                report.check("counterexample has no homomorphism", ! homomorphic(c, b));
                report.check("Duplicator wins on counterexample", decide_game(c, b, j, k).winner == Winner::duplicator);
            }

        report.field("structures_checked", checked);
        json listed = json::array();
        for (auto & c : counterexamples) {
            listed.push_back(format_structure(c, "C"));
            report.block(format_structure(c, "C"));
        }
        report.field("counterexamples", listed);
        report.line("structures checked: " + std::to_string(checked));
        return counterexamples.empty() ? report.finish("no counterexample", exit_positive)
                                       : report.finish("counterexample", exit_negative);
    }

    auto run_solve_implicational(const Options & options, const string & a_path, const string & b_path, bool obstruction) -> int
    {
        Report report("solve-implicational", options);
        auto a = load_structure(a_path);
        auto b = load_structure(b_path);
        auto verdict = solve_implicational(a, b);
        if (options.verify && small_enough_for_brute_force(a, b))
            report.check("exhaustive search agrees", brute_force_homomorphic(a, b) == verdict.satisfiable);

        if (verdict.satisfiable) {
            report.field("homomorphism", assignment_json(a, b, *verdict.assignment));
            report.line("homomorphism: " + assignment_text(a, b, *verdict.assignment));
            return report.finish("satisfiable", exit_positive);
        }
        if (verdict.failing_element)
            report.field("failing_element", a.name(*verdict.failing_element));
        if (obstruction) {
            auto o = implicational_obstruction(a, b);
            if (options.verify) {
                report.check("witness maps to the instance", is_homomorphism(o.structure, a, o.to_instance));
                report.check("witness does not map to the template", ! homomorphic(o.structure, b));
                report.check("witness width fits (2,3)", fits_within(check_path_decomposition(o.structure, o.decomposition), {2, 3}));
            }
            emit_obstruction(report, o, "P");
        }
        return report.finish("unsatisfiable", exit_negative);
    }

    auto run_solve_ihsb(const Options & options, const string & a_path, const string & b_path, optional<size_t> k, const string & sign_name) -> int
    {
        Report report("solve-ihsb", options);
        auto a = load_structure(a_path);
        auto b = load_structure(b_path);
        optional<IhsbSign> sign;
        if (sign_name == "plus")
            sign = IhsbSign::plus;
        else if (sign_name == "minus")
            sign = IhsbSign::minus;

        auto c = find_ihsb_class(b, k, sign);
        if (! c)
            throw SolverError("template is not IHS-B in the requested class");
        report.field("class", {{"k", c->k}, {"sign", c->sign == IhsbSign::plus ? "plus" : "minus"}});
        auto w = ihsb_duality_width(b, *c);
        report.field("duality_width", {w.j, w.k});

        auto verdict = solve_ihsb(a, b, *c);
        if (options.verify) {
            if (small_enough_for_brute_force(a, b))
                report.check("exhaustive search agrees", brute_force_homomorphic(a, b) == verdict.satisfiable);
            if (a.size() <= 6)
                report.check("game at the duality width agrees",
                    (decide_game(a, b, w.j, w.k).winner == Winner::duplicator) == verdict.satisfiable);
        }
        if (verdict.satisfiable) {
            report.field("homomorphism", assignment_json(a, b, *verdict.assignment));
            report.line("homomorphism: " + assignment_text(a, b, *verdict.assignment));
            return report.finish("satisfiable", exit_positive);
        }
        return report.finish("unsatisfiable", exit_negative);
    }

    auto run_encode_2sat(const Options & options, const string & path) -> int
    {
        Report report("encode-2sat", options);
        report.payload_only();
        auto cnf = load_dimacs(path);
        auto a = encode_2sat(cnf);
        if (options.verify) {
            report.check("decoding restores the encoding", encode_2sat(decode_2sat(a)) == a);
            report.check("re-parse gives the same structure", parse_structure(format_structure(a, "F")) == a);
        }
        report.field("structure", format_structure(a, "F"));
        report.block(format_structure(a, "F"));
        return report.finish("encoded", exit_positive);
    }

    auto run_convert(const Options & options, const string & from, const string & to, const string & path, optional<size_t> j,
        optional<size_t> k) -> int
    {
        Report report("convert", options);
        report.payload_only();
        string output;
        if (from == "datalog" && to == "snp") {
            auto p = load_program(path);
            auto bound = (j && k) ? WidthPair{*j, *k} : p.declared_bounds().value_or(program_bounds(p));
            auto f = datalog_to_snp(p, bound);
            output = format_sentence(f);
            if (options.verify)
                report.check("output re-parses to the same sentence", parse_sentence(output) == f);
        }
        else if (from == "snp" && to == "datalog") {
            auto p = snp_to_datalog(load_sentence(path));
            output = format_program(p);
            if (options.verify)
                report.check("output re-parses to the same program", parse_program(output) == p);
        }
        else if (from == "dimacs" && to == "structure") {
            auto a = encode_2sat(load_dimacs(path));
            output = format_structure(a, "F");
            if (options.verify)
                report.check("output re-parses to the same structure", parse_structure(output) == a);
        }
        else if (from == "structure" && to == "dimacs") {
            auto cnf = decode_2sat(load_structure(path));
            output = format_dimacs(cnf);
            if (options.verify)
                report.check("output re-parses to the same formula", parse_dimacs(output) == cnf);
        }
        else
            throw CLI::ValidationError("convert", "unsupported direction " + from + " -> " + to);

        report.field("output", output);
        report.block(output);
        return report.finish("converted", exit_positive);
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"Pebble games, path decompositions, linear Datalog and Krom SNP on finite structures"};
    app.require_subcommand(1);
    Options options;
    app.add_flag("--json", options.json, "Print a JSON report");
    app.add_flag("--verify", options.verify, "Run cross-checks between subsystems; exit 3 if one fails");

    string a_path, b_path, program_path, sentence_path, input_path, decomp_path, from, to, sign_name;
    size_t j = 0, k = 0, n_max = 3;
    optional<size_t> opt_j, opt_k, random;
    unsigned long long seed = 1;
    bool witness = false, unrestricted = false, obstruction = false;

    auto hom = app.add_subcommand("hom", "Search for a homomorphism from --a to --b");
    hom->add_option("--a", a_path, "Source structure")->required();
    hom->add_option("--b", b_path, "Target structure")->required();

    auto csp = app.add_subcommand("csp", "Decide an instance against a template, using a polynomial solver when one applies");
    csp->add_option("--instance", a_path, "Instance structure")->required();
    csp->add_option("--template", b_path, "Template structure")->required();

    auto datalog = app.add_subcommand("datalog", "Evaluate a Datalog program");
    datalog->add_option("--program", program_path, "Program file")->required();
    datalog->add_option("--input", input_path, "Input structure")->required();
    datalog->add_flag("--witness", witness, "Emit a bounded-pathwidth witness when accepted");

    auto snp = app.add_subcommand("snp", "Evaluate a Krom SNP sentence");
    snp->add_option("--sentence", sentence_path, "Sentence file")->required();
    snp->add_option("--input", input_path, "Input structure")->required();

    auto game = app.add_subcommand("game", "Solve the (j,k) pebble-relation game");
    game->add_option("--a", a_path, "Structure A")->required();
    game->add_option("--b", b_path, "Structure B")->required();
    game->add_option("-j", j, "Blow threshold")->required();
    game->add_option("-k", k, "Pebble bound")->required();
    game->add_flag("--unrestricted-shrinks", unrestricted, "Allow shrinking to any subset");

    auto pathwidth = app.add_subcommand("pathwidth", "Find or check path decompositions");
    pathwidth->add_option("--structure", input_path, "Structure file")->required();
    pathwidth->add_option("-j", opt_j, "Intersection bound");
    pathwidth->add_option("-k", opt_k, "Bag size bound");
    pathwidth->add_option("--decomposition", decomp_path, "Check this decomposition instead of searching");

    auto duality = app.add_subcommand("duality", "Search for structures where the game and homomorphism disagree");
    duality->add_option("--template", b_path, "Template structure")->required();
    duality->add_option("-j", j, "Blow threshold")->required();
    duality->add_option("-k", k, "Pebble bound")->required();
    duality->add_option("--n-max", n_max, "Largest universe size")->capture_default_str();
    duality->add_option("--random", random, "Sample this many random structures instead of enumerating");
    duality->add_option("--seed", seed, "Random seed")->capture_default_str();

    auto solve_impl = app.add_subcommand("solve-implicational", "Conflict-graph solver for implicational templates");
    solve_impl->add_option("--instance", a_path, "Instance structure")->required();
    solve_impl->add_option("--template", b_path, "Template structure")->required();
    solve_impl->add_flag("--obstruction", obstruction, "Emit a width (2,3) obstruction when unsatisfiable");

    auto solve_ihsb_cmd = app.add_subcommand("solve-ihsb", "Propagation solver for IHS-B templates");
    solve_ihsb_cmd->add_option("--instance", a_path, "Instance structure")->required();
    solve_ihsb_cmd->add_option("--template", b_path, "Template structure")->required();
    solve_ihsb_cmd->add_option("-k", opt_k, "Clause width; tried from 2 upwards if absent");
    solve_ihsb_cmd->add_option("--sign", sign_name, "plus or minus; both tried if absent")->check(CLI::IsMember({"plus", "minus"}));

    auto encode = app.add_subcommand("encode-2sat", "Encode a DIMACS 2-CNF as a structure over P0, P1, P2");
    encode->add_option("--cnf", input_path, "DIMACS file")->required();

    auto convert = app.add_subcommand("convert", "Translate between formats");
    convert->add_option("--from", from, "datalog, snp, dimacs or structure")->required();
    convert->add_option("--to", to, "datalog, snp, dimacs or structure")->required();
    convert->add_option("--input", input_path, "Input file")->required();
    convert->add_option("-j", opt_j, "Bound for datalog to snp");
    convert->add_option("-k", opt_k, "Bound for datalog to snp");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (hom->parsed())
            return run_hom(options, "hom", a_path, b_path);
        if (csp->parsed())
            return run_hom(options, "csp", a_path, b_path);
        if (datalog->parsed())
            return run_datalog(options, program_path, input_path, witness);
        if (snp->parsed())
            return run_snp(options, sentence_path, input_path);
        if (game->parsed())
            return run_game(options, a_path, b_path, j, k, unrestricted);
        if (pathwidth->parsed())
            return run_pathwidth(options, input_path, opt_j, opt_k, decomp_path);
        if (duality->parsed())
            return run_duality(options, b_path, j, k, n_max, random, seed);
        if (solve_impl->parsed())
            return run_solve_implicational(options, a_path, b_path, obstruction);
        if (solve_ihsb_cmd->parsed())
            return run_solve_ihsb(options, a_path, b_path, opt_k, sign_name);
        if (encode->parsed())
            return run_encode_2sat(options, input_path);
        if (convert->parsed())
            return run_convert(options, from, to, input_path, opt_j, opt_k);
    }
    catch (const VerifyFailure & e) {
        cerr << "pathdual: " << e.what() << "\n";
        return exit_verify;
    }
    catch (const FileParseError & e) {
        cerr << "pathdual: parse error at " << e.what() << "\n";
        return exit_usage;
    }
    catch (const ParseError & e) {
        cerr << "pathdual: parse error at " << e.what() << "\n";
        return exit_usage;
    }
    catch (const CLI::ValidationError & e) {
        cerr << "pathdual: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const Error & e) {
        cerr << "pathdual: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
