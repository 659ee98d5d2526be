#include <pathdual/errors.hh>
#include <pathdual/text_format.hh>

#include "lexer.hh"

#include <sstream>

using namespace pathdual;
using namespace pathdual::innards;

using std::move;
using std::optional;
using std::ostringstream;
using std::size_t;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace
{
    auto parse_symbol_list(TokenStream & in, Vocabulary & into, bool stop_at_semicolon) -> void
    {
        while (in.peek().kind == TokenKind::identifier && ! (stop_at_semicolon && in.is(";"))) {
            if (in.peek(1).text != "/")
                break;
            auto name = in.expect_identifier("relation name");
            in.expect("/");
            auto arity = in.expect_number("arity");
            if (into.contains(name))
                in.fail("duplicate symbol " + name);
            into.add(name, arity);
        }
    }

    auto format_symbols(const Vocabulary & v) -> string
    {
        string result;
        for (auto & s : v.symbols())
            result += " " + s.name + "/" + to_string(s.arity);
        return result;
    }

    auto parse_atom(TokenStream & in) -> Atom
    {
        Atom atom{in.expect_identifier("predicate"), {}};
        in.expect("(");
        while (! in.is(")")) {
            atom.arguments.push_back(in.expect_identifier("variable"));
            if (! in.is(")"))
                in.expect(",");
        }
        in.expect(")");
        return atom;
    }

    auto format_atom(const string & predicate, const vector<string> & arguments) -> string
    {
        string result = predicate + "(";
        for (size_t i = 0; i < arguments.size(); ++i)
            result += (i ? ", " : "") + arguments[i];
        return result + ")";
    }

    auto dimacs_error(const string & message, size_t line) -> ParseError
    {
        return ParseError(message, line, 1);
    }
}

auto pathdual::parse_structure(string_view text) -> Structure
{
    TokenStream in(text);
    in.expect_keyword("vocab");
    Vocabulary vocabulary;
    parse_symbol_list(in, vocabulary, false);

    in.expect_keyword("structure");
    in.expect_identifier("structure name");
    in.expect("{");
    in.expect_keyword("universe");
    Structure s(vocabulary);
    while (! in.is(";")) {
        auto & t = in.peek();
        auto name = in.expect_identifier("element name");
        if (s.find(name))
            throw ParseError("duplicate element " + name, t.line, t.column);
        s.add_element(name);
    }
    in.expect(";");

    while (! in.is("}")) {
        auto & t = in.peek();
        auto symbol_name = in.expect_identifier("relation name");
        auto symbol = vocabulary.find(symbol_name);
        if (! symbol)
            throw ParseError("unknown relation " + symbol_name, t.line, t.column);
        while (! in.is(";")) {
            auto & open = in.peek();
            in.expect("(");
            Tuple tuple;
            while (! in.is(")")) {
                auto & at = in.peek();
                auto name = in.expect_identifier("element name");
                auto e = s.find(name);
                if (! e)
                    throw ParseError("unknown element " + name, at.line, at.column);
                tuple.push_back(*e);
            }
            in.expect(")");
            if (tuple.size() != vocabulary[*symbol].arity)
                throw ParseError("tuple of arity " + to_string(tuple.size()) + " for " + symbol_name + "/"
                        + to_string(vocabulary[*symbol].arity),
                    open.line, open.column);
            s.add_tuple(*symbol, move(tuple));
        }
        in.expect(";");
    }
    in.expect("}");
    in.expect_end();
    return s;
}

auto pathdual::format_structure(const Structure & s, string_view name) -> string
{
    ostringstream out;
    out << "vocab" << format_symbols(s.vocabulary()) << "\n";
    out << "structure " << name << " {\n    universe";
    for (auto & n : s.names())
        out << " " << n;
    out << " ;\n";
    for (size_t r = 0; r < s.vocabulary().size(); ++r) {
        if (s.relation(r).empty())
            continue;
        out << "    " << s.vocabulary()[r].name;
        for (auto & t : s.relation(r)) {
            out << " (";
            for (size_t i = 0; i < t.size(); ++i)
                out << (i ? " " : "") << s.name(t[i]);
            out << ")";
        }
        out << " ;\n";
    }
    out << "}\n";
    return out.str();
}

auto pathdual::parse_decomposition(string_view text, const Structure & s) -> PathDecomposition
{
    TokenStream in(text);
    in.expect_keyword("decomp");
    in.expect("{");
    PathDecomposition d;
    while (! in.is("}")) {
        in.expect("(");
        vector<Element> bag;
        while (! in.is(")")) {
            auto & at = in.peek();
            auto name = in.expect_identifier("element name");
            auto e = s.find(name);
            if (! e)
                throw ParseError("unknown element " + name, at.line, at.column);
            bag.push_back(*e);
        }
        in.expect(")");
        d.bags.push_back(make_bag(move(bag)));
    }
    in.expect("}");
    in.expect_end();
    return d;
}

auto pathdual::format_decomposition(const Structure & s, const PathDecomposition & d) -> string
{
    ostringstream out;
    out << "decomp {";
    for (auto & bag : d.bags) {
        out << " (";
        for (size_t i = 0; i < bag.size(); ++i)
            out << (i ? " " : "") << s.name(bag[i]);
        out << ")";
    }
    out << " }\n";
    return out.str();
}

auto pathdual::parse_program(string_view text) -> Program
{
    TokenStream in(text);
    in.expect_keyword("program");
    auto name = in.expect_identifier("program name");
    in.expect("{");

    optional<WidthPair> bounds;
    optional<Vocabulary> edb;
    Vocabulary idb;
    optional<string> goal;
    vector<Rule> rules;

    while (! in.is("}")) {
        auto & t = in.peek();
        if (t.kind == TokenKind::identifier && in.peek(1).text != "(") {
            if (t.text == "bounds") {
                in.next();
                auto j = in.expect_number("j");
                auto k = in.expect_number("k");
                bounds = WidthPair{j, k};
            }
            else if (t.text == "edb") {
                in.next();
                edb = Vocabulary{};
                parse_symbol_list(in, *edb, true);
            }
            else if (t.text == "idb") {
                in.next();
                parse_symbol_list(in, idb, true);
            }
            else if (t.text == "goal") {
                in.next();
                goal = in.expect_identifier("goal predicate");
            }
            else
                in.fail("expected bounds, edb, idb, goal or a rule");
            in.expect(";");
            continue;
        }

        Rule rule{parse_atom(in), {}};
        if (in.is(":-")) {
            in.next();
            rule.body.push_back(parse_atom(in));
            while (in.is(",")) {
                in.next();
                rule.body.push_back(parse_atom(in));
            }
        }
        in.expect(".");
        rules.push_back(move(rule));
    }
    in.expect("}");
    in.expect_end();

    if (! goal)
        throw ParseError("program has no goal", 1, 1);
    try {
        return Program(name, idb, *goal, move(rules), edb, bounds);
    }
    catch (const ProgramError & e) {
        throw ParseError(e.what(), 1, 1);
    }
}

auto pathdual::format_program(const Program & p) -> string
{
    ostringstream out;
    out << "program " << p.name() << " {\n";
    if (p.declared_bounds())
        out << "    bounds " << p.declared_bounds()->j << " " << p.declared_bounds()->k << " ;\n";
    out << "    edb" << format_symbols(p.edb()) << " ;\n";
    out << "    idb" << format_symbols(p.idb()) << " ;\n";
    out << "    goal " << p.goal() << " ;\n";
    for (auto & rule : p.rules()) {
        out << "    " << format_atom(rule.head.predicate, rule.head.arguments);
        for (size_t i = 0; i < rule.body.size(); ++i)
            out << (i ? ", " : " :- ") << format_atom(rule.body[i].predicate, rule.body[i].arguments);
        out << " .\n";
    }
    out << "}\n";
    return out.str();
}

auto pathdual::parse_sentence(string_view text) -> KromSnpSentence
{
    TokenStream in(text);
    in.expect_keyword("snp");
    KromSnpSentence f{in.expect_identifier("sentence name"), {}, {}, {}};
    in.expect("{");

    while (! in.is("}")) {
        auto & t = in.peek();
        if (t.text == "so") {
            in.next();
            parse_symbol_list(in, f.so_vocabulary, true);
        }
        else if (t.text == "vars") {
            in.next();
            while (! in.is(";"))
                f.fo_variables.push_back(in.expect_identifier("variable"));
        }
        else if (t.text == "clause") {
            in.next();
            SnpClause clause;
            while (! in.is(";")) {
                if (! clause.empty())
                    in.expect("|");
                bool positive = true;
                if (in.is("!")) {
                    in.next();
                    positive = false;
                }
                if (in.peek(1).text == "(") {
                    auto atom = parse_atom(in);
                    auto kind = f.so_vocabulary.contains(atom.predicate) ? LiteralKind::second_order : LiteralKind::edb;
                    clause.push_back(SnpLiteral{positive, kind, atom.predicate, atom.arguments});
                }
                else {
                    auto lhs = in.expect_identifier("variable");
                    if (in.is("!=")) {
                        in.next();
                        positive = ! positive;
                    }
                    else
                        in.expect("=");
                    auto rhs = in.expect_identifier("variable");
                    clause.push_back(SnpLiteral{positive, LiteralKind::equality, "=", {lhs, rhs}});
                }
            }
            f.clauses.push_back(move(clause));
        }
        else
            in.fail("expected so, vars or clause");
        in.expect(";");
    }
    in.expect("}");
    in.expect_end();

    try {
        validate_sentence(f);
    }
    catch (const SentenceError & e) {
        throw ParseError(e.what(), 1, 1);
    }
    return f;
}

auto pathdual::format_sentence(const KromSnpSentence & f) -> string
{
    ostringstream out;
    out << "snp " << f.name << " {\n";
    out << "    so" << format_symbols(f.so_vocabulary) << " ;\n";
    out << "    vars";
    for (auto & v : f.fo_variables)
        out << " " << v;
    out << " ;\n";
    for (auto & clause : f.clauses) {
        out << "    clause";
        for (size_t i = 0; i < clause.size(); ++i) {
            auto & l = clause[i];
            out << (i ? " | " : " ");
            if (l.kind == LiteralKind::equality)
                out << l.arguments[0] << (l.positive ? " = " : " != ") << l.arguments[1];
            else
                out << (l.positive ? "" : "!") << format_atom(l.predicate, l.arguments);
        }
        out << " ;\n";
    }
    out << "}\n";
    return out.str();
}

auto pathdual::parse_dimacs(string_view text) -> TwoCnf
{
    std::istringstream in{string(text)};
    string line;
    size_t number = 0;
    optional<size_t> declared_clauses;
    TwoCnf cnf;
    vector<int> pending;
    size_t pending_line = 0;

    while (std::getline(in, line)) {
        ++number;
        std::istringstream words(line);
        string first;
        if (! (words >> first) || first == "c" || first[0] == '%')
            continue;
        if (first == "p") {
            string format;
            size_t variables = 0, clauses = 0;
            if (declared_clauses || ! (words >> format >> variables >> clauses) || format != "cnf")
                throw dimacs_error("malformed problem line", number);
            cnf.variables = variables;
            declared_clauses = clauses;
            continue;
        }
        if (! declared_clauses)
            throw dimacs_error("clause before the problem line", number);

        std::istringstream literals(line);
        long long literal;
        while (literals >> literal) {
            if (pending.empty())
                pending_line = number;
            if (literal == 0) {
                if (pending.size() != 2)
                    throw dimacs_error("clause with " + to_string(pending.size()) + " literals, expected 2", pending_line);
                cnf.clauses.emplace_back(pending[0], pending[1]);
                pending.clear();
                continue;
            }
            if (size_t(literal < 0 ? -literal : literal) > cnf.variables)
                throw dimacs_error("literal " + to_string(literal) + " exceeds the declared variables", number);
            pending.push_back(int(literal));
        }
        if (! literals.eof())
            throw dimacs_error("expected an integer literal", number);
    }
    if (! pending.empty())
        throw dimacs_error("unterminated clause", pending_line);
    if (! declared_clauses)
        throw dimacs_error("missing problem line", number + 1);
    if (*declared_clauses != cnf.clauses.size())
        throw dimacs_error("problem line declares " + to_string(*declared_clauses) + " clauses but " + to_string(cnf.clauses.size()) + " were given",
            number + 1);
    return cnf;
}

auto pathdual::format_dimacs(const TwoCnf & cnf) -> string
{
    ostringstream out;
    out << "p cnf " << cnf.variables << " " << cnf.clauses.size() << "\n";
    for (auto [x, y] : cnf.clauses)
        out << x << " " << y << " 0\n";
    return out.str();
}

auto pathdual::format_play(const Structure & a, const SpoilerPlay & play) -> string
{
    ostringstream out;
    for (auto & m : play.moves) {
        out << (m.kind == MoveKind::blow ? "blow (" : "shrink (");
        for (size_t i = 0; i < m.target.size(); ++i)
            out << (i ? " " : "") << a.name(m.target[i]);
        out << ")\n";
    }
    return out.str();
}
