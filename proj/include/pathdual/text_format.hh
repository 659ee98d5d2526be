#ifndef PATHDUAL_GUARD_PATHDUAL_TEXT_FORMAT_HH
#define PATHDUAL_GUARD_PATHDUAL_TEXT_FORMAT_HH 1

#include <pathdual/datalog.hh>
#include <pathdual/game.hh>
#include <pathdual/pathwidth.hh>
#include <pathdual/snp.hh>
#include <pathdual/structure.hh>
#include <pathdual/two_sat_encoding.hh>

#include <string>
#include <string_view>

namespace pathdual
{
    /// vocab E/2 U/1
    /// structure S { universe a b c ; E (a b) (b c) ; U (a) ; }
    auto parse_structure(std::string_view text) -> Structure;
    [[nodiscard]] auto format_structure(const Structure & s, std::string_view name = "S") -> std::string;

    /// decomp { (a b) (b c) () }, with element names resolved against s.
    auto parse_decomposition(std::string_view text, const Structure & s) -> PathDecomposition;
    [[nodiscard]] auto format_decomposition(const Structure & s, const PathDecomposition & d) -> std::string;

    /// program N { bounds 2 3 ; edb E/2 ; idb P/1 Q/0 ; goal Q ; P(x) :- E(x, y) . Q() :- P(x), E(x, x) . }
    /// The bounds and edb lines are optional.
    auto parse_program(std::string_view text) -> Program;
    [[nodiscard]] auto format_program(const Program & p) -> std::string;

    /// snp N { so S/1 ; vars x y ; clause S(x) | !E(x, y) | x != y ; }
    auto parse_sentence(std::string_view text) -> KromSnpSentence;
    [[nodiscard]] auto format_sentence(const KromSnpSentence & f) -> std::string;

    /// "p cnf <variables> <clauses>" followed by clauses of exactly two literals, each ended by 0.
    auto parse_dimacs(std::string_view text) -> TwoCnf;
    [[nodiscard]] auto format_dimacs(const TwoCnf & cnf) -> std::string;

    /// One move per line: "blow (a b)" or "shrink (a)".
    [[nodiscard]] auto format_play(const Structure & a, const SpoilerPlay & play) -> std::string;
}

#endif
