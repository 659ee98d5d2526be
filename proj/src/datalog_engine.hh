#ifndef PATHDUAL_GUARD_SRC_DATALOG_ENGINE_HH
#define PATHDUAL_GUARD_SRC_DATALOG_ENGINE_HH 1

#include <pathdual/datalog.hh>

#include <map>
#include <utility>
#include <vector>

namespace pathdual::innards
{
    /// Values follow rule_variables order.
    struct Provenance
    {
        std::size_t rule;
        std::vector<Element> values;
    };

    struct FixpointOptions
    {
        bool record_provenance = false;
        bool stop_at_goal = false;
    };

    struct FixpointResult
    {
        Structure structure;
        /// Keyed by (IDB index, fact); the first derivation found.
        std::map<std::pair<std::size_t, Tuple>, Provenance> provenance;
    };

    auto semi_naive_fixpoint(const Program & p, const Structure & a, const FixpointOptions & options) -> FixpointResult;
}

#endif
