#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gnum/dsl.hpp"

namespace gnum {

/// Command-line overrides; unset fields fall back to the scenario file
/// and then to the defaults (check_k 256, depth 20).
struct ScenarioFlags {
    std::optional<long> check_k;
    std::optional<long> depth;
    std::optional<long> certify;  // diagonal-witness certification depth
};

/// Deterministic verification report: ordered key = value lines followed
/// by a verdict line. Byte-identical across runs on identical input.
struct Report {
    std::vector<std::string> lines;
    int exit_code = 0;  // 0 verified, 1 precondition violated, 2 parse/IO

    std::string str() const;
};

/// Runs a scenario given as JSON text. Kinds: intersect, hb, fixpoint,
/// check. All rationals are strings ("p" or "p/q"), expressions use the
/// value grammar, nets the net grammar.
Report run_scenario_text(const std::string& json_text, const ScenarioFlags& flags = {});

/// Reads the file and delegates to run_scenario_text; unreadable files
/// yield exit code 2.
Report run_scenario(const std::string& path, const ScenarioFlags& flags = {});

}  // namespace gnum
