#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmzv/params.hpp"
#include "qmzv/rational.hpp"
#include "qmzv/report.hpp"

namespace qmzv {

/// Case-family limits.  -1 means "use this suite's default" (weight 7 for
/// the zeta/single-parameter families, 8 for the block-pattern family, 20
/// random expressions, 50 random index pairs).  `tolerance`, when set,
/// overrides the per-suite default slack.
struct SuiteScope {
    int max_weight = -1;
    int lambda_order = 6;
    int random_cases = -1;
    unsigned long seed = 6428031;
    std::optional<Rat> tolerance;
};

const std::vector<std::string>& suite_names();

/// Runs one named case family against independently evaluated sides and
/// returns the Report (cases sorted by input key; wall_time filled in).
/// Unknown names throw InvalidParams.  Per-case failures are captured as
/// failed cases with an error tag, never as exceptions.
Report run_suite(const std::string& name, const Params& p, const SuiteScope& scope);

}  // namespace qmzv
