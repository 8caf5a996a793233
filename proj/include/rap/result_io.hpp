#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rap/instance.hpp"
#include "rap/types.hpp"

namespace rap {

/// Self-contained result document: offer book, requirement, formulation
/// parameters and the full assignments, so a result file can be re-verified
/// without the original inputs. Volatile data (wall time) stays out, which
/// keeps equal configurations byte-identical across runs and worker counts.
std::string result_to_json(const ProblemInstance& inst, const ClearingResult& result);
void write_result_json(const std::string& path, const ProblemInstance& inst,
                       const ClearingResult& result);

struct LoadedResult {
  ProblemInstance instance;
  ClearingResult result;
};

LoadedResult read_result_json(const std::string& path);

/// Human table in the published column layout (Cost, Volume, Reliability,
/// Time), locale-independent.
std::string render_result_table(const ClearingResult& result);

/// Fixed-point helpers used by the table and sweep CSVs.
std::string format_money(double v);
std::string format_percent(double fraction, int decimals);

}  // namespace rap
