#pragma once

#include <iosfwd>
#include <string>

#include "rap/instance.hpp"
#include "rap/milp_model.hpp"

namespace rap {

/// Writes the instance's MILP relaxation plus a Binaries section in the
/// human-readable LP text format (Minimize / Subject To / Bounds / Binaries).
/// Coefficients are printed with shortest round-trip formatting, so a
/// re-import reproduces them exactly. Throws for nonlinear formulations.
void write_lp(std::ostream& os, const ProblemInstance& inst,
              const std::string& instance_name);
std::string write_lp_string(const ProblemInstance& inst,
                            const std::string& instance_name);

/// Parsed LP file contents, in the writer's canonical column order.
struct LpFile {
  lp::Model model;
  std::vector<std::string> binaries;
};

/// Minimal reader for the dialect write_lp emits; used to cross-check
/// exported files against the in-memory instance.
LpFile read_lp(std::istream& is);
LpFile read_lp_string(const std::string& text);

}  // namespace rap
