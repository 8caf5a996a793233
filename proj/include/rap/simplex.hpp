#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace rap::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { LE, GE, EQ };

struct Row {
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  Sense sense = Sense::LE;
  double rhs = 0.0;
  std::string name;
};

/// Minimization model over bounded variables. Upper bounds may be +inf,
/// lower bounds -inf.
struct Model {
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> var_names;
  std::vector<Row> rows;

  int add_variable(std::string name, double lb, double ub, double c);
  void add_row(Row row) { rows.push_back(std::move(row)); }
  int num_vars() const { return static_cast<int>(cost.size()); }
  void clear();
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  long long iterations = 0;
};

/// Dense two-phase primal simplex for bounded variables. Entering variable by
/// largest reduced-cost violation with index tie-break; after a run of
/// degenerate pivots it falls back to Bland's rule, which guarantees
/// termination and keeps every run deterministic. Instances of this class own
/// reusable workspace; call solve() repeatedly to amortize allocations.
class SimplexSolver {
 public:
  Solution solve(const Model& model);

 private:
  enum class VarState : unsigned char { Basic, AtLower, AtUpper, Free };

  int m_ = 0;       // rows
  int n_all_ = 0;   // structurals + slacks + artificials
  int n_struct_ = 0;
  std::vector<double> tab_;     // m x n_all tableau, row major
  std::vector<double> dcost_;   // reduced costs
  std::vector<double> xb_;      // basic variable values
  std::vector<double> rhs_;     // original right-hand sides
  std::vector<double> lb_, ub_, cost_;
  std::vector<int> basis_;
  std::vector<VarState> state_;
  long long iterations_ = 0;

  double& tab(int r, int c) { return tab_[static_cast<std::size_t>(r) * n_all_ + c]; }
  void reset_reduced_costs();
  void refresh_basic_values();
  // Runs pivots until optimal for the currently loaded cost vector.
  // Returns false when the problem is unbounded.
  bool iterate();
  void pivot(int row, int col);
  double var_value(int j) const;
};

}  // namespace rap::lp
