#include "rap/simplex.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace rap::lp {

namespace {
constexpr double kTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr int kBlandTrigger = 64;   // degenerate pivots before Bland's rule
constexpr int kRefreshPeriod = 512; // pivots between from-scratch refreshes
}  // namespace

int Model::add_variable(std::string name, double lb, double ub, double c) {
  var_names.push_back(std::move(name));
  lower.push_back(lb);
  upper.push_back(ub);
  cost.push_back(c);
  return static_cast<int>(cost.size()) - 1;
}

void Model::clear() {
  cost.clear();
  lower.clear();
  upper.clear();
  var_names.clear();
  rows.clear();
}

double SimplexSolver::var_value(int j) const {
  switch (state_[j]) {
    case VarState::AtLower: return lb_[j];
    case VarState::AtUpper: return ub_[j];
    case VarState::Free: return 0.0;
    case VarState::Basic: break;
  }
  for (int r = 0; r < m_; ++r) {
    if (basis_[r] == j) return xb_[r];
  }
  return 0.0;
}

void SimplexSolver::reset_reduced_costs() {
  dcost_.assign(n_all_, 0.0);
  for (int j = 0; j < n_all_; ++j) dcost_[j] = cost_[j];
  for (int r = 0; r < m_; ++r) {
    double cb = cost_[basis_[r]];
    if (cb == 0.0) continue;
    const double* row = &tab_[static_cast<std::size_t>(r) * n_all_];
    for (int j = 0; j < n_all_; ++j) dcost_[j] -= cb * row[j];
  }
  for (int r = 0; r < m_; ++r) dcost_[basis_[r]] = 0.0;
}

void SimplexSolver::refresh_basic_values() {
  // The slack block of the tableau is B^-1 (slack columns started as the
  // identity), so x_B = B^-1 b - sum over nonbasic j of T_j x_j.
  for (int r = 0; r < m_; ++r) {
    const double* row = &tab_[static_cast<std::size_t>(r) * n_all_];
    double v = 0.0;
    for (int k = 0; k < m_; ++k) v += row[n_struct_ + k] * rhs_[k];
    for (int j = 0; j < n_all_; ++j) {
      if (state_[j] == VarState::Basic) continue;
      double xj = (state_[j] == VarState::AtLower)   ? lb_[j]
                  : (state_[j] == VarState::AtUpper) ? ub_[j]
                                                     : 0.0;
      if (xj != 0.0 && row[j] != 0.0) v -= row[j] * xj;
    }
    xb_[r] = v;
  }
}

void SimplexSolver::pivot(int row, int col) {
  double* prow = &tab_[static_cast<std::size_t>(row) * n_all_];
  double inv = 1.0 / prow[col];
  for (int j = 0; j < n_all_; ++j) prow[j] *= inv;
  prow[col] = 1.0;
  for (int r = 0; r < m_; ++r) {
    if (r == row) continue;
    double factor = tab(r, col);
    if (factor == 0.0) continue;
    double* rrow = &tab_[static_cast<std::size_t>(r) * n_all_];
    for (int j = 0; j < n_all_; ++j) rrow[j] -= factor * prow[j];
    rrow[col] = 0.0;
  }
  double dq = dcost_[col];
  if (dq != 0.0) {
    for (int j = 0; j < n_all_; ++j) dcost_[j] -= dq * prow[j];
  }
  dcost_[col] = 0.0;
}

bool SimplexSolver::iterate() {
  int degenerate_streak = 0;
  int since_refresh = 0;
  const long long iter_cap =
      20000 + 200LL * (static_cast<long long>(m_) + n_all_);
  for (;;) {
    if (++iterations_ > iter_cap) {
      throw std::runtime_error("simplex: iteration limit exceeded");
    }
    if (++since_refresh >= kRefreshPeriod) {
      since_refresh = 0;
      reset_reduced_costs();
      refresh_basic_values();
    }
    bool bland = degenerate_streak >= kBlandTrigger;

    int entering = -1;
    int dir = 0;
    double best_score = kTol;
    for (int j = 0; j < n_all_; ++j) {
      if (state_[j] == VarState::Basic) continue;
      if (lb_[j] == ub_[j] && state_[j] != VarState::Free) continue;
      double d = dcost_[j];
      int cand_dir = 0;
      double score = 0.0;
      if (state_[j] == VarState::AtUpper) {
        if (d > kTol) { cand_dir = -1; score = d; }
      } else {  // AtLower or Free
        if (d < -kTol) { cand_dir = 1; score = -d; }
        else if (state_[j] == VarState::Free && d > kTol) { cand_dir = -1; score = d; }
      }
      if (cand_dir == 0) continue;
      if (bland) { entering = j; dir = cand_dir; break; }
      if (score > best_score) { best_score = score; entering = j; dir = cand_dir; }
    }
    if (entering < 0) return true;

    // Ratio test: entering moves by t >= 0 in direction dir; each basic
    // variable changes by -t * dir * T(r, entering).
    double t_limit = kInf;
    if (state_[entering] != VarState::Free &&
        lb_[entering] != -kInf && ub_[entering] != kInf) {
      t_limit = ub_[entering] - lb_[entering];
    }
    int leave_row = -1;
    bool leave_to_upper = false;
    double t_best = t_limit;
    for (int r = 0; r < m_; ++r) {
      double a = dir * tab(r, entering);
      if (std::abs(a) <= kPivotTol) continue;
      int bi = basis_[r];
      double t;
      bool to_upper;
      if (a > 0.0) {
        if (lb_[bi] == -kInf) continue;
        t = (xb_[r] - lb_[bi]) / a;
        to_upper = false;
      } else {
        if (ub_[bi] == kInf) continue;
        t = (xb_[r] - ub_[bi]) / a;
        to_upper = true;
      }
      if (t < 0.0) t = 0.0;
      bool take = false;
      if (t < t_best - kPivotTol) {
        take = true;
      } else if (t <= t_best + kPivotTol && leave_row >= 0 &&
                 bi < basis_[leave_row]) {
        take = true;  // Bland-style tie-break on the leaving variable
      }
      if (take) {
        t_best = t;
        leave_row = r;
        leave_to_upper = to_upper;
      }
    }

    if (t_best == kInf) return false;  // unbounded

    if (t_best > kTol) degenerate_streak = 0; else ++degenerate_streak;

    double step = dir * t_best;
    if (leave_row < 0) {
      // Bound flip, basis unchanged.
      for (int r = 0; r < m_; ++r) xb_[r] -= step * tab(r, entering);
      state_[entering] = (dir > 0) ? VarState::AtUpper : VarState::AtLower;
      continue;
    }

    double enter_from = (state_[entering] == VarState::AtUpper) ? ub_[entering]
                        : (state_[entering] == VarState::AtLower) ? lb_[entering]
                                                                  : 0.0;
    for (int r = 0; r < m_; ++r) {
      if (r != leave_row) xb_[r] -= step * tab(r, entering);
    }
    int leaving = basis_[leave_row];
    state_[leaving] = leave_to_upper ? VarState::AtUpper : VarState::AtLower;
    basis_[leave_row] = entering;
    state_[entering] = VarState::Basic;
    pivot(leave_row, entering);
    xb_[leave_row] = enter_from + step;
  }
}

Solution SimplexSolver::solve(const Model& model) {
  m_ = static_cast<int>(model.rows.size());
  n_struct_ = model.num_vars();
  n_all_ = n_struct_ + 2 * m_;  // slacks + artificials
  iterations_ = 0;

  lb_.assign(n_all_, 0.0);
  ub_.assign(n_all_, 0.0);
  cost_.assign(n_all_, 0.0);
  state_.assign(n_all_, VarState::AtLower);
  basis_.assign(m_, -1);
  xb_.assign(m_, 0.0);
  rhs_.assign(m_, 0.0);
  tab_.assign(static_cast<std::size_t>(m_) * n_all_, 0.0);

  for (int j = 0; j < n_struct_; ++j) {
    lb_[j] = model.lower[j];
    ub_[j] = model.upper[j];
    if (lb_[j] > ub_[j]) {
      throw std::invalid_argument("lp: variable '" + model.var_names[j] +
                                  "' has crossing bounds");
    }
    if (lb_[j] != -kInf) state_[j] = VarState::AtLower;
    else if (ub_[j] != kInf) state_[j] = VarState::AtUpper;
    else state_[j] = VarState::Free;
  }

  for (int r = 0; r < m_; ++r) {
    int s = n_struct_ + r;
    switch (model.rows[r].sense) {
      case Sense::LE: lb_[s] = 0.0; ub_[s] = kInf; break;
      case Sense::GE: lb_[s] = -kInf; ub_[s] = 0.0; break;
      case Sense::EQ: lb_[s] = 0.0; ub_[s] = 0.0; break;
    }
    rhs_[r] = model.rows[r].rhs;
    tab(r, s) = 1.0;
    for (auto [j, coef] : model.rows[r].terms) {
      assert(j >= 0 && j < n_struct_);
      tab(r, j) += coef;
    }
  }

  // Start with every structural at its bound; slacks take the residual. When
  // a residual falls outside the slack's range, peg the slack and cover the
  // remainder with an artificial carrying phase-1 cost 1.
  bool need_phase1 = false;
  for (int r = 0; r < m_; ++r) {
    double lhs = 0.0;
    for (auto [j, coef] : model.rows[r].terms) {
      double xj = (state_[j] == VarState::AtLower)   ? lb_[j]
                  : (state_[j] == VarState::AtUpper) ? ub_[j]
                                                     : 0.0;
      lhs += coef * xj;
    }
    double resid = rhs_[r] - lhs;
    int s = n_struct_ + r;
    int a = n_struct_ + m_ + r;
    if (resid >= lb_[s] - kTol && resid <= ub_[s] + kTol) {
      basis_[r] = s;
      state_[s] = VarState::Basic;
      xb_[r] = resid;
      lb_[a] = ub_[a] = 0.0;
    } else {
      double s_val = (resid > ub_[s]) ? ub_[s] : lb_[s];
      state_[s] = (resid > ub_[s]) ? VarState::AtUpper : VarState::AtLower;
      double remainder = resid - s_val;
      tab(r, a) = (remainder >= 0.0) ? 1.0 : -1.0;
      lb_[a] = 0.0;
      ub_[a] = kInf;
      cost_[a] = 1.0;
      basis_[r] = a;
      state_[a] = VarState::Basic;
      xb_[r] = std::abs(remainder);
      need_phase1 = true;
    }
  }

  Solution sol;
  if (need_phase1) {
    reset_reduced_costs();
    if (!iterate()) {
      throw std::runtime_error("lp: phase 1 reported unbounded");
    }
    double infeas = 0.0;
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] >= n_struct_ + m_) infeas += std::abs(xb_[r]);
    }
    if (infeas > 1e-7) {
      sol.status = SolveStatus::Infeasible;
      sol.iterations = iterations_;
      return sol;
    }
    for (int j = n_struct_ + m_; j < n_all_; ++j) {
      cost_[j] = 0.0;
      lb_[j] = ub_[j] = 0.0;
    }
    // Drive leftover zero-valued artificials out of the basis when a usable
    // pivot exists; a fully zero row is redundant and may keep its artificial.
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_struct_ + m_) continue;
      for (int j = 0; j < n_struct_ + m_; ++j) {
        if (state_[j] != VarState::Basic && lb_[j] != ub_[j] &&
            std::abs(tab(r, j)) > 1e-7) {
          int art = basis_[r];
          state_[art] = VarState::AtLower;
          basis_[r] = j;
          state_[j] = VarState::Basic;
          pivot(r, j);
          break;
        }
      }
    }
    refresh_basic_values();
  }

  for (int j = 0; j < n_struct_; ++j) cost_[j] = model.cost[j];
  for (int j = n_struct_; j < n_all_; ++j) cost_[j] = 0.0;
  reset_reduced_costs();
  if (!iterate()) {
    sol.status = SolveStatus::Unbounded;
    sol.iterations = iterations_;
    return sol;
  }
  refresh_basic_values();

  sol.status = SolveStatus::Optimal;
  sol.x.assign(n_struct_, 0.0);
  for (int j = 0; j < n_struct_; ++j) sol.x[j] = var_value(j);
  for (int r = 0; r < m_; ++r) {
    if (basis_[r] < n_struct_) sol.x[basis_[r]] = xb_[r];
  }
  double obj = 0.0;
  for (int j = 0; j < n_struct_; ++j) obj += model.cost[j] * sol.x[j];
  sol.objective = obj;
  sol.iterations = iterations_;
  return sol;
}

}  // namespace rap::lp
