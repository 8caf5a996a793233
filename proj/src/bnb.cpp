#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rap/milp_model.hpp"
#include "solver_detail.hpp"

namespace rap {

namespace {

// Nodes are explored in fixed-size waves: the wave's members depend only on
// the search history, never on the worker count, so workers parallelize the
// node evaluations while the merge stays sequential and the whole run is
// reproducible.
constexpr int kWaveSize = 64;

struct SearchNode {
  std::int32_t parent = -1;
  std::int32_t var = -1;  // block * n + offer, fixed by this node
  std::int8_t value = 0;
  std::int32_t depth = 0;
  double bound = 0.0;  // inherited lower bound; nondecreasing along paths
};

struct EvalOut {
  double bound = 0.0;
  bool infeasible = false;
  bool is_leaf = false;
  bool leaf_feasible = false;
  double leaf_cost = lp::kInf;
  LpSubproblemSolution leaf;
  int branch_var = -1;
  long long lp_iterations = 0;
};

struct Scratch {
  std::vector<signed char> z;
  std::vector<std::vector<int>> in_sets;
  std::vector<char> source_used;
  lp::SimplexSolver simplex;
  lp::Model node_model;  // relaxation copy with per-node z bounds
  bool node_model_ready = false;
};

// Exact minimum block cost rate: min sum of prices over offer sets whose
// weights reach `need`, optionally one offer per source. Falls back to the
// continuous relaxation if the search budget runs out, so the returned value
// is always a valid lower bound.
class BlockRateOracle {
 public:
  BlockRateOracle(const std::vector<double>& wpos,
                  const std::vector<double>& price,
                  const std::vector<char>& eligible,
                  const std::vector<int>& source_of, bool per_source_unique)
      : wpos_(wpos), price_(price), source_of_(source_of),
        unique_(per_source_unique) {
    int max_source = 0;
    for (int i = 0; i < static_cast<int>(wpos.size()); ++i) {
      if (eligible[i] && wpos[i] > 0.0) order_.push_back(i);
      max_source = std::max(max_source, source_of[i]);
    }
    used_.assign(max_source + 1, 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      double ra = price[a] / wpos[a], rb = price[b] / wpos[b];
      if (ra != rb) return ra < rb;
      return a < b;
    });
  }

  double exact_min_rate(double need) {
    if (need <= kLogSlack) return 0.0;
    best_ = lp::kInf;
    budget_ = 4'000'000;
    double cont = continuous_from(0, need);
    if (cont == lp::kInf) return lp::kInf;
    dfs(0, need, 0.0);
    return budget_ > 0 ? best_ : cont;
  }

 private:
  double continuous_from(int pos, double need) const {
    double cost = 0.0;
    for (std::size_t k = pos; k < order_.size() && need > kLogSlack; ++k) {
      int i = order_[k];
      double take = std::min(1.0, need / wpos_[i]);
      cost += take * price_[i];
      need -= take * wpos_[i];
    }
    return need > kLogSlack ? lp::kInf : cost;
  }

  void dfs(int pos, double need, double cost) {
    if (budget_-- <= 0) return;
    if (need <= kLogSlack) {
      best_ = std::min(best_, cost);
      return;
    }
    if (pos >= static_cast<int>(order_.size())) return;
    if (cost + continuous_from(pos, need) >= best_) return;
    int i = order_[pos];
    if (!unique_ || !used_[source_of_[i]]) {
      if (unique_) used_[source_of_[i]] = 1;
      dfs(pos + 1, need - wpos_[i], cost + price_[i]);
      if (unique_) used_[source_of_[i]] = 0;
    }
    dfs(pos + 1, need, cost);
  }

  const std::vector<double>& wpos_;
  const std::vector<double>& price_;
  const std::vector<int>& source_of_;
  bool unique_;
  std::vector<int> order_;
  std::vector<char> used_;
  double best_ = lp::kInf;
  long long budget_ = 0;
};

class BranchAndBound {
 public:
  BranchAndBound(const ProblemInstance& inst, const SolveOptions& opts,
                 bool exact_joint)
      : inst_(inst), opts_(opts), exact_joint_(exact_joint),
        n_(inst.num_offers()), bk_(inst.num_blocks()) {
    wpos_ = detail::positive_weights(inst);
    price_.resize(n_);
    for (int i = 0; i < n_; ++i) price_[i] = inst.offers.at(i).price_per_mw;
    need_ = detail::block_weight_requirement(inst);
    log_target_ = std::log(inst.requirement.target_reliability);

    // Ratio order for the continuous knapsack; price order for UniformE.
    for (int i = 0; i < n_; ++i) {
      if (inst.eligible[i]) {
        if (wpos_[i] > 0.0) ratio_order_.push_back(i);
        price_order_.push_back(i);
      }
    }
    std::sort(ratio_order_.begin(), ratio_order_.end(), [&](int a, int b) {
      double ra = price_[a] / wpos_[a], rb = price_[b] / wpos_[b];
      if (ra != rb) return ra < rb;
      return a < b;
    });
    std::sort(price_order_.begin(), price_order_.end(), [&](int a, int b) {
      if (price_[a] != price_[b]) return price_[a] < price_[b];
      return a < b;
    });

    if (inst.formulation == Formulation::UniformE) {
      rho_int_ = 0.0;
      for (int k = 0; k < inst.min_offers_per_block &&
                      k < static_cast<int>(price_order_.size()); ++k) {
        rho_int_ += price_[price_order_[k]];
      }
    } else {
      BlockRateOracle oracle(wpos_, price_, inst.eligible, inst.source_of,
                             inst.formulation == Formulation::SourceRestrictedG);
      rho_int_ = oracle.exact_min_rate(need_);
    }

    use_node_lp_ = formulation_has_linear_constraints(inst.formulation) &&
                   inst.binaries() <= opts.lp_node_gate;
    if (use_node_lp_) relaxation_ = build_relaxation(inst);
  }

  ClearingResult run();

 private:
  EvalOut evaluate(std::int32_t id, double inc_snapshot, Scratch& s) const;
  void rebuild(std::int32_t id, Scratch& s) const;
  // Solves the node relaxation; returns true when its optimum has integral
  // binaries, in which case `integral_members` holds them per block.
  bool node_lp(Scratch& s, EvalOut& out,
               std::vector<std::vector<int>>& integral_members) const;

  const ProblemInstance& inst_;
  const SolveOptions& opts_;
  bool exact_joint_;
  int n_, bk_;
  std::vector<double> wpos_, price_;
  std::vector<int> ratio_order_, price_order_;
  double need_ = 0.0;        // per-block weight requirement
  double log_target_ = 0.0;  // log Phi for the exact joint constraint
  double rho_int_ = 0.0;     // unconditional integer min block rate
  bool use_node_lp_ = false;
  MilpRelaxation relaxation_;

  std::vector<SearchNode> pool_;
};

void BranchAndBound::rebuild(std::int32_t id, Scratch& s) const {
  s.z.assign(static_cast<std::size_t>(n_) * bk_, -1);
  for (std::int32_t cur = id; cur >= 0; cur = pool_[cur].parent) {
    const SearchNode& nd = pool_[cur];
    if (nd.var >= 0) s.z[nd.var] = nd.value;
  }
}

bool BranchAndBound::node_lp(Scratch& s, EvalOut& out,
                             std::vector<std::vector<int>>& integral_members) const {
  lp::Model& m = s.node_model;
  if (!s.node_model_ready) {
    m = relaxation_.model;
    s.node_model_ready = true;
  }
  for (int b = 0; b < bk_; ++b) {
    for (int i = 0; i < n_; ++i) {
      int zi = relaxation_.z_index(i, b);
      signed char v = s.z[static_cast<std::size_t>(b) * n_ + i];
      if (v < 0) {
        m.lower[zi] = 0.0;
        m.upper[zi] = inst_.eligible[i] ? 1.0 : 0.0;
      } else {
        m.lower[zi] = m.upper[zi] = static_cast<double>(v);
      }
    }
  }
  lp::Solution sol = s.simplex.solve(m);
  out.lp_iterations += sol.iterations;
  if (sol.status == lp::SolveStatus::Infeasible) {
    out.infeasible = true;
    return false;
  }
  if (sol.status != lp::SolveStatus::Optimal) return false;

  if (sol.objective <= out.bound) return false;
  // The LP sees the capacity coupling the knapsack bound ignores; when it is
  // the binding relaxation its most-fractional binary guides branching.
  out.bound = sol.objective;
  int best_var = -1;
  double best_dist = 0.5;
  bool integral = true;
  for (int i = 0; i < n_; ++i) {
    for (int b = 0; b < bk_; ++b) {
      double zv = sol.x[relaxation_.z_index(i, b)];
      if (zv > 1e-6 && zv < 1.0 - 1e-6) {
        integral = false;
        double dist = std::abs(zv - 0.5);
        if (dist < best_dist - 1e-12) {
          best_dist = dist;
          best_var = b * n_ + i;
        }
      }
    }
  }
  if (best_var >= 0) out.branch_var = best_var;
  if (integral) {
    integral_members.assign(bk_, {});
    for (int b = 0; b < bk_; ++b) {
      for (int i = 0; i < n_; ++i) {
        if (sol.x[relaxation_.z_index(i, b)] > 0.5) integral_members[b].push_back(i);
      }
    }
  }
  return integral;
}

EvalOut BranchAndBound::evaluate(std::int32_t id, double inc_snapshot,
                                 Scratch& s) const {
  EvalOut out;
  rebuild(id, s);

  const Requirement& req = inst_.requirement;
  const bool uniform_e = inst_.formulation == Formulation::UniformE;
  const bool source_g = inst_.formulation == Formulation::SourceRestrictedG;

  if (s.in_sets.size() != static_cast<std::size_t>(bk_)) s.in_sets.resize(bk_);
  std::vector<double> rate(bk_, 0.0);
  std::vector<char> complete(bk_, 0);
  int first_incomplete = -1;
  int branch_fallback = -1;
  double log_joint_in = 0.0;   // exact joint over fixed members
  double log_joint_pot = 0.0;  // exact joint with every free offer added

  for (int b = 0; b < bk_; ++b) {
    auto& in = s.in_sets[b];
    in.clear();
    double w_in = 0.0, cost_in = 0.0, w_pot = 0.0;
    if (source_g) s.source_used.assign(inst_.source_names.size(), 0);
    for (int i = 0; i < n_; ++i) {
      signed char v = s.z[static_cast<std::size_t>(b) * n_ + i];
      if (v == 1) {
        in.push_back(i);
        w_in += wpos_[i];
        cost_in += price_[i];
        if (source_g) s.source_used[inst_.source_of[i]] = 1;
      }
    }
    w_pot = w_in;
    int free_eligible = 0;
    if (source_g) {
      std::vector<double> best(inst_.source_names.size(), 0.0);
      for (int i = 0; i < n_; ++i) {
        signed char v = s.z[static_cast<std::size_t>(b) * n_ + i];
        if (v == -1 && inst_.eligible[i] && !s.source_used[inst_.source_of[i]]) {
          best[inst_.source_of[i]] = std::max(best[inst_.source_of[i]], wpos_[i]);
          ++free_eligible;
        }
      }
      for (double w : best) w_pot += w;
    } else {
      for (int i = 0; i < n_; ++i) {
        signed char v = s.z[static_cast<std::size_t>(b) * n_ + i];
        if (v == -1 && inst_.eligible[i]) {
          w_pot += wpos_[i];
          ++free_eligible;
        }
      }
    }

    if (exact_joint_) {
      // log phi over fixed members / over everything available.
      double lu_in = -w_in;  // log of block unavailability
      log_joint_in += (in.empty() ? -lp::kInf : std::log1p(-std::exp(lu_in)));
      double lu_pot = -w_pot;
      log_joint_pot += ((in.empty() && free_eligible == 0)
                            ? -lp::kInf
                            : std::log1p(-std::exp(lu_pot)));
    }

    // Completeness and infeasibility per formulation.
    bool comp;
    if (uniform_e) {
      int cnt = static_cast<int>(in.size());
      comp = cnt >= inst_.min_offers_per_block;
      if (cnt + free_eligible < inst_.min_offers_per_block) {
        out.infeasible = true;
        return out;
      }
    } else {
      comp = w_in >= need_ - kLogSlack;
      if (w_pot < need_ - kLogSlack) {
        out.infeasible = true;
        return out;
      }
    }
    complete[b] = comp;
    if (!comp && first_incomplete < 0) first_incomplete = b;

    // Block rate lower bound and the branch candidate within this block.
    if (comp) {
      rate[b] = cost_in;
    } else if (uniform_e) {
      int still = inst_.min_offers_per_block - static_cast<int>(in.size());
      double add = 0.0;
      int taken = 0;
      int cand = -1;
      for (int i : price_order_) {
        if (taken >= still) break;
        if (s.z[static_cast<std::size_t>(b) * n_ + i] != -1) continue;
        add += price_[i];
        if (cand < 0) cand = i;
        ++taken;
      }
      rate[b] = std::max(rho_int_, cost_in + add);
      if (b == first_incomplete && cand >= 0) branch_fallback = b * n_ + cand;
    } else {
      double remaining = need_ - w_in;
      double add = 0.0;
      int cand = -1;
      for (int i : ratio_order_) {
        if (remaining <= kLogSlack) break;
        if (s.z[static_cast<std::size_t>(b) * n_ + i] != -1) continue;
        if (source_g && s.source_used[inst_.source_of[i]]) continue;
        double take = std::min(1.0, remaining / wpos_[i]);
        add += take * price_[i];
        remaining -= take * wpos_[i];
        cand = i;
      }
      rate[b] = std::max(rho_int_, cost_in + add);
      if (b == first_incomplete && cand >= 0) branch_fallback = b * n_ + cand;
    }
  }

  // Interchangeable blocks: keep only the nonincreasing lexicographic
  // arrangement of completed member sets (memberships finalize in block
  // order; see the leaf-only variant for the joint formulations).
  if (!exact_joint_) {
    int limit = (first_incomplete < 0) ? bk_ : first_incomplete;
    for (int b = 1; b < limit; ++b) {
      if (std::lexicographical_compare(s.in_sets[b - 1].begin(),
                                       s.in_sets[b - 1].end(),
                                       s.in_sets[b].begin(),
                                       s.in_sets[b].end())) {
        out.infeasible = true;
        return out;
      }
    }
  }

  // Cost bound: every block pays at least its rate on at least the minimum
  // block volume; the volume above sum(Bmin) goes to the cheapest block.
  double bound = 0.0;
  double min_rate = lp::kInf;
  for (int b = 0; b < bk_; ++b) {
    bound += req.min_block_volume_mw * rate[b];
    min_rate = std::min(min_rate, rate[b]);
  }
  double extra = req.target_volume_mw - req.min_block_volume_mw * bk_;
  if (extra > 0.0) bound += extra * min_rate;
  bound = std::max(bound, pool_[id].bound);
  out.bound = bound;

  bool leaf;
  if (exact_joint_) {
    if (log_joint_pot < log_target_ - kLogSlack) {
      out.infeasible = true;
      return out;
    }
    leaf = log_joint_in >= log_target_ - kLogSlack;
    if (!leaf && first_incomplete < 0) {
      // Every block meets the necessary per-block floor but the joint
      // product still misses: grow the strongest free offer.
      for (int b = 0; b < bk_ && branch_fallback < 0; ++b) {
        double best_w = 0.0;
        int cand = -1;
        for (int i = 0; i < n_; ++i) {
          if (s.z[static_cast<std::size_t>(b) * n_ + i] != -1) continue;
          if (!inst_.eligible[i]) continue;
          if (wpos_[i] > best_w) {
            best_w = wpos_[i];
            cand = i;
          }
        }
        if (cand >= 0) branch_fallback = b * n_ + cand;
      }
      if (branch_fallback < 0) {
        out.infeasible = true;  // nothing left to add
        return out;
      }
    }
    if (leaf) {
      // Canonical ordering among equal-cost permutations.
      for (int b = 1; b < bk_; ++b) {
        if (std::lexicographical_compare(s.in_sets[b - 1].begin(),
                                         s.in_sets[b - 1].end(),
                                         s.in_sets[b].begin(),
                                         s.in_sets[b].end())) {
          out.infeasible = true;
          return out;
        }
      }
    }
  } else {
    leaf = first_incomplete < 0;
  }

  const double prune_tol = 1e-9 * std::max(1.0, std::abs(inc_snapshot));
  bool prunable = std::isfinite(inc_snapshot) && out.bound >= inc_snapshot - prune_tol;

  if (leaf) {
    out.is_leaf = true;
    if (!prunable) {
      LpSubproblem sub = make_subproblem(inst_, s.in_sets);
      LpSubproblemSolution sol = solve_subproblem(inst_, sub, s.simplex);
      if (sol.feasible) {
        out.leaf_feasible = true;
        out.leaf_cost = sol.cost;
        out.leaf = std::move(sol);
      } else {
        out.infeasible = true;  // richer memberships only shrink the LP
      }
    }
    return out;
  }

  out.branch_var = branch_fallback;
  if (use_node_lp_ && !prunable) {
    std::vector<std::vector<int>> integral_members;
    bool integral = node_lp(s, out, integral_members);
    if (out.infeasible) return out;
    if (integral) {
      // The relaxation solved this node outright; re-derive the quantities
      // through the volume subproblem so leaves stay canonical.
      LpSubproblem sub = make_subproblem(inst_, integral_members);
      LpSubproblemSolution sol = solve_subproblem(inst_, sub, s.simplex);
      if (sol.feasible) {
        out.is_leaf = true;
        out.branch_var = -1;
        out.leaf_feasible = true;
        out.leaf_cost = sol.cost;
        out.leaf = std::move(sol);
      }
    }
  }
  assert(out.is_leaf || out.branch_var >= 0);
  return out;
}

ClearingResult BranchAndBound::run() {
  auto t0 = std::chrono::steady_clock::now();

  if (detail::degenerate_requirement(inst_)) {
    ClearingResult res = detail::empty_result(inst_, SolveStatus::Optimal);
    res.stats.workers = opts_.workers;
    return res;
  }

  int workers = opts_.workers;
#ifdef _OPENMP
  if (workers <= 0) workers = omp_get_max_threads();
#else
  workers = 1;
#endif

  pool_.clear();
  pool_.push_back(SearchNode{});
  std::vector<std::int32_t> open{0};

  double incumbent = lp::kInf;
  LpSubproblemSolution best;
  SolverStats stats;
  stats.workers = opts_.workers;

  std::vector<Scratch> scratch(std::max(workers, 1));
  std::vector<std::int32_t> wave;
  std::vector<EvalOut> evals;

  bool hit_limit = false;
  while (!open.empty()) {
    if (stats.nodes >= opts_.node_limit) {
      hit_limit = true;
      break;
    }
    if (opts_.time_limit_s > 0.0) {
      double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      if (elapsed > opts_.time_limit_s) {
        hit_limit = true;
        break;
      }
    }

    int take = static_cast<int>(std::min<std::size_t>(kWaveSize, open.size()));
    wave.clear();
    for (int k = 0; k < take; ++k) {
      wave.push_back(open.back());
      open.pop_back();
    }
    evals.assign(wave.size(), EvalOut{});
    const double snapshot = incumbent;

#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1) \
    if (workers > 1 && wave.size() > 1)
#endif
    for (int k = 0; k < static_cast<int>(wave.size()); ++k) {
#ifdef _OPENMP
      Scratch& s = scratch[workers > 1 ? omp_get_thread_num() : 0];
#else
      Scratch& s = scratch[0];
#endif
      evals[k] = evaluate(wave[k], snapshot, s);
    }

    for (int k = 0; k < static_cast<int>(wave.size()); ++k) {
      ++stats.nodes;
      EvalOut& ev = evals[k];
      stats.lp_iterations += ev.lp_iterations;
      if (ev.infeasible) continue;
      const double tol = 1e-9 * std::max(1.0, std::abs(incumbent));
      if (std::isfinite(incumbent) && ev.bound >= incumbent - tol) continue;
      if (ev.is_leaf) {
        if (ev.leaf_feasible && ev.leaf_cost < incumbent) {
          incumbent = ev.leaf_cost;
          best = std::move(ev.leaf);
        }
        continue;
      }
      SearchNode child;
      child.parent = wave[k];
      child.var = ev.branch_var;
      child.depth = pool_[wave[k]].depth + 1;
      child.bound = ev.bound;
      child.value = 0;
      pool_.push_back(child);
      open.push_back(static_cast<std::int32_t>(pool_.size() - 1));
      child.value = 1;
      pool_.push_back(child);
      open.push_back(static_cast<std::int32_t>(pool_.size() - 1));
    }
  }

  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  double open_bound = lp::kInf;
  for (std::int32_t id : open) open_bound = std::min(open_bound, pool_[id].bound);

  if (!std::isfinite(incumbent)) {
    ClearingResult res = detail::empty_result(
        inst_, hit_limit ? SolveStatus::GapLimited : SolveStatus::Infeasible);
    res.stats = stats;
    res.stats.status = hit_limit ? SolveStatus::GapLimited : SolveStatus::Infeasible;
    res.stats.lower_bound = hit_limit ? std::min(open_bound, 0.0) : 0.0;
    res.stats.wall_seconds = stats.wall_seconds;
    return res;
  }

  stats.status = hit_limit ? SolveStatus::GapLimited : SolveStatus::Optimal;
  stats.lower_bound = hit_limit ? std::min(open_bound, incumbent) : incumbent;
  ClearingResult res = detail::assemble_result(inst_, best, stats);
  res.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace

ClearingResult solve_branch_and_bound(const ProblemInstance& inst,
                                      const SolveOptions& opts) {
  if (!formulation_has_linear_constraints(inst.formulation)) {
    throw std::invalid_argument(
        "branch and bound expects a linear-constraint formulation; use "
        "solve_rminlp for the exact problem");
  }
  BranchAndBound bnb(inst, opts, /*exact_joint=*/false);
  return bnb.run();
}

ClearingResult solve_rminlp(const ProblemInstance& inst,
                            const SolveOptions& opts) {
  if (inst.formulation != Formulation::RminlpC &&
      inst.formulation != Formulation::MinlpA) {
    throw std::invalid_argument("solve_rminlp expects formulation rminlp-c (or minlp-a)");
  }
  BranchAndBound bnb(inst, opts, /*exact_joint=*/true);
  return bnb.run();
}

ClearingResult solve(const ProblemInstance& inst, const SolveOptions& opts) {
  switch (inst.formulation) {
    case Formulation::MinlpA:
      if (inst.binaries() <= opts.enumeration_cap) {
        return solve_exact_enumeration(inst, opts);
      }
      return solve_rminlp(inst, opts);
    case Formulation::RminlpC:
      return solve_rminlp(inst, opts);
    case Formulation::MilpD:
    case Formulation::UniformE:
    case Formulation::CorrelatedF:
    case Formulation::SourceRestrictedG:
      return solve_branch_and_bound(inst, opts);
    case Formulation::UnawareBenchmark:
      return solve_unaware_benchmark(inst, opts);
  }
  throw std::invalid_argument("unknown formulation");
}

}  // namespace rap
