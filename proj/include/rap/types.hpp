#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rap {

// Relative tolerance for equality checks on money/volume quantities.
inline constexpr double kRelTol = 1e-9;
// Absolute slack for reliability comparisons carried out in log space.
inline constexpr double kLogSlack = 1e-9;
// Relative tolerance for recomputed block reliabilities.
inline constexpr double kReliabilityRelTol = 1e-12;

/// One probabilistic reserve offer. Reliability is the probability that the
/// offered capacity is deliverable when activated; it must lie in [0,1).
/// Reliability exactly 1 is rejected at ingestion.
struct Offer {
  std::string id;
  double volume_mw = 0.0;
  double reliability = 0.0;
  double price_per_mw = 0.0;
  std::string source = "unspecified";
};

/// Validated, immutable offer book with unique ids.
class OfferBook {
 public:
  OfferBook() = default;
  explicit OfferBook(std::vector<Offer> offers);

  const std::vector<Offer>& offers() const { return offers_; }
  const Offer& at(std::size_t idx) const { return offers_[idx]; }
  std::size_t size() const { return offers_.size(); }
  bool empty() const { return offers_.empty(); }
  std::optional<std::size_t> index_of(std::string_view id) const;
  double max_volume() const { return max_volume_; }

 private:
  std::vector<Offer> offers_;
  std::unordered_map<std::string, std::size_t> index_;
  double max_volume_ = 0.0;
};

/// System operator target: required volume Q at joint reliability Phi, split
/// into block_count procurement blocks of at least min_block_volume MW each.
struct Requirement {
  double target_volume_mw = 0.0;       // Q
  double target_reliability = 0.0;     // Phi, in (0,1)
  double min_block_volume_mw = 0.0;    // zero disables the constraint
  int block_count = 1;
  std::optional<double> big_m;         // defaults to max offered volume

  // Throws std::invalid_argument on violation. target_volume_mw == 0 is
  // accepted as the degenerate empty requirement.
  void validate() const;
};

/// Number of blocks from the minimum bid size: ceil(Q / min_bid).
int derive_block_count(double target_volume_mw, double min_bid_size_mw);

struct BlockMember {
  std::string offer_id;
  bool accepted = true;
  double quantity_mw = 0.0;
};

/// One procurement block: any single accepted member delivering its quantity
/// covers the block volume.
struct BlockAssignment {
  int block_id = 0;  // 1-based
  std::vector<BlockMember> members;
  double volume_mw = 0.0;     // q_b
  double reliability = 0.0;   // phi_b = 1 - prod(1 - R_i)
};

enum class SolveStatus { Optimal, GapLimited, Infeasible };

std::string_view solve_status_name(SolveStatus s);

struct SolverStats {
  long long nodes = 0;
  long long lp_iterations = 0;
  double lower_bound = 0.0;
  SolveStatus status = SolveStatus::Optimal;
  int workers = 1;
  // Wall time of the solve phase only. Deliberately excluded from the
  // canonical JSON result so equal configurations serialize identically.
  double wall_seconds = 0.0;
};

struct ClearingResult {
  std::vector<BlockAssignment> assignments;
  double total_cost = 0.0;              // sum over blocks and offers of q*P
  double total_volume_mw = 0.0;         // sum of all accepted quantities
  double achieved_reliability = 1.0;    // product of block reliabilities
  int formulation = 0;                  // rap::Formulation, kept as int here
  SolverStats stats;
  // Set by the reliability-unaware benchmark when the cleared portfolio
  // misses the target; cost and volume are still reported.
  bool reliability_shortfall = false;
};

struct PortfolioMetrics {
  double total_cost = 0.0;
  double total_volume_mw = 0.0;
  double achieved_reliability = 1.0;
};

/// Recomputes cost, volume and joint reliability from raw assignments.
/// Throws std::invalid_argument when an assignment violates the block
/// invariants (accepted quantity below block volume, nonzero quantity on a
/// rejected member, misstated block reliability, unknown offer id).
PortfolioMetrics portfolio_metrics(const OfferBook& book,
                                   const std::vector<BlockAssignment>& assignments);

}  // namespace rap
