#ifndef DIVLAB_INEQUALITIES_HPP
#define DIVLAB_INEQUALITIES_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divlab/channels.hpp"
#include "divlab/measures.hpp"

// Time sweeps that evaluate every metric on a grid of t and check
//   P-I <= 2 NM1 + d        and        NM2 <= CP-I / 2 + 1.

namespace divlab::inequalities {

/// Slack on both verdicts; far below any margin of interest.
inline constexpr double kVerdictSlack = 1e-9;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FamilySpec {
  double gamma0_min = 0.01;
  double gamma0_max = 0.99;
  int n = 99;
};

struct SweepConfig {
  double gamma0 = 2.0;
  double lambda = 2.0;
  double tau = 0.01;
  double t_min = 0.0;
  double t_max = 5.0;
  double dt = 0.01;
  /// Free operations share the target's lambda.
  FamilySpec family;
  measures::OptConfig opt;
  std::string out_dir = ".";
  /// Worker cap for the parallel sweep; 0 uses every available thread.
  int threads = 0;

  /// Throws ConfigError with a one-line message on the first problem found.
  void validate() const;
  /// t_min, t_min + dt, ... up to t_max (inclusive within 1e-9 dt).
  std::vector<double> grid() const;
  channels::JCParams params() const;
  channels::FreeFamily make_family() const;
};

struct VerdictRecord {
  measures::MeasureRecord m;
  std::optional<double> lhs_p;  // P-I
  std::optional<double> rhs_p;  // 2 NM1 + d
  std::optional<bool> ok_p;
  std::optional<bool> ok_p_strict;  // P-I <= 2 NM1
  std::optional<double> lhs_cp;     // NM2
  std::optional<double> rhs_cp;     // CP-I / 2 + 1
  std::optional<bool> ok_cp;
};

/// Attaches both inequality verdicts; null metrics give null verdicts.
VerdictRecord judge(const measures::MeasureRecord& m);

/// Parallel sweep (OpenMP over grid points). Output is ordered by t and is
/// identical to sweep_serial for every thread count.
std::vector<VerdictRecord> sweep(const SweepConfig& cfg);

/// Single-threaded reference implementation of sweep.
std::vector<VerdictRecord> sweep_serial(const SweepConfig& cfg);

struct Tally {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t singular = 0;
  /// min over non-null records of rhs - lhs; nullopt when all are null.
  std::optional<double> worst_margin;
  std::optional<double> worst_t;
  /// t of every failing record, in input order.
  std::vector<double> failures;
};

struct Summary {
  std::size_t records = 0;
  Tally p;
  Tally p_strict;
  Tally cp;

  bool all_pass() const { return p.fail == 0 && cp.fail == 0; }
};

/// Throws std::invalid_argument on empty input.
Summary verify(std::span<const VerdictRecord> records);

}  // namespace divlab::inequalities

#endif  // DIVLAB_INEQUALITIES_HPP
