#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "msgp/problem.hpp"
#include "msgp/regularizer.hpp"
#include "msgp/rng.hpp"
#include "msgp/schedules.hpp"

namespace msgp {

struct SolverConfig {
  double p = 1.0;
  double c = 1.0;  // penalty multiplier, in [0, 1]
  RiskRegularizer reg;
  StepsizeSchedule alpha, beta, gamma;  // gamma ignored when p == 1
  Vec x0;
  double y0 = 0.0;
  double z0 = 1.0;
  int horizon = 1000;
  double z_floor = 1e-12;
  bool smoothing = false;
  int record_every = 1;
};

struct SolverState {
  Vec x;
  double y = 0.0;
  double z = 1.0;
  int n = 0;
  // Recent x iterates covering the smoothing window (front index tracked so
  // old iterates can be dropped as the window advances).
  std::deque<Vec> recent_x;
  int recent_front = 0;
  RngStream w1, w2;

  SolverState(Vec x_init, double y_init, double z_init,
              std::uint64_t master_seed)
      : x(std::move(x_init)),
        y(y_init),
        z(z_init),
        w1(master_seed, kStreamW1),
        w2(master_seed, kStreamW2) {
    recent_x.push_back(x);
  }
};

struct RunRecord {
  struct Row {
    int n;
    Vec x;
    double y, z;
    Vec xs;  // smoothed iterate (equals x when smoothing is off or n == 0)
  };
  std::vector<Row> rows;
  int iterations = 0;
  double wall_seconds = 0.0;
  int clamp_events = 0;  // times z hit z_floor inside the correction term
  std::string abort_reason;  // empty on clean completion
};

struct BoundReport {
  bool pass = true;
  int violations = 0;
  int first_violation_n = -1;
  std::string detail;
};

/// One full iteration of the three parallel SA levels. The z-update and the
/// correction term both read the pre-update y (and the correction the
/// pre-update z): all levels advance simultaneously within an iteration.
/// Throws std::runtime_error naming the offending quantity and iteration if
/// any intermediate value is non-finite.
void step(SolverState& state, const SolverConfig& config,
          const Problem& problem, int* clamp_events = nullptr);

/// Validates config against problem (ranges, feasibility of x0, and for
/// p > 1 the bounded-cost condition and initial-value rules). Throws
/// std::invalid_argument describing the first failure.
void validate_config(const SolverConfig& config, const Problem& problem);

RunRecord run(const SolverConfig& config, const Problem& problem,
              std::uint64_t master_seed);

/// Mean of the iterates x^{n - ceil(n/2)} .. x^n divided by ceil(n/2) — the
/// window has ceil(n/2)+1 terms but the divisor is ceil(n/2), reproducing the
/// defining display literally (a constant sequence does NOT average to
/// itself). Requires n >= 1.
Vec smoothed_iterate(const SolverState& state);

/// Checks every recorded y against [m_l, m_h] and z against [eps^p, E^p]
/// with eps = R(m_l - m_h), E = R(m_h - m_l). Trivially empty for p == 1.
BoundReport monitor_boundedness(const RunRecord& record, const Problem& problem,
                                const SolverConfig& config);

/// CSV with header n,x_0..x_{N-1},y,z,xs_0..xs_{N-1}; round-trip decimal
/// formatting for every floating-point field.
void write_csv(const RunRecord& record, std::size_t dimension, std::ostream& out);
RunRecord read_csv(std::istream& in, std::size_t dimension);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace msgp
