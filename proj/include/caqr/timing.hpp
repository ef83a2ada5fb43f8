#pragma once

#include "caqr/circuit.hpp"

namespace caqr {

/// Measure + conditional-X reset, the optimized idiom (dt).
inline constexpr double kOptimizedResetDt = 16467.0;
/// Built-in measure + reset (dt).
inline constexpr double kBuiltinResetDt = 33179.0;
inline constexpr double kDefaultSingleQubitDt = 160.0;
inline constexpr double kDefaultTwoQubitDt = 3500.0;
/// Wall-clock length of one dt, in nanoseconds.
inline constexpr double kNanosecondsPerDt = 0.22;

/// Uniform gate durations for logical (unmapped) circuits.
///
/// A MEASURE costs `reset` because in this IR a measurement is either a final
/// readout or the first half of a measure + conditional-X reset; the
/// CX_CLASSICAL that completes such a pair then costs nothing, so the pair as
/// a whole costs exactly `reset`.
struct DurationModel {
  double single_qubit = kDefaultSingleQubitDt;
  double two_qubit = kDefaultTwoQubitDt;
  double reset = kOptimizedResetDt;
  double swap_factor = 3.0;

  /// Every instruction (and every reset pair) weighs one layer.
  static DurationModel unit() { return {1.0, 1.0, 1.0, 1.0}; }
  static DurationModel with_builtin_reset() {
    DurationModel m;
    m.reset = kBuiltinResetDt;
    return m;
  }
};

/// Duration of one instruction; `reset_tail` marks a CX_CLASSICAL that
/// completes a measure + conditional-X pair.
double instruction_weight(const Instruction& inst, bool reset_tail,
                          const DurationModel& model);

}  // namespace caqr
