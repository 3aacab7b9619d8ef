#pragma once

#include <iosfwd>
#include <string>

#include "pssc/simulation.hpp"

namespace pssc {

/// CSV with the fixed column order
///   k, x{i}_true, x{i}_est, <outputs>, <outputs>_ref, <outputs>_virt,
///   <inputs>, s{i}, xi{i}, status, solve_ms
/// Output values are the measured ones. Doubles use the shortest
/// representation that round-trips.
void write_trace_csv(std::ostream& os, const SimTrace& trace);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

} // namespace pssc
