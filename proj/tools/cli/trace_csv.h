#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sfm/solvers.h"

namespace sfm::cli {

// Shortest round-trip decimal form; "inf" for infinities.
std::string format_double(double v);

// iter,sfmd_total,sfmd_1..sfmd_r,sfmc_total,discrete_gap,best_value,epsilon,wall_ms
std::string trace_header(std::size_t num_summands);

// One line per record, each prefixed with `prefix` verbatim. wall_ms is
// written as 0 unless `wall_time` is set, so the file is reproducible.
void write_trace_rows(std::ostream& out, const std::vector<TraceRecord>& trace,
                      std::string_view prefix, bool wall_time);

}  // namespace sfm::cli
