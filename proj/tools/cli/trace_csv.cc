#include "cli/trace_csv.h"

#include <charconv>
#include <cmath>

namespace sfm::cli {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string trace_header(std::size_t num_summands) {
  std::string h = "iter,sfmd_total";
  for (std::size_t i = 1; i <= num_summands; ++i) h += ",sfmd_" + std::to_string(i);
  h += ",sfmc_total,discrete_gap,best_value,epsilon,wall_ms";
  return h;
}

void write_trace_rows(std::ostream& out, const std::vector<TraceRecord>& trace,
                      std::string_view prefix, bool wall_time) {
  for (const auto& row : trace) {
    out << prefix << row.iter << ',' << row.sfmd_total;
    for (std::size_t c : row.sfmd_per_summand) out << ',' << c;
    out << ',' << row.sfmc_total << ',' << format_double(row.discrete_gap) << ','
        << format_double(row.best_value) << ',' << format_double(row.epsilon) << ','
        << (wall_time ? format_double(row.wall_ms) : "0") << '\n';
  }
}

}  // namespace sfm::cli
