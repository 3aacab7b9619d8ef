#include "pssc/trace_io.hpp"

#include <charconv>
#include <ostream>

namespace pssc {

std::string format_double(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void put_vector(std::ostream& os, const Vector& v)
{
  for (Index i = 0; i < v.size(); ++i) {
    os << ',' << format_double(v(i));
  }
}

std::string name_or(const std::vector<std::string>& names, Index i, const char* prefix)
{
  if (i < static_cast<Index>(names.size())) {
    return names[static_cast<std::size_t>(i)];
  }
  return prefix + std::to_string(i + 1);
}

} // namespace

void write_trace_csv(std::ostream& os, const SimTrace& trace)
{
  if (trace.records.empty()) {
    return;
  }
  const StepRecord& first = trace.records.front();
  const Index n = first.x_true.size();
  const Index m = first.y.size();
  const Index p = first.u.size();

  os << 'k';
  for (Index i = 0; i < n; ++i) {
    os << ",x" << i + 1 << "_true";
  }
  for (Index i = 0; i < n; ++i) {
    os << ",x" << i + 1 << "_est";
  }
  for (const char* suffix : {"", "_ref", "_virt"}) {
    for (Index i = 0; i < m; ++i) {
      os << ',' << name_or(trace.output_names, i, "y") << suffix;
    }
  }
  for (Index i = 0; i < p; ++i) {
    os << ',' << name_or(trace.input_names, i, "u");
  }
  for (Index i = 0; i < m; ++i) {
    os << ",s" << i + 1;
  }
  for (Index i = 0; i < m; ++i) {
    os << ",xi" << i + 1;
  }
  os << ",status,solve_ms\n";

  for (const StepRecord& r : trace.records) {
    os << r.k;
    put_vector(os, r.x_true);
    put_vector(os, r.x_hat);
    put_vector(os, r.y);
    put_vector(os, r.y_ref);
    put_vector(os, r.y_virtual);
    put_vector(os, r.u);
    put_vector(os, r.s);
    put_vector(os, r.xi);
    os << ',' << to_string(r.status) << ',' << format_double(r.solve_ms) << '\n';
  }
}

} // namespace pssc
