#include "pssc/sliding.hpp"

#include "pssc/error.hpp"

namespace pssc {

namespace {

void require_size(const Vector& v, Index n, const char* what)
{
  if (v.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has size " + std::to_string(v.size())
                                                  + ", expected " + std::to_string(n));
  }
}

} // namespace

Vector sliding_value(const SlidingDesign& design, const Vector& x, const Vector& href)
{
  require_size(x, design.states(), "state");
  require_size(href, design.outputs(), "reference window");
  return design.G * x - href;
}

Vector second_order_value(const SlidingDesign& design, const Vector& s_next, const Vector& s_now)
{
  require_size(s_next, design.outputs(), "s(k+1)");
  require_size(s_now, design.outputs(), "s(k)");
  return s_next + design.beta * s_now;
}

Vector dsmc_control(const SlidingDesign& design, const LtiModel& model, const Vector& x,
                    const Vector& href_now, const Vector& href_next)
{
  require_size(x, design.states(), "state");
  require_size(href_now, design.outputs(), "H(k)");
  require_size(href_next, design.outputs(), "H(k+1)");
  const Matrix GB = design.G * model.B();
  const Vector rhs = (design.G * model.A() + design.beta * design.G) * x
      - (href_next + design.beta * href_now);
  return -GB.fullPivLu().solve(rhs);
}

Vector terminal_control(const SlidingDesign& design, const Vector& x, const Vector& yref)
{
  require_size(x, design.states(), "state");
  require_size(yref, design.outputs(), "reference");
  return design.K * x + design.L * yref;
}

Vector saturate(const Vector& u, const Polyhedron& input_set)
{
  require_size(u, input_set.dim(), "input");
  const auto box = input_set.box_bounds();
  if (!box) {
    throw Error(ErrorCode::NonBoxInputSet, "saturation needs an axis-aligned input box");
  }
  return u.cwiseMax(box->first).cwiseMin(box->second);
}

} // namespace pssc
