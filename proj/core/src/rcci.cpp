#include "pssc/rcci.hpp"

#include <cmath>
#include <sstream>

#include "pssc/error.hpp"

namespace pssc {

namespace {

// input deviation at which the tanh saturation bends noticeably
constexpr double kSoiSpan = 100.0;
constexpr double kFqSpan = 100.0;
// CA50 retard per (CAD x mg) and IMEP loss per CAD^2 away from the operating CA50
constexpr double kCa50FuelCoupling = 0.002;
constexpr double kImepPhasingLoss = 0.1;

Matrix rcci_A()
{
  Matrix A(4, 4);
  A << 0.30, -0.010, -0.002, 0.0,
       -2.0, 0.40, 0.0, 0.02,
       0.0, 0.50, 0.20, 0.01,
       -5.0, 0.0, 0.0, 0.25;
  return A;
}

Matrix rcci_B()
{
  Matrix B(4, 2);
  B << 0.15, 0.20,
       0.5, 3.0,
       0.2, 8.0,
       -1.0, 25.0;
  return B;
}

Matrix rcci_C()
{
  Matrix C = Matrix::Zero(2, 4);
  C(0, 0) = 1.0;
  C(1, 3) = 1.0;
  return C;
}

} // namespace

Vector RcciState::to_vector() const
{
  Vector v(4);
  v << CA50, T_soc, P_soc, IMEP;
  return v;
}

RcciState RcciState::from_vector(const Vector& v)
{
  if (v.size() != 4) {
    throw Error(ErrorCode::DimensionMismatch, "RCCI state has 4 components");
  }
  return {v(0), v(1), v(2), v(3)};
}

Vector RcciInput::to_vector() const
{
  Vector v(2);
  v << SOI, FQ;
  return v;
}

RcciInput RcciInput::from_vector(const Vector& v)
{
  if (v.size() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "RCCI input has 2 components");
  }
  return {v(0), v(1)};
}

RcciLinearization rcci_linearization(const RcciOperatingPoint& op)
{
  if (!(op.PR > 0.0 && op.T_in > 0.0 && op.P_in > 0.0 && op.N_e > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "operating point quantities must be positive");
  }
  // charge temperature and pressure follow the intake conditions; the
  // nominal point is PR 20, 333.1 K, 95 kPa, 1000 RPM
  RcciState x;
  x.CA50 = 8.0 - 0.05 * (op.PR - 20.0);
  x.T_soc = 900.0 * op.T_in / 333.1;
  x.P_soc = 3000.0 * op.P_in / 95.0;
  x.IMEP = 550.0 * op.P_in / 95.0;
  const RcciInput u{-55.0, 24.0};
  return {x, u, LtiModel(rcci_A(), rcci_B(), rcci_C())};
}

RcciEnvelope rcci_envelope()
{
  RcciEnvelope env;
  env.lower = Vector(4);
  env.upper = Vector(4);
  env.lower << -15.0, 500.0, 1000.0, 1.0;
  env.upper << 35.0, 1400.0, 8000.0, 1500.0;
  return env;
}

RcciStepResult surrogate_rcci_step(const RcciState& state, const RcciInput& input, const RcciOperatingPoint& op,
                                   const std::optional<Vector>& noise)
{
  if (!std::isfinite(input.SOI) || !std::isfinite(input.FQ) || input.FQ < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "RCCI input must be finite with nonnegative fuel");
  }
  const RcciLinearization lin = rcci_linearization(op);
  const Vector dx = state.to_vector() - lin.x_op.to_vector();
  const double dsoi = input.SOI - lin.u_op.SOI;
  const double dfq = input.FQ - lin.u_op.FQ;
  Vector du(2);
  du << kSoiSpan * std::tanh(dsoi / kSoiSpan), kFqSpan * std::tanh(dfq / kFqSpan);

  Vector dx_next = lin.model.A() * dx + lin.model.B() * du;
  dx_next(0) += kCa50FuelCoupling * dx(0) * du(1);
  dx_next(3) -= kImepPhasingLoss * dx(0) * dx(0);

  const Vector x_next = lin.x_op.to_vector() + dx_next;
  const RcciEnvelope env = rcci_envelope();
  static constexpr const char* names[] = {"CA50", "T_soc", "P_soc", "IMEP"};
  for (Index i = 0; i < 4; ++i) {
    if (!(x_next(i) >= env.lower(i) && x_next(i) <= env.upper(i))) {
      std::ostringstream msg;
      msg << names[i] << " = " << x_next(i) << " left the surrogate validity range [" << env.lower(i) << ", "
          << env.upper(i) << "]";
      throw Error(ErrorCode::OutOfEnvelope, msg.str());
    }
  }

  RcciStepResult out;
  out.state = RcciState::from_vector(x_next);
  out.outputs = {out.state.CA50, out.state.IMEP};
  if (noise) {
    if (noise->size() != 2) {
      throw Error(ErrorCode::DimensionMismatch, "output noise draw has 2 components");
    }
    out.outputs.CA50 += (*noise)(0);
    out.outputs.IMEP += (*noise)(1);
  }
  return out;
}

} // namespace pssc
