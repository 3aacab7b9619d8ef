#pragma once

#include <optional>

#include "pssc/model.hpp"

namespace pssc {

/// Engine operating condition the surrogate is evaluated at.
struct RcciOperatingPoint {
  double PR = 20.0;     ///< premixed ratio, %
  double T_in = 333.1;  ///< intake temperature, K
  double P_in = 95.0;   ///< intake pressure, kPa
  double N_e = 1000.0;  ///< engine speed, RPM
};

struct RcciState {
  double CA50 = 0.0;  ///< CAD aTDC
  double T_soc = 0.0; ///< K
  double P_soc = 0.0; ///< kPa
  double IMEP = 0.0;  ///< kPa

  Vector to_vector() const;
  static RcciState from_vector(const Vector& v);
};

struct RcciInput {
  double SOI = 0.0; ///< CAD aTDC (negative = before TDC)
  double FQ = 0.0;  ///< mg/cycle

  Vector to_vector() const;
  static RcciInput from_vector(const Vector& v);
};

struct RcciOutputs {
  double CA50 = 0.0;
  double IMEP = 0.0;
};

/// Linearization point of the surrogate and the synthetic linear model in
/// deviation variables (dx+ = A dx + B du, dy = C dx).
///
/// The matrices are synthetic: stable, minimum phase and of relative degree
/// one in both channels. Advancing SOI advances CA50; extra fuel raises IMEP
/// and retards CA50.
struct RcciLinearization {
  RcciState x_op;
  RcciInput u_op;
  LtiModel model;
};

RcciLinearization rcci_linearization(const RcciOperatingPoint& op = {});

/// Per-state validity box of the surrogate; leaving it raises OutOfEnvelope.
struct RcciEnvelope {
  Vector lower;
  Vector upper;
};

RcciEnvelope rcci_envelope();

struct RcciStepResult {
  RcciState state;     ///< state at the next cycle
  RcciOutputs outputs; ///< measured outputs of the next state, noise included
};

/// One engine cycle of the nonlinear surrogate.
///
/// Around the linearization point the map is the linear model plus terms
/// with vanishing Jacobian: tanh-shaped input saturation and a CA50-IMEP
/// coupling. `noise` (CA50, IMEP) is added to the reported outputs only.
RcciStepResult surrogate_rcci_step(const RcciState& state, const RcciInput& input,
                                   const RcciOperatingPoint& op = {},
                                   const std::optional<Vector>& noise = std::nullopt);

} // namespace pssc
