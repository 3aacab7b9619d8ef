#pragma once

#include "pssc/model.hpp"

namespace pssc {

struct SlidingState {
  Vector s;
  Vector xi;
};

/// s = G x - H(k)
Vector sliding_value(const SlidingDesign& design, const Vector& x, const Vector& href);

/// xi = s(k+1) + beta s(k)
Vector second_order_value(const SlidingDesign& design, const Vector& s_next, const Vector& s_now);

/// Equivalent control that enforces xi(k) = 0:
/// u = -(GB)^-1 ((GA + beta G) x - (H(k+1) + beta H(k))).
Vector dsmc_control(const SlidingDesign& design, const LtiModel& model, const Vector& x,
                    const Vector& href_now, const Vector& href_next);

/// Terminal law u = K x + L yref.
Vector terminal_control(const SlidingDesign& design, const Vector& x, const Vector& yref);

/// Componentwise clip to a box-shaped input set; throws NonBoxInputSet otherwise.
Vector saturate(const Vector& u, const Polyhedron& input_set);

} // namespace pssc
