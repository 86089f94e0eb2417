#pragma once

// Pointwise vector-field products shared by the operator and solver modules.
// With dealiasing on, inputs and outputs are truncated by the 2/3 rule.

#include <array>

#include "sympgeo/symplectic_fields.hpp"

namespace sympgeo::detail {

VelocityField apply_multiplier(const VelocityField& u, Multiplier symbol);
VelocityField scaled_sum(double a, const VelocityField& x, double b, const VelocityField& y);

SpectrumField maybe_dealias(const SpectrumField& f, bool on);

/// (a . grad) b
VelocityField advect(const VelocityField& a, const VelocityField& b, bool dealias = true);

/// (grad a)^T c, i.e. component i is sum_j c_j d_i a_j.
VelocityField transpose_grad(const VelocityField& a, const VelocityField& c, bool dealias = true);

/// Lattice samples of a velocity u and the derivatives entering the H1
/// nonlinearity: grad u, grad (1 + Lap) u and Lap u. grad[i][j] = d_j u_i.
struct VelocityPhysics {
  std::array<PhysicalField, 2> value;
  std::array<std::array<PhysicalField, 2>, 2> grad;
  std::array<std::array<PhysicalField, 2>, 2> grad_inertia;
  std::array<PhysicalField, 2> lap;

  VelocityPhysics(const VelocityField& u, bool dealias);
};

/// N(a, b) = (a . grad)(1 + Lap) b + (grad a)^T Lap b.
VelocityField h1_nonlinear(const VelocityPhysics& a, const VelocityPhysics& b, bool dealias = true);
VelocityField h1_nonlinear(const VelocityField& a, const VelocityField& b, bool dealias = true);

/// N(a, b) + N(b, a), the polarization used by the linearized equation.
VelocityField h1_nonlinear_sym(const VelocityPhysics& a, const VelocityPhysics& b, bool dealias = true);

}  // namespace sympgeo::detail
