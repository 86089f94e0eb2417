#pragma once

// Tangent space at the identity of the symplectomorphism group of the flat
// torus: fields v = J grad f + h with a mean-zero stream function f and a
// constant (harmonic) part h. J(a, b) = (b, -a), so that
// omega(v, w) = v1 w2 - v2 w1 = g(v, J w) for omega = dx ^ dy.

#include <array>

#include "sympgeo/spectral.hpp"

namespace sympgeo {

using Vec2 = std::array<double, 2>;

/// Rotation by -90 degrees: J(a, b) = (b, -a).
constexpr Vec2 apply_J(Vec2 a) noexcept { return {a[1], -a[0]}; }

/// omega(a, b) = a1 b2 - a2 b1.
constexpr double symplectic_form(Vec2 a, Vec2 b) noexcept { return a[0] * b[1] - a[1] * b[0]; }

/// Ambient vector field (u1, u2) in spectral form, before projection.
struct VelocityField {
  SpectrumField u1;
  SpectrumField u2;

  explicit VelocityField(Grid2D grid) : u1(grid), u2(grid) {}
  VelocityField(SpectrumField a, SpectrumField b);

  const Grid2D& grid() const noexcept { return u1.grid(); }
};

class SymplecticVectorField {
 public:
  explicit SymplecticVectorField(Grid2D grid);
  /// The stream's mean and Nyquist modes are discarded on construction.
  SymplecticVectorField(SpectrumField stream, Vec2 harmonic = {0.0, 0.0});

  const Grid2D& grid() const noexcept { return stream_.grid(); }
  const SpectrumField& stream() const noexcept { return stream_; }
  const Vec2& harmonic() const noexcept { return harmonic_; }

  SymplecticVectorField& operator+=(const SymplecticVectorField& o);
  SymplecticVectorField& operator-=(const SymplecticVectorField& o);
  SymplecticVectorField& operator*=(double s);
  SymplecticVectorField& axpy(double s, const SymplecticVectorField& o);

 private:
  SpectrumField stream_;
  Vec2 harmonic_;
};

SymplecticVectorField operator+(SymplecticVectorField a, const SymplecticVectorField& b);
SymplecticVectorField operator-(SymplecticVectorField a, const SymplecticVectorField& b);
SymplecticVectorField operator*(double s, SymplecticVectorField a);

/// J grad f + h.
VelocityField to_velocity(const SymplecticVectorField& v);

struct Projection {
  SymplecticVectorField field;
  /// L2 norm (lattice-mean convention) of the discarded gradient part.
  double residual;
};

/// L2-orthogonal projection onto {J grad f + h}, reporting what was removed.
Projection project_P_with_residual(const VelocityField& u);
SymplecticVectorField project_P(const VelocityField& u);

/// int g((1 + Lap) u, v) dmu over the torus.
double h1_inner(const SymplecticVectorField& u, const SymplecticVectorField& v);
double h1_norm(const SymplecticVectorField& u);

/// Casimir density q = Lap (1 + Lap) f; transported by the geodesic flow.
SpectrumField casimir_q(const SymplecticVectorField& v);
/// Inverse of casimir_q on the mean-zero part: f = q / (|k|^2 (1 + |k|^2)).
SymplecticVectorField from_casimir(const SpectrumField& q, Vec2 harmonic = {0.0, 0.0});

/// (1 + Lap)^{-1} on a symplectic field: stream / (1 + |k|^2), harmonic unchanged.
SymplecticVectorField helmholtz_inverse(const SymplecticVectorField& v);

/// L2 pairing int g(a, b) dmu of two ambient fields.
double l2_inner(const VelocityField& a, const VelocityField& b);

/// Lattice values of the two components, in storage order.
struct VelocitySamples {
  PhysicalField v1;
  PhysicalField v2;
};
VelocitySamples to_physical(const VelocityField& u);
VelocityField to_spectral(const VelocitySamples& s);

}  // namespace sympgeo
