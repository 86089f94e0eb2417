#pragma once

// Lie-theoretic operators on the symplectic fields of the flat torus.
//
// Sign conventions (checked by the finite-difference tests):
//   ad_v u = J grad omega(v, u) = -[v, u], with [a, b] = (a.grad) b - (b.grad) a,
//   d/dt Ad_{eta(t)^{-1}} u = -Ad_{eta(t)^{-1}} ad_{v(t)} u,
//   <ad*_v w, x>_1 = <w, ad_v x>_1  =>  ad*_v w = -(1 + Lap)^{-1} P(Lap (1 + Lap) g * J v).

#include <Eigen/Core>

#include "sympgeo/flow_map.hpp"
#include "sympgeo/galerkin.hpp"
#include "sympgeo/symplectic_fields.hpp"

namespace sympgeo {

/// Algebra adjoint ad_v u = J grad omega(v, u).
SymplecticVectorField ad(const SymplecticVectorField& v, const SymplecticVectorField& u);

/// Vector-field Lie bracket (a.grad) b - (b.grad) a of the ambient fields.
VelocityField lie_bracket(const VelocityField& a, const VelocityField& b);

/// H1 algebra coadjoint ad*_v w.
SymplecticVectorField ad_star(const SymplecticVectorField& v, const SymplecticVectorField& w);

/// K_v w = ad*_w v; linear in w.
SymplecticVectorField K_op(const SymplecticVectorField& v, const SymplecticVectorField& w);

enum class Direction { kForward, kInverse };

/// Group adjoint on the lattice.
///   kForward:  Ad_eta w        = (D eta . w) o eta^{-1}   (Newton inversion of eta)
///   kInverse:  Ad_{eta^{-1}} w = (D eta)^{-1} . (w o eta)
VelocityField Ad_group(const FlowMapSampler& eta, const SymplecticVectorField& w, Direction direction);

/// Ad_group followed by project_P; the discarded part is reported.
Projection Ad_symplectic(const FlowMapSampler& eta, const SymplecticVectorField& w, Direction direction);

/// H1 group coadjoint at full resolution.
///   kForward:  Ad*_eta w        = (1 + Lap)^{-1} P[ D eta^T ((1 + Lap) w) o eta ]
///   kInverse:  Ad*_{eta^{-1}} w = (1 + Lap)^{-1} P[ (D eta)^{-T} o eta^{-1} ((1 + Lap) w) o eta^{-1} ]
/// Both rely on eta being area preserving.
SymplecticVectorField coAd_group(const FlowMapSampler& eta, const SymplecticVectorField& w, Direction direction);

/// Galerkin matrix of Ad (in the given direction) followed by P, in basis coordinates.
Eigen::MatrixXd Ad_matrix(const FlowMapSampler& eta, const GalerkinBasis& basis, Direction direction);

/// H1 adjoint G^{-1} A^T G of Ad_matrix: the truncated Ad*_eta (kForward) or
/// Ad*_{eta^{-1}} (kInverse).
Eigen::MatrixXd Ad_star_matrix(const FlowMapSampler& eta, const GalerkinBasis& basis,
                               Direction direction = Direction::kForward);

}  // namespace sympgeo
