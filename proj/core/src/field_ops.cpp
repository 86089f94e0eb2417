#include "field_ops.hpp"

namespace sympgeo::detail {
namespace {

constexpr Multiplier kGrad[2] = {Multiplier::kGrad1, Multiplier::kGrad2};

PhysicalField physical_derivative(const SpectrumField& f, Multiplier d) {
  return transform(sympgeo::apply_multiplier(f, d));
}

// out += a * b
void fma_into(PhysicalField& out, const PhysicalField& a, const PhysicalField& b) {
  auto o = out.data();
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += x[i] * y[i];
}

// Accumulates N(a, b) into acc.
void accumulate_nonlinear(std::array<PhysicalField, 2>& acc, const VelocityPhysics& a, const VelocityPhysics& b) {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      fma_into(acc[i], a.value[j], b.grad_inertia[i][j]);
      fma_into(acc[i], b.lap[j], a.grad[j][i]);
    }
  }
}

VelocityField finish(const std::array<PhysicalField, 2>& acc, bool dealias) {
  return VelocityField(maybe_dealias(transform(acc[0]), dealias), maybe_dealias(transform(acc[1]), dealias));
}

}  // namespace

SpectrumField maybe_dealias(const SpectrumField& f, bool on) { return on ? dealias(f) : f; }

VelocityField apply_multiplier(const VelocityField& u, Multiplier symbol) {
  return VelocityField(sympgeo::apply_multiplier(u.u1, symbol), sympgeo::apply_multiplier(u.u2, symbol));
}

VelocityField scaled_sum(double a, const VelocityField& x, double b, const VelocityField& y) {
  VelocityField out = x;
  out.u1 *= a;
  out.u2 *= a;
  out.u1.axpy(b, y.u1);
  out.u2.axpy(b, y.u2);
  return out;
}

VelocityField advect(const VelocityField& a, const VelocityField& b, bool dealias) {
  const PhysicalField a1 = transform(maybe_dealias(a.u1, dealias));
  const PhysicalField a2 = transform(maybe_dealias(a.u2, dealias));
  auto component = [&](const SpectrumField& bi) {
    const SpectrumField bd = maybe_dealias(bi, dealias);
    PhysicalField out = a1 * physical_derivative(bd, Multiplier::kGrad1);
    out += a2 * physical_derivative(bd, Multiplier::kGrad2);
    return maybe_dealias(transform(out), dealias);
  };
  return VelocityField(component(b.u1), component(b.u2));
}

VelocityField transpose_grad(const VelocityField& a, const VelocityField& c, bool dealias) {
  const SpectrumField a1 = maybe_dealias(a.u1, dealias);
  const SpectrumField a2 = maybe_dealias(a.u2, dealias);
  const PhysicalField c1 = transform(maybe_dealias(c.u1, dealias));
  const PhysicalField c2 = transform(maybe_dealias(c.u2, dealias));
  auto component = [&](Multiplier d) {
    PhysicalField out = c1 * physical_derivative(a1, d);
    out += c2 * physical_derivative(a2, d);
    return maybe_dealias(transform(out), dealias);
  };
  return VelocityField(component(Multiplier::kGrad1), component(Multiplier::kGrad2));
}

VelocityPhysics::VelocityPhysics(const VelocityField& u, bool dealias)
    : value{PhysicalField(u.grid()), PhysicalField(u.grid())},
      grad{{{PhysicalField(u.grid()), PhysicalField(u.grid())}, {PhysicalField(u.grid()), PhysicalField(u.grid())}}},
      grad_inertia{{{PhysicalField(u.grid()), PhysicalField(u.grid())},
                    {PhysicalField(u.grid()), PhysicalField(u.grid())}}},
      lap{PhysicalField(u.grid()), PhysicalField(u.grid())} {
  const SpectrumField* comp[2] = {&u.u1, &u.u2};
  for (int i = 0; i < 2; ++i) {
    const SpectrumField ui = maybe_dealias(*comp[i], dealias);
    const SpectrumField lap_ui = sympgeo::apply_multiplier(ui, Multiplier::kLapPos);
    const SpectrumField inertia_ui = ui + lap_ui;
    value[i] = transform(ui);
    lap[i] = transform(lap_ui);
    for (int j = 0; j < 2; ++j) {
      grad[i][j] = physical_derivative(ui, kGrad[j]);
      grad_inertia[i][j] = physical_derivative(inertia_ui, kGrad[j]);
    }
  }
}

VelocityField h1_nonlinear(const VelocityPhysics& a, const VelocityPhysics& b, bool dealias) {
  std::array<PhysicalField, 2> acc{PhysicalField(a.value[0].grid()), PhysicalField(a.value[0].grid())};
  accumulate_nonlinear(acc, a, b);
  return finish(acc, dealias);
}

VelocityField h1_nonlinear(const VelocityField& a, const VelocityField& b, bool dealias) {
  return h1_nonlinear(VelocityPhysics(a, dealias), VelocityPhysics(b, dealias), dealias);
}

VelocityField h1_nonlinear_sym(const VelocityPhysics& a, const VelocityPhysics& b, bool dealias) {
  std::array<PhysicalField, 2> acc{PhysicalField(a.value[0].grid()), PhysicalField(a.value[0].grid())};
  accumulate_nonlinear(acc, a, b);
  accumulate_nonlinear(acc, b, a);
  return finish(acc, dealias);
}

}  // namespace sympgeo::detail
