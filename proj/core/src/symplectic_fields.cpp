#include "sympgeo/symplectic_fields.hpp"

#include <cmath>

#include "sympgeo/error.hpp"

namespace sympgeo {
namespace {

constexpr double kArea = kTwoPi * kTwoPi;

SpectrumField clean_stream(SpectrumField s) {
  const Grid2D& g = s.grid();
  const int n = g.n();
  auto c = s.data();
  for (int i = 0; i < n; ++i) {
    c[g.flat(n / 2, i)] = Complex{};
    c[g.flat(i, n / 2)] = Complex{};
  }
  c[0] = Complex{};
  return s;
}

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (!(a == b)) throw ConfigError("grid mismatch between symplectic fields");
}

}  // namespace

VelocityField::VelocityField(SpectrumField a, SpectrumField b) : u1(std::move(a)), u2(std::move(b)) {
  require_same_grid(u1.grid(), u2.grid());
}

SymplecticVectorField::SymplecticVectorField(Grid2D grid) : stream_(grid), harmonic_{0.0, 0.0} {}

SymplecticVectorField::SymplecticVectorField(SpectrumField stream, Vec2 harmonic)
    : stream_(clean_stream(std::move(stream))), harmonic_(harmonic) {}

SymplecticVectorField& SymplecticVectorField::operator+=(const SymplecticVectorField& o) {
  return axpy(1.0, o);
}

SymplecticVectorField& SymplecticVectorField::operator-=(const SymplecticVectorField& o) {
  return axpy(-1.0, o);
}

SymplecticVectorField& SymplecticVectorField::operator*=(double s) {
  stream_ *= s;
  harmonic_[0] *= s;
  harmonic_[1] *= s;
  return *this;
}

SymplecticVectorField& SymplecticVectorField::axpy(double s, const SymplecticVectorField& o) {
  stream_.axpy(s, o.stream_);
  harmonic_[0] += s * o.harmonic_[0];
  harmonic_[1] += s * o.harmonic_[1];
  return *this;
}

SymplecticVectorField operator+(SymplecticVectorField a, const SymplecticVectorField& b) { return a += b; }
SymplecticVectorField operator-(SymplecticVectorField a, const SymplecticVectorField& b) { return a -= b; }
SymplecticVectorField operator*(double s, SymplecticVectorField a) { return a *= s; }

VelocityField to_velocity(const SymplecticVectorField& v) {
  // J grad f = (d_y f, -d_x f).
  VelocityField u(apply_multiplier(v.stream(), Multiplier::kGrad2),
                  -1.0 * apply_multiplier(v.stream(), Multiplier::kGrad1));
  u.u1.set_coeff(0, 0, v.harmonic()[0]);
  u.u2.set_coeff(0, 0, v.harmonic()[1]);
  return u;
}

Projection project_P_with_residual(const VelocityField& u) {
  const Grid2D& g = u.grid();
  const int n = g.n();
  SpectrumField stream(g);
  double discarded = 0.0;
  auto a = u.u1.data();
  auto b = u.u2.data();
  auto f = stream.data();
  for (int i1 = 0; i1 < n; ++i1) {
    const int k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int k2 = g.wavenumber(i2);
      const std::size_t s = g.flat(i1, i2);
      if ((k1 == 0 && k2 == 0) || g.is_nyquist(k1) || g.is_nyquist(k2)) {
        if (!(k1 == 0 && k2 == 0)) discarded += std::norm(a[s]) + std::norm(b[s]);
        continue;
      }
      // Component along i J k = i (k2, -k1); the stream coefficient is the
      // amplitude along that direction divided by |k|^2.
      const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      const Complex fk = Complex(0.0, -1.0) * (static_cast<double>(k2) * a[s] - static_cast<double>(k1) * b[s]) / ksq;
      f[s] = fk;
      const Complex p1 = Complex(0.0, k2) * fk;
      const Complex p2 = Complex(0.0, -k1) * fk;
      discarded += std::norm(a[s] - p1) + std::norm(b[s] - p2);
    }
  }
  const Complex m1 = u.u1.coeff(0, 0);
  const Complex m2 = u.u2.coeff(0, 0);
  discarded += m1.imag() * m1.imag() + m2.imag() * m2.imag();
  return {SymplecticVectorField(std::move(stream), {m1.real(), m2.real()}), std::sqrt(discarded)};
}

SymplecticVectorField project_P(const VelocityField& u) { return project_P_with_residual(u).field; }

double h1_inner(const SymplecticVectorField& u, const SymplecticVectorField& v) {
  require_same_grid(u.grid(), v.grid());
  const Grid2D& g = u.grid();
  const int n = g.n();
  auto fu = u.stream().data();
  auto fv = v.stream().data();
  double sum = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    const int k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int k2 = g.wavenumber(i2);
      const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      const std::size_t s = g.flat(i1, i2);
      sum += (1.0 + ksq) * ksq * (fu[s] * std::conj(fv[s])).real();
    }
  }
  sum += u.harmonic()[0] * v.harmonic()[0] + u.harmonic()[1] * v.harmonic()[1];
  return kArea * sum;
}

double h1_norm(const SymplecticVectorField& u) { return std::sqrt(std::max(0.0, h1_inner(u, u))); }

SpectrumField casimir_q(const SymplecticVectorField& v) {
  SpectrumField lap = apply_multiplier(v.stream(), Multiplier::kLapPos);
  SpectrumField q = lap;
  q += apply_multiplier(lap, Multiplier::kLapPos);
  return q;
}

SymplecticVectorField from_casimir(const SpectrumField& q, Vec2 harmonic) {
  const Grid2D& g = q.grid();
  const int n = g.n();
  SpectrumField f(g);
  for (int i1 = 0; i1 < n; ++i1) {
    const int k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int k2 = g.wavenumber(i2);
      if (k1 == 0 && k2 == 0) continue;
      const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      const std::size_t s = g.flat(i1, i2);
      f.data()[s] = q.data()[s] / (ksq * (1.0 + ksq));
    }
  }
  return SymplecticVectorField(std::move(f), harmonic);
}

SymplecticVectorField helmholtz_inverse(const SymplecticVectorField& v) {
  return SymplecticVectorField(apply_multiplier(v.stream(), Multiplier::kHelmholtzInv), v.harmonic());
}

double l2_inner(const VelocityField& a, const VelocityField& b) {
  require_same_grid(a.grid(), b.grid());
  double sum = 0.0;
  auto a1 = a.u1.data();
  auto a2 = a.u2.data();
  auto b1 = b.u1.data();
  auto b2 = b.u2.data();
  for (std::size_t i = 0; i < a1.size(); ++i) {
    sum += (a1[i] * std::conj(b1[i])).real() + (a2[i] * std::conj(b2[i])).real();
  }
  return kArea * sum;
}

VelocitySamples to_physical(const VelocityField& u) { return {transform(u.u1), transform(u.u2)}; }

VelocityField to_spectral(const VelocitySamples& s) { return VelocityField(transform(s.v1), transform(s.v2)); }

}  // namespace sympgeo
