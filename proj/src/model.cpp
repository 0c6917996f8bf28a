#include "model.hpp"

#include <stdexcept>

namespace fplate {

void Material::validate() const {
  if (!(e1 > 0.0) || !(e2 > 0.0) || !(g12 > 0.0) || !(g13 > 0.0) || !(g23 > 0.0))
    throw std::invalid_argument("Material: all moduli must be positive");
  if (!(rho > 0.0)) throw std::invalid_argument("Material: rho must be positive");
  if (!(ks > 0.0 && ks <= 1.0))
    throw std::invalid_argument("Material: shear correction factor must be in (0,1]");
  if (!(1.0 - nu12 * nu21() > 0.0))
    throw std::invalid_argument("Material: 1 - nu12*nu21 must be positive");
}

Material isotropic(double e, double nu, double rho, double ks) {
  if (!(e > 0.0)) throw std::invalid_argument("isotropic: E must be positive");
  if (!(nu >= 0.0 && nu < 0.5))
    throw std::invalid_argument("isotropic: nu must be in [0, 0.5)");
  Material m;
  m.e1 = m.e2 = e;
  m.nu12 = nu;
  m.g12 = m.g13 = m.g23 = e / (2.0 * (1.0 + nu));
  m.rho = rho;
  m.ks = ks;
  m.validate();
  return m;
}

ConstitutiveMatrices constitutive(const Material& m, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("constitutive: h must be positive");
  m.validate();
  const double det = 1.0 - m.nu12 * m.nu21();
  ConstitutiveMatrices c;
  c.a11 = m.e1 * h / det;
  c.a12 = m.nu12 * m.e2 * h / det;
  c.a22 = m.e2 * h / det;
  c.a44 = m.g23 * h;
  c.a55 = m.g13 * h;
  c.a66 = m.g12 * h;
  const double t = h * h / 12.0;
  c.d11 = c.a11 * t;
  c.d12 = c.a12 * t;
  c.d22 = c.a22 * t;
  c.d66 = c.a66 * t;

  c.sb(0, 0) = c.a11;
  c.sb(0, 1) = c.sb(1, 0) = c.a12;
  c.sb(1, 1) = c.a22;
  c.sb(2, 2) = c.a66;
  c.sb(3, 3) = c.d11;
  c.sb(3, 4) = c.sb(4, 3) = c.d12;
  c.sb(4, 4) = c.d22;
  c.sb(5, 5) = c.d66;
  c.ss(0, 0) = m.ks * c.a44;
  c.ss(1, 1) = m.ks * c.a55;
  return c;
}

InertiaCoeffs inertia(const Material& m, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("inertia: h must be positive");
  return {m.rho * h, m.rho * h * h * h / 12.0};
}

}  // namespace fplate
