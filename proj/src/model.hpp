#pragma once

#include <Eigen/Dense>

namespace fplate {

// Orthotropic (or isotropic) plate material with transverse shear moduli and
// the Mindlin shear correction factor.
struct Material {
  double e1 = 0.0;
  double e2 = 0.0;
  double nu12 = 0.0;
  double g12 = 0.0;
  double g13 = 0.0;
  double g23 = 0.0;
  double rho = 1.0;
  double ks = 5.0 / 6.0;

  double nu21() const { return nu12 * e2 / e1; }
  void validate() const;
};

Material isotropic(double e, double nu, double rho = 1.0, double ks = 5.0 / 6.0);

// Constitutive matrices over the resultant layout
//   {Nxx, Nyy, Nxy, Mxx, Myy, Mxy}  (bending/membrane, block diagonal) and
//   {Qyz, Qxz}                      (transverse shear).
struct ConstitutiveMatrices {
  Eigen::Matrix<double, 6, 6> sb = Eigen::Matrix<double, 6, 6>::Zero();
  Eigen::Matrix2d ss = Eigen::Matrix2d::Zero();
  double a11 = 0, a12 = 0, a22 = 0, a44 = 0, a55 = 0, a66 = 0;
  double d11 = 0, d12 = 0, d22 = 0, d66 = 0;
};

ConstitutiveMatrices constitutive(const Material& m, double h);

struct InertiaCoeffs {
  double i0 = 0.0;  // rho h
  double i2 = 0.0;  // rho h^3 / 12
};

InertiaCoeffs inertia(const Material& m, double h);

}  // namespace fplate
