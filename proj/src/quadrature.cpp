#include "quadrature.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fplate {

namespace {

QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n, seeded with the Chebyshev-like estimate.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = (n == 1) ? x : p1;
      double pnm1 = (n == 1) ? 1.0 : p0;
      pp = n * (x * pn - pnm1) / (x * x - 1.0);
      double dx = pn / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.points[i] = -x;
    rule.weights[i] = w;
    rule.points[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_rule: n must be >= 1");
  static std::map<int, QuadratureRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

QuadratureRule gauss_jacobi_rule(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi_rule: n must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("gauss_jacobi_rule: alpha must be in (0,1)");
  // Weight (1-x)^a (1+x)^b on [-1,1] with a = 0, b = -alpha, then map
  // u = (1+x)/2 onto [0,1].  Golub-Welsch on the Jacobi recurrence.
  const double a = 0.0, b = -alpha;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double denom = (2.0 * k + a + b) * (2.0 * k + a + b + 2.0);
    double diag = (k == 0) ? (b - a) / (a + b + 2.0)
                           : (b * b - a * a) / denom;
    J(k, k) = diag;
    if (k >= 1) {
      double num = 4.0 * k * (k + a) * (k + b) * (k + a + b);
      double den = std::pow(2.0 * k + a + b, 2) * (2.0 * k + a + b + 1.0) *
                   (2.0 * k + a + b - 1.0);
      double beta = num / den;
      double off = std::sqrt(beta);
      J(k, k - 1) = off;
      J(k - 1, k) = off;
    }
  }
  double mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) *
               std::tgamma(b + 1.0) / std::tgamma(a + b + 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  const double scale = std::pow(2.0, alpha - 1.0);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    rule.points[i] = 0.5 * (1.0 + x);
    rule.weights[i] = scale * mu0 * v0 * v0;
  }
  return rule;
}

std::vector<double> singular_moment_integrate(int poly_degree, double alpha,
                                              double a, double b,
                                              bool singular_at_a) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("singular_moment_integrate: alpha must be in (0,1)");
  if (!(a < b))
    throw std::invalid_argument("singular_moment_integrate: need a < b");
  if (poly_degree < 0)
    throw std::invalid_argument("singular_moment_integrate: negative degree");

  // Substitute u = |s - x_sing|; s = x_sing +/- u with u in (0, b-a).
  const double xs = singular_at_a ? a : b;
  const double sign = singular_at_a ? 1.0 : -1.0;
  const double c = b - a;
  std::vector<double> pow_int(poly_degree + 1);
  for (int j = 0; j <= poly_degree; ++j)
    pow_int[j] = std::pow(c, j + 1.0 - alpha) / (j + 1.0 - alpha);

  std::vector<double> moments(poly_degree + 1, 0.0);
  for (int k = 0; k <= poly_degree; ++k) {
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      // C(k, j) * xs^(k-j) * sign^j * integral u^(j-alpha)
      moments[k] += binom * std::pow(xs, double(k - j)) *
                    (j % 2 == 0 ? 1.0 : sign) * pow_int[j];
      binom = binom * double(k - j) / double(j + 1);
    }
  }
  return moments;
}

void power_tau_moments(double alpha, double ua, double ub, int max_degree,
                       double* out) {
  // tau = (u - ua)/h, h = ub - ua.  Binomial expansion of (u - ua)^m.
  const double h = ub - ua;
  double pj[8];
  for (int j = 0; j <= max_degree; ++j) {
    double e = j + 1.0 - alpha;
    pj[j] = (std::pow(ub, e) - (ua > 0.0 ? std::pow(ua, e) : 0.0)) / e;
  }
  double hm = 1.0;
  for (int m = 0; m <= max_degree; ++m) {
    double acc = 0.0;
    double binom = 1.0;
    for (int j = m; j >= 0; --j) {
      // term j: C(m, j) * (-ua)^(m-j) * pj[j]
      acc += binom * std::pow(-ua, double(m - j)) * pj[j];
      binom = binom * double(j) / double(m - j + 1);
    }
    out[m] = acc / hm;
    hm *= h;
  }
}

void fit_poly_uniform(const double* f, int degree, double* b) {
  switch (degree) {
    case 0:
      b[0] = f[0];
      return;
    case 1:
      b[0] = f[0];
      b[1] = f[1] - f[0];
      return;
    case 2:
      b[0] = f[0];
      b[1] = -3.0 * f[0] + 4.0 * f[1] - f[2];
      b[2] = 2.0 * f[0] - 4.0 * f[1] + 2.0 * f[2];
      return;
    case 3:
      b[0] = f[0];
      b[1] = 0.5 * (-11.0 * f[0] + 18.0 * f[1] - 9.0 * f[2] + 2.0 * f[3]);
      b[2] = 0.5 * (18.0 * f[0] - 45.0 * f[1] + 36.0 * f[2] - 9.0 * f[3]);
      b[3] = 0.5 * (-9.0 * f[0] + 27.0 * f[1] - 27.0 * f[2] + 9.0 * f[3]);
      return;
    default:
      throw std::invalid_argument("fit_poly_uniform: degree must be 0..3");
  }
}

namespace {

double adaptive_gl_segment(const std::function<double(double)>& w_g, double a,
                           double b, double tol_abs, int depth) {
  const QuadratureRule& r = gauss_legendre_rule(15);
  auto eval = [&](double lo, double hi) {
    double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (size_t i = 0; i < r.points.size(); ++i)
      s += r.weights[i] * w_g(mid + half * r.points[i]);
    return s * half;
  };
  double whole = eval(a, b);
  double m = 0.5 * (a + b);
  double split = eval(a, m) + eval(m, b);
  if (std::abs(whole - split) <= tol_abs || depth >= 40) {
    if (depth >= 40 && std::abs(whole - split) > 1e3 * tol_abs)
      throw std::runtime_error("adaptive quadrature: max depth exceeded");
    return split;
  }
  return adaptive_gl_segment(w_g, a, m, 0.5 * tol_abs, depth + 1) +
         adaptive_gl_segment(w_g, m, b, 0.5 * tol_abs, depth + 1);
}

}  // namespace

double adaptive_power_integral(const std::function<double(double)>& g,
                               double l, double alpha, double rel_tol) {
  if (!(l > 0.0)) return 0.0;
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("adaptive_power_integral: alpha must be in (0,1)");

  auto weighted = [&](double u) { return std::pow(u, -alpha) * g(u); };
  // First panel [0, c] carries the singularity and is integrated with
  // Gauss-Jacobi rules of increasing order; the tail [c, l] is handled by
  // adaptive Gauss-Legendre which also resolves interior kinks of g.
  auto jacobi_panel = [&](double c) {
    double prev = 0.0;
    for (int n : {8, 12, 16, 24, 32, 48}) {
      QuadratureRule r = gauss_jacobi_rule(n, alpha);
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * g(c * r.points[i]);
      s *= std::pow(c, 1.0 - alpha);
      if (n > 8 && std::abs(s - prev) <= rel_tol * (std::abs(s) + 1e-300))
        return s;
      prev = s;
    }
    return prev;
  };

  // The head [0, c] must be free of interior kinks of g for the Jacobi rule
  // to converge; verify each candidate head against a half-split estimate and
  // shrink it geometrically until the two agree.
  double c = l;
  double head = 0.0;
  bool ok = false;
  for (int pass = 0; pass < 30 && !ok; ++pass) {
    double whole = jacobi_panel(c);
    double inner = jacobi_panel(0.5 * c);
    double scale = std::abs(whole) + std::abs(inner) + 1e-300;
    double outer = adaptive_gl_segment(weighted, 0.5 * c, c, rel_tol * scale, 0);
    double split = inner + outer;
    if (std::abs(whole - split) <= rel_tol * (std::abs(split) + 1e-300)) {
      head = split;
      ok = true;
    } else {
      c *= 0.5;
    }
  }
  if (!ok) throw std::runtime_error("adaptive_power_integral: did not converge");
  double total = head;
  if (c < l) {
    double tol_abs = rel_tol * (std::abs(total) + 1e-300);
    total += adaptive_gl_segment(weighted, c, l, tol_abs, 0);
  }
  return total;
}

}  // namespace fplate
