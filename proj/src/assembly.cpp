#include "assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "quadrature.hpp"
#include "shape.hpp"

namespace fplate {

namespace {

struct DofEntry {
  int32_t node;
  int32_t comp;
  double val;
};
using ScatterVec = std::vector<DofEntry>;

int var_comp(Var v) {
  switch (v) {
    case Var::U0: return 0;
    case Var::V0: return 1;
    case Var::W0: return 2;
    case Var::ThetaX: return 3;
    case Var::ThetaY: return 4;
    default: return -1;
  }
}

int default_outer(const DofMap& dofs) {
  return dofs.theory == Theory::Mindlin ? 2 : 3;
}
int default_mass(const DofMap& dofs) {
  return dofs.theory == Theory::Mindlin ? 2 : 4;
}

// Values of the inner-derivative basis restricted to a horizon line, for one
// crossed element.  kind: 0 = Lagrange d/d(conv axis); 1 = Hermite with
// derivative orders (dx, dy).
struct LineBasisSpec {
  bool hermite = false;
  int dx = 0, dy = 0;       // hermite derivative orders
  int poly_degree = 0;      // degree along the line
};

LineBasisSpec make_line_spec(Var var, Axis conv_axis, Axis inner_axis) {
  LineBasisSpec s;
  if (var == Var::HermW) {
    s.hermite = true;
    s.dx = (conv_axis == Axis::X ? 1 : 0) + (inner_axis == Axis::X ? 1 : 0);
    s.dy = (conv_axis == Axis::Y ? 1 : 0) + (inner_axis == Axis::Y ? 1 : 0);
    s.poly_degree = (conv_axis == inner_axis) ? 1 : 2;
  } else {
    s.dx = conv_axis == Axis::X ? 1 : 0;
    s.dy = conv_axis == Axis::Y ? 1 : 0;
    s.poly_degree = 0;
  }
  return s;
}

// Evaluate the line basis of the element at axis coordinate s (other
// coordinate fixed), writing n values (4 Lagrange, 16 Hermite).
void eval_line_basis(const StructuredMesh& mesh, const LineBasisSpec& spec,
                     Axis conv_axis, int axis_el, int fixed_el, double s,
                     double fixed_coord, double* out) {
  int ei = (conv_axis == Axis::X) ? axis_el : fixed_el;
  int ej = (conv_axis == Axis::X) ? fixed_el : axis_el;
  double x = (conv_axis == Axis::X) ? s : fixed_coord;
  double y = (conv_axis == Axis::X) ? fixed_coord : s;
  double xc = (ei + 0.5) * mesh.lex, yc = (ej + 0.5) * mesh.ley;
  double xi = 2.0 * (x - xc) / mesh.lex;
  double eta = 2.0 * (y - yc) / mesh.ley;
  if (spec.hermite) {
    auto h = hermite_shape(xi, eta, spec.dx, spec.dy, mesh.lex, mesh.ley);
    std::copy(h.begin(), h.end(), out);
  } else {
    LagrangeShape l = lagrange_shape(xi, eta);
    if (spec.dx == 1)
      for (int k = 0; k < 4; ++k) out[k] = l.dn_dxi[k] * 2.0 / mesh.lex;
    else
      for (int k = 0; k < 4; ++k) out[k] = l.dn_deta[k] * 2.0 / mesh.ley;
  }
}

// Accumulation grid for one convolution line: (n_cols_along_axis) x 2 node
// lines x (1 or 4 components).
struct LineAccum {
  int first_node = 0;  // first node index along the axis
  int n_along = 0;
  int ncomp = 1;
  std::vector<double> a;  // [along][cross(2)][comp]

  void init(int first, int n, int nc) {
    first_node = first;
    n_along = n;
    ncomp = nc;
    a.assign(static_cast<size_t>(n) * 2 * nc, 0.0);
  }
  double* at(int along_node) {
    return a.data() + static_cast<size_t>(along_node - first_node) * 2 * ncomp;
  }
};

// Adds w * basis(s) for all element basis functions into the accumulator.
void accumulate_point(const StructuredMesh& mesh, const LineBasisSpec& spec,
                      Axis conv_axis, int axis_el, int fixed_el, double s,
                      double fixed_coord, double w, LineAccum& acc) {
  double vals[16];
  eval_line_basis(mesh, spec, conv_axis, axis_el, fixed_el, s, fixed_coord, vals);
  // local node k -> (along offset, cross offset)
  static const int along_of[4] = {0, 1, 1, 0};
  static const int cross_of[4] = {0, 0, 1, 1};
  int nc = acc.ncomp;
  for (int k = 0; k < 4; ++k) {
    int along = axis_el + (conv_axis == Axis::X ? along_of[k]
                                                : cross_of[k]);
    int cross = (conv_axis == Axis::X ? cross_of[k] : along_of[k]);
    double* slot = acc.at(along) + cross * nc;
    if (nc == 1)
      slot[0] += w * vals[k];
    else
      for (int c = 0; c < 4; ++c) slot[c] += w * vals[4 * k + c];
  }
}

// Builds the nonlocal convolution vector for one axis at an anchor point.
// Entries map nodal values of the inner basis to D^alpha(inner derivative).
void build_conv_vec(const StructuredMesh& mesh, const DofMap& dofs, double ax,
                    double ay, Var var, Axis conv_axis, Axis inner_axis,
                    const AssemblyOptions& opts, ScatterVec& out,
                    int comp_override) {
  LineBasisSpec spec = make_line_spec(var, conv_axis, inner_axis);
  int nc = spec.hermite ? 4 : 1;
  int base_comp = spec.hermite ? 2 : (comp_override >= 0 ? comp_override
                                                         : var_comp(var));
  out.clear();

  int ei = mesh.element_coord_of(ax, Axis::X);
  int ej = mesh.element_coord_of(ay, Axis::Y);
  int fixed_el = (conv_axis == Axis::X) ? ej : ei;
  double fixed_coord = (conv_axis == Axis::X) ? ay : ax;
  double s0 = (conv_axis == Axis::X) ? ax : ay;
  double le = (conv_axis == Axis::X) ? mesh.lex : mesh.ley;

  auto emit = [&](LineAccum& acc) {
    // deterministic node-major order
    if (conv_axis == Axis::X) {
      for (int dj = 0; dj < 2; ++dj)
        for (int i = acc.first_node; i < acc.first_node + acc.n_along; ++i) {
          int node = mesh.node_index(i, fixed_el + dj);
          const double* slot = acc.at(i) + dj * nc;
          for (int c = 0; c < nc; ++c)
            out.push_back({node, base_comp + c, slot[c]});
        }
    } else {
      for (int j = acc.first_node; j < acc.first_node + acc.n_along; ++j)
        for (int di = 0; di < 2; ++di) {
          int node = mesh.node_index(fixed_el + di, j);
          const double* slot = acc.at(j) + di * nc;
          for (int c = 0; c < nc; ++c)
            out.push_back({node, base_comp + c, slot[c]});
        }
    }
  };

  if (opts.alpha == 1.0) {
    LineAccum acc;
    int axis_el = (conv_axis == Axis::X) ? ei : ej;
    acc.init(axis_el, 2, nc);
    accumulate_point(mesh, spec, conv_axis, axis_el, fixed_el, s0, fixed_coord,
                     1.0, acc);
    emit(acc);
    return;
  }

  HorizonStencil st = horizon_stencil(mesh, ax, ay, conv_axis, opts.alpha,
                                      opts.l_f);
  LineAccum acc;
  acc.init(st.first_element, st.last_element - st.first_element + 2, nc);

  const QuadratureRule& gl = gauss_legendre_rule(opts.inner_gl_points);
  const int deg = spec.poly_degree;
  double tau_mom[4], samples[4], coeff[4];

  for (int side = 0; side < 2; ++side) {
    const bool left = side == 0;
    const double l = left ? st.params.l_a : st.params.l_b;
    if (!(l > 0.0)) continue;
    const double prefac =
        0.5 * (1.0 - opts.alpha) * std::pow(l, opts.alpha - 1.0);
    const int step = left ? -1 : +1;
    const int e_end = left ? st.first_element : st.last_element;
    for (int e = st.singular_element; left ? e >= e_end : e <= e_end;
         e += step) {
      // u-range of this element clipped to the horizon side
      double lo_x = e * le, hi_x = (e + 1) * le;
      double u_lo, u_hi;
      if (left) {
        u_lo = std::max(0.0, s0 - hi_x);
        u_hi = std::min(l, s0 - lo_x);
      } else {
        u_lo = std::max(0.0, lo_x - s0);
        u_hi = std::min(l, hi_x - s0);
      }
      if (!(u_hi > u_lo + 1e-15 * le)) continue;
      int rank = left ? st.singular_element - e : e - st.singular_element;
      if (rank <= 1) {
        // closed-form power moments against the polynomial basis restriction
        power_tau_moments(opts.alpha, u_lo, u_hi, deg, tau_mom);
        double fvals[4][16];
        for (int m = 0; m <= deg; ++m) {
          double tau = (deg == 0) ? 0.5 : double(m) / deg;
          double u = u_lo + tau * (u_hi - u_lo);
          double s = s0 + (left ? -u : u);
          eval_line_basis(mesh, spec, conv_axis, e, fixed_el, s, fixed_coord,
                          fvals[m]);
        }
        int nfun = spec.hermite ? 16 : 4;
        double vals[16];
        for (int k = 0; k < nfun; ++k) {
          for (int m = 0; m <= deg; ++m) samples[m] = fvals[m][k];
          fit_poly_uniform(samples, deg, coeff);
          double s = 0.0;
          for (int m = 0; m <= deg; ++m) s += coeff[m] * tau_mom[m];
          vals[k] = prefac * s;
        }
        // scatter vals like accumulate_point
        static const int along_of[4] = {0, 1, 1, 0};
        static const int cross_of[4] = {0, 0, 1, 1};
        for (int k = 0; k < 4; ++k) {
          int along = e + (conv_axis == Axis::X ? along_of[k] : cross_of[k]);
          int cross = (conv_axis == Axis::X ? cross_of[k] : along_of[k]);
          double* slot = acc.at(along) + cross * nc;
          if (nc == 1)
            slot[0] += vals[k];
          else
            for (int c = 0; c < 4; ++c) slot[c] += vals[4 * k + c];
        }
      } else {
        double mid = 0.5 * (u_lo + u_hi), half = 0.5 * (u_hi - u_lo);
        for (size_t q = 0; q < gl.points.size(); ++q) {
          double u = mid + half * gl.points[q];
          double w = prefac * gl.weights[q] * half * std::pow(u, -opts.alpha);
          double s = s0 + (left ? -u : u);
          accumulate_point(mesh, spec, conv_axis, e, fixed_el, s, fixed_coord,
                           w, acc);
        }
      }
    }
  }
  emit(acc);
}

// Local interpolation values of a Lagrange variable at the anchor.
void build_local_vec(const StructuredMesh& mesh, double ax, double ay,
                     int comp, ScatterVec& out) {
  out.clear();
  int ei = mesh.element_coord_of(ax, Axis::X);
  int ej = mesh.element_coord_of(ay, Axis::Y);
  double xc = (ei + 0.5) * mesh.lex, yc = (ej + 0.5) * mesh.ley;
  LagrangeShape l =
      lagrange_shape(2.0 * (ax - xc) / mesh.lex, 2.0 * (ay - yc) / mesh.ley);
  auto nodes = mesh.element_nodes(mesh.element_index(ei, ej));
  for (int k = 0; k < 4; ++k) out.push_back({nodes[k], comp, l.n[k]});
}

}  // namespace

RowOperator integer_b_row(const StructuredMesh& mesh, const DofMap& dofs,
                          int elem, double x, double y, Var var, int dx,
                          int dy) {
  bool herm = var == Var::HermW;
  if (herm && dofs.theory != Theory::Kirchoff)
    throw std::invalid_argument("integer_b_row: HermW requires Kirchoff");
  if (!herm && (dx + dy != 1))
    throw std::invalid_argument("integer_b_row: Lagrange rows need dx+dy == 1");
  if (!herm && dofs.theory == Theory::Kirchoff && var_comp(var) >= 2)
    throw std::invalid_argument("integer_b_row: unknown variable for theory");
  if (herm && dx + dy > 2)
    throw std::invalid_argument("integer_b_row: derivative order too high");

  int ei = elem % mesh.nx, ej = elem / mesh.nx;
  double xc = (ei + 0.5) * mesh.lex, yc = (ej + 0.5) * mesh.ley;
  double xi = 2.0 * (x - xc) / mesh.lex, eta = 2.0 * (y - yc) / mesh.ley;
  auto nodes = mesh.element_nodes(elem);
  RowOperator row;
  if (herm) {
    auto h = hermite_shape(xi, eta, dx, dy, mesh.lex, mesh.ley);
    for (int k = 0; k < 4; ++k)
      for (int c = 0; c < 4; ++c) {
        row.dofs.push_back(dofs.global(nodes[k], 2 + c));
        row.coeffs.push_back(h[4 * k + c]);
      }
  } else {
    LagrangeShape l = lagrange_shape(xi, eta);
    int comp = var_comp(var);
    for (int k = 0; k < 4; ++k) {
      double v = (dx == 1) ? l.dn_dxi[k] * 2.0 / mesh.lex
                           : l.dn_deta[k] * 2.0 / mesh.ley;
      row.dofs.push_back(dofs.global(nodes[k], comp));
      row.coeffs.push_back(v);
    }
  }
  return row;
}

RowOperator nonlocal_b_row(const StructuredMesh& mesh, const DofMap& dofs,
                           double ax, double ay, Var var, Axis conv_axis,
                           Axis inner_axis, const AssemblyOptions& opts) {
  if (var == Var::HermW && dofs.theory != Theory::Kirchoff)
    throw std::invalid_argument("nonlocal_b_row: HermW requires Kirchoff");
  if (var != Var::HermW && dofs.theory == Theory::Kirchoff &&
      var_comp(var) >= 2)
    throw std::invalid_argument("nonlocal_b_row: unknown variable for theory");
  ScatterVec sv;
  build_conv_vec(mesh, dofs, ax, ay, var, conv_axis, inner_axis, opts, sv, -1);
  RowOperator row;
  for (const auto& e : sv) {
    row.dofs.push_back(dofs.global(e.node, e.comp));
    row.coeffs.push_back(e.val);
  }
  return row;
}

namespace {

struct Term {
  const ScatterVec* r;
  const ScatterVec* c;
  double coef;
};

// Shared state for the band-window stiffness assembly.
struct BandAssembler {
  const StructuredMesh& mesh;
  const DofMap& dofs;
  int dpn;
  int nxn;          // nodes per row
  int win_lo = 0;   // first node-row of the window
  int win_rows = 0;
  std::vector<double> buf;  // [row_local][col_local]
  std::vector<int32_t> touched_lo, touched_hi;
  int64_t row_len = 0;

  BandAssembler(const StructuredMesh& m, const DofMap& d)
      : mesh(m), dofs(d), dpn(d.dofs_per_node), nxn(m.nx + 1) {}

  void open(int j, int span_rows) {
    win_lo = std::max(0, j - span_rows);
    int hi = std::min(mesh.ny, j + span_rows);
    win_rows = hi - win_lo + 1;
    row_len = static_cast<int64_t>(win_rows) * nxn * dpn;
    size_t need = static_cast<size_t>(nxn) * dpn * row_len;
    if (buf.size() < need) buf.assign(need, 0.0);
    touched_lo.assign(nxn * dpn, INT32_MAX);
    touched_hi.assign(nxn * dpn, -1);
  }

  inline int col_local(int node, int comp) const {
    int i = node % nxn, j = node / nxn;
    return ((j - win_lo) * nxn + i) * dpn + comp;
  }

  // Applies coef * r x c restricted to rows whose node lies in node-row j.
  void apply(int j, const Term& t) {
    for (const auto& er : *t.r) {
      if (er.node / nxn != j) continue;
      int rl = (er.node % nxn) * dpn + er.comp;
      double* brow = buf.data() + static_cast<int64_t>(rl) * row_len;
      double s = t.coef * er.val;
      int lo = INT32_MAX, hi = -1;
      for (const auto& ec : *t.c) {
        int cl = col_local(ec.node, ec.comp);
        brow[cl] += s * ec.val;
        lo = std::min(lo, cl);
        hi = std::max(hi, cl);
      }
      touched_lo[rl] = std::min(touched_lo[rl], lo);
      touched_hi[rl] = std::max(touched_hi[rl], hi);
    }
  }

  // Extracts band rows into the CSR under construction and clears the buffer.
  void flush(int j, CsrMatrix& k) {
    int64_t col_off = static_cast<int64_t>(win_lo) * nxn * dpn;
    for (int rl = 0; rl < nxn * dpn; ++rl) {
      double* brow = buf.data() + static_cast<int64_t>(rl) * row_len;
      if (touched_hi[rl] >= 0) {
        for (int cl = touched_lo[rl]; cl <= touched_hi[rl]; ++cl) {
          if (brow[cl] != 0.0) {
            k.col.push_back(static_cast<int32_t>(col_off + cl));
            k.val.push_back(brow[cl]);
          }
        }
        std::memset(brow + touched_lo[rl], 0,
                    sizeof(double) * (touched_hi[rl] - touched_lo[rl] + 1));
      }
      int grow = (j * nxn + rl / dpn) * dpn + rl % dpn;
      k.row_ptr[grow + 1] = static_cast<int64_t>(k.col.size());
    }
  }
};

}  // namespace

CsrMatrix assemble_stiffness(const StructuredMesh& mesh, const DofMap& dofs,
                             const ConstitutiveMatrices& cm,
                             const AssemblyOptions& opts) {
  if (opts.alpha < 1.0 && !(opts.l_f > 0.0))
    throw std::invalid_argument("assemble_stiffness: nonlocal run needs l_f > 0");
  const bool mindlin = dofs.theory == Theory::Mindlin;
  const int outer = opts.outer_points > 0 ? opts.outer_points
                                          : default_outer(dofs);
  const QuadratureRule& orule = gauss_legendre_rule(outer);
  const double j2 = mesh.jacobian2d();
  const int dpn = dofs.dofs_per_node;

  // vertical reach of any anchor's stencil, in elements
  int span_el = 1;
  if (opts.alpha < 1.0)
    span_el = static_cast<int>(std::ceil(opts.l_f / mesh.ley - 1e-9)) + 1;
  const int span_rows = 2 * span_el + 2;

  CsrMatrix k;
  k.n_rows = k.n_cols = dofs.n_dofs();
  k.row_ptr.assign(dofs.n_dofs() + 1, 0);

  BandAssembler band(mesh, dofs);

  ScatterVec cx, cy, loc3, loc4;
  ScatterVec cxv[5], cyv[5];  // per-component copies for Mindlin
  ScatterVec hxx, hxy, hyy, hyx;
  std::vector<Term> terms;
  const double sq44 = cm.ss(0, 0), sq55 = cm.ss(1, 1);

  for (int j = 0; j <= mesh.ny; ++j) {
    band.open(j, span_rows);
    int ej_lo = std::max(0, j - 1 - span_el);
    int ej_hi = std::min(mesh.ny - 1, j + span_el);
    for (int ej = ej_lo; ej <= ej_hi; ++ej) {
      for (int ei = 0; ei < mesh.nx; ++ei) {
        for (size_t qy = 0; qy < orule.points.size(); ++qy) {
          double ay = (ej + 0.5 + 0.5 * orule.points[qy]) * mesh.ley;
          for (size_t qx = 0; qx < orule.points.size(); ++qx) {
            double ax = (ei + 0.5 + 0.5 * orule.points[qx]) * mesh.lex;
            double wj = orule.weights[qx] * orule.weights[qy] * j2;
            terms.clear();
            if (mindlin) {
              build_conv_vec(mesh, dofs, ax, ay, Var::U0, Axis::X, Axis::X,
                             opts, cx, 0);
              build_conv_vec(mesh, dofs, ax, ay, Var::U0, Axis::Y, Axis::Y,
                             opts, cy, 0);
              for (int c = 0; c < 5; ++c) {
                cxv[c] = cx;
                for (auto& e : cxv[c]) e.comp = c;
                cyv[c] = cy;
                for (auto& e : cyv[c]) e.comp = c;
              }
              build_local_vec(mesh, ax, ay, 3, loc3);
              build_local_vec(mesh, ax, ay, 4, loc4);
              const double a11 = wj * cm.a11, a12 = wj * cm.a12,
                           a22 = wj * cm.a22, a66 = wj * cm.a66,
                           d11 = wj * cm.d11, d12 = wj * cm.d12,
                           d22 = wj * cm.d22, d66 = wj * cm.d66,
                           s44 = wj * sq44, s55 = wj * sq55;
              terms = {
                  {&cxv[0], &cxv[0], a11},  {&cxv[0], &cyv[1], a12},
                  {&cyv[1], &cxv[0], a12},  {&cyv[1], &cyv[1], a22},
                  {&cyv[0], &cyv[0], a66},  {&cyv[0], &cxv[1], a66},
                  {&cxv[1], &cyv[0], a66},  {&cxv[1], &cxv[1], a66},
                  {&cxv[3], &cxv[3], d11},  {&cxv[3], &cyv[4], d12},
                  {&cyv[4], &cxv[3], d12},  {&cyv[4], &cyv[4], d22},
                  {&cyv[3], &cyv[3], d66},  {&cyv[3], &cxv[4], d66},
                  {&cxv[4], &cyv[3], d66},  {&cxv[4], &cxv[4], d66},
                  {&cyv[2], &cyv[2], s44},  {&cyv[2], &loc4, -s44},
                  {&loc4, &cyv[2], -s44},   {&loc4, &loc4, s44},
                  {&cxv[2], &cxv[2], s55},  {&cxv[2], &loc3, -s55},
                  {&loc3, &cxv[2], -s55},   {&loc3, &loc3, s55},
              };
            } else {
              build_conv_vec(mesh, dofs, ax, ay, Var::U0, Axis::X, Axis::X,
                             opts, cx, 0);
              build_conv_vec(mesh, dofs, ax, ay, Var::U0, Axis::Y, Axis::Y,
                             opts, cy, 0);
              for (int c = 0; c < 2; ++c) {
                cxv[c] = cx;
                for (auto& e : cxv[c]) e.comp = c;
                cyv[c] = cy;
                for (auto& e : cyv[c]) e.comp = c;
              }
              build_conv_vec(mesh, dofs, ax, ay, Var::HermW, Axis::X, Axis::X,
                             opts, hxx, -1);
              build_conv_vec(mesh, dofs, ax, ay, Var::HermW, Axis::X, Axis::Y,
                             opts, hxy, -1);
              build_conv_vec(mesh, dofs, ax, ay, Var::HermW, Axis::Y, Axis::Y,
                             opts, hyy, -1);
              build_conv_vec(mesh, dofs, ax, ay, Var::HermW, Axis::Y, Axis::X,
                             opts, hyx, -1);
              const double a11 = wj * cm.a11, a12 = wj * cm.a12,
                           a22 = wj * cm.a22, a66 = wj * cm.a66,
                           d11 = wj * cm.d11, d12 = wj * cm.d12,
                           d22 = wj * cm.d22, d66 = wj * cm.d66;
              terms = {
                  {&cxv[0], &cxv[0], a11}, {&cxv[0], &cyv[1], a12},
                  {&cyv[1], &cxv[0], a12}, {&cyv[1], &cyv[1], a22},
                  {&cyv[0], &cyv[0], a66}, {&cyv[0], &cxv[1], a66},
                  {&cxv[1], &cyv[0], a66}, {&cxv[1], &cxv[1], a66},
                  {&hxx, &hxx, d11},       {&hxx, &hyy, d12},
                  {&hyy, &hxx, d12},       {&hyy, &hyy, d22},
                  {&hyx, &hyx, d66},       {&hyx, &hxy, d66},
                  {&hxy, &hyx, d66},       {&hxy, &hxy, d66},
              };
            }
            for (const Term& t : terms) band.apply(j, t);
          }
        }
      }
    }
    band.flush(j, k);
  }
  return k;
}

CsrMatrix assemble_mass(const StructuredMesh& mesh, const DofMap& dofs,
                        const InertiaCoeffs& in, const AssemblyOptions& opts) {
  const bool mindlin = dofs.theory == Theory::Mindlin;
  const int npt = opts.mass_points > 0 ? opts.mass_points : default_mass(dofs);
  const QuadratureRule& rule = gauss_legendre_rule(npt);
  const double j2 = mesh.jacobian2d();
  TripletBuilder tb;
  tb.n_rows = tb.n_cols = dofs.n_dofs();

  for (int e = 0; e < mesh.n_elements(); ++e) {
    auto nodes = mesh.element_nodes(e);
    for (size_t qy = 0; qy < rule.points.size(); ++qy)
      for (size_t qx = 0; qx < rule.points.size(); ++qx) {
        double xi = rule.points[qx], eta = rule.points[qy];
        double w = rule.weights[qx] * rule.weights[qy] * j2;
        LagrangeShape l = lagrange_shape(xi, eta);
        if (mindlin) {
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
              double m = w * l.n[a] * l.n[b];
              for (int c = 0; c < 3; ++c)
                tb.add(dofs.global(nodes[a], c), dofs.global(nodes[b], c),
                       in.i0 * m);
              for (int c = 3; c < 5; ++c)
                tb.add(dofs.global(nodes[a], c), dofs.global(nodes[b], c),
                       in.i2 * m);
            }
        } else {
          auto h0 = hermite_shape(xi, eta, 0, 0, mesh.lex, mesh.ley);
          auto hx = hermite_shape(xi, eta, 1, 0, mesh.lex, mesh.ley);
          auto hy = hermite_shape(xi, eta, 0, 1, mesh.lex, mesh.ley);
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
              double m = w * l.n[a] * l.n[b];
              for (int c = 0; c < 2; ++c)
                tb.add(dofs.global(nodes[a], c), dofs.global(nodes[b], c),
                       in.i0 * m);
            }
          for (int a = 0; a < 16; ++a)
            for (int b = 0; b < 16; ++b) {
              double m = w * (in.i0 * h0[a] * h0[b] +
                              in.i2 * (hx[a] * hx[b] + hy[a] * hy[b]));
              tb.add(dofs.global(nodes[a / 4], 2 + a % 4),
                     dofs.global(nodes[b / 4], 2 + b % 4), m);
            }
        }
      }
  }
  return tb.to_csr();
}

Eigen::VectorXd assemble_force(const StructuredMesh& mesh, const DofMap& dofs,
                               const LoadSpec& load,
                               const AssemblyOptions& opts) {
  const bool mindlin = dofs.theory == Theory::Mindlin;
  const bool pointwise = load.kind == LoadSpec::Kind::Pointwise;
  if (pointwise && !mindlin)
    throw std::invalid_argument(
        "assemble_force: pointwise moment loads are a Mindlin load type");
  if (pointwise && !load.fields)
    throw std::invalid_argument("assemble_force: pointwise load needs fields");
  int npt = opts.force_points > 0
                ? opts.force_points
                : (pointwise ? 3 : default_mass(dofs));
  const QuadratureRule& rule = gauss_legendre_rule(npt);
  const double j2 = mesh.jacobian2d();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(dofs.n_dofs());

  for (int e = 0; e < mesh.n_elements(); ++e) {
    auto nodes = mesh.element_nodes(e);
    int ei = e % mesh.nx, ej = e / mesh.nx;
    double xc = (ei + 0.5) * mesh.lex, yc = (ej + 0.5) * mesh.ley;
    for (size_t qy = 0; qy < rule.points.size(); ++qy)
      for (size_t qx = 0; qx < rule.points.size(); ++qx) {
        double xi = rule.points[qx], eta = rule.points[qy];
        double w = rule.weights[qx] * rule.weights[qy] * j2;
        if (mindlin) {
          LagrangeShape l = lagrange_shape(xi, eta);
          if (pointwise) {
            double x = xc + 0.5 * xi * mesh.lex, y = yc + 0.5 * eta * mesh.ley;
            auto fld = load.fields(x, y);
            for (int a = 0; a < 4; ++a) {
              f[dofs.global(nodes[a], 2)] += w * l.n[a] * fld[0];
              f[dofs.global(nodes[a], 3)] += w * l.n[a] * fld[1];
              f[dofs.global(nodes[a], 4)] += w * l.n[a] * fld[2];
            }
          } else {
            for (int a = 0; a < 4; ++a)
              f[dofs.global(nodes[a], 2)] += w * l.n[a] * load.q;
          }
        } else {
          auto h0 = hermite_shape(xi, eta, 0, 0, mesh.lex, mesh.ley);
          for (int a = 0; a < 16; ++a)
            f[dofs.global(nodes[a / 4], 2 + a % 4)] += w * h0[a] * load.q;
        }
      }
  }
  return f;
}

AssembledSystem assemble_system(const StructuredMesh& mesh, const DofMap& dofs,
                                const ConstitutiveMatrices& cm,
                                const InertiaCoeffs& in, const LoadSpec& load,
                                const AssemblyOptions& opts) {
  AssembledSystem sys;
  sys.mesh = mesh;
  sys.dofs = dofs;
  sys.opts = opts;
  sys.stiffness = assemble_stiffness(mesh, dofs, cm, opts);
  sys.mass = assemble_mass(mesh, dofs, in, opts);
  sys.force = assemble_force(mesh, dofs, load, opts);
  return sys;
}

BoundaryConditionSet bc_clamped_all(const StructuredMesh& mesh,
                                    const DofMap& dofs) {
  BoundaryConditionSet bc;
  bc.name = "CCCC";
  for (int n = 0; n < mesh.n_nodes(); ++n)
    if (mesh.is_boundary_node(n))
      for (int c = 0; c < dofs.dofs_per_node; ++c) bc.node_comp.push_back({n, c});
  return bc;
}

BoundaryConditionSet bc_simply_supported_all(const StructuredMesh& mesh,
                                             const DofMap& dofs) {
  // Hard simple support: on edges x = {0,L} constrain w, the tangential
  // in-plane displacement v and the tangential rotation/slope; mirrored on
  // the y edges.  The Kirchoff corner twist DOF w_xy stays free.
  BoundaryConditionSet bc;
  bc.name = "SSSS";
  (void)dofs;
  for (int n = 0; n < mesh.n_nodes(); ++n) {
    int i = n % (mesh.nx + 1), j = n / (mesh.nx + 1);
    bool on_x_edge = (i == 0 || i == mesh.nx);  // x in {0, L}
    bool on_y_edge = (j == 0 || j == mesh.ny);  // y in {0, B}
    if (!on_x_edge && !on_y_edge) continue;
    if (on_x_edge) {
      bc.node_comp.push_back({n, 2});  // w0
      bc.node_comp.push_back({n, 1});  // v0
      bc.node_comp.push_back({n, 4});  // theta_y / dw/dy
    }
    if (on_y_edge) {
      bc.node_comp.push_back({n, 2});                // w0
      bc.node_comp.push_back({n, 0});                // u0
      bc.node_comp.push_back({n, 3});                // theta_x / dw/dx
    }
  }
  return bc;
}

ReducedSystem apply_essential_bcs(const AssembledSystem& sys,
                                  const BoundaryConditionSet& bcs) {
  const int n = sys.dofs.n_dofs();
  std::vector<char> constrained(n, 0);
  for (auto [node, comp] : bcs.node_comp) {
    if (node < 0 || node >= sys.dofs.n_nodes || comp < 0 ||
        comp >= sys.dofs.dofs_per_node)
      throw std::invalid_argument("apply_essential_bcs: constraint outside DofMap");
    constrained[sys.dofs.global(node, comp)] = 1;
  }
  ReducedSystem red;
  red.full_to_red.assign(n, -1);
  for (int i = 0; i < n; ++i)
    if (!constrained[i]) {
      red.full_to_red[i] = static_cast<int32_t>(red.retained.size());
      red.retained.push_back(i);
    }
  red.n_red = static_cast<int>(red.retained.size());
  if (red.n_red == 0)
    throw std::invalid_argument("apply_essential_bcs: empty retained set");
  return red;
}

BlockMap make_block_map(const DofMap& dofs, const ReducedSystem& red,
                        const std::vector<int>& comps) {
  BlockMap bm;
  bm.full_to_blk.assign(dofs.n_dofs(), -1);
  std::vector<char> in_group(dofs.dofs_per_node, 0);
  for (int c : comps) in_group[c] = 1;
  for (int32_t full : red.retained) {
    if (in_group[full % dofs.dofs_per_node]) {
      bm.full_to_blk[full] = static_cast<int32_t>(bm.blk_to_full.size());
      bm.blk_to_full.push_back(full);
    }
  }
  bm.dim = static_cast<int>(bm.blk_to_full.size());
  return bm;
}

std::vector<int> inplane_comps(Theory) { return {0, 1}; }

std::vector<int> transverse_comps(Theory theory) {
  return theory == Theory::Mindlin ? std::vector<int>{2, 3, 4}
                                   : std::vector<int>{2, 3, 4, 5};
}

}  // namespace fplate
