#include "taylor/analytic_reference.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "taylor/errors.hpp"
#include "taylor/specfun.hpp"

namespace taylor {
namespace {

using Eigen::Matrix;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using Terms = std::array<PsiDerivs, 6>;
using Mat76 = Matrix<double, 7, 6>;

// r B1(a r) with z-modulation M: values and partials.
PsiDerivs bessel_term(double a, double B0, double B1, double r, double M,
                      double Mp, double Mpp) {
  PsiDerivs t;
  t.v = r * B1 * M;
  t.r = a * r * B0 * M;
  t.z = r * B1 * Mp;
  t.rr = (a * B0 - a * a * r * B1) * M;
  t.zz = r * B1 * Mpp;
  t.rz = a * r * B0 * Mp;
  return t;
}

// d/da of bessel_term at fixed modulation; B1' = B0 - B1/(a r).
PsiDerivs bessel_term_da(double a, double B0, double B1, double r, double M,
                         double Mp, double Mpp) {
  const double d1 = B0 - B1 / (a * r);  // B1'(a r)
  PsiDerivs t;
  t.v = r * r * d1 * M;
  t.r = (r * B0 - a * r * r * B1) * M;
  t.z = r * r * d1 * Mp;
  t.rr = (B0 - 2.0 * a * r * B1 - a * a * r * r * B0) * M;
  t.zz = r * r * d1 * Mpp;
  t.rz = (r * B0 - a * r * r * B1) * Mp;
  return t;
}

PsiDerivs scaled(const PsiDerivs& t, double f) {
  return {f * t.v, f * t.r, f * t.z, f * t.rr, f * t.zz, f * t.rz};
}

PsiDerivs plus(const PsiDerivs& a, const PsiDerivs& b) {
  return {a.v + b.v, a.r + b.r, a.z + b.z,
          a.rr + b.rr, a.zz + b.zz, a.rz + b.rz};
}

struct TermEval {
  Terms val, dlam, dc6;
};

// All six basis terms with parameter derivatives d/dlambda and d/dc6.
TermEval eval_terms(double lam, double c6, double r, double z) {
  if (r <= 0.0) throw std::domain_error("psi basis requires r > 0");
  const double rho2 = lam * lam - c6 * c6;
  if (rho2 <= 0.0)
    throw std::domain_error("psi basis requires lambda^2 > c6^2");
  const double rho = std::sqrt(rho2);

  TermEval e{};
  const BesselJY01 bl = bessel_JY01(lam * r);
  const BesselJY01 bq = bessel_JY01(rho * r);

  e.val[0] = bessel_term(lam, bl.J0, bl.J1, r, 1.0, 0.0, 0.0);
  e.val[1] = bessel_term(lam, bl.Y0, bl.Y1, r, 1.0, 0.0, 0.0);
  e.dlam[0] = bessel_term_da(lam, bl.J0, bl.J1, r, 1.0, 0.0, 0.0);
  e.dlam[1] = bessel_term_da(lam, bl.Y0, bl.Y1, r, 1.0, 0.0, 0.0);

  const double M = std::cos(c6 * z);
  const double Mp = -c6 * std::sin(c6 * z);
  const double Mpp = -c6 * c6 * M;
  // d/dc6 of the modulation channel
  const double dM = -z * std::sin(c6 * z);
  const double dMp = -std::sin(c6 * z) - c6 * z * std::cos(c6 * z);
  const double dMpp = -2.0 * c6 * std::cos(c6 * z) + c6 * c6 * z * std::sin(c6 * z);

  for (int i = 2; i <= 3; ++i) {
    const double B0 = (i == 2) ? bq.J0 : bq.Y0;
    const double B1 = (i == 2) ? bq.J1 : bq.Y1;
    e.val[i] = bessel_term(rho, B0, B1, r, M, Mp, Mpp);
    const PsiDerivs da = bessel_term_da(rho, B0, B1, r, M, Mp, Mpp);
    e.dlam[i] = scaled(da, lam / rho);
    e.dc6[i] = plus(scaled(da, -c6 / rho),
                    bessel_term(rho, B0, B1, r, dM, dMp, dMpp));
  }

  {  // cos(lambda u), u = sqrt(r^2 + z^2)
    const double u = std::sqrt(r * r + z * z);
    const double s = std::sin(lam * u), c = std::cos(lam * u);
    const double u2 = u * u, u3 = u2 * u;
    PsiDerivs t;
    t.v = c;
    t.r = -lam * s * r / u;
    t.z = -lam * s * z / u;
    t.rr = -lam * (lam * c * r * r / u2 + s * (1.0 / u - r * r / u3));
    t.zz = -lam * (lam * c * z * z / u2 + s * (1.0 / u - z * z / u3));
    t.rz = -lam * (lam * c * r * z / u2 - s * r * z / u3);
    e.val[4] = t;
    PsiDerivs d;
    d.v = -u * s;
    d.r = -(s / u + lam * c) * r;
    d.z = -(s / u + lam * c) * z;
    d.rr = -lam * c * r * r / u2 + lam * lam * s * r * r / u - s / u -
           lam * c + s * r * r / u3;
    d.zz = -lam * c * z * z / u2 + lam * lam * s * z * z / u - s / u -
           lam * c + s * z * z / u3;
    d.rz = -lam * c * r * z / u2 + lam * lam * s * r * z / u + s * r * z / u3;
    e.dlam[4] = d;
  }

  {  // cos(lambda z)
    const double s = std::sin(lam * z), c = std::cos(lam * z);
    e.val[5] = {c, 0.0, -lam * s, 0.0, -lam * lam * c, 0.0};
    e.dlam[5] = {-z * s, 0.0, -s - lam * z * c, 0.0,
                 -2.0 * lam * c + lam * lam * z * s, 0.0};
  }
  return e;
}

struct ConstraintGeom {
  double pr[3], pz[3];  // outboard, inboard, tip
  double N1, N2, N3;
};

ConstraintGeom constraint_geometry(const ShapeParams& sh) {
  const double alpha = std::asin(sh.delta);
  ConstraintGeom g;
  g.pr[0] = sh.R0 + sh.eps;
  g.pz[0] = 0.0;
  g.pr[1] = sh.R0 - sh.eps;
  g.pz[1] = 0.0;
  g.pr[2] = sh.R0 - sh.delta * sh.eps;
  g.pz[2] = -sh.kappa * sh.eps;
  const double ek2 = sh.eps * sh.kappa * sh.kappa;
  g.N1 = -(1.0 + alpha) * (1.0 + alpha) / ek2;
  g.N2 = (1.0 - alpha) * (1.0 - alpha) / ek2;
  g.N3 = sh.kappa / (sh.eps * std::cos(alpha) * std::cos(alpha));
  return g;
}

// 7x6 matrix applying the shaping conditions to each basis term,
// plus its derivatives with respect to lambda and c6.
void constraint_matrices(const ShapeParams& sh, double lam, double c6,
                         Mat76* M, Mat76* dMl, Mat76* dMs) {
  const ConstraintGeom g = constraint_geometry(sh);
  TermEval e[3];
  for (int p = 0; p < 3; ++p) e[p] = eval_terms(lam, c6, g.pr[p], g.pz[p]);

  auto fill = [&](Mat76& out, const Terms* t) {
    for (int i = 0; i < 6; ++i) {
      out(0, i) = t[0][i].v;
      out(1, i) = t[1][i].v;
      out(2, i) = t[2][i].v;
      out(3, i) = t[2][i].r;
      out(4, i) = t[0][i].zz + g.N1 * t[0][i].r;
      out(5, i) = t[1][i].zz + g.N2 * t[1][i].r;
      out(6, i) = t[2][i].rr + g.N3 * t[2][i].z;
    }
  };
  Terms v[3] = {e[0].val, e[1].val, e[2].val};
  fill(*M, v);
  if (dMl) {
    Terms d[3] = {e[0].dlam, e[1].dlam, e[2].dlam};
    fill(*dMl, d);
  }
  if (dMs) {
    Terms d[3] = {e[0].dc6, e[1].dc6, e[2].dc6};
    fill(*dMs, d);
  }
}

// Unknown layout for the Newton stage: x = (c1..c5, c6, lambda).
Eigen::Matrix<double, 7, 1> residual7(const ShapeParams& sh,
                                      const Eigen::Matrix<double, 7, 1>& x) {
  Mat76 M;
  constraint_matrices(sh, x(6), x(5), &M, nullptr, nullptr);
  Eigen::Matrix<double, 6, 1> a;
  a << 1.0, x(0), x(1), x(2), x(3), x(4);
  return M * a;
}

Eigen::Matrix<double, 7, 7> jacobian7(const ShapeParams& sh,
                                      const Eigen::Matrix<double, 7, 1>& x) {
  Mat76 M, dMl, dMs;
  constraint_matrices(sh, x(6), x(5), &M, &dMl, &dMs);
  Eigen::Matrix<double, 6, 1> a;
  a << 1.0, x(0), x(1), x(2), x(3), x(4);
  Eigen::Matrix<double, 7, 7> J;
  J.leftCols<5>() = M.rightCols<5>();
  J.col(5) = dMs * a;
  J.col(6) = dMl * a;
  return J;
}

double sigma_min(const ShapeParams& sh, double lam, double c6) {
  Mat76 M;
  constraint_matrices(sh, lam, c6, &M, nullptr, nullptr);
  for (int k = 0; k < 7; ++k) M.row(k) /= M.row(k).norm();
  Eigen::JacobiSVD<Mat76> svd(M);
  return svd.singularValues()(5);
}

// c1..c5 from the first five conditions with the leading coefficient 1.
bool eliminate_linear(const ShapeParams& sh, double lam, double c6,
                      Eigen::Matrix<double, 5, 1>* c) {
  Mat76 M;
  constraint_matrices(sh, lam, c6, &M, nullptr, nullptr);
  Eigen::Matrix<double, 5, 5> A = M.topRightCorner<5, 5>();
  Eigen::Matrix<double, 5, 1> b = -M.topLeftCorner<5, 1>();
  Eigen::FullPivLU<Eigen::Matrix<double, 5, 5>> lu(A);
  if (!lu.isInvertible()) return false;
  *c = lu.solve(b);
  return true;
}

struct Candidate {
  double sigma, lam, c6;
};

std::vector<Candidate> rank_drop_scan(const ShapeParams& sh) {
  const double step = 0.05, lam_lo = 0.5, lam_hi = 8.0, c6_lo = 0.2;
  const int ni = static_cast<int>((lam_hi - lam_lo) / step) + 1;
  std::vector<std::vector<double>> grid(ni);
  for (int i = 0; i < ni; ++i) {
    const double lam = lam_lo + step * i;
    const int nj = static_cast<int>((lam - 0.1 - c6_lo) / step) + 1;
    grid[i].resize(std::max(nj, 0));
    for (int j = 0; j < static_cast<int>(grid[i].size()); ++j)
      grid[i][j] = sigma_min(sh, lam, c6_lo + step * j);
  }
  auto at = [&](int i, int j) {
    if (i < 0 || i >= ni || j < 0 || j >= static_cast<int>(grid[i].size()))
      return std::numeric_limits<double>::infinity();
    return grid[i][j];
  };
  std::vector<Candidate> out;
  for (int i = 0; i < ni; ++i)
    for (int j = 0; j < static_cast<int>(grid[i].size()); ++j) {
      const double v = grid[i][j];
      if (v > 0.05) continue;
      bool is_min = true;
      for (int a = -1; a <= 1 && is_min; ++a)
        for (int b = -1; b <= 1; ++b)
          if ((a || b) && at(i + a, j + b) < v) {
            is_min = false;
            break;
          }
      if (is_min) out.push_back({v, lam_lo + step * i, c6_lo + step * j});
    }
  std::sort(out.begin(), out.end(),
            [](const Candidate& a, const Candidate& b) { return a.sigma < b.sigma; });
  return out;
}

Candidate zoom(const ShapeParams& sh, Candidate c) {
  double h = 0.05;
  while (h > 1e-9) {
    Candidate best = c;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        if (!a && !b) continue;
        const double lam = c.lam + a * h / 2, c6 = c.c6 + b * h / 2;
        if (c6 <= 0.0 || lam * lam - c6 * c6 < 1e-6) continue;
        const double v = sigma_min(sh, lam, c6);
        if (v < best.sigma) best = {v, lam, c6};
      }
    c = best;
    h *= 0.4;
  }
  return c;
}

// Backtracking Newton on the full seven-variable system.
bool newton7(const ShapeParams& sh, Eigen::Matrix<double, 7, 1>* x,
             double* residual_out) {
  auto norm_of = [&](const Eigen::Matrix<double, 7, 1>& y) {
    return residual7(sh, y).norm();
  };
  double fn = norm_of(*x);
  for (int it = 0; it < 60; ++it) {
    const Eigen::Matrix<double, 7, 1> F = residual7(sh, *x);
    *residual_out = F.lpNorm<Eigen::Infinity>();
    if (*residual_out < 1e-13) return true;
    const Eigen::Matrix<double, 7, 1> dx =
        jacobian7(sh, *x).fullPivLu().solve(-F);
    double t = 1.0;
    bool stepped = false;
    while (t > 1e-10) {
      Eigen::Matrix<double, 7, 1> y = *x + t * dx;
      if (y(6) * y(6) - y(5) * y(5) > 1e-8 && y(5) > 0.0) {
        const double f2 = norm_of(y);
        if (f2 < fn) {
          *x = y;
          fn = f2;
          stepped = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!stepped) break;  // stagnation; caller keeps best residual
  }
  *residual_out = residual7(sh, *x).lpNorm<Eigen::Infinity>();
  return *residual_out < 1e-12;
}

double psi_from(const ShapeParams&, double lam, double c6,
                const Eigen::Matrix<double, 5, 1>& c, double r, double z) {
  const TermEval e = eval_terms(lam, c6, r, z);
  double v = e.val[0].v;
  for (int i = 0; i < 5; ++i) v += c(i) * e.val[i + 1].v;
  return v;
}

// Accept only states with a single positive core whose zero level hits
// the equatorial plane near the target boundary points.
bool validate_branch(const ShapeParams& sh, double lam, double c6,
                     const Eigen::Matrix<double, 5, 1>& c) {
  const int n = 400;
  const double lo = sh.R0 - sh.eps * (1.0 - 1e-3);
  const double hi = sh.R0 + sh.eps * (1.0 - 1e-3);
  std::vector<double> vs(n);
  int jmax = 0;
  for (int j = 0; j < n; ++j) {
    vs[j] = psi_from(sh, lam, c6, c, lo + (hi - lo) * j / (n - 1), 0.0);
    if (vs[j] > vs[jmax]) jmax = j;
  }
  if (vs[jmax] < 0.05) return false;
  int j_out = jmax, j_in = jmax;
  while (j_out + 1 < n && vs[j_out + 1] > 0.0) ++j_out;
  while (j_in - 1 >= 0 && vs[j_in - 1] > 0.0) --j_in;
  for (int k = 0; k < j_in - 1; ++k)
    if (vs[k] > 0.0) return false;
  for (int k = j_out + 2; k < n; ++k)
    if (vs[k] > 0.0) return false;
  const double r_out = lo + (hi - lo) * j_out / (n - 1);
  const double r_in = lo + (hi - lo) * j_in / (n - 1);
  return std::abs(r_out - (sh.R0 + sh.eps)) < 0.25 * sh.eps &&
         std::abs(r_in - (sh.R0 - sh.eps)) < 0.25 * sh.eps;
}

void locate_axis(AnalyticState* st) {
  // psi_r changes sign across the core maximum on z = 0
  const ShapeParams& sh = st->shape;
  const int n = 400;
  const double lo = sh.R0 - sh.eps * (1.0 - 1e-3);
  const double hi = sh.R0 + sh.eps * (1.0 - 1e-3);
  double best = lo;
  double best_v = -1e300;
  for (int j = 0; j < n; ++j) {
    const double r = lo + (hi - lo) * j / (n - 1);
    const double v = psi_eval(*st, r, 0.0).v;
    if (v > best_v) {
      best_v = v;
      best = r;
    }
  }
  double a = best - (hi - lo) / (n - 1), b = best + (hi - lo) / (n - 1);
  double fa = psi_eval(*st, a, 0.0).r;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = psi_eval(*st, m, 0.0).r;
    if (fa * fm <= 0.0)
      b = m;
    else {
      a = m;
      fa = fm;
    }
    if (b - a < 1e-15) break;
  }
  st->r_axis = 0.5 * (a + b);
  st->psi_axis = psi_eval(*st, st->r_axis, 0.0).v;
}

}  // namespace

PsiDerivs psi_eval(const AnalyticState& st, double r, double z) {
  const TermEval e = eval_terms(st.lambda, st.c[5], r, z);
  PsiDerivs out = e.val[0];
  for (int i = 0; i < 5; ++i) out = plus(out, scaled(e.val[i + 1], st.c[i]));
  return out;
}

AnalyticState fit_shape_constraints(const ShapeParams& shape) {
  if (shape.eps <= 0.0 || shape.kappa <= 0.0 || std::abs(shape.delta) >= 1.0 ||
      shape.R0 <= shape.eps)
    throw GeometryError("invalid shaping parameters");

  const std::vector<Candidate> cands = rank_drop_scan(shape);
  double best_residual = 1e300;
  for (const Candidate& c0 : cands) {
    const Candidate c = zoom(shape, c0);
    if (c.sigma > 1e-10) continue;
    Eigen::Matrix<double, 5, 1> cv;
    if (!eliminate_linear(shape, c.lam, c.c6, &cv)) continue;
    Eigen::Matrix<double, 7, 1> x;
    x << cv(0), cv(1), cv(2), cv(3), cv(4), c.c6, c.lam;
    double res = 1e300;
    const bool ok = newton7(shape, &x, &res);
    best_residual = std::min(best_residual, res);
    if (!ok) continue;
    cv << x(0), x(1), x(2), x(3), x(4);
    if (!validate_branch(shape, x(6), x(5), cv)) continue;
    AnalyticState st;
    st.shape = shape;
    st.lambda = x(6);
    st.c = {x(0), x(1), x(2), x(3), x(4), x(5)};
    st.fit_residual = res;
    locate_axis(&st);
    return st;
  }
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "shape fit found no admissible state (best residual %.3e)",
                best_residual);
  throw AccuracyError(msg);
}

std::array<double, 7> constraint_residuals(const AnalyticState& st) {
  Eigen::Matrix<double, 7, 1> x;
  x << st.c[0], st.c[1], st.c[2], st.c[3], st.c[4], st.c[5], st.lambda;
  const Eigen::Matrix<double, 7, 1> F = residual7(st.shape, x);
  std::array<double, 7> out;
  for (int k = 0; k < 7; ++k) out[k] = F(k);
  return out;
}

FieldSample exact_B(const AnalyticState& st, double r, double z) {
  const PsiDerivs p = psi_eval(st, r, z);
  return {-p.z / r, st.lambda * p.v / r, p.r / r};
}

double toroidal_flux(const AnalyticState& st, const CurveGrid& grid) {
  // Counterclockwise circulation of B_pol equals -lambda times the area
  // integral of B_phi over the enclosed cross-section.
  double circ = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    const FieldSample b = exact_B(st, grid.r(j), grid.z(j));
    circ += b.Br * grid.rs(j) + b.Bz * grid.zs(j);
  }
  circ *= grid.weight();
  return -circ / st.lambda;
}

ChordRoots level_chord_roots(const AnalyticState& st, double level) {
  auto bisect = [&](double a, double b) {
    double fa = psi_eval(st, a, 0.0).v - level;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = psi_eval(st, m, 0.0).v - level;
      if (fa * fm <= 0.0)
        b = m;
      else {
        a = m;
        fa = fm;
      }
      if (b - a < 1e-16 * std::max(1.0, std::abs(a))) break;
    }
    return 0.5 * (a + b);
  };
  auto march = [&](double dir) {
    const double h = dir * st.shape.eps / 200.0;
    double prev = st.r_axis;
    for (int k = 1; k <= 400; ++k) {
      const double r = st.r_axis + k * h;
      if (r <= 0.0) break;
      if (psi_eval(st, r, 0.0).v - level <= 0.0)
        return dir > 0 ? bisect(prev, r) : bisect(r, prev);
      prev = r;
    }
    throw GeometryError("level not attained on the equatorial chord");
  };
  if (level >= st.psi_axis)
    throw GeometryError("level not attained on the equatorial chord");
  ChordRoots out;
  out.r_out = march(+1.0);
  out.r_in = march(-1.0);
  return out;
}

std::unique_ptr<GeneratingCurve> trace_level_set(const AnalyticState& st,
                                                 double level, int n_samples) {
  const double tol = 1e-13 * std::max(1.0, std::abs(st.psi_axis));
  auto project = [&](std::array<double, 2> x) {
    for (int it = 0; it < 50; ++it) {
      const PsiDerivs p = psi_eval(st, x[0], x[1]);
      const double d = p.v - level;
      const double g2 = p.r * p.r + p.z * p.z;
      if (g2 < 1e-20)
        throw GeometryError("level-set corrector hit a critical point");
      x[0] -= d * p.r / g2;
      x[1] -= d * p.z / g2;
      if (std::abs(d) < tol) return x;
    }
    throw GeometryError("level-set corrector failed to converge");
  };
  // counterclockwise unit tangent for a positive-core state
  auto tangent = [&](const std::array<double, 2>& x) {
    const PsiDerivs p = psi_eval(st, x[0], x[1]);
    const double g = std::hypot(p.r, p.z);
    if (g < 1e-10)
      throw GeometryError("level-set tangent undefined at a critical point");
    return std::array<double, 2>{p.z / g, -p.r / g};
  };

  const ChordRoots roots = level_chord_roots(st, level);
  const std::array<double, 2> x0 = {roots.r_out, 0.0};
  const double span = std::max(st.shape.eps, st.shape.eps * st.shape.kappa);
  // The step has to stay well under the tightest curvature radius (the
  // inboard pinch of strongly shaped cores), and the leftover chord-vs-arc
  // parameter jitter scales like h^2, so march finely; the cost is a few
  // thousand psi evaluations.
  const double h =
      std::min(span / 600.0, 0.5 * (roots.r_out - st.r_axis));

  std::vector<std::array<double, 2>> pts{x0};
  double winding = 0.0;
  std::array<double, 2> x = x0;
  const int max_steps = 100000;
  int steps = 0;
  for (; steps < max_steps; ++steps) {
    const std::array<double, 2> t1 = tangent(x);
    std::array<double, 2> xm = {x[0] + 0.5 * h * t1[0], x[1] + 0.5 * h * t1[1]};
    const std::array<double, 2> t2 = tangent(project(xm));
    std::array<double, 2> xn = project(
        {x[0] + h * t2[0], x[1] + h * t2[1]});
    if (xn[0] <= 0.0 || std::abs(xn[1]) > 4.0 * span + 1.0 ||
        std::abs(xn[0] - st.shape.R0) > 4.0 * span + 1.0)
      throw GeometryError("level set leaves the search window");
    const double a0 = std::atan2(x[1], x[0] - st.r_axis);
    const double a1 = std::atan2(xn[1], xn[0] - st.r_axis);
    double da = a1 - a0;
    while (da > M_PI) da -= 2.0 * M_PI;
    while (da < -M_PI) da += 2.0 * M_PI;
    winding += da;
    x = xn;
    if (winding >= 2.0 * M_PI - 0.5 &&
        std::hypot(x[0] - x0[0], x[1] - x0[1]) < 1.5 * h) {
      break;
    }
    pts.push_back(x);
  }
  if (steps == max_steps)
    throw GeometryError("level set failed to close");

  // chord-length resampling with projection back onto the level set
  auto resample = [&](const std::vector<std::array<double, 2>>& poly,
                      int count) {
    const int m = static_cast<int>(poly.size());
    std::vector<double> cum(m + 1, 0.0);
    for (int j = 0; j < m; ++j) {
      const auto& a = poly[j];
      const auto& b = poly[(j + 1) % m];
      cum[j + 1] = cum[j] + std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    const double P = cum[m];
    std::vector<std::array<double, 2>> nodes(count);
    int seg = 0;
    for (int k = 0; k < count; ++k) {
      const double target = P * k / count;
      while (seg + 1 <= m && cum[seg + 1] < target) ++seg;
      const auto& a = poly[seg];
      const auto& b = poly[(seg + 1) % m];
      const double f = (target - cum[seg]) / (cum[seg + 1] - cum[seg]);
      nodes[k] = project({a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])});
    }
    return nodes;
  };

  // Equidistribute true arclength by passing through a dense provisional
  // curve; the polygon resample alone leaves parameter jitter that shows
  // up as spurious high modes in the final interpolant.
  const int n_fine = std::max(1024, 4 * n_samples);
  const TrigCurve provisional(resample(pts, n_fine));
  const CurveGrid fine = discretize_arclength(provisional, n_fine);
  std::vector<std::array<double, 2>> walk(n_fine);
  for (int k = 0; k < n_fine; ++k)
    walk[k] = project({fine.r(k), fine.z(k)});
  return std::make_unique<TrigCurve>(resample(walk, n_samples));
}

}  // namespace taylor
