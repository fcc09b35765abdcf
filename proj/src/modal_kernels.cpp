#include "taylor/modal_kernels.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "taylor/errors.hpp"
#include "taylor/quadrature.hpp"
#include "taylor/specfun.hpp"

namespace taylor {

namespace {

constexpr double kPi = 3.141592653589793238463;
constexpr double kFourPi = 4.0 * kPi;
using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// (e^{i lam R} - 1)/(4 pi R); series below lam R = 0.5 where the direct
// form cancels, direct above.
cd smooth_of_R(double lam, double R) {
  if (lam == 0.0) return {0.0, 0.0};
  const double x = lam * R;
  if (std::fabs(x) < 0.5) {
    const cd ix = kI * x;
    cd term = 1.0, sum = 1.0;
    for (int k = 1; k < 24; ++k) {
      term *= ix / double(k + 1);
      sum += term;
      if (std::abs(term) < 1e-17) break;
    }
    return kI * lam / kFourPi * sum;
  }
  return (std::exp(kI * x) - 1.0) / (kFourPi * R);
}

// d/dR of the above; series sum_{k>=2} (k-1)(i lam)^k R^{k-2}/k!
cd dsmooth_of_R(double lam, double R) {
  if (lam == 0.0) return {0.0, 0.0};
  const double x = lam * R;
  if (std::fabs(x) < 0.5) {
    const cd u = kI * lam;
    cd term = 0.5 * u * u;  // k = 2
    cd sum = term;
    for (int k = 3; k < 26; ++k) {
      term *= (u * R) * double(k - 1) / (double(k) * double(k - 2));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / kFourPi;
  }
  const cd e = std::exp(kI * x);
  return (kI * x * e - (e - 1.0)) / (kFourPi * R * R);
}

struct PairGeom {
  double rr2;    // 2 r r'
  double srr;    // sqrt(r r')
  double chim1;  // chi - 1, cancellation-free
  double dz;     // z - z'
  double R(double theta) const {
    double s = std::sin(0.5 * theta);
    return std::sqrt(rr2 * (chim1 + 2.0 * s * s));
  }
};

PairGeom pair_geom(const KernelArgs& a) {
  if (!(a.r > 0.0) || !(a.rp > 0.0))
    throw std::domain_error("modal kernels: r and r' must be positive");
  PairGeom p;
  const double dr = a.r - a.rp;
  p.dz = a.z - a.zp;
  p.rr2 = 2.0 * a.r * a.rp;
  p.srr = std::sqrt(a.r * a.rp);
  p.chim1 = (dr * dr + p.dz * p.dz) / p.rr2;
  return p;
}

}  // namespace

cd near_diagonal_smooth(const KernelArgs& a, double theta) {
  return smooth_of_R(a.lambda, pair_geom(a).R(theta));
}

ModalKernelValue modal_all(const KernelArgs& a, bool want_grad) {
  const PairGeom p = pair_geom(a);
  if (p.chim1 <= 1e-14)
    throw std::domain_error(
        "modal kernels: coincident points; use the singular-correction path");
  const double Rmax = std::sqrt(p.rr2 * (p.chim1 + 2.0));
  if (a.lambda * Rmax > 200.0)
    throw AccuracyError("modal kernels: oscillation budget exceeded, lambda*R = " +
                        std::to_string(a.lambda * Rmax));

  // modes whose plain kernels feed g, g_cos, g_sin; g_{-k} = g_k
  const int want[3] = {std::abs(a.ell), std::abs(a.ell - 1),
                       std::abs(a.ell + 1)};
  int ks[3], nk = 0;
  for (int w : want) {
    bool seen = false;
    for (int i = 0; i < nk; ++i) seen = seen || ks[i] == w;
    if (!seen) ks[nk++] = w;
  }

  // Statics for k >= 2 go through the adaptive sweep only for well
  // separated pairs.  Near the diagonal the 1/R^2 gradient integrand
  // outruns the subdivision budget, so chi <= 2 switches to the upward
  // Legendre recurrence seeded by the closed forms; there each step
  // amplifies roundoff by at most 2 chi <= 4, which is harmless for the
  // low mode numbers this solver uses.
  const bool recur_static = p.chim1 <= 1.0;

  // component layout inside the single adaptive sweep
  struct Slot {
    int k;
    int sm_v = -1, sm_r = -1, sm_z = -1;  // smooth part: value, d/dr, d/dz
    int st_v = -1, st_r = -1, st_z = -1;  // adaptive static (k >= 2, far)
  } slot[3];
  int m = 0;
  const bool have_smooth = a.lambda != 0.0;
  for (int i = 0; i < nk; ++i) {
    slot[i].k = ks[i];
    if (have_smooth) {
      slot[i].sm_v = m++;
      if (want_grad) {
        slot[i].sm_r = m++;
        slot[i].sm_z = m++;
      }
    }
    if (ks[i] >= 2 && !recur_static) {
      slot[i].st_v = m++;
      if (want_grad) {
        slot[i].st_r = m++;
        slot[i].st_z = m++;
      }
    }
  }

  Eigen::VectorXcd moments = Eigen::VectorXcd::Zero(m);
  if (m > 0) {
    auto slots_at = [&](double th, double cth, double R) {
      Eigen::VectorXcd out(m);
      const double dRdr = (a.r - a.rp * cth) / R;
      const double dRdz = p.dz / R;
      const cd sv = have_smooth ? smooth_of_R(a.lambda, R) : cd{};
      const cd sd = (have_smooth && want_grad) ? dsmooth_of_R(a.lambda, R) : cd{};
      for (int i = 0; i < nk; ++i) {
        const Slot& sl = slot[i];
        const double ck = std::cos(sl.k * th);
        if (sl.sm_v >= 0) out[sl.sm_v] = sv * ck;
        if (sl.sm_r >= 0) {
          out[sl.sm_r] = sd * dRdr * ck;
          out[sl.sm_z] = sd * dRdz * ck;
        }
        if (sl.st_v >= 0) out[sl.st_v] = ck / (kFourPi * R);
        if (sl.st_r >= 0) {
          out[sl.st_r] = -dRdr * ck / (kFourPi * R * R);
          out[sl.st_z] = -dRdz * ck / (kFourPi * R * R);
        }
      }
      return out;
    };
    const auto zero = Eigen::VectorXcd::Zero(m).eval();
    if (p.chim1 < 1e-6) {
      // The |theta| kink of R at scale sqrt(chi - 1) outruns panel
      // subdivision when the pair sits this close.  Substituting
      // 2 sin(theta/2) = sqrt(2 (chi-1)) sinh v makes R = A cosh v
      // analytic in v on (0, pi/2]; the remainder of the sweep is
      // kink-free.  Statics never take this branch (chi <= 2).
      const double b = std::sqrt(p.chim1);
      const double vmax = std::asinh(1.0 / b);
      auto sub = [&](double v) {
        const double x = std::sqrt(2.0) * b * std::sinh(v);  // 2 sin(th/2)
        const double th = 2.0 * std::asin(0.5 * x);
        const double cth = 1.0 - 0.5 * x * x;
        const double R = std::sqrt(p.rr2) * b * std::cosh(v);
        const double jac = std::sqrt(2.0) * b * std::cosh(v) /
                           std::sqrt(1.0 - 0.25 * x * x);
        return (slots_at(th, cth, R) * jac).eval();
      };
      auto tail = [&](double th) {
        return slots_at(th, std::cos(th), p.R(th));
      };
      moments = integrate_adaptive(sub, 0.0, vmax, 1e-12, zero) +
                integrate_adaptive(tail, 0.5 * kPi, kPi, 1e-12, zero);
    } else {
      auto integrand = [&](double th) {
        return slots_at(th, std::cos(th), p.R(th));
      };
      moments = integrate_adaptive(integrand, 0.0, kPi, 1e-12, zero);
    }
    moments /= kPi;
  }

  // closed-form statics for k <= 1 and their chi-route gradients
  int kmax = 0;
  bool have_k01 = false;
  for (int i = 0; i < nk; ++i) {
    kmax = std::max(kmax, ks[i]);
    have_k01 = have_k01 || ks[i] <= 1;
  }
  QHalvesDerivs q{};
  if (have_k01 || (recur_static && kmax >= 2))
    q = legendre_Q_halves_derivs_m1(p.chim1);

  // (k+1/2) Q_{k+1/2} = 2k chi Q_{k-1/2} - (k-1/2) Q_{k-3/2}, plus the
  // differentiated form, climbing from the seeds above.
  std::vector<double> Qk, dQk;
  if (recur_static && kmax >= 2) {
    Qk.resize(kmax + 1);
    dQk.resize(kmax + 1);
    Qk[0] = q.Qm;
    Qk[1] = q.Qp;
    dQk[0] = q.dQm;
    dQk[1] = q.dQp;
    const double chi = 1.0 + p.chim1;
    for (int k = 1; k < kmax; ++k) {
      Qk[k + 1] = (2.0 * k * chi * Qk[k] - (k - 0.5) * Qk[k - 1]) / (k + 0.5);
      dQk[k + 1] = (2.0 * k * (Qk[k] + chi * dQk[k]) - (k - 0.5) * dQk[k - 1]) /
                   (k + 0.5);
    }
  }
  const double stat_scale = 1.0 / (4.0 * kPi * kPi * p.srr);
  const double dchi_dr =
      (a.r * a.r - a.rp * a.rp - p.dz * p.dz) / (2.0 * a.r * a.r * a.rp);
  const double dchi_dz = p.dz / (a.r * a.rp);

  cd gv[3], gr[3], gz[3];
  for (int i = 0; i < nk; ++i) {
    const Slot& sl = slot[i];
    cd v = sl.sm_v >= 0 ? moments[sl.sm_v] : cd{};
    cd vr = sl.sm_r >= 0 ? moments[sl.sm_r] : cd{};
    cd vz = sl.sm_z >= 0 ? moments[sl.sm_z] : cd{};
    if (sl.k >= 2 && !recur_static) {
      if (sl.st_v >= 0) v += moments[sl.st_v];
      if (sl.st_r >= 0) {
        vr += moments[sl.st_r];
        vz += moments[sl.st_z];
      }
    } else {
      const double Q = sl.k >= 2 ? Qk[sl.k] : (sl.k == 0 ? q.Qm : q.Qp);
      const double dQ = sl.k >= 2 ? dQk[sl.k] : (sl.k == 0 ? q.dQm : q.dQp);
      v += Q * stat_scale;
      if (want_grad) {
        vr += (dQ * dchi_dr - Q / (2.0 * a.r)) * stat_scale;
        vz += dQ * dchi_dz * stat_scale;
      }
    }
    gv[i] = v;
    gr[i] = vr;
    gz[i] = vz;
  }

  auto at = [&](int k) {
    for (int i = 0; i < nk; ++i)
      if (ks[i] == k) return i;
    return 0;  // unreachable
  };
  const int i0 = at(std::abs(a.ell));
  const int im = at(std::abs(a.ell - 1));
  const int ip = at(std::abs(a.ell + 1));

  ModalKernelValue out;
  out.g = gv[i0];
  out.g_cos = 0.5 * (gv[ip] + gv[im]);
  out.g_sin = (gv[ip] - gv[im]) / (2.0 * kI);
  if (want_grad) {
    out.grad.dg_dr = gr[i0];
    out.grad.dg_dz = gz[i0];
    out.grad.dgcos_dr = 0.5 * (gr[ip] + gr[im]);
    out.grad.dgcos_dz = 0.5 * (gz[ip] + gz[im]);
    out.grad.dgsin_dr = (gr[ip] - gr[im]) / (2.0 * kI);
    out.grad.dgsin_dz = (gz[ip] - gz[im]) / (2.0 * kI);
  } else {
    out.grad = ModalGrad{};
  }
  return out;
}

cd modal_g(const KernelArgs& a) { return modal_all(a, false).g; }

ModalTrig modal_trig(const KernelArgs& a) {
  const ModalKernelValue v = modal_all(a, false);
  return ModalTrig{v.g_cos, v.g_sin};
}

ModalGrad modal_grad(const KernelArgs& a) { return modal_all(a, true).grad; }

}  // namespace taylor
