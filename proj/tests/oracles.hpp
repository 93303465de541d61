// oracles.hpp - test-only reference implementations kept independent of the
// production generator builder: componentwise equations of motion for each
// engine variant, and a fixed-step RK4 relaxation integrator.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "masertur/models.hpp"

namespace masertur::testing {

using Vec = Eigen::VectorXcd;
using Cx = std::complex<double>;

// Model I component equations, basis (gg, 00, 11, 10, 01).
inline Vec rhs_model1(const EngineParams& pr, const Vec& r) {
    const double gh = pr.gamma_h, gc = pr.gamma_c, lam = pr.lambda;
    const double nh = pr.n_h, nc = pr.n_c;
    const Cx i(0.0, 1.0);
    Vec d(5);
    d[0] = gh * (nh + 1.0) * r[2] + gc * (nc + 1.0) * r[1] - (gh * nh + gc * nc) * r[0];
    d[1] = -i * lam * (r[3] - r[4]) - gc * ((nc + 1.0) * r[1] - nc * r[0]);
    d[2] = i * lam * (r[3] - r[4]) - gh * ((nh + 1.0) * r[2] - nh * r[0]);
    d[3] = i * lam * (r[2] - r[1]) - 0.5 * (gh * (nh + 1.0) + gc * (nc + 1.0)) * r[3];
    d[4] = -i * lam * (r[2] - r[1]) - 0.5 * (gh * (nh + 1.0) + gc * (nc + 1.0)) * r[4];
    return d;
}

// Model II component equations, basis (gg, 00, 11, g0, 0g). The coherence
// drive sign follows the dissipator construction (the consistent choice).
inline Vec rhs_model2(const EngineParams& pr, const Vec& r) {
    const double gh = pr.gamma_h, gc = pr.gamma_c, lam = pr.lambda;
    const double nh = pr.n_h, nc = pr.n_c;
    const Cx i(0.0, 1.0);
    Vec d(5);
    d[0] = gh * (nh + 1.0) * r[2] - gh * nh * r[0] - i * lam * (r[4] - r[3]);
    d[1] = gc * (nc + 1.0) * r[2] - gc * nc * r[1] + i * lam * (r[4] - r[3]);
    d[2] = gh * nh * r[0] + gc * nc * r[1] - (gh * (nh + 1.0) + gc * (nc + 1.0)) * r[2];
    d[3] = -i * lam * (r[1] - r[0]) - 0.5 * (gh * nh + gc * nc) * r[3];
    d[4] = i * lam * (r[1] - r[0]) - 0.5 * (gh * nh + gc * nc) * r[4];
    return d;
}

// Four-level component equations, basis
// (gg, 00, 11, 22, 12, 21, 10, 01, 20, 02); the rho_22 cross group carries
// the minus sign required by the dissipator form, and rho_gg is kept
// explicit (its equation is the trace complement of the printed set plus the
// cross emission feed).
inline Vec rhs_nic(const EngineParams& pr, const Vec& r) {
    const double gh = pr.gamma_h, gc = pr.gamma_c, lam = pr.lambda;
    const double nh = pr.n_h, nc = pr.n_c, p = pr.p;
    const Cx i(0.0, 1.0);
    const Cx rgg = r[0], r00 = r[1], r11 = r[2], r22 = r[3];
    const Cx r12 = r[4], r21 = r[5], r10 = r[6], r01 = r[7], r20 = r[8], r02 = r[9];
    Vec d(10);
    d[2] = i * lam * (r10 - r01) - gh * ((nh + 1.0) * r11 - nh * rgg) -
           0.5 * p * gh * (nh + 1.0) * (r12 + r21);
    d[3] = i * lam * (r20 - r02) - gh * ((nh + 1.0) * r22 - nh * rgg) -
           0.5 * p * gh * (nh + 1.0) * (r12 + r21);
    d[1] = i * lam * (r01 + r02 - r10 - r20) - gc * ((nc + 1.0) * r00 - nc * rgg);
    d[0] = gc * (nc + 1.0) * r00 - gc * nc * rgg +
           gh * (nh + 1.0) * (r11 + r22) - 2.0 * gh * nh * rgg +
           p * gh * (nh + 1.0) * (r12 + r21);
    d[4] = i * lam * (r10 - r02) - gh * (nh + 1.0) * r12 -
           0.5 * p * gh * ((nh + 1.0) * (r11 + r22) - 2.0 * nh * rgg);
    d[5] = -i * lam * (r01 - r20) - gh * (nh + 1.0) * r21 -
           0.5 * p * gh * ((nh + 1.0) * (r11 + r22) - 2.0 * nh * rgg);
    d[6] = i * lam * (r11 - r00 + r12) -
           0.5 * (gc * (nc + 1.0) + gh * (nh + 1.0)) * r10 -
           0.5 * p * gh * (nh + 1.0) * r20;
    d[7] = -i * lam * (r11 - r00 + r21) -
           0.5 * (gc * (nc + 1.0) + gh * (nh + 1.0)) * r01 -
           0.5 * p * gh * (nh + 1.0) * r02;
    d[8] = i * lam * (r22 - r00 + r21) -
           0.5 * (gc * (nc + 1.0) + gh * (nh + 1.0)) * r20 -
           0.5 * p * gh * (nh + 1.0) * r10;
    d[9] = -i * lam * (r22 - r00 + r12) -
           0.5 * (gc * (nc + 1.0) + gh * (nh + 1.0)) * r02 -
           0.5 * p * gh * (nh + 1.0) * r01;
    return d;
}

inline Vec reference_rhs(ModelKind kind, const EngineParams& pr, const Vec& r) {
    switch (kind) {
    case ModelKind::ThreeLevelI: return rhs_model1(pr, r);
    case ModelKind::ThreeLevelII: return rhs_model2(pr, r);
    default: return rhs_nic(pr, r);
    }
}

// RK4 relaxation of d rho / dt = L rho until the velocity drops below tol.
inline Vec relax_rk4(const Eigen::MatrixXcd& L, Vec rho, double dt, double tol,
                     long max_steps = 4000000) {
    for (long s = 0; s < max_steps; ++s) {
        const Vec k1 = L * rho;
        if (k1.cwiseAbs().maxCoeff() < tol) break;
        const Vec k2 = L * (rho + 0.5 * dt * k1);
        const Vec k3 = L * (rho + 0.5 * dt * k2);
        const Vec k4 = L * (rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

} // namespace masertur::testing
