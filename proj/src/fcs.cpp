// fcs.cpp - eigenvalue and characteristic-polynomial cumulant extraction,
// plus the quantum-jump Monte Carlo oracle

#include "masertur/fcs.hpp"
#include "masertur/compensated.hpp"
#include "masertur/rng.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace masertur {

const char* to_string(CumulantMethod m) {
    switch (m) {
    case CumulantMethod::EigFD: return "eigfd";
    case CumulantMethod::CharPoly: return "charpoly";
    case CumulantMethod::Trajectory: return "trajectory";
    }
    return "?";
}

CumulantMethod cumulant_method_from_string(const std::string& s) {
    if (s == "eigfd") return CumulantMethod::EigFD;
    if (s == "charpoly") return CumulantMethod::CharPoly;
    if (s == "trajectory") return CumulantMethod::Trajectory;
    throw invalid_params("unknown method '" + s + "' (eigfd|charpoly|trajectory)");
}

namespace {

constexpr double kImagResidualTol = 1e-6;

void check_step(double step) {
    if (!(step > 0.0 && step <= 0.1))
        throw invalid_params("step must lie in (0, 0.1], got " + std::to_string(step));
}

// power of two near the largest entry: dividing by it is exact, so the
// scaled generator carries bit-identical structure
double rate_scale(const Eigen::MatrixXcd& L) {
    const double m = std::max(L.cwiseAbs().maxCoeff(), 1e-300);
    return std::exp2(std::round(std::log2(m)));
}

// Two-sided Rayleigh-quotient polish of a computed eigenpair. The quotient's
// error is quadratic in the residuals, which keeps small eigenvalues at full
// relative precision instead of eps * ||L||.
std::complex<double> refine_eigenvalue(const Eigen::MatrixXcd& L,
                                       std::complex<double> xi,
                                       const Eigen::VectorXcd& v0) {
    const int n = static_cast<int>(L.rows());
    Eigen::MatrixXcd shifted = L - xi * Eigen::MatrixXcd::Identity(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    Eigen::VectorXcd v = lu.solve(v0);
    const double vn = v.norm();
    if (!std::isfinite(vn) || vn == 0.0) return xi;
    v /= vn;
    Eigen::VectorXcd w = shifted.adjoint().partialPivLu().solve(v);
    const double wn = w.norm();
    if (!std::isfinite(wn) || wn == 0.0) return xi;
    w /= wn;
    const std::complex<double> denom = w.dot(v);
    if (std::abs(denom) < 1e-10) return xi; // nearly defective pair
    const std::complex<double> refined = w.dot(L * v) / denom;
    return std::isfinite(refined.real()) && std::isfinite(refined.imag()) ? refined : xi;
}

} // namespace

std::complex<double> dominant_eigenvalue(const TiltedLiouvillian& L) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L.entries, true);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::EigenSolverFailure, "eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    int top = 0, second = -1;
    for (int i = 1; i < ev.size(); ++i) {
        if (ev[i].real() > ev[top].real()) {
            second = top;
            top = i;
        } else if (second < 0 || ev[i].real() > ev[second].real()) {
            second = i;
        }
    }
    if (L.chi != 0.0 && second >= 0) {
        const double re_gap = ev[top].real() - ev[second].real();
        const double sep = std::abs(ev[top] - ev[second]);
        if (re_gap < 1e-10 && sep > 1e-8 * rate_scale(L.entries))
            throw Error(ErrorCode::DegenerateDominantRoot,
                        "two eigenvalues tie in real part at chi != 0");
    }
    return refine_eigenvalue(L.entries, ev[top], es.eigenvectors().col(top));
}

namespace {

// L(chi) = M0 + e^{-i chi} E + e^{+i chi} A, with E and A the counted
// emission and absorption sandwiches. Everything is scaled by the largest
// generator entry.
struct TiltParts {
    Eigen::MatrixXcd L0, E, A;
    double scale = 1.0;
    int dim = 0;
};

TiltParts decompose_tilt(const LindbladModel& model) {
    TiltParts t;
    const Eigen::MatrixXcd L0_raw = superoperator_matrix(model, 0.0);
    t.scale = rate_scale(L0_raw);
    t.dim = static_cast<int>(L0_raw.rows());
    t.L0 = L0_raw / t.scale;
    const Eigen::MatrixXcd Lq = superoperator_matrix(model, M_PI / 2.0) / t.scale;
    const Eigen::MatrixXcd Lp = superoperator_matrix(model, M_PI) / t.scale;
    const Eigen::MatrixXcd M0 = (t.L0 + Lp) / 2.0;
    const Eigen::MatrixXcd sumEA = (t.L0 - Lp) / 2.0;
    const Eigen::MatrixXcd difEA = std::complex<double>(0.0, 1.0) * (Lq - M0);
    t.E = (sumEA + difEA) / 2.0;
    t.A = (sumEA - difEA) / 2.0;
    return t;
}

// Dominant-branch eigenvalue through xi(0) = 0 for small chi, by bordered
// Newton continuation from the steady state (whose components and sub-ulp
// tail stay separate summands throughout). The projection formula multiplies
// the exact tilt increment into the eigenvector, so the tiny eigenvalue
// keeps full relative precision instead of eps * ||L||.
std::complex<double> xi_continued(const TiltParts& t, const DensityVector& v0,
                                  int populations, double chi) {
    using Cx = std::complex<double>;
    const int n = t.dim;
    // e^{-i chi} - 1 and e^{+i chi} - 1 without cancellation
    const double s2 = std::sin(chi / 2.0);
    const Cx em(-2.0 * s2 * s2, -std::sin(chi));
    const Cx ap(-2.0 * s2 * s2, std::sin(chi));
    const Eigen::MatrixXcd DL = em * t.E + ap * t.A;

    // xi = u (DL (v0.hi + v0.lo + dv)) with u the exact population
    // functional, u L0 = 0 identically. All three summands stay separate:
    // adding them would round away the current-carrying imbalance.
    auto u_dl = [&](const Eigen::VectorXcd& x) {
        detail::CompensatedComplex acc;
        for (int i = 0; i < populations; ++i)
            for (int j = 0; j < n; ++j)
                if (DL(i, j) != 0.0) acc.add_product(DL(i, j), x[j]);
        return acc.value();
    };
    auto xi_of = [&](const Eigen::VectorXcd& dv) {
        return u_dl(v0.components) + u_dl(v0.tail) + u_dl(dv);
    };

    // residual of the untilted generator on the two-part steady state
    Eigen::VectorXcd r0(n);
    {
        const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n);
        r0 = detail::compensated_residual(t.L0, v0.components, zero) + t.L0 * v0.tail;
    }

    Eigen::VectorXcd dv = Eigen::VectorXcd::Zero(n);
    Cx xi = xi_of(dv);
    Eigen::MatrixXcd bord = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    Eigen::VectorXcd rhs(n + 1);
    for (int it = 0; it < 3; ++it) {
        // solve (L(chi) - xi)(dv) = xi v0 - DL v0 - L0 v0, gauge u dv = 0
        bord.topLeftCorner(n, n) = t.L0 + DL - xi * Eigen::MatrixXcd::Identity(n, n);
        bord.block(0, n, n, 1) = -v0.components;
        bord.row(n).setZero();
        for (int j = 0; j < populations; ++j) bord(n, j) = 1.0;
        for (int i = 0; i < n; ++i) {
            detail::CompensatedComplex acc;
            acc.add_product(xi, v0.components[i]);
            acc.add_product(xi, v0.tail[i]);
            for (int j = 0; j < n; ++j)
                if (DL(i, j) != 0.0) {
                    acc.add_product(-DL(i, j), v0.components[j]);
                    acc.add_product(-DL(i, j), v0.tail[j]);
                }
            acc.add(-r0[i]);
            rhs[i] = acc.value();
        }
        rhs(n) = 0.0;
        const Eigen::VectorXcd delta = bord.partialPivLu().solve(rhs);
        if (!delta.allFinite()) break;
        dv = delta.head(n);
        xi = xi_of(dv);
    }
    if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag()))
        throw Error(ErrorCode::EigenSolverFailure,
                    "deflated eigenvalue continuation diverged");
    return xi;
}

} // namespace

Cumulants cumulants_eig_fd(ModelKind kind, const EngineParams& params, double step) {
    check_step(step);
    const LindbladModel model = lindblad_model(kind, params);
    const TiltParts t = decompose_tilt(model);
    const int np = kind == ModelKind::FourLevelNIC ? 4 : 3;
    const DensityVector v0 = steady_state(kind, params);
    auto xi = [&](double chi) { return t.scale * xi_continued(t, v0, np, chi); };
    const std::complex<double> x0 = xi(0.0);
    const double scale = t.scale;

    auto stencil = [&](double h) {
        const std::complex<double> xp = xi(h), xm = xi(-h);
        const std::complex<double> iu(0.0, 1.0);
        const std::complex<double> d1 = iu * (xp - xm) / (2.0 * h);
        const std::complex<double> d2 = -(xp - 2.0 * x0 + xm) / (h * h);
        return std::pair{d1, d2};
    };
    auto [a1, a2] = stencil(step);
    auto [b1, b2] = stencil(step / 2.0);
    const std::complex<double> cur = (4.0 * b1 - a1) / 3.0;
    const std::complex<double> var = (4.0 * b2 - a2) / 3.0;

    Cumulants out;
    out.method = CumulantMethod::EigFD;
    out.current = cur.real();
    out.variance = var.real();
    out.diagnostics["step"] = step;
    out.diagnostics["imag_residual_current"] = std::abs(cur.imag()) / scale;
    out.diagnostics["imag_residual_variance"] = std::abs(var.imag()) / scale;
    out.diagnostics["richardson_delta_current"] = std::abs(b1 - a1);
    out.diagnostics["richardson_delta_variance"] = std::abs(b2 - a2);
    const double rich_rel =
        std::abs(b2 - a2) / std::max({std::abs(var.real()), std::abs(cur.real()), 1e-300});
    if (out.diagnostics["imag_residual_current"] > kImagResidualTol ||
        out.diagnostics["imag_residual_variance"] > kImagResidualTol || rich_rel > 0.05)
        throw Error(ErrorCode::StepTooSmall,
                    "finite-difference cancellation exceeds tolerance");
    return out;
}

// ---------------------------------------------------------------------------
// characteristic polynomial route
//
// The counting field enters exactly two generator entries, as z = e^{-i chi}
// on the counted emission and 1/z on the counted absorption. Every charpoly
// coefficient is therefore a first-harmonic trigonometric polynomial
// c(chi) = a + b z + g / z, and three angles chi in {0, pi/2, pi} determine
// its chi-derivatives exactly; no small-step differencing is involved. The
// c0 derivatives come from cofactor identities instead, which keeps them at
// full relative precision even where they are orders of magnitude below the
// other coefficients.

namespace {

// Faddeev-LeVerrier recursion: coefficients of det(xi I - A), monic,
// index k = power of xi. Callers pre-scale A to keep entries O(1).
std::vector<std::complex<double>> monic_charpoly(const Eigen::MatrixXcd& A) {
    const int n = static_cast<int>(A.rows());
    std::vector<std::complex<double>> c(n + 1);
    c[n] = 1.0;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        const Eigen::MatrixXcd AM = A * M;
        c[n - k] = -AM.trace() / static_cast<double>(k);
        if (k < n) M = AM + c[n - k] * Eigen::MatrixXcd::Identity(n, n);
    }
    return c;
}

std::complex<double> minor_determinant(const Eigen::MatrixXcd& m, int row, int col) {
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXcd sub(n - 1, n - 1);
    for (int i = 0, si = 0; i < n; ++i) {
        if (i == row) continue;
        for (int j = 0, sj = 0; j < n; ++j) {
            if (j == col) continue;
            sub(si, sj) = m(i, j);
            ++sj;
        }
        ++si;
    }
    return sub.partialPivLu().determinant();
}

struct SingleEntry {
    int row = -1, col = -1;
    std::complex<double> value{0.0, 0.0};
};

SingleEntry locate_single_entry(const Eigen::MatrixXcd& m, double tol) {
    SingleEntry e;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (std::abs(m(i, j)) <= tol) continue;
            if (e.row >= 0)
                throw Error(ErrorCode::EigenSolverFailure,
                            "tilted sandwich spreads over several entries");
            e = {i, j, m(i, j)};
        }
    return e;
}

struct CoeffDerivs {
    // printed sign convention det(L - xi I), computed on L/scale; the
    // coefficient of xi^k regains a factor scale^(dim - k)
    double c0p, c0pp, c1, c1p, c2;
    double imag_residual;
    double scale;
    int dim;
};

CoeffDerivs coeff_derivs(const std::function<TiltedLiouvillian(double)>& L_at) {
    const Eigen::MatrixXcd L0_raw = L_at(0.0).entries;
    const double scale = rate_scale(L0_raw);
    const int dim = static_cast<int>(L0_raw.rows());
    const Eigen::MatrixXcd L0 = L0_raw / scale;
    const Eigen::MatrixXcd Lq = L_at(M_PI / 2.0).entries / scale;
    const Eigen::MatrixXcd Lp = L_at(M_PI).entries / scale;

    // decompose L(chi) = M0 + z E + A / z with z = e^{-i chi}
    const Eigen::MatrixXcd M0 = (L0 + Lp) / 2.0;
    const Eigen::MatrixXcd sumEA = (L0 - Lp) / 2.0;
    const Eigen::MatrixXcd difEA =
        std::complex<double>(0.0, 1.0) * (Lq - M0); // E - A
    const Eigen::MatrixXcd E = (sumEA + difEA) / 2.0;
    const Eigen::MatrixXcd A = (sumEA - difEA) / 2.0;

    const double sign = (dim % 2 == 0) ? 1.0 : -1.0; // det(L - xi I) convention
    auto c_0 = monic_charpoly(L0);
    const auto c_q = monic_charpoly(Lq);
    const auto c_p = monic_charpoly(Lp);

    // Near a kernel degeneracy (p -> +-1) the low coefficients fall beneath
    // the recursion's absolute noise. c1 equals minus the determinant of the
    // generator bordered by the steady state and the trace functional, which
    // an LU evaluates to relative precision; c2 is rebuilt from the spectrum.
    if (std::abs(c_0[1]) < 1e-4 || std::abs(c_0[2]) < 1e-6) {
        const int np = (dim == 10) ? 4 : 3;
        Eigen::MatrixXcd trace_sys = L0;
        trace_sys.row(0).setZero();
        for (int j = 0; j < np; ++j) trace_sys(0, j) = 1.0;
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
        rhs(0) = 1.0;
        const Eigen::VectorXcd v0 = trace_sys.partialPivLu().solve(rhs);
        if (v0.allFinite()) {
            Eigen::MatrixXcd bord = Eigen::MatrixXcd::Zero(dim + 1, dim + 1);
            bord.topLeftCorner(dim, dim) = L0;
            bord.block(0, dim, dim, 1) = -v0;
            for (int j = 0; j < np; ++j) bord(dim, j) = 1.0;
            const std::complex<double> det_b = bord.partialPivLu().determinant();
            c_0[1] = sign * (-det_b);
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L0, false);
        if (es.info() == Eigen::Success) {
            std::vector<std::complex<double>> e(dim + 1, 0.0);
            e[0] = 1.0;
            for (int i = 0; i < dim; ++i)
                for (int k = std::min(i + 1, dim); k >= 1; --k)
                    e[k] += es.eigenvalues()[i] * e[k - 1];
            // det(L - xi I): c_k = (-1)^k e_{n-k}; match the monic storage
            c_0[2] = sign * e[dim - 2];
        }
    }

    // c0 derivatives from the bilinear determinant expansion in the two
    // counted entries: c0' = eps B - alf C, c0'' = eps B + alf C with the
    // cofactors of the de-tilted generator
    const SingleEntry em = locate_single_entry(E, 1e-12);
    const SingleEntry ab = locate_single_entry(A, 1e-12);
    std::complex<double> epsB{0.0, 0.0}, alfC{0.0, 0.0};
    if (em.row >= 0) {
        const double s = ((em.row + em.col) % 2 == 0) ? 1.0 : -1.0;
        epsB = em.value * s * minor_determinant(M0, em.row, em.col);
    }
    if (ab.row >= 0) {
        const double s = ((ab.row + ab.col) % 2 == 0) ? 1.0 : -1.0;
        alfC = ab.value * s * minor_determinant(M0, ab.row, ab.col);
    }
    const std::complex<double> c0p = epsB - alfC;
    const std::complex<double> c0pp = epsB + alfC;

    // first-harmonic extraction for c1': c'(0) = -Im c(pi/2), with the
    // residual Re c(pi/2) - (c(0) + c(pi))/2 monitoring consistency
    const std::complex<double> c1_mid = sign * c_q[1];
    const std::complex<double> c1_alpha = sign * (c_0[1] + c_p[1]) / 2.0;
    const double c1p = -c1_mid.imag();

    double cscale = 1e-300;
    for (int k = 0; k <= 2; ++k)
        cscale = std::max({cscale, std::abs(c_0[k]), std::abs(c_p[k])});
    const double resid =
        std::max({std::abs(c0p.imag()), std::abs(c0pp.imag()),
                  std::abs(c1_mid.real() - c1_alpha.real())}) /
        cscale;

    CoeffDerivs out;
    out.c0p = c0p.real();
    out.c0pp = c0pp.real();
    out.c1 = (sign * c_0[1]).real();
    out.c1p = c1p;
    out.c2 = (sign * c_0[2]).real();
    out.imag_residual = resid;
    out.scale = scale;
    out.dim = dim;
    return out;
}

} // namespace

CharPolyCoefficients charpoly_coeffs_numeric(
    const std::function<TiltedLiouvillian(double)>& L_at, double step) {
    check_step(step);
    const CoeffDerivs d = coeff_derivs(L_at);
    if (d.imag_residual > kImagResidualTol)
        throw Error(ErrorCode::StepTooSmall,
                    "charpoly coefficient extraction residual above 1e-6");
    const double sn = std::pow(d.scale, d.dim);
    CharPolyCoefficients out;
    out.c0p = d.c0p * sn;
    out.c0pp = d.c0pp * sn;
    out.c1 = d.c1 * sn / d.scale;
    out.c1p = d.c1p * sn / d.scale;
    out.c2 = d.c2 * sn / (d.scale * d.scale);
    return out;
}

Cumulants cumulants_charpoly(ModelKind kind, const EngineParams& params, double step) {
    check_step(step);
    const LindbladModel model = lindblad_model(kind, params);
    auto L_at = [&](double chi) {
        TiltedLiouvillian L;
        L.kind = kind;
        L.chi = chi;
        L.entries = superoperator_matrix(model, chi);
        return L;
    };
    // work on the rate-normalized matrix; I and var regain one factor of scale
    const CoeffDerivs d = coeff_derivs(L_at);
    if (d.imag_residual > kImagResidualTol)
        throw Error(ErrorCode::StepTooSmall,
                    "charpoly coefficient extraction residual above 1e-6");
    if (std::abs(d.c1) < 1e-14)
        throw Error(ErrorCode::ZeroC1, "characteristic polynomial has c1 ~ 0");

    const double cur = -d.c0p / d.c1;
    const double var = -(d.c0pp + 2.0 * cur * (d.c1p + d.c2 * cur)) / d.c1;
    Cumulants out;
    out.method = CumulantMethod::CharPoly;
    out.current = cur * d.scale;
    out.variance = var * d.scale;
    out.diagnostics["step"] = step;
    out.diagnostics["c1_scaled"] = d.c1;
    out.diagnostics["imag_residual"] = d.imag_residual;
    return out;
}

double current_model1_closed_form(const EngineParams& params) {
    params.validate();
    const double gh = params.gamma_h, gc = params.gamma_c, lam = params.lambda;
    const double nh = params.n_h, nc = params.n_c;
    const double num = 4.0 * (nh - nc) * gh * gc * lam * lam;
    const double den = 4.0 * lam * lam * (gh * (3.0 * nh + 1.0) + gc * (3.0 * nc + 1.0)) +
                       (3.0 * nh * nc + 2.0 * nh + 2.0 * nc + 1.0) *
                           (gh * (nh + 1.0) + gc * (nc + 1.0)) * gh * gc;
    return num / den;
}

// ---------------------------------------------------------------------------
// trajectory unraveling

namespace {

struct TrajectoryJump {
    Eigen::MatrixXcd op;
    double rate;
    int weight; // cold-bath counter increment
};

std::vector<TrajectoryJump> trajectory_jumps(ModelKind kind, const EngineParams& pr) {
    auto kb = [](int d, int a, int b) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
        m(a, b) = 1.0;
        return m;
    };
    std::vector<TrajectoryJump> js;
    if (kind == ModelKind::ThreeLevelI || kind == ModelKind::ThreeLevelII) {
        Eigen::MatrixXcd cold = kind == ModelKind::ThreeLevelI ? kb(3, 0, 1) : kb(3, 1, 2);
        Eigen::MatrixXcd hot = kb(3, 0, 2);
        js.push_back({cold, pr.gamma_c * (pr.n_c + 1.0), +1});
        js.push_back({cold.adjoint().eval(), pr.gamma_c * pr.n_c, -1});
        js.push_back({hot, pr.gamma_h * (pr.n_h + 1.0), 0});
        js.push_back({hot.adjoint().eval(), pr.gamma_h * pr.n_h, 0});
    } else {
        // diagonalize the hot Kossakowski block: modes (A1 +- A2)/sqrt(2)
        // with rates Gamma_h (1 +- p)
        Eigen::MatrixXcd ac = kb(4, 0, 1);
        Eigen::MatrixXcd bp = (kb(4, 0, 2) + kb(4, 0, 3)) / std::sqrt(2.0);
        Eigen::MatrixXcd bm = (kb(4, 0, 2) - kb(4, 0, 3)) / std::sqrt(2.0);
        js.push_back({ac, pr.gamma_c * (pr.n_c + 1.0), +1});
        js.push_back({ac.adjoint().eval(), pr.gamma_c * pr.n_c, -1});
        for (auto& [op, f] : std::initializer_list<std::pair<Eigen::MatrixXcd, double>>{
                 {bp, 1.0 + pr.p}, {bm, 1.0 - pr.p}}) {
            if (f <= 0.0) continue;
            js.push_back({op, pr.gamma_h * f * (pr.n_h + 1.0), 0});
            js.push_back({op.adjoint().eval(), pr.gamma_h * f * pr.n_h, 0});
        }
    }
    std::erase_if(js, [](const TrajectoryJump& j) { return j.rate <= 0.0; });
    return js;
}

} // namespace

Cumulants trajectory_cumulants(ModelKind kind, const EngineParams& params,
                               double horizon, int n_traj, std::uint64_t seed) {
    params.validate();
    if (n_traj < 1000)
        throw invalid_params("trajectory_cumulants requires n_traj >= 1000");

    const double gap = spectral_gap(kind, params);
    const double relax = 1.0 / gap;
    if (horizon <= 0.0) horizon = 100.0 * relax;
    if (relax > horizon / 10.0)
        throw Error(ErrorCode::InsufficientHorizon,
                    "relaxation time " + std::to_string(relax) +
                        " exceeds a tenth of the horizon");

    const auto jumps = trajectory_jumps(kind, params);
    const LindbladModel model = lindblad_model(kind, params);
    const int d = model.levels;

    Eigen::MatrixXcd heff = model.hamiltonian;
    double total_rate = 0.0;
    {
        Eigen::MatrixXcd damp = Eigen::MatrixXcd::Zero(d, d);
        for (const auto& j : jumps) {
            damp += j.rate * (j.op.adjoint() * j.op);
            total_rate += j.rate;
        }
        heff -= std::complex<double>(0.0, 0.5) * damp;
    }

    // fixed substep with per-step jump probability below 0.05
    const double p_max = 0.05;
    const double dt = p_max / total_rate;
    const double burn_in = 10.0 * relax;

    // exact no-jump propagators over dt and dt/2 via eigendecomposition
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> hes(heff, true);
    if (hes.info() != Eigen::Success)
        throw Error(ErrorCode::EigenSolverFailure, "effective Hamiltonian eig failed");
    Eigen::MatrixXcd U, Uh;
    {
        const Eigen::MatrixXcd vinv = hes.eigenvectors().partialPivLu().inverse();
        Eigen::VectorXcd ph(d), ph2(d);
        for (int i = 0; i < d; ++i) {
            const auto e = std::complex<double>(0.0, -1.0) * hes.eigenvalues()[i];
            ph[i] = std::exp(e * dt);
            ph2[i] = std::exp(e * (dt / 2.0));
        }
        U = hes.eigenvectors() * ph.asDiagonal() * vinv;
        Uh = hes.eigenvectors() * ph2.asDiagonal() * vinv;
    }

    // initial ensemble: eigenstates of the steady-state density matrix
    DensityVector ss = steady_state(kind, params);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t c = 0; c < model.basis.size(); ++c)
        rho(model.basis[c].first, model.basis[c].second) = ss.components[c];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> res((rho + rho.adjoint()) / 2.0);
    std::vector<double> init_w(d);
    double wsum = 0.0;
    for (int i = 0; i < d; ++i) {
        init_w[i] = std::max(res.eigenvalues()[i], 0.0);
        wsum += init_w[i];
    }
    for (auto& w : init_w) w /= wsum;

    const long burn_steps = static_cast<long>(std::ceil(burn_in / dt));
    const long count_steps = static_cast<long>(std::ceil(horizon / dt));
    const double T = count_steps * dt;

    std::vector<double> counts(n_traj);
    for (int tr = 0; tr < n_traj; ++tr) {
        SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(tr));
        // draw initial eigenstate
        double u = rng.uniform(), acc = 0.0;
        int pick = d - 1;
        for (int i = 0; i < d; ++i) {
            acc += init_w[i];
            if (u <= acc) { pick = i; break; }
        }
        Eigen::VectorXcd psi = res.eigenvectors().col(pick);

        long n_count = 0;
        for (long step_i = 0; step_i < burn_steps + count_steps; ++step_i) {
            Eigen::VectorXcd next = U * psi;
            const double survive = next.squaredNorm();
            if (rng.uniform() < survive) {
                psi = next / std::sqrt(survive);
            } else {
                // channel weights at the midpoint state, jump there, then
                // finish the step; this removes the O(dt) net-count bias of
                // the pre-step evaluation
                const Eigen::VectorXcd mid = Uh * psi;
                double tot = 0.0;
                std::vector<double> w(jumps.size());
                for (std::size_t k = 0; k < jumps.size(); ++k) {
                    w[k] = jumps[k].rate * (jumps[k].op * mid).squaredNorm();
                    tot += w[k];
                }
                double r = rng.uniform() * tot, a = 0.0;
                std::size_t chosen = jumps.size() - 1;
                for (std::size_t k = 0; k < jumps.size(); ++k) {
                    a += w[k];
                    if (r <= a) { chosen = k; break; }
                }
                psi = Uh * (jumps[chosen].op * mid);
                psi /= psi.norm();
                if (step_i >= burn_steps) n_count += jumps[chosen].weight;
            }
        }
        counts[tr] = static_cast<double>(n_count);
    }

    const double n = static_cast<double>(n_traj);
    const double mean_n = std::accumulate(counts.begin(), counts.end(), 0.0) / n;
    double ss2 = 0.0;
    for (double c : counts) ss2 += (c - mean_n) * (c - mean_n);
    const double var_n = ss2 / (n - 1.0);

    Cumulants out;
    out.method = CumulantMethod::Trajectory;
    out.current = mean_n / T;
    out.variance = var_n / T;
    out.diagnostics["se_current"] = std::sqrt(var_n / n) / T;
    out.diagnostics["se_variance"] = (var_n / T) * std::sqrt(2.0 / (n - 1.0));
    out.diagnostics["horizon"] = T;
    out.diagnostics["burn_in"] = burn_steps * dt;
    out.diagnostics["dt"] = dt;
    out.diagnostics["n_traj"] = n;
    return out;
}

Cumulants cumulants(ModelKind kind, const EngineParams& params, CumulantMethod method,
                    double step) {
    switch (method) {
    case CumulantMethod::EigFD: return cumulants_eig_fd(kind, params, step);
    case CumulantMethod::CharPoly: return cumulants_charpoly(kind, params, step);
    case CumulantMethod::Trajectory:
        return trajectory_cumulants(kind, params, 0.0, 10000, 20240 + static_cast<int>(kind));
    }
    throw invalid_params("unknown cumulant method");
}

} // namespace masertur
