// models.cpp - generator construction and steady-state solve

#include "masertur/models.hpp"
#include "masertur/compensated.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace masertur {

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "I" || s == "i" || s == "1") return ModelKind::ThreeLevelI;
    if (s == "II" || s == "ii" || s == "2") return ModelKind::ThreeLevelII;
    if (s == "NIC" || s == "nic" || s == "4") return ModelKind::FourLevelNIC;
    throw invalid_params("unknown model kind '" + s + "' (expected I, II or NIC)");
}

namespace {

Eigen::MatrixXcd ket_bra(int dim, int a, int b) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    m(a, b) = 1.0;
    return m;
}

std::string component_label(int i, int j) {
    // level naming: index 0 is g, higher indices carry the 0, 1, 2 labels
    auto name = [](int k) { return k == 0 ? std::string("g") : std::to_string(k - 1); };
    return "rho_" + name(i) + name(j);
}

} // namespace

LindbladModel lindblad_model(ModelKind kind, const EngineParams& params) {
    params.validate();
    const double gh = params.gamma_h, gc = params.gamma_c, lam = params.lambda;
    const double nh = params.n_h, nc = params.n_c;

    LindbladModel m;
    if (kind == ModelKind::ThreeLevelI) {
        // levels: g=0, |0>=1, |1>=2; hot on g<->1, cold on g<->0, drive 0<->1
        m.levels = 3;
        m.hamiltonian = lam * (ket_bra(3, 2, 1) + ket_bra(3, 1, 2));
        Eigen::MatrixXcd sg1 = ket_bra(3, 0, 2), sg0 = ket_bra(3, 0, 1);
        m.jumps = {
            {sg0, sg0, gc * (nc + 1.0), -1, +1},
            {sg0.adjoint(), sg0.adjoint(), gc * nc, +1, -1},
            {sg1, sg1, gh * (nh + 1.0), 0, 0},
            {sg1.adjoint(), sg1.adjoint(), gh * nh, 0, 0},
        };
        m.basis = {{0, 0}, {1, 1}, {2, 2}, {2, 1}, {1, 2}};
    } else if (kind == ModelKind::ThreeLevelII) {
        // hot on g<->1, cold on 0<->1, drive g<->0
        m.levels = 3;
        m.hamiltonian = lam * (ket_bra(3, 1, 0) + ket_bra(3, 0, 1));
        Eigen::MatrixXcd sg1 = ket_bra(3, 0, 2), s01 = ket_bra(3, 1, 2);
        m.jumps = {
            {s01, s01, gc * (nc + 1.0), -1, +1},
            {s01.adjoint(), s01.adjoint(), gc * nc, +1, -1},
            {sg1, sg1, gh * (nh + 1.0), 0, 0},
            {sg1.adjoint(), sg1.adjoint(), gh * nh, 0, 0},
        };
        m.basis = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 0}};
    } else {
        // levels: g=0, |0>=1, |1>=2, |2>=3; degenerate upper doublet 2,3.
        // Gamma_h1 = Gamma_h2 = Gamma_h; cross terms carry p = cos(theta).
        m.levels = 4;
        m.hamiltonian = lam * (ket_bra(4, 2, 1) + ket_bra(4, 3, 1) +
                               ket_bra(4, 1, 2) + ket_bra(4, 1, 3));
        Eigen::MatrixXcd ac = ket_bra(4, 0, 1);
        Eigen::MatrixXcd a1 = ket_bra(4, 0, 2), a2 = ket_bra(4, 0, 3);
        const double pg = params.p * gh;
        m.jumps = {
            {ac, ac, gc * (nc + 1.0), -1, +1},
            {ac.adjoint(), ac.adjoint(), gc * nc, +1, -1},
            {a1, a1, gh * (nh + 1.0), 0, 0},
            {a1.adjoint(), a1.adjoint(), gh * nh, 0, 0},
            {a2, a2, gh * (nh + 1.0), 0, 0},
            {a2.adjoint(), a2.adjoint(), gh * nh, 0, 0},
            {a1, a2, pg * (nh + 1.0), 0, 0},
            {a1.adjoint(), a2.adjoint(), pg * nh, 0, 0},
            {a2, a1, pg * (nh + 1.0), 0, 0},
            {a2.adjoint(), a1.adjoint(), pg * nh, 0, 0},
        };
        m.basis = {{0, 0}, {1, 1}, {2, 2}, {3, 3},
                   {2, 3}, {3, 2}, {2, 1}, {1, 2}, {3, 1}, {1, 3}};
    }
    m.labels.reserve(m.basis.size());
    for (auto [i, j] : m.basis) m.labels.push_back(component_label(i, j));
    return m;
}

Eigen::MatrixXcd superoperator_matrix(const LindbladModel& model, Complex chi) {
    const int d = model.levels;
    const int n = static_cast<int>(model.basis.size());
    const Complex iu(0.0, 1.0);

    // coefficient of rho_{kl} in d rho_{ij}/dt, on the full d x d index set
    std::vector<Eigen::MatrixXcd> coeff(static_cast<std::size_t>(d) * d,
                                        Eigen::MatrixXcd::Zero(d, d));
    auto C = [&](int i, int j) -> Eigen::MatrixXcd& {
        return coeff[static_cast<std::size_t>(i) * d + j];
    };

    const Eigen::MatrixXcd& H = model.hamiltonian;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                // -i (H rho - rho H)
                C(i, j)(k, j) -= iu * H(i, k);
                C(i, j)(i, k) += iu * H(k, j);
            }

    for (const auto& t : model.jumps) {
        if (t.rate == 0.0) continue;
        const Complex phase =
            t.tilt == 0 ? Complex(1.0, 0.0) : std::exp(iu * (static_cast<double>(t.tilt) * chi));
        const Eigen::MatrixXcd bd = t.b.adjoint();
        const Eigen::MatrixXcd bda = bd * t.a;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l)
                        C(i, j)(k, l) += t.rate * phase * t.a(i, k) * bd(l, j);
                for (int k = 0; k < d; ++k) {
                    C(i, j)(k, j) -= 0.5 * t.rate * bda(i, k);
                    C(i, j)(i, k) -= 0.5 * t.rate * bda(k, j);
                }
            }
    }

    // project onto the retained basis; retained rows must not source from
    // dropped components
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
    std::vector<std::vector<int>> pos(static_cast<std::size_t>(d) * d);
    for (int c = 0; c < n; ++c)
        pos[static_cast<std::size_t>(model.basis[c].first) * d +
            model.basis[c].second].push_back(c);
    for (int r = 0; r < n; ++r) {
        auto [i, j] = model.basis[r];
        const Eigen::MatrixXcd& row = C(i, j);
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) {
                const auto& hits = pos[static_cast<std::size_t>(k) * d + l];
                if (!hits.empty()) {
                    L(r, hits.front()) = row(k, l);
                } else if (std::abs(row(k, l)) > 1e-14) {
                    throw Error(ErrorCode::InvalidParams,
                                "retained component couples to dropped coherence " +
                                    component_label(k, l));
                }
            }
    }
    return L;
}

TiltedLiouvillian build_tilted_liouvillian(ModelKind kind, const EngineParams& params,
                                           double chi) {
    if (!std::isfinite(chi)) throw invalid_params("chi must be finite");
    LindbladModel m = lindblad_model(kind, params);
    TiltedLiouvillian out;
    out.kind = kind;
    out.chi = chi;
    out.entries = superoperator_matrix(m, chi);
    out.basis = std::move(m.labels);
    return out;
}

std::string DensityVector::check_physical(double tol) const {
    const int np = population_count();
    for (int i = 0; i < np; ++i) {
        const Complex c = components[i];
        if (std::abs(c.imag()) > tol) return labels[i] + " has imaginary part";
        if (c.real() < -tol || c.real() > 1.0 + tol) return labels[i] + " outside [0, 1]";
    }
    if (std::abs(trace() - 1.0) > tol) return "trace differs from 1";
    // conjugate pairing: coherences come in adjacent (c, c*) pairs
    const int n = static_cast<int>(components.size());
    for (int i = np; i + 1 < n; i += 2) {
        if (std::abs(components[i] - std::conj(components[i + 1])) > tol)
            return labels[i] + " and " + labels[i + 1] + " not conjugate";
    }
    // Cauchy-Schwarz positivity witness |rho_ab|^2 <= rho_aa rho_bb
    auto pop = [&](int lvl) { return components[lvl].real(); };
    auto witness = [&](int comp, int la, int lb) {
        return std::norm(components[comp]) <= pop(la) * pop(lb) + tol;
    };
    if (kind == ModelKind::ThreeLevelI) {
        if (!witness(3, 2, 1)) return "coherence rho_10 breaks positivity";
    } else if (kind == ModelKind::ThreeLevelII) {
        if (!witness(3, 0, 1)) return "coherence rho_g0 breaks positivity";
    } else {
        if (!witness(4, 2, 3)) return "coherence rho_12 breaks positivity";
        if (!witness(6, 2, 1)) return "coherence rho_10 breaks positivity";
        if (!witness(8, 3, 1)) return "coherence rho_20 breaks positivity";
    }
    return {};
}

DensityVector steady_state(ModelKind kind, const EngineParams& params) {
    LindbladModel m = lindblad_model(kind, params);
    Eigen::MatrixXcd L = superoperator_matrix(m, 0.0);
    const int n = L.rows();
    const int np = kind == ModelKind::FourLevelNIC ? 4 : 3;

    // kernel dimension guard (tolerance relative to the largest pivot)
    Eigen::FullPivLU<Eigen::MatrixXcd> full(L);
    full.setThreshold(1e-8);
    if (n - full.rank() > 1)
        throw Error(ErrorCode::DegenerateKernel,
                    "steady state not unique: kernel dimension " +
                        std::to_string(n - full.rank()));

    // replace the first population row by the trace functional
    Eigen::MatrixXcd A = L;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    A.row(0).setZero();
    for (int i = 0; i < np; ++i) A(0, i) = 1.0;
    rhs(0) = 1.0;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    Eigen::VectorXcd rho = lu.solve(rhs);

    // refinement with doubled-precision residuals: the weak-drive current
    // lives in a population imbalance far below eps * ||rho||. The last
    // correction is kept unadded as the sub-ulp tail.
    for (int pass = 0; pass < 2; ++pass)
        rho -= lu.solve(detail::compensated_residual(A, rho, rhs));
    Eigen::VectorXcd tail = -lu.solve(detail::compensated_residual(A, rho, rhs));
    if (!rho.allFinite() || !tail.allFinite())
        throw Error(ErrorCode::EigenSolverFailure, "steady-state solve failed");

    const double residual = (L * rho).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
    if (residual > 1e-10 * scale)
        throw Error(ErrorCode::EigenSolverFailure,
                    "steady-state residual " + std::to_string(residual));

    DensityVector out;
    out.kind = kind;
    out.components = rho;
    out.tail = tail;
    out.labels = m.labels;
    return out;
}

double cold_current_from_state(ModelKind kind, const EngineParams& params,
                               const DensityVector& state) {
    params.validate();
    const double gc = params.gamma_c, nc = params.n_c;
    // net emission = (n_c + 1) * population of the upper cold level
    //              - n_c * population of the lower cold level
    int upper, lower;
    switch (kind) {
    case ModelKind::ThreeLevelI:
        upper = 1; // rho_00
        lower = 0; // rho_gg
        break;
    case ModelKind::ThreeLevelII:
        upper = 2; // rho_11
        lower = 1; // rho_00
        break;
    case ModelKind::FourLevelNIC:
        upper = 1;
        lower = 0;
        break;
    default:
        throw invalid_params("unknown kind");
    }
    // the two terms nearly balance near thresholds; accumulate exactly and
    // include the sub-ulp tail of a refined steady state when present
    detail::CompensatedSum acc;
    acc.add_product(gc * (nc + 1.0), state.components[upper].real());
    acc.add_product(-gc * nc, state.components[lower].real());
    if (state.tail.size() == state.components.size()) {
        acc.add_product(gc * (nc + 1.0), state.tail[upper].real());
        acc.add_product(-gc * nc, state.tail[lower].real());
    }
    return acc.value();
}

double spectral_gap(ModelKind kind, const EngineParams& params) {
    TiltedLiouvillian L = build_tilted_liouvillian(kind, params, 0.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L.entries, false);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::EigenSolverFailure, "eigensolver failed on L(0)");
    double gap = std::numeric_limits<double>::infinity();
    const double scale = std::max(1.0, L.entries.cwiseAbs().maxCoeff());
    for (const auto& ev : es.eigenvalues()) {
        const double re = -ev.real();
        if (re > 1e-12 * scale) gap = std::min(gap, re);
    }
    if (!std::isfinite(gap))
        throw Error(ErrorCode::DegenerateKernel, "no decaying mode found");
    return gap;
}

} // namespace masertur
