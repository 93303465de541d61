// closed_forms.cpp - closed-form Q evaluators and coefficient transcriptions

#include "masertur/closed_forms.hpp"
#include "masertur/observables.hpp"

#include <cmath>

namespace masertur {

namespace {

double affinity(double n_h, double n_c) {
    return std::log1p((n_h - n_c) / (n_c * (n_h + 1.0)));
}

void require_off_threshold(const EngineParams& p) {
    p.validate();
    if (!(p.n_h > 0.0) || !(p.n_c > 0.0))
        throw invalid_params("closed forms need positive occupations");
    if (p.n_h == p.n_c)
        throw Error(ErrorCode::DegenerateOperation,
                    "closed form is 0/0 at n_h = n_c");
}

// Model I, shared structure of the verbatim and repaired variants. The G and
// H brackets differ: the repair multiplies the 6(2+3n) group by the opposite
// occupation, matching the c2 coefficient display.
double q1_eval(const EngineParams& pr, bool repaired) {
    const double gh = pr.gamma_h, gc = pr.gamma_c, l2 = pr.lambda * pr.lambda;
    const double nh = pr.n_h, nc = pr.n_c;
    const double A = gc * (1.0 + nc) + gh * (1.0 + nh);
    const double B = 1.0 + 2.0 * nh + nc * (2.0 + 3.0 * nh);
    const double C = 4.0 * (gc * (1.0 + 3.0 * nc) + gh * (1.0 + 3.0 * nh));
    const double D = (1.0 + 2.0 * nc) * gc * ((1.0 + nc) * (1.0 + nc) * gc * gc + 16.0 * l2);
    const double F = (1.0 + 2.0 * nh) * gh * ((1.0 + nh) * (1.0 + nh) * gh * gh + 16.0 * l2);
    const double gbr = repaired ? 6.0 * (2.0 + 3.0 * nc) * nh : 6.0 * (2.0 + 3.0 * nc);
    const double hbr = repaired ? 6.0 * (2.0 + 3.0 * nh) * nc : 6.0 * (2.0 + 3.0 * nh);
    const double G = (1.0 + nc) * (7.0 + 13.0 * nc + gbr) * gc * gc * gh;
    const double H = (1.0 + nh) * (7.0 + 13.0 * nh + hbr) * gh * gh * gc;
    const double den = A * B * gc * gh + C * l2;
    const double inner = A * (nh + nc + 2.0 * nh * nc) +
                         (8.0 * (nh - nc) * (nh - nc) * l2 * gc * gh / den) *
                             (2.0 - (D + F + G + H) / den);
    return inner * affinity(nh, nc) / (A * (nh - nc));
}

} // namespace

double q1_closed_form(const EngineParams& params) {
    require_off_threshold(params);
    return q1_eval(params, false);
}

double q2_closed_form(const EngineParams& params) {
    require_off_threshold(params);
    const double gh = params.gamma_h, gc = params.gamma_c;
    const double l2 = params.lambda * params.lambda;
    const double nh = params.n_h, nc = params.n_c;
    // the inner bracket mixes the unprimed A, B, C of the Model I display,
    // exactly as printed
    const double A = gc * (1.0 + nc) + gh * (1.0 + nh);
    const double B = 1.0 + 2.0 * nh + nc * (2.0 + 3.0 * nh);
    const double C = 4.0 * (gc * (1.0 + 3.0 * nc) + gh * (1.0 + 3.0 * nh));
    const double Ap = gc * nc + gh * nh;
    const double Bp = nc + nh + 3.0 * nc * nh;
    const double Dp = gc * (2.0 + 3.0 * nc) + gh * (2.0 + 3.0 * nh);
    const double den = Ap * (Ap * Bp + 4.0 * Dp * l2);
    return affinity(nh, nc) *
           ((nh + nc + 2.0 * nh * nc) / (nh - nc) +
            (8.0 * (nh - nc) * gc * gh * l2 / den) *
                (2.0 - (A * (4.0 * B + A * C) + 16.0 * C * l2) / den));
}

double q_ht_closed_form(const EngineParams& params) {
    require_off_threshold(params);
    return 2.0 - printed::q_ht_violation(params);
}

namespace printed {

double q1_repaired(const EngineParams& params) {
    require_off_threshold(params);
    return q1_eval(params, true);
}

double q_ht_violation(const EngineParams& pr) {
    pr.validate();
    const double gh = pr.gamma_h, gc = pr.gamma_c, l2 = pr.lambda * pr.lambda;
    const double nh = pr.n_h, nc = pr.n_c;
    const double gsum = gc * nc + gh * nh;
    const double quad = 4.0 * l2 + gh * gc * nh * nc;
    return 16.0 * (nh - nc) * (nh - nc) * gh * gc * l2 *
           (gc * gc * nc * nc + gh * gh * nh * nh + 5.0 * gc * gh * nh * nc + l2) /
           (9.0 * nh * nc * gsum * gsum * quad * quad);
}

CharPolyCoefficients charpoly_printed_model1(const EngineParams& pr) {
    pr.validate();
    const double gh = pr.gamma_h, gc = pr.gamma_c, l2 = pr.lambda * pr.lambda;
    const double nh = pr.n_h, nc = pr.n_c;
    const double gp = gh * (nh + 1.0) + gc * (nc + 1.0); // Gamma'
    CharPolyCoefficients c;
    c.c0p = (nh - nc) * gh * gc * gp * l2;
    c.c0pp = (2.0 * nh * nc + nh + nc) * gh * gc * gp * l2;
    c.c1 = 0.25 * gp *
           ((3.0 * nh * nc + 2.0 * nh + 2.0 * nc + 1.0) * gc * gh * gp +
            4.0 * (gh * (3.0 * nh + 1.0) + gc * (3.0 * nc + 1.0)));
    c.c1p = 2.0 * (nh - nc) * gh * gc * l2;
    c.c2 = -0.25 * ((nh + 1.0) * (nh + 1.0) * (2.0 * nh + 1.0) * gh * gh * gh +
                    (nc + 1.0) * (nc + 1.0) * (2.0 * nc + 1.0) * gc * gc * gc +
                    (nh + 1.0) * (7.0 + 13.0 * nh + 6.0 * (2.0 + 3.0 * nh) * nc) +
                    (nc + 1.0) * (7.0 + 13.0 * nc + 6.0 * (2.0 + 3.0 * nc) * nh)) -
           4.0 * ((2.0 * nh + 1.0) * gh + (2.0 * nc + 1.0) * gc);
    return c;
}

CharPolyCoefficients charpoly_repaired_model1(const EngineParams& pr) {
    pr.validate();
    const double gh = pr.gamma_h, gc = pr.gamma_c, l2 = pr.lambda * pr.lambda;
    const double nh = pr.n_h, nc = pr.n_c;
    const double gp = gh * (nh + 1.0) + gc * (nc + 1.0);
    CharPolyCoefficients c;
    c.c0p = (nh - nc) * gh * gc * gp * l2;
    c.c0pp = (2.0 * nh * nc + nh + nc) * gh * gc * gp * l2;
    c.c1 = -0.25 * gp *
           ((3.0 * nh * nc + 2.0 * nh + 2.0 * nc + 1.0) * gc * gh * gp +
            4.0 * l2 * (gh * (3.0 * nh + 1.0) + gc * (3.0 * nc + 1.0)));
    c.c1p = 2.0 * (nh - nc) * gh * gc * l2;
    c.c2 = -0.25 * ((nh + 1.0) * (nh + 1.0) * (2.0 * nh + 1.0) * gh * gh * gh +
                    (nc + 1.0) * (nc + 1.0) * (2.0 * nc + 1.0) * gc * gc * gc +
                    (nh + 1.0) * (7.0 + 13.0 * nh + 6.0 * (2.0 + 3.0 * nh) * nc) *
                        gh * gh * gc +
                    (nc + 1.0) * (7.0 + 13.0 * nc + 6.0 * (2.0 + 3.0 * nc) * nh) *
                        gc * gc * gh) -
           4.0 * l2 * ((2.0 * nh + 1.0) * gh + (2.0 * nc + 1.0) * gc);
    return c;
}

} // namespace printed

} // namespace masertur
