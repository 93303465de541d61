// closed_forms.hpp - printed-formula transcription variants used by the
// discrepancy report

#pragma once

#include "masertur/fcs.hpp"

namespace masertur::printed {

// Model I Q with the occupations restored in the G and H brackets; agrees
// with the FCS pipeline to machine precision.
double q1_repaired(const EngineParams& params);

// The positive term subtracted from 2 in the high-temperature closed form;
// evaluating it directly keeps "Q_HT < 2" decidable when the violation is
// smaller than double epsilon around 2.
double q_ht_violation(const EngineParams& params);

// Model I charpoly coefficient closed forms, transcribed verbatim.
CharPolyCoefficients charpoly_printed_model1(const EngineParams& params);

// Same with the lambda^2, rate factors and the c1 sign restored; matches
// charpoly_coeffs_numeric under the det(L - xi I) convention.
CharPolyCoefficients charpoly_repaired_model1(const EngineParams& params);

} // namespace masertur::printed
