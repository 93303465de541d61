// params.hpp - engine parameters, level frequencies and model discrimination

#pragma once

#include <cmath>
#include <string>

#include "masertur/errors.hpp"

namespace masertur {

enum class ModelKind {
    ThreeLevelI,  // cold bath on g<->0, drive on 0<->1
    ThreeLevelII, // cold bath on 0<->1, drive on g<->0
    FourLevelNIC, // degenerate upper doublet with noise-induced coherence
};

constexpr const char* to_string(ModelKind k) {
    switch (k) {
    case ModelKind::ThreeLevelI: return "I";
    case ModelKind::ThreeLevelII: return "II";
    case ModelKind::FourLevelNIC: return "NIC";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& s);

// Natural units: hbar = k_B = 1, all rates share one inverse-time unit.
// Baths enter through their occupations, not temperatures.
struct EngineParams {
    double gamma_h = 1.0; // hot system-bath coupling, > 0
    double gamma_c = 1.0; // cold system-bath coupling, > 0
    double lambda = 0.1;  // matter-field coupling, >= 0
    double n_h = 1.0;     // hot occupation, >= 0
    double n_c = 1.0;     // cold occupation, >= 0
    double p = 0.0;       // noise-induced coherence parameter in [-1, 1];
                          // read only by FourLevelNIC

    void validate() const {
        if (!(gamma_h > 0.0) || !std::isfinite(gamma_h))
            throw invalid_params("gamma_h must be > 0, got " + std::to_string(gamma_h));
        if (!(gamma_c > 0.0) || !std::isfinite(gamma_c))
            throw invalid_params("gamma_c must be > 0, got " + std::to_string(gamma_c));
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw invalid_params("lambda must be >= 0, got " + std::to_string(lambda));
        if (!(n_h >= 0.0) || !std::isfinite(n_h))
            throw invalid_params("n_h must be >= 0, got " + std::to_string(n_h));
        if (!(n_c >= 0.0) || !std::isfinite(n_c))
            throw invalid_params("n_c must be >= 0, got " + std::to_string(n_c));
        if (!(p >= -1.0 && p <= 1.0))
            throw invalid_params("p must lie in [-1, 1], got " + std::to_string(p));
    }

    EngineParams scaled_couplings(double k) const {
        EngineParams s = *this;
        s.gamma_h *= k;
        s.gamma_c *= k;
        s.lambda *= k;
        return s;
    }
};

struct LevelFrequencies {
    double omega_h; // hot transition frequency
    double omega_c; // cold transition frequency, 0 < omega_c < omega_h

    void validate() const {
        if (!(omega_c > 0.0) || !(omega_h > omega_c))
            throw invalid_params("level frequencies require omega_h > omega_c > 0");
    }
};

// Bose-Einstein occupation of a mode at frequency omega in a bath at
// temperature T (natural units). Convenience converter only.
inline double occupation(double omega, double T) {
    if (!(omega > 0.0)) throw invalid_params("occupation: omega must be > 0");
    if (!(T > 0.0)) throw invalid_params("occupation: T must be > 0");
    return 1.0 / std::expm1(omega / T);
}

} // namespace masertur
