// errors.hpp - error taxonomy shared by the library and the CLI exit codes

#pragma once

#include <stdexcept>
#include <string>

namespace masertur {

enum class ErrorCode {
    InvalidParams,          // rejected input (CLI exit 1)
    DegenerateOperation,    // physically degenerate point, e.g. zero current (exit 2)
    DegenerateKernel,       // steady state not unique (exit 2)
    DegenerateDominantRoot, // dominant eigenvalue branch ambiguity (exit 3)
    EigenSolverFailure,     // eigensolver did not converge (exit 3)
    StepTooSmall,           // finite-difference cancellation (exit 3)
    ZeroC1,                 // characteristic-polynomial formula breakdown (exit 3)
    InsufficientHorizon,    // trajectory horizon shorter than relaxation (exit 3)
    IoError,                // file system failure (exit 3)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

    // CLI contract: 1 invalid input, 2 degenerate physics, 3 numeric/internal.
    int exit_code() const {
        switch (code_) {
        case ErrorCode::InvalidParams: return 1;
        case ErrorCode::DegenerateOperation:
        case ErrorCode::DegenerateKernel: return 2;
        default: return 3;
        }
    }

private:
    ErrorCode code_;
};

inline Error invalid_params(const std::string& what) {
    return Error(ErrorCode::InvalidParams, what);
}

} // namespace masertur
