#include "bgn/error.hpp"

namespace bgn {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Domain: return "domain error";
        case ErrorCode::Convergence: return "convergence failure";
        case ErrorCode::Divergence: return "series divergence";
        case ErrorCode::Quadrature: return "quadrature failure";
        case ErrorCode::Parse: return "parse error";
        case ErrorCode::Dimension: return "dimension mismatch";
        case ErrorCode::EmptyRegion: return "empty region";
        case ErrorCode::Io: return "i/o error";
        case ErrorCode::InvalidArgument: return "invalid argument";
    }
    return "unknown error";
}

}  // namespace bgn
