#include "bipinv/error.hpp"

namespace bipinv {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Syntax: return "SyntaxError";
        case ErrorCode::InvalidGraph: return "InvalidGraph";
        case ErrorCode::NotBipartite: return "NotBipartite";
        case ErrorCode::OrderMismatch: return "OrderMismatch";
        case ErrorCode::NoPerfectMatching: return "NoPerfectMatching";
        case ErrorCode::NotUnique: return "NotUnique";
        case ErrorCode::CycleFound: return "CycleFound";
        case ErrorCode::SameVertex: return "SameVertex";
        case ErrorCode::SizeTooSmall: return "SizeTooSmall";
        case ErrorCode::NotTriangularizable: return "NotTriangularizable";
        case ErrorCode::NotUnitTriangular: return "NotUnitTriangular";
        case ErrorCode::MissingVertex: return "MissingVertex";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::NotAcyclic: return "NotAcyclic";
        case ErrorCode::InvalidPoset: return "InvalidPoset";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::Io: return "IoError";
        case ErrorCode::Internal: return "InternalError";
    }
    return "Unknown";
}

}  // namespace bipinv
