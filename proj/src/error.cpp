#include "towerkit/error.hpp"

namespace towerkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Directedness: return "Directedness";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::NonParallel: return "NonParallel";
    case ErrorCode::ShortRelation: return "ShortRelation";
    case ErrorCode::NonComposable: return "NonComposable";
    case ErrorCode::InvalidModule: return "InvalidModule";
    case ErrorCode::ZeroModule: return "ZeroModule";
    case ErrorCode::MixedAlgebras: return "MixedAlgebras";
    case ErrorCode::NotStrong: return "NotStrong";
    case ErrorCode::NotExceptional: return "NotExceptional";
    case ErrorCode::PolicyTooSmall: return "PolicyTooSmall";
    case ErrorCode::CertificateMismatch: return "CertificateMismatch";
    case ErrorCode::RankTooSmall: return "RankTooSmall";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DegenerateMap: return "DegenerateMap";
    case ErrorCode::UnsupportedRecipeDepth: return "UnsupportedRecipeDepth";
    case ErrorCode::NotDegreeZero: return "NotDegreeZero";
    case ErrorCode::NotNondegenerate: return "NotNondegenerate";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::AdjugateDegenerate: return "AdjugateDegenerate";
    case ErrorCode::FieldCharacteristic: return "FieldCharacteristic";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace towerkit
