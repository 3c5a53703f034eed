#pragma once

#include <stdexcept>
#include <string>

namespace towerkit {

enum class ErrorCode {
  Parse,
  Directedness,
  UnknownName,
  NonParallel,
  ShortRelation,
  NonComposable,
  InvalidModule,
  ZeroModule,
  MixedAlgebras,
  NotStrong,
  NotExceptional,
  PolicyTooSmall,
  CertificateMismatch,
  RankTooSmall,
  DegreeMismatch,
  DegenerateMap,
  UnsupportedRecipeDepth,
  NotDegreeZero,
  NotNondegenerate,
  BadRank,
  AdjugateDegenerate,
  FieldCharacteristic,
  Internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace towerkit
