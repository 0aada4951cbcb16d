#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wordlab {

enum class ErrorCode {
  MalformedWord,
  DuplicateWord,
  WrongCount,
  IllegalGuess,
  GameOver,
  EmptyCorpus,
  EmptyCandidates,
  Contradiction,
  PoolEmpty,
  DegenerateSample,
  UnknownPolicy,
  UnknownSession,
  InvalidColors,
  SessionComplete,
  InvalidConfig,
  Io,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedWord: return "MalformedWord";
    case ErrorCode::DuplicateWord: return "DuplicateWord";
    case ErrorCode::WrongCount: return "WrongCount";
    case ErrorCode::IllegalGuess: return "IllegalGuess";
    case ErrorCode::GameOver: return "GameOver";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyCandidates: return "EmptyCandidates";
    case ErrorCode::Contradiction: return "Contradiction";
    case ErrorCode::PoolEmpty: return "PoolEmpty";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::UnknownPolicy: return "UnknownPolicy";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::InvalidColors: return "InvalidColors";
    case ErrorCode::SessionComplete: return "SessionComplete";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

// All library failures surface as this exception; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wordlab
