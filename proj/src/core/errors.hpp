#pragma once

#include <stdexcept>
#include <string>

namespace rrw {

enum class ErrorCode {
  InvalidArgument,
  EmptyData,
  MalformedInput,
  DegenerateWeights,
  Singular,
  TooFewReplicates,
  NonFinite,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rrw
