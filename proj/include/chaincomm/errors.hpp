#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "chaincomm/complex.hpp"

namespace chaincomm {

enum class ErrorCode {
  // The mathematics rules the witness out.
  TraceObstruction,
  StretchObstruction,
  // The construction cannot proceed although a witness may exist.
  FieldTooSmall,
  SelectionExhausted,
  FiniteFieldUnsupported,
  // Internal consistency failure; never expected on valid input.
  InconsistentTrace,
};

const char* to_string(ErrorCode code);

/// Which family of traces a TraceObstruction refers to.
enum class TraceKind { Degreewise, Cohomology };

class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(ErrorCode code, std::string message, std::optional<int> degree = std::nullopt,
                    std::optional<Stretch> stretch = std::nullopt,
                    std::optional<TraceKind> trace_kind = std::nullopt)
      : std::runtime_error(std::move(message)),
        code_(code),
        degree_(degree),
        stretch_(stretch),
        trace_kind_(trace_kind) {}

  ErrorCode code() const { return code_; }
  std::optional<int> degree() const { return degree_; }
  std::optional<Stretch> stretch() const { return stretch_; }
  std::optional<TraceKind> trace_kind() const { return trace_kind_; }

  /// True for TraceObstruction and StretchObstruction.
  bool is_obstruction() const {
    return code_ == ErrorCode::TraceObstruction || code_ == ErrorCode::StretchObstruction;
  }

 private:
  ErrorCode code_;
  std::optional<int> degree_;
  std::optional<Stretch> stretch_;
  std::optional<TraceKind> trace_kind_;
};

}  // namespace chaincomm
