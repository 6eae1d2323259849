#pragma once

#include <stdexcept>
#include <string>

namespace catmaj {

enum class Err {
  EmptyVector,
  NegativeComponent,
  InvalidInput,
  DimensionMismatch,
  BothEmptyAfterReduction,
  EndpointViolation,
  IndeterminateAtZero,
  InvalidParams,
  NotApplicable,
  BudgetExceeded,
};

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& what) { throw Error(kind, what); }

}  // namespace catmaj
