// Copyright 2026 the dlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

// Base class for all library errors. Each concrete error corresponds to a
// documented failure mode of one or more operations.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define DLAB_DEFINE_ERROR(Name)                              \
  class Name : public Error {                                \
   public:                                                   \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

DLAB_DEFINE_ERROR(UnknownConstant);
DLAB_DEFINE_ERROR(IndeterminateSign);
DLAB_DEFINE_ERROR(DimensionMismatch);
DLAB_DEFINE_ERROR(ZeroForm);
DLAB_DEFINE_ERROR(SingularSystem);
DLAB_DEFINE_ERROR(InvalidSpec);
DLAB_DEFINE_ERROR(DegreeMismatch);
DLAB_DEFINE_ERROR(InconsistentExponents);
DLAB_DEFINE_ERROR(InvalidKappa);
DLAB_DEFINE_ERROR(InvalidDegrees);
DLAB_DEFINE_ERROR(InvalidDelta);
DLAB_DEFINE_ERROR(NoPivot);
DLAB_DEFINE_ERROR(NoPointFound);
DLAB_DEFINE_ERROR(SearchBudgetExceeded);
DLAB_DEFINE_ERROR(MalformedInput);

#undef DLAB_DEFINE_ERROR

}  // namespace dlab
