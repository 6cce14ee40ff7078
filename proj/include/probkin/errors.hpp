#pragma once

#include <stdexcept>
#include <string>

namespace probkin {

// Base for every typed failure raised by the update rules. Callers that only
// care about "something went wrong" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad labels, weights that are not a distribution, events over
// the wrong space and so on.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ZeroConditioningEvent : public Error {
 public:
  using Error::Error;
};

class InfeasibleWeight : public Error {
 public:
  using Error::Error;
};

class BadPartition : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotAbsolutelyContinuous : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class NotConverged : public Error {
 public:
  using Error::Error;
};

class UndefinedConditional : public Error {
 public:
  using Error::Error;
};

class NoAcceptedSamples : public Error {
 public:
  using Error::Error;
};

}  // namespace probkin
