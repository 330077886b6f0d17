#pragma once

#include <stdexcept>
#include <string>

namespace cfb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value failed validation (probability out of range, bad shape, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Pr(B1 > B2) = 0: the population has constant benefit, so there is no
/// concordance question to answer.
class UndefinedCfb : public Error {
 public:
  UndefinedCfb() : Error("cfb is undefined: Pr(B1 > B2) = 0") {}
  using Error::Error;
};

/// The linear-Gaussian closed form has a singular covariance (zero
/// interaction), so the predicted benefit is constant.
class DegenerateCfb : public Error {
 public:
  using Error::Error;
};

/// Some predicted-benefit level carries no covariate mass.
class ZeroMassH : public Error {
 public:
  using Error::Error;
};

/// A probability on the boundary {0, 1} has an infinite logit.
class ParameterUnbounded : public Error {
 public:
  using Error::Error;
};

}  // namespace cfb
