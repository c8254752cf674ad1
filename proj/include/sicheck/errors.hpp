#pragma once

#include <stdexcept>
#include <string>

namespace sicheck {

//! Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! Malformed arguments: non-finite values, bad bandwidths, shape mismatch.
class InvalidArgument : public Error
{
public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument
{
public:
  using InvalidArgument::InvalidArgument;
};

class InsufficientData : public Error
{
public:
  using Error::Error;
};

class SingularDesign : public Error
{
public:
  using Error::Error;
};

//! The OLS slope vector vanished, so no projection direction exists.
class DegenerateDirection : public Error
{
public:
  using Error::Error;
};

//! sigma_n^2 == 0: the weight is a function of the index or all residuals
//! vanish.
class DegenerateVariance : public Error
{
public:
  using Error::Error;
};

//! Sigma_n is numerically singular; the weight family is linearly dependent.
class NearSingularCovariance : public Error
{
public:
  using Error::Error;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

//! Problems reading or parsing input files. Messages carry row/column or
//! line context.
class DataError : public Error
{
public:
  using Error::Error;
};

} // namespace sicheck
