#pragma once

#include <stdexcept>
#include <string>

namespace weyllab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input that cannot be interpreted (bad weight text, unknown type, ...).
class ParseError : public Error {
public:
  using Error::Error;
};

class UnsupportedType : public Error {
public:
  using Error::Error;
};

// A built-in table or computed invariant is inconsistent.
class InternalDataError : public Error {
public:
  using Error::Error;
};

class NotRealRoot : public Error {
public:
  using Error::Error;
};

class NotBaseRoot : public Error {
public:
  using Error::Error;
};

class NotInBorel : public Error {
public:
  using Error::Error;
};

class BasisError : public Error {
public:
  using Error::Error;
};

class RescalingError : public Error {
public:
  using Error::Error;
};

class ConstructionError : public Error {
public:
  using Error::Error;
};

class BudgetExceeded : public Error {
public:
  using Error::Error;
};

class NotEtaGood : public Error {
public:
  using Error::Error;
};

class CacheError : public Error {
public:
  using Error::Error;
};

// Caller asked for a check whose hypotheses do not hold.
class HypothesisError : public Error {
public:
  using Error::Error;
};

// Z_eta v^+ vanished in L(lambda)_Z; the nonvanishing argument says this cannot happen, so it is reported as an inconsistency.
class NonzeroImageError : public Error {
public:
  using Error::Error;
};

}  // namespace weyllab
