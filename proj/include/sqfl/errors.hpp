#pragma once

#include <stdexcept>
#include <string>

namespace sqfl {

// Base of every error the library throws. The C API maps each subclass onto
// one status code, so keep the hierarchy flat.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation (non-square-free d,
// s <= 1 for F_d, eta < 2, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// A query beyond what a precomputed table covers (y > table limit).
class RangeError : public Error {
public:
  using Error::Error;
};

// Memory budget, enumeration cap or 64-bit overflow. Never a silent truncation.
class CapacityError : public Error {
public:
  using Error::Error;
};

class OverflowError : public CapacityError {
public:
  using CapacityError::CapacityError;
};

} // namespace sqfl
