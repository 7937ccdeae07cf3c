#pragma once

#include <stdexcept>
#include <string>

namespace shapecode {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent inputs (bad pmf, wrong dimensions, ...).
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

// KL divergence requested where q_i = 0 but p_i > 0.
class SupportMismatch : public Error {
  public:
    using Error::Error;
};

// Requested expansion factor has no feasible symbol distribution.
class InfeasibleRate : public Error {
  public:
    using Error::Error;
};

// Minimum symbol cost is zero: total cost decreases in f, no finite optimum.
class ZeroMinCost : public Error {
  public:
    using Error::Error;
};

// Encoded stream cannot be parsed against the given tree/codebook.
class CorruptStream : public Error {
  public:
    using Error::Error;
};

// Stream header identifies a different code tree.
class TreeMismatch : public Error {
  public:
    using Error::Error;
};

} // namespace shapecode
