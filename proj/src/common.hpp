#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace varkernel {

/// Exact integer type for Hilbert-function values and binomial counts.
using BigInt = boost::multiprecision::cpp_int;

/// A set of points stored column-wise: rows = ambient dimension, cols = count.
using PointSet = Eigen::MatrixXd;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr double kDefaultRankTol = 1e-9;

enum class ErrorKind {
  input,         // malformed arguments or violated preconditions
  capability,    // the request is well-formed but outside what the library supports
  degenerate,    // random sampling produced a degenerate configuration; retry
  numerical,     // a numerical routine failed (non-PD matrix, non-finite values)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};
struct CapabilityError : Error {
  explicit CapabilityError(const std::string& what) : Error(ErrorKind::capability, what) {}
};
struct DegenerateSamplingError : Error {
  explicit DegenerateSamplingError(const std::string& what) : Error(ErrorKind::degenerate, what) {}
};
struct NumericalError : Error {
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

/// binom(n, k) with binom(n, k) = 0 when k < 0 or k > n.
BigInt binomial(long n, long k);

/// Converts to a machine integer, throwing CapabilityError when it does not fit.
std::int64_t to_int64(const BigInt& v, const char* what);

std::string to_string(const BigInt& v);

/// Derives an independent seed for a sub-stream (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace varkernel
