#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace crossedk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Relative tolerance used for every rank / membership decision unless overridden.
inline constexpr double kDefaultTol = 1e-9;

/// Seeded pseudorandom source shared by all randomized decisions.
using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20150507;

/// Malformed or inconsistent user input (shape mismatches, bad indices, schema errors).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical check failed: an object does not satisfy the property it claims.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crossedk
