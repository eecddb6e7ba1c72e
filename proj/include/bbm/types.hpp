#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bbm {

/// Largest spatial dimension handled by the library.
inline constexpr int kMaxDim = 3;

template <typename Scalar>
using PointT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

template <typename Scalar>
using SquareT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

using Complex = std::complex<double>;

/// Real N-vector (points, directions, potential values). Never heap-allocates.
using Point = PointT<double>;
using CVector = PointT<Complex>;
using RMatrix = SquareT<double>;
using CMatrix = SquareT<Complex>;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (s ∉ (0,1), point on ∂Ω, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Unsupported or inconsistent configuration (bad dimension, missing derivative, unknown label).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A quadrature produced a non-finite value or could not be carried out.
class IntegrationError : public Error {
public:
    using Error::Error;
};

/// A checked mathematical condition does not hold (named in the message).
class ConditionViolation : public Error {
public:
    using Error::Error;
};

inline void require_dimension(int dim) {
    if (dim < 1 || dim > kMaxDim)
        throw ConfigError("unsupported dimension " + std::to_string(dim) + " (expected 1, 2 or 3)");
}

inline void require_fractional_order(double s) {
    if (!(s > 0.0 && s < 1.0))
        throw DomainError("fractional order s=" + std::to_string(s) + " must lie in (0,1)");
}

} // namespace bbm
