#ifndef PENDSIM_ERRORS_HPP
#define PENDSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pendsim {

/// Root of the library's exception hierarchy. The C API maps these to
/// status codes at the boundary.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid or inconsistent configuration (bad field value, unknown key).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// File could not be read or written.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Cartesian target outside the arm's reachable shell.
class UnreachableError : public Error {
public:
    explicit UnreachableError(const std::string& msg) : Error(msg) {}
};

/// Analytic IK solution exists but violates a joint limit.
class JointLimitError : public Error {
public:
    explicit JointLimitError(const std::string& msg) : Error(msg) {}
};

/// A planned trajectory exceeds the per-joint speed cap.
class JointSpeedError : public Error {
public:
    explicit JointSpeedError(const std::string& msg) : Error(msg) {}
};

/// Innovation covariance C*P*C' + R is not positive; only possible with a
/// zero measurement variance and a degenerate covariance.
class SingularInnovationError : public Error {
public:
    explicit SingularInnovationError(const std::string& msg) : Error(msg) {}
};

}  // namespace pendsim

#endif
