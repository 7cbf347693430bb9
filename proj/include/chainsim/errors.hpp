#ifndef CHAINSIM_ERRORS_HPP
#define CHAINSIM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace chainsim {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Scene file could not be read.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Scene file is not syntactically or structurally well formed.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& msg)
        : Error(line > 0 ? "parse error at line " + std::to_string(line) + ": " + msg
                         : "parse error: " + msg),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Scene violates one or more model invariants. Carries every violated
/// constraint name, not just the first.
class InvalidScene : public Error {
public:
    InvalidScene(std::vector<std::string> violations, const std::string& detail)
        : Error("invalid scene: " + detail), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Three-sphere intersection is empty within tolerance.
class NoIntersection : public Error {
public:
    explicit NoIntersection(const std::string& msg) : Error(msg) {}
};

/// The two trilateration branches cannot be told apart by the lower-z rule.
class AmbiguousSolution : public Error {
public:
    explicit AmbiguousSolution(const std::string& msg) : Error(msg) {}
};

/// Iterative solver hit its iteration cap before meeting tolerance.
class NoConvergence : public Error {
public:
    NoConvergence(int iterations, double residual)
        : Error("no convergence after " + std::to_string(iterations) +
                " iterations, residual " + std::to_string(residual)),
          iterations_(iterations),
          residual_(residual) {}

    int iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    int iterations_;
    double residual_;
};

/// Solver iterates left a 10x room bounding box.
class DivergedGuess : public Error {
public:
    explicit DivergedGuess(const std::string& msg) : Error(msg) {}
};

/// Chain directions are coplanar or otherwise degenerate for force balance.
class SingularGeometry : public Error {
public:
    explicit SingularGeometry(const std::string& msg) : Error(msg) {}
};

/// Some chain length is numerically zero; directions are undefined.
class DegeneratePose : public Error {
public:
    explicit DegeneratePose(const std::string& msg) : Error(msg) {}
};

/// Kinematic Jacobian is ill conditioned at this pose.
class SingularJacobian : public Error {
public:
    explicit SingularJacobian(const std::string& msg) : Error(msg) {}
};

/// A motion endpoint fails the reachability predicate.
class UnreachableEndpoint : public Error {
public:
    explicit UnreachableEndpoint(const std::string& msg) : Error(msg) {}
};

/// An interior point of the straight path fails the reachability predicate.
class PathLeavesWorkspace : public Error {
public:
    PathLeavesWorkspace(double s, const std::string& msg)
        : Error(msg), path_position_(s) {}

    /// Arc-length position of the first infeasible sample.
    double path_position() const { return path_position_; }

private:
    double path_position_;
};

/// Quantizer would need a step rate above speed_max/resolution.
class InfeasibleQuantization : public Error {
public:
    explicit InfeasibleQuantization(const std::string& msg) : Error(msg) {}
};

}  // namespace chainsim

#endif
