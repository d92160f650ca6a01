#pragma once

#include <stdexcept>
#include <string>

namespace slapmap {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry
struct SelfIntersecting : Error { using Error::Error; };
struct Degenerate : Error { using Error::Error; };
struct InvalidArity : Error { using Error::Error; };
struct OutOfFamily : Error { using Error::Error; };
struct VertexHit : Error { using Error::Error; };
struct AtVertex : Error { using Error::Error; };
struct NotExpanding : Error { using Error::Error; };

// pwamap
struct OutOfDomain : Error { using Error::Error; };
struct EmptyDomain : Error { using Error::Error; };
struct NotInvariant : Error { using Error::Error; };

// lorenz / regular
struct OutOfRange : Error { using Error::Error; };
struct EvenArity : Error { using Error::Error; };
struct NotConstant : Error { using Error::Error; };
struct TowerValidationFailed : Error { using Error::Error; };

// triangles
struct InvalidAngles : Error { using Error::Error; };

// ergodic
struct NoConvergence : Error {
    NoConvergence(const std::string& msg, double residual)
        : Error(msg), residual(residual) {}
    double residual;
};

// kite
struct OutOfBranch : Error { using Error::Error; };
struct OutOfPiDomain : Error {
    OutOfPiDomain(const std::string& msg, int index)
        : Error(msg), index(index) {}
    int index;  // which domain inequality failed
};
struct SingularJacobian : Error { using Error::Error; };
struct OrbitMismatch : Error { using Error::Error; };
struct NoBifurcationFound : Error { using Error::Error; };

// cli
struct ConstructionFailed : Error { using Error::Error; };

}  // namespace slapmap
