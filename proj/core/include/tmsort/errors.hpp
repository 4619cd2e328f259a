#pragma once

#include <stdexcept>
#include <string>

namespace tmsort {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error { using Error::Error; };
struct DegenerateAngle : Error { using Error::Error; };
struct IncompatibleGrid : Error { using Error::Error; };
struct UnsupportedInput : Error { using Error::Error; };
struct UnsupportedDegenerateCase : Error { using Error::Error; };
struct SingularConfiguration : Error { using Error::Error; };
struct OutOfRegime : Error { using Error::Error; };
struct InfeasibleDesign : Error { using Error::Error; };

// Energy left the sampling window (or wrapped around it).
struct WindowOverflow : Error {
    WindowOverflow(const std::string& what, double loss, double edge)
        : Error(what), norm_loss(loss), edge_fraction(edge) {}
    double norm_loss;
    double edge_fraction;
};

}  // namespace tmsort
