#pragma once

#include <stdexcept>
#include <string>

namespace qorrelate {

// Qubit subset that is empty, repeats a label, or names a qubit outside the register.
class InvalidSubsetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Eigenvalue below the clamping floor, or a trace that is not one.
class InvalidDensityMatrixError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace qorrelate
