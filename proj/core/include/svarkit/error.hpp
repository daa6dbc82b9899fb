#pragma once

#include <stdexcept>
#include <string>

namespace svarkit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed, missing or too-short input data.
class DataError : public Error {
public:
    using Error::Error;
};

// The data are fine but the model is not usable: singular regressors,
// unstable VAR, no stationary transform, non-positive-definite long-run
// covariance.
class ModelError : public Error {
public:
    using Error::Error;
};

}  // namespace svarkit
