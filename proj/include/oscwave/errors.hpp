#pragma once

#include <stdexcept>
#include <string>

namespace oscwave {

// Bad parameters, grids, or configuration. The CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Failures that occur while computing: divergence, pole hits, non-convergent
// inversion or fits. The CLI maps this to exit code 1.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace oscwave
