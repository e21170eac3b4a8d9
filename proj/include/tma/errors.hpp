#ifndef TMA_ERRORS_HPP
#define TMA_ERRORS_HPP

#include <stdexcept>

namespace tma {

// Bad configuration, unparseable input files, or mismatched dimensions.
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inputs on which the requested quantity is undefined (e.g. an all-zero
// schedule has no main beam). The CLI maps this to exit code 3.
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tma

#endif
