#ifndef MDD_ERRORS_HPP
#define MDD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mdd {

// Malformed spec string, config or out-of-range parameter. The CLI maps it to
// exit code 2.
class SpecError : public std::invalid_argument {
public:
    explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

// The conditioning event of a residual or conditional law has probability 0.
class ConditioningError : public std::domain_error {
public:
    explicit ConditioningError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace mdd

#endif
