#pragma once
#include <stdexcept>
#include <string>

namespace ktl {

struct error : std::runtime_error {
    explicit error(const std::string& m) : std::runtime_error(m) {}
};

// precondition violated by the caller (bad input data)
struct domain_error : error {
    explicit domain_error(const std::string& m) : error(m) {}
};

// p-adic precision insufficient; caller may re-run with a larger precision
struct precision_error : error {
    explicit precision_error(const std::string& m) : error(m) {}
};

// the requested criterion does not apply to this input; never a silent guess
struct inapplicable_error : error {
    explicit inapplicable_error(const std::string& m) : error(m) {}
};

// an internal cross-check failed: a modeling or implementation bug
struct check_error : error {
    explicit check_error(const std::string& m) : error(m) {}
};

}  // namespace ktl
