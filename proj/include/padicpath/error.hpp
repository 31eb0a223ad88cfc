#pragma once

#include <stdexcept>
#include <string>

namespace padicpath {

// Every failure raised by the library derives from padicpath::error, so
// callers (the CLI in particular) can map the kind to an exit status.
enum class error_kind {
    invalid_argument,
    parse,
    domain,
    degenerate,
    precision,
    resource,
    numeric_failure,
};

class error : public std::runtime_error {
public:
    error(error_kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    error_kind kind() const noexcept { return kind_; }

private:
    error_kind kind_;
};

struct invalid_argument_error : error {
    explicit invalid_argument_error(const std::string& w) : error(error_kind::invalid_argument, w) {}
};

struct parse_error : error {
    explicit parse_error(const std::string& w) : error(error_kind::parse, w) {}
};

/// Argument lies outside the region where a series or root exists.
struct domain_error : error {
    explicit domain_error(const std::string& w) : error(error_kind::domain, w) {}
};

/// Zero time interval, zero quadratic coefficient, zero mixed partial.
struct degenerate_error : error {
    explicit degenerate_error(const std::string& w) : error(error_kind::degenerate, w) {}
};

/// A truncated p-adic value does not carry enough digits for the request.
struct precision_error : error {
    explicit precision_error(const std::string& w) : error(error_kind::precision, w) {}
};

/// Coset enumeration would exceed the configured cap.
struct resource_error : error {
    explicit resource_error(const std::string& w) : error(error_kind::resource, w) {}
};

struct numeric_failure_error : error {
    explicit numeric_failure_error(const std::string& w) : error(error_kind::numeric_failure, w) {}
};

}  // namespace padicpath
