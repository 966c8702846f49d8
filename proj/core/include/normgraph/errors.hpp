#ifndef NORMGRAPH_ERRORS_HPP
#define NORMGRAPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace normgraph {

/// Raised when a request exceeds a configured size cap (vertex cap,
/// enumeration budget guard, format size limit). Maps to CLI exit code 3.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace normgraph

#endif
