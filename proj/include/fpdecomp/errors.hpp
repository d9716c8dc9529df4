#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace fpdecomp {

/// Input text could not be parsed (graph6, edge list, CLI arguments).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// The block solver cannot meet the requested (size, parity) target.
/// Cannot fire for inputs that are adjacency matrices of graphs.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration hit its configured vertex cap before finishing.
/// For invariant searches the partial result found so far is attached.
class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(const std::string& what, int cap)
        : std::runtime_error(what), cap_(cap) {}

    int cap() const { return cap_; }

    // Populated when the first witness was found but the second was not.
    std::optional<int> partial_n;
    std::optional<std::uint64_t> partial_mask;

private:
    int cap_;
};

} // namespace fpdecomp
