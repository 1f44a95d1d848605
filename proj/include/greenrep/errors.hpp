#pragma once

#include <stdexcept>
#include <string>

namespace greenrep {

// Bad user input: malformed files, dimension/prime mismatches, non-subgroups.
// Maps to CLI exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured cap was exceeded (group order, subgroup lattice size).
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A search ladder (isomorphism, splitting) ran out of budget without a
// definitive answer. Never silently converted into a verdict.
struct UndecidedError : std::runtime_error {
    explicit UndecidedError(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical identity that must hold failed. Either the input violates a
// theorem hypothesis or there is a bug; both abort the run loudly.
struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace greenrep
