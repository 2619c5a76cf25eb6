#pragma once

#include <stdexcept>
#include <string>

namespace ncforce {

// Evaluation of a Green function at zero separation.
struct SingularSeparation : std::domain_error {
    explicit SingularSeparation(const std::string& what) : std::domain_error(what) {}
};

// A force tier was called outside its validity regime (identical vs dissimilar atoms).
struct WrongTier : std::invalid_argument {
    explicit WrongTier(const std::string& what) : std::invalid_argument(what) {}
};

// Bisection bracket contained no sign change.
struct RootNotFound : std::runtime_error {
    explicit RootNotFound(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ncforce
