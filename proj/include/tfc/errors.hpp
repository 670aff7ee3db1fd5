#pragma once

#include <stdexcept>
#include <string>

namespace tfc {

// Invalid input: violated precondition, bad parameter, unsupported place set.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A numeric procedure could not reach its accuracy target.
class NumericInstability : public std::runtime_error {
public:
    explicit NumericInstability(const std::string& what) : std::runtime_error(what) {}
};

// The requested case is classified but has no implemented evaluation.
class NotImplemented : public std::logic_error {
public:
    explicit NotImplemented(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tfc
