#pragma once

#include <stdexcept>
#include <string>

namespace vlat {

// Maps to CLI exit code 2.
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

// Maps to CLI exit code 3.
struct CriterionNotApplicable : std::runtime_error {
    explicit CriterionNotApplicable(const std::string& msg) : std::runtime_error(msg) {}
};

// Maps to CLI exit code 4.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoAlmostSelfDualLattice : InvalidInput {
    explicit NoAlmostSelfDualLattice(const std::string& msg) : InvalidInput(msg) {}
};

struct NotInSharpImage : InvalidInput {
    explicit NotInSharpImage(const std::string& msg) : InvalidInput(msg) {}
};

struct UnrealizableOnForm : InvalidInput {
    explicit UnrealizableOnForm(const std::string& msg) : InvalidInput(msg) {}
};

struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace vlat
