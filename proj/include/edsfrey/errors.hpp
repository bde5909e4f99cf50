#pragma once

#include <stdexcept>
#include <string>

namespace edsfrey {

// An argument lies outside the domain of the operation (n = 0, b <= 0,
// non-squarefree field label, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A mathematical hypothesis of the construction fails: torsion or integral
// generator, a Diophantine identity that does not hold, a prime in the bad set.
class HypothesisViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The caller-supplied effort budget ran out before the answer was certain.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An identity that must hold unconditionally did not. Always a bug.
class InternalFault : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace edsfrey
