#pragma once

#include "edsfrey/arith.hpp"
#include "edsfrey/curve.hpp"
#include "edsfrey/eds.hpp"
#include "edsfrey/frey.hpp"

#include <cstdint>

namespace edsfrey {

/// Decomposition of a term of y^2 = x(x^2 + b) with B_m = w^l:
///   A_m = a u^2,  A_m^2 + b w^(4l) = a v^2,  v^2 - a u^4 = (b/a) w^(4l),
/// with a squarefree, a | b and C_m = +-a u v.
struct DescentDatum {
    std::uint64_t m = 0;
    Integer b;
    Integer a;
    Integer u;
    Integer v;
    Integer w;
    unsigned ell = 1;
    int c_sign = 1;  // sign of C_m
};

/// Throws InvalidInput unless c is y^2 = x(x^2 + b) with b > 0 and w^l = B_m;
/// HypothesisViolation if A_m B_m = 0 or A_m < 0 (excluded from the Frey
/// construction); BudgetExhausted if A_m cannot be factored within budget;
/// InternalFault if any identity of the decomposition fails.
DescentDatum decompose(const Curve& c, const EDSTerm& t, unsigned ell, const Integer& w,
                       const FactorEffort& effort = {});

/// Convenience: l = 1, w = B_m.
DescentDatum decompose(const Curve& c, const EDSTerm& t, const FactorEffort& effort = {});

/// Re-checks every DescentDatum identity; throws HypothesisViolation.
void validate(const DescentDatum& d);

/// (a, d, u, v, w, l) = (a_m, b / a_m, u_m, v_m, w_m, l).
FreySolution to_frey(const DescentDatum& d);

}  // namespace edsfrey
