#pragma once

#include <stdexcept>
#include <string>

namespace padlab {

// Base class for all domain-gate violations.  CLI maps these to exit code 1.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DenominatorDivisibleByP : Error {
    explicit DenominatorDivisibleByP(const std::string& w = "denominator divisible by p") : Error(w) {}
};
struct NotAUnit : Error {
    explicit NotAUnit(const std::string& w = "argument is not a p-adic unit") : Error(w) {}
};
struct PDividesN : Error {
    explicit PDividesN(const std::string& w = "p divides N") : Error(w) {}
};
struct NotOrdinary : Error {
    explicit NotOrdinary(const std::string& w = "fiber is not ordinary (p | a_p)") : Error(w) {}
};
struct XCongruentOne : Error {
    explicit XCongruentOne(const std::string& w = "x = 1 (mod p) is outside the polylog domain") : Error(w) {}
};
struct RIsOne : Error {
    explicit RIsOne(const std::string& w = "r = 1 is excluded (pole of the p-adic zeta)") : Error(w) {}
};
struct NoValidN : Error {
    explicit NoValidN(const std::string& w = "no auxiliary N with a unit normalization factor") : Error(w) {}
};
struct DivisionNotExact : Error {
    explicit DivisionNotExact(const std::string& w = "division is not exact at the carried precision") : Error(w) {}
};
struct NonUnitConstantTerm : Error {
    explicit NonUnitConstantTerm(const std::string& w = "series has non-unit constant term") : Error(w) {}
};
struct OutsideDomain : Error {
    explicit OutsideDomain(const std::string& w = "evaluation point outside the convergence domain (h = 0 mod p)") : Error(w) {}
};
struct NotImplementedGeneralS : Error {
    explicit NotImplementedGeneralS(const std::string& w = "curve-side verification requires N | p-1 and M | p-1") : Error(w) {}
};
struct Inconsistent : Error {
    explicit Inconsistent(const std::string& w = "internal cross-check failed") : Error(w) {}
};

} // namespace padlab
