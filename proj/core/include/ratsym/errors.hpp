#ifndef RATSYM_ERRORS_HPP
#define RATSYM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ratsym {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct ZeroDenominator : Error {
    ZeroDenominator() : Error("rational function with zero denominator") {}
};

struct DepthCapExceeded : Error {
    explicit DepthCapExceeded(int cap)
        : Error("tower depth cap (" + std::to_string(cap) + ") exceeded") {}
};

struct DependentGenerator : Error {
    explicit DependentGenerator(const std::string& detail)
        : Error("dependent generator: " + detail) {}
};

// Thrown when a square root does not exist in the tower and adjunction is
// disallowed or impossible.  `minimal_poly` is a printable description of
// the minimal polynomial of the missing root, e.g. "z^2 - (1/2)".
struct SqrtNotInTower : Error {
    std::string minimal_poly;
    explicit SqrtNotInTower(std::string mp)
        : Error("square root not in tower; minimal polynomial " + mp),
          minimal_poly(std::move(mp)) {}
};

struct RootNotInTower : Error {
    std::string radical;
    explicit RootNotInTower(std::string rad)
        : Error("required radical not in tower: " + rad), radical(std::move(rad)) {}
};

struct DegreeBudgetExceeded : Error {
    DegreeBudgetExceeded(long needed, long budget)
        : Error("degree budget exceeded: needs " + std::to_string(needed) +
                ", budget " + std::to_string(budget)) {}
};

struct ClosureCapExceeded : Error {
    explicit ClosureCapExceeded(std::size_t cap)
        : Error("group closure exceeded cap of " + std::to_string(cap) + " elements") {}
};

struct DegenerateTriple : Error {
    DegenerateTriple() : Error("triple of points is not pairwise distinct") {}
};

struct NotAFixedPoint : Error {
    NotAFixedPoint() : Error("marked point is not a fixed point of the function") {}
};

struct ConjugatorNotInTower : Error {
    explicit ConjugatorNotInTower(const std::string& detail)
        : Error("axis conjugator not representable in tower: " + detail) {}
};

struct UnsupportedClass : Error {
    explicit UnsupportedClass(const std::string& cls)
        : Error("invariant function not implemented for class " + cls) {}
};

struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(std::size_t pos, const std::string& detail)
        : Error("syntax error at offset " + std::to_string(pos) + ": " + detail),
          position(pos) {}
};

struct UnknownSymbol : Error {
    explicit UnknownSymbol(const std::string& sym)
        : Error("unknown symbol: " + sym) {}
};

} // namespace ratsym

#endif
