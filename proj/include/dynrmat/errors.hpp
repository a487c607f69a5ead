#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dynrmat {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation hit a vanishing denominator; carries the offending subexpression.
struct DivisionByZero : Error {
    explicit DivisionByZero(std::string subexpr)
        : Error("division by zero in subexpression: " + subexpr), subexpression(std::move(subexpr)) {}
    std::string subexpression;
};

// Exact zero-testing exceeded the monomial budget while expanding.
struct ExpansionTooLarge : Error {
    ExpansionTooLarge(std::size_t terms, std::size_t budget)
        : Error("expansion exceeded term budget (" + std::to_string(terms) + " > " + std::to_string(budget) + ")"),
          term_count(terms), term_budget(budget) {}
    std::size_t term_count;
    std::size_t term_budget;
};

struct UnknownName : Error {
    explicit UnknownName(const std::string& name) : Error("unknown name: " + name) {}
};

struct NotInBaseSubalgebra : Error {
    explicit NotInBaseSubalgebra(const std::string& what) : Error("word leaves the base subalgebra: " + what) {}
};

struct InterpolationInconsistent : Error {
    explicit InterpolationInconsistent(const std::string& what)
        : Error("bidifferential extraction failed verification: " + what) {}
};

struct NotUnital : Error {
    NotUnital() : Error("tensor is not of the form 1 + O(hbar)") {}
};

struct SlotOutOfRange : Error {
    SlotOutOfRange(int slot, int arity)
        : Error("slot " + std::to_string(slot) + " out of range for arity " + std::to_string(arity)) {}
};

struct SlotNotFree : Error {
    explicit SlotNotFree(int slot) : Error("slot " + std::to_string(slot) + " does not carry the identity leg") {}
};

struct DegenerateEverywhere : Error {
    DegenerateEverywhere() : Error("det a(lambda) is identically zero: decomposition is fat nowhere") {}
};

struct DegreeBudgetExceeded : Error {
    DegreeBudgetExceeded(int degree, int budget)
        : Error("enveloping-monomial degree " + std::to_string(degree) + " exceeds budget " + std::to_string(budget)) {}
};

// Located syntax / format error (1-based line and column).
struct ParseError : Error {
    ParseError(int line_, int col_, const std::string& what)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + what),
          line(line_), column(col_) {}
    int line;
    int column;
};

} // namespace dynrmat
