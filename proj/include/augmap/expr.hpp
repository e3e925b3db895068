#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "augmap/models.hpp"

namespace augmap {

struct ExprError : std::runtime_error {
    std::size_t position;
    ExprError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg), position(pos) {}
};

/// Compiles an arithmetic expression in the variables X and Y into a scalar
/// field. Grammar: + - * / ^ (right-associative), unary minus, parentheses,
/// exp(...), numeric literals, and named constants supplied by the caller.
/// Identifiers are case-sensitive except X/Y, which are accepted in either
/// case.
ScalarField compile_expression(const std::string& text,
                               const std::map<std::string, double>& constants);

}  // namespace augmap
