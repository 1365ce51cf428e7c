#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace okspec {

using Exponent = std::vector<int>;  // point of N^d

enum class OrderKind { grlex, grevlex, lex };

// Total order on N^d with 0 minimal and compatible with addition; the graded
// kinds refine total degree.
struct MonomialOrder {
    OrderKind kind = OrderKind::grlex;
    int dim = 1;

    bool less(const Exponent& a, const Exponent& b) const;
    bool refines_degree() const { return kind != OrderKind::lex; }

    // all exponents of N^d with total degree <= n (d = dim), sorted ascending
    std::vector<Exponent> graded_box(int n) const;
    // all exponents with total degree == n, sorted ascending
    std::vector<Exponent> graded_slice(int n) const;
};

OrderKind order_kind_from_string(const std::string& s);
std::string to_string(OrderKind k);

}  // namespace okspec
