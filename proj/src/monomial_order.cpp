#include "okspec/okounkov/order.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace okspec {

namespace {

int total(const Exponent& a) { return std::accumulate(a.begin(), a.end(), 0); }

bool lex_less(const Exponent& a, const Exponent& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

}  // namespace

bool MonomialOrder::less(const Exponent& a, const Exponent& b) const {
    if ((int)a.size() != dim || (int)b.size() != dim)
        throw std::invalid_argument("MonomialOrder: exponent dimension mismatch");
    switch (kind) {
        case OrderKind::lex:
            return lex_less(a, b);
        case OrderKind::grlex: {
            int ta = total(a), tb = total(b);
            if (ta != tb) return ta < tb;
            return lex_less(a, b);
        }
        case OrderKind::grevlex: {
            int ta = total(a), tb = total(b);
            if (ta != tb) return ta < tb;
            // rightmost nonzero difference positive means smaller
            for (size_t i = a.size(); i-- > 0;) {
                if (a[i] != b[i]) return a[i] > b[i];
            }
            return false;
        }
    }
    return false;
}

std::vector<Exponent> MonomialOrder::graded_slice(int n) const {
    std::vector<Exponent> out;
    Exponent cur((size_t)dim, 0);
    while (true) {
        int used = 0;
        for (int i = 0; i < dim - 1; ++i) used += cur[(size_t)i];
        if (used <= n) {
            cur[(size_t)dim - 1] = n - used;
            out.push_back(cur);
        }
        int k = dim - 2;
        while (k >= 0) {
            if (++cur[(size_t)k] <= n) break;
            cur[(size_t)k] = 0;
            --k;
        }
        if (k < 0) break;
    }
    std::sort(out.begin(), out.end(),
              [&](const Exponent& a, const Exponent& b) { return less(a, b); });
    return out;
}

std::vector<Exponent> MonomialOrder::graded_box(int n) const {
    std::vector<Exponent> out;
    for (int t = 0; t <= n; ++t) {
        auto slice = graded_slice(t);
        out.insert(out.end(), slice.begin(), slice.end());
    }
    std::sort(out.begin(), out.end(),
              [&](const Exponent& a, const Exponent& b) { return less(a, b); });
    return out;
}

OrderKind order_kind_from_string(const std::string& s) {
    if (s == "grlex") return OrderKind::grlex;
    if (s == "grevlex") return OrderKind::grevlex;
    if (s == "lex") return OrderKind::lex;
    throw std::invalid_argument("unknown monomial order: " + s);
}

std::string to_string(OrderKind k) {
    switch (k) {
        case OrderKind::grlex: return "grlex";
        case OrderKind::grevlex: return "grevlex";
        case OrderKind::lex: return "lex";
    }
    return "?";
}

}  // namespace okspec
