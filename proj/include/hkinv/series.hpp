#pragma once

#include <vector>

#include "hkinv/rational.hpp"

namespace hkinv {

// Dense truncated power series over Rational; coefficient i = degree i.
// All operations truncate at the length of the inputs.
struct Series {
    std::vector<Rational> c;

    explicit Series(std::size_t len) : c(len) {}

    Rational at(std::size_t i) const { return i < c.size() ? c[i] : Rational(0); }

    static Series mul(const Series& a, const Series& b, std::size_t len) {
        Series r(len);
        for (std::size_t i = 0; i < len && i < a.c.size(); ++i) {
            if (a.c[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < len && j < b.c.size(); ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        }
        return r;
    }

    // Multiplicative inverse; requires a nonzero constant term.
    static Series inverse(const Series& a, std::size_t len) {
        if (a.at(0).is_zero()) throw InvalidInput("Series: inverse needs a unit");
        Series r(len);
        r.c[0] = Rational(1) / a.c[0];
        for (std::size_t n = 1; n < len; ++n) {
            Rational acc(0);
            for (std::size_t k = 1; k <= n; ++k) acc += a.at(k) * r.c[n - k];
            r.c[n] = -acc / a.c[0];
        }
        return r;
    }

    // log(a) for a with constant term 1, via g' = a'/a.
    static Series log(const Series& a, std::size_t len) {
        if (!(a.at(0) == Rational(1))) throw InvalidInput("Series: log needs constant term 1");
        Series inv = inverse(a, len);
        Series da(len);  // a'
        for (std::size_t i = 1; i < len && i < a.c.size(); ++i)
            da.c[i - 1] = Rational(static_cast<long long>(i)) * a.c[i];
        Series dg = mul(da, inv, len);
        Series g(len);
        for (std::size_t i = 1; i < len; ++i)
            g.c[i] = dg.c[i - 1] / Rational(static_cast<long long>(i));
        return g;
    }
};

}  // namespace hkinv
