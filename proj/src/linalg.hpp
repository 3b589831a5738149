#pragma once

// Dense Gaussian elimination, templated so the same routine runs on doubles
// and on exact rationals (the exact evaluation path is why this is not a
// third-party call).

#include <cmath>
#include <optional>
#include <vector>

#include "bgg/rational.hpp"

namespace bgg::detail {

inline double pivot_size(double x) { return std::fabs(x); }
inline Rat pivot_size(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// Solves A x = b in place; returns nullopt on a (numerically) singular
// system. Partial pivoting by magnitude; for rationals any nonzero pivot is
// exact, the magnitude rule just keeps the code shared.
template <class T>
std::optional<std::vector<T>> gaussian_solve(std::vector<std::vector<T>> a, std::vector<T> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (pivot_size(a[r][col]) > pivot_size(a[piv][col])) piv = r;
        if (a[piv][col] == T(0)) return std::nullopt;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == T(0)) continue;
            T f = a[r][col] / a[col][col];
            a[r][col] = T(0);
            for (std::size_t c = col + 1; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<T> x(n, T(0));
    for (std::size_t i = n; i-- > 0;) {
        T s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

} // namespace bgg::detail
