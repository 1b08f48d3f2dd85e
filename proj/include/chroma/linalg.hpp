#ifndef CHROMA_LINALG_HPP
#define CHROMA_LINALG_HPP

#include <optional>
#include <vector>

#include "chroma/rational.hpp"

namespace chroma {

using RatMat = std::vector<RatVec>;  // row-major

/// Result of solving A x = b exactly: one particular solution plus a basis of
/// the null space of A.  Empty optional when the system is inconsistent.
struct AffineSolution {
    RatVec particular;
    std::vector<RatVec> nullspace;
};

inline std::optional<AffineSolution> solve_affine(RatMat a, RatVec b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : (b.empty() ? 0 : 0);
    size_t ncols = rows ? a[0].size() : 0;
    std::vector<int> pivot_col_of_row;
    std::vector<int> pivot_row_of_col(ncols, -1);
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Rat inv = a[r][c];
        for (size_t j = c; j < ncols; ++j) a[r][j] /= inv;
        b[r] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = c; j < ncols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_row_of_col[c] = static_cast<int>(r);
        pivot_col_of_row.push_back(static_cast<int>(c));
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;

    AffineSolution sol;
    sol.particular.assign(ncols, Rat(0));
    for (size_t i = 0; i < r; ++i) sol.particular[pivot_col_of_row[i]] = b[i];
    for (size_t c = 0; c < ncols; ++c) {
        if (pivot_row_of_col[c] >= 0) continue;
        RatVec v(ncols, Rat(0));
        v[c] = 1;
        for (size_t i = 0; i < r; ++i) v[pivot_col_of_row[i]] = -a[i][c];
        sol.nullspace.push_back(std::move(v));
    }
    (void)cols;
    return sol;
}

/// Rank of a rational matrix by Gaussian elimination.
inline size_t rank_of(RatMat a) {
    const size_t rows = a.size();
    const size_t ncols = rows ? a[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[r][c];
            for (size_t j = c; j < ncols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

/// Sign of det of a square rational matrix: clears denominators row-wise and
/// runs fraction-free (Bareiss) elimination over integers.
inline int sign_det(const RatMat& m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i) {
        Int lcm = 1;
        for (size_t j = 0; j < n; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m[i][j].get_den().get_mpz_t());
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j].get_num() * (lcm / m[i][j].get_den());
    }
    int sign = 1;
    Int prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    int s = sgn(a[n - 1][n - 1]);
    return s == 0 ? 0 : s * sign;
}

}  // namespace chroma

#endif
