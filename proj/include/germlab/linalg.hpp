// linalg.hpp -- dense rational linear algebra and small integer-lattice tools.
// Sizes here are tiny (tower degrees <= 16, lattice rank <= 2), so plain
// Gaussian elimination over Q is exact and fast enough.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "germlab/rational.hpp"

namespace germlab {

using QMatrix = std::vector<std::vector<Rational>>;

// Solves M x = b over Q.  Returns nullopt when the system is singular or
// inconsistent.  M is n x n.
inline std::optional<std::vector<Rational>> solve_linear(QMatrix m, std::vector<Rational> b) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        Rational inv = Rational(1) / m[col][col];
        for (std::size_t j = col; j < n; ++j) m[col][j] *= inv;
        b[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
            b[r] -= f * b[col];
        }
    }
    return b;
}

inline Rational determinant(QMatrix m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rational inv = Rational(1) / m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] * inv;
            for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    return det;
}

// Characteristic polynomial det(x I - M), monic, coefficients ascending.
// Computed by evaluating the determinant at deg+1 points and interpolating;
// exact over Q and entirely adequate at dimension <= 16.
inline std::vector<Rational> char_poly(const QMatrix& m) {
    const std::size_t n = m.size();
    std::vector<Rational> xs, ys;
    for (std::size_t k = 0; k <= n; ++k) {
        Rational x = static_cast<long long>(k);
        QMatrix a(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? x : Rational(0)) - m[i][j];
        xs.push_back(x);
        ys.push_back(determinant(a));
    }
    // Newton's divided differences, then expand.
    std::vector<Rational> dd = ys;
    for (std::size_t lvl = 1; lvl <= n; ++lvl)
        for (std::size_t i = n; i >= lvl; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - lvl]);
            if (i == lvl) break;
        }
    std::vector<Rational> poly{dd[n]};
    for (std::size_t i = n; i-- > 0;) {
        // poly = poly*(x - xs[i]) + dd[i]
        poly.insert(poly.begin(), Rational(0));
        for (std::size_t j = 0; j + 1 < poly.size(); ++j) poly[j] -= xs[i] * poly[j + 1];
        poly[0] += dd[i];
    }
    return poly;
}

// --- integer lattice helpers (used by the rescaling-equivalence test) ---

struct IVec2 {
    long long a = 0, b = 0;
};

// Kernel basis of the 2 x n matrix whose columns are the given lattice points:
// all integer vectors lambda with sum lambda_k * pts[k] = 0.  Returned as a
// basis of the kernel computed by integer row reduction of the transpose.
inline std::vector<std::vector<long long>> integer_kernel(const std::vector<IVec2>& pts) {
    const std::size_t n = pts.size();
    // Work on the n x 2 matrix A (rows=points); track transforms U with U*A = H.
    std::vector<std::vector<long long>> a(n, std::vector<long long>(2));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][0] = pts[i].a;
        a[i][1] = pts[i].b;
    }
    std::vector<std::vector<long long>> u(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < 2 && row < n; ++col) {
        while (true) {
            std::size_t piv = n;
            for (std::size_t r = row; r < n; ++r)
                if (a[r][col] != 0 && (piv == n || std::abs(a[r][col]) < std::abs(a[piv][col]))) piv = r;
            if (piv == n) break;
            std::swap(a[piv], a[row]);
            std::swap(u[piv], u[row]);
            bool clean = true;
            for (std::size_t r = row + 1; r < n; ++r) {
                if (a[r][col] == 0) continue;
                long long q = a[r][col] / a[row][col];
                for (int j = 0; j < 2; ++j) a[r][j] -= q * a[row][j];
                for (std::size_t j = 0; j < n; ++j) u[r][j] -= q * u[row][j];
                if (a[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[row][col] != 0) ++row;
    }
    std::vector<std::vector<long long>> kernel;
    for (std::size_t r = row; r < n; ++r) kernel.push_back(u[r]);
    return kernel;
}

// Hermite-style triangularization of the lattice spanned by the given points:
// returns generators g1=(p,q), g2=(0,s) (s=0 when rank<2) together with the
// expression of each generator as an integer combination of the input points.
struct LatticeBasis {
    IVec2 g1, g2;
    std::vector<long long> comb1, comb2; // coordinates w.r.t. input points
    int rank = 0;
};

inline LatticeBasis lattice_basis(const std::vector<IVec2>& pts) {
    const std::size_t n = pts.size();
    std::vector<std::vector<long long>> a(n, std::vector<long long>(2));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][0] = pts[i].a;
        a[i][1] = pts[i].b;
    }
    std::vector<std::vector<long long>> u(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < 2 && row < n; ++col) {
        while (true) {
            std::size_t piv = n;
            for (std::size_t r = row; r < n; ++r)
                if (a[r][col] != 0 && (piv == n || std::abs(a[r][col]) < std::abs(a[piv][col]))) piv = r;
            if (piv == n) break;
            std::swap(a[piv], a[row]);
            std::swap(u[piv], u[row]);
            bool clean = true;
            for (std::size_t r = row + 1; r < n; ++r) {
                if (a[r][col] == 0) continue;
                long long q = a[r][col] / a[row][col];
                for (int j = 0; j < 2; ++j) a[r][j] -= q * a[row][j];
                for (std::size_t j = 0; j < n; ++j) u[r][j] -= q * u[row][j];
                if (a[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[row][col] != 0) ++row;
    }
    LatticeBasis basis;
    basis.rank = static_cast<int>(row);
    if (row >= 1) {
        basis.g1 = {a[0][0], a[0][1]};
        basis.comb1 = u[0];
    }
    if (row >= 2) {
        basis.g2 = {a[1][0], a[1][1]};
        basis.comb2 = u[1];
    }
    return basis;
}

} // namespace germlab
