#include "loom/qlinalg.hpp"

#include "loom/error.hpp"

namespace loom {

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<long> rref(QMatrix& m) {
    std::vector<long> pivots;
    if (m.empty()) return pivots;
    long rows = static_cast<long>(m.size());
    long cols = static_cast<long>(m[0].size());
    long row = 0;
    for (long col = 0; col < cols && row < rows; ++col) {
        long p = -1;
        for (long i = row; i < rows; ++i)
            if (m[i][col] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][col];
        for (long j = col; j < cols; ++j) m[row][j] *= inv;
        for (long i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (long j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

QMatrix q_identity(long n) {
    QMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (long i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

QMatrix q_mul(const QMatrix& a, const QMatrix& b) {
    long n = static_cast<long>(a.size());
    long k = static_cast<long>(b.size());
    long m = b.empty() ? 0 : static_cast<long>(b[0].size());
    QMatrix out(n, std::vector<Rational>(m, Rational(0)));
    for (long i = 0; i < n; ++i)
        for (long l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (long j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

long q_rank(QMatrix m) { return static_cast<long>(rref(m).size()); }

Rational q_det(QMatrix m) {
    long n = static_cast<long>(m.size());
    Rational det(1);
    for (long col = 0; col < n; ++col) {
        long p = -1;
        for (long i = col; i < n; ++i)
            if (m[i][col] != 0) {
                p = i;
                break;
            }
        if (p < 0) return Rational(0);
        if (p != col) {
            std::swap(m[p], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rational inv = 1 / m[col][col];
        for (long i = col + 1; i < n; ++i) {
            if (m[i][col] == 0) continue;
            Rational f = m[i][col] * inv;
            for (long j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return det;
}

bool q_invertible(const QMatrix& m) { return q_det(m) != 0; }

QMatrix q_inverse(const QMatrix& m) {
    long n = static_cast<long>(m.size());
    QMatrix work(n, std::vector<Rational>(2 * n, Rational(0)));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) work[i][j] = m[i][j];
        work[i][n + i] = 1;
    }
    auto pivots = rref(work);
    if (static_cast<long>(pivots.size()) != n || pivots.back() != n - 1)
        throw not_invertible_error("rational matrix not invertible");
    QMatrix out(n, std::vector<Rational>(n, Rational(0)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) out[i][j] = work[i][n + j];
    return out;
}

std::vector<std::vector<Rational>> q_nullspace(const QMatrix& m_in) {
    QMatrix m = m_in;
    if (m.empty()) return {};
    long cols = static_cast<long>(m[0].size());
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (long p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (long free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QMatrix> q_solve(const QMatrix& a, const QMatrix& b) {
    long rows = static_cast<long>(a.size());
    long cols = rows == 0 ? 0 : static_cast<long>(a[0].size());
    long nrhs = b.empty() ? 0 : static_cast<long>(b[0].size());
    QMatrix work(rows, std::vector<Rational>(cols + nrhs, Rational(0)));
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) work[i][j] = a[i][j];
        for (long j = 0; j < nrhs; ++j) work[i][cols + j] = b[i][j];
    }
    auto pivots = rref(work);
    // inconsistent if a pivot lands in the right-hand block
    for (long p : pivots)
        if (p >= cols) return std::nullopt;
    // also check zero rows with nonzero rhs
    for (long i = static_cast<long>(pivots.size()); i < rows; ++i)
        for (long j = cols; j < cols + nrhs; ++j)
            if (work[i][j] != 0) return std::nullopt;
    QMatrix x(cols, std::vector<Rational>(nrhs, Rational(0)));
    for (size_t r = 0; r < pivots.size(); ++r)
        for (long j = 0; j < nrhs; ++j) x[pivots[r]][j] = work[r][cols + j];
    return x;
}

} // namespace loom
