#include "diodef/matq.hpp"

#include <cassert>

namespace diodef {

int q_rank(QMat m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        Rat inv = Rat(1) / m[rank][col];
        for (size_t j = col; j < cols; ++j) m[rank][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return int(rank);
}

std::optional<QVec> q_solve(QMat a, QVec b) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    std::vector<int> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[rank], a[piv]);
        std::swap(b[rank], b[piv]);
        Rat inv = Rat(1) / a[rank][col];
        for (size_t j = col; j < cols; ++j) a[rank][j] *= inv;
        b[rank] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
        pivot_col.push_back(int(col));
        ++rank;
    }
    for (size_t i = rank; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    QVec x(cols, Rat(0));
    for (size_t i = 0; i < rank; ++i) x[pivot_col[i]] = b[i];
    return x;
}

namespace {

// column-style HNF with transformation: returns H = A * U with U unimodular,
// H lower-triangular-ish column form. A is r x c, columns are generators.
void hnf_columns(ZMat &a, ZMat &u) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    u.assign(cols, ZVec(cols, Int(0)));
    for (size_t i = 0; i < cols; ++i) u[i][i] = 1;
    size_t col = 0;
    for (size_t row = 0; row < rows && col < cols; ++row) {
        // gcd-eliminate entries a[row][col..] into column col
        for (;;) {
            size_t nz = cols;
            // find column with smallest nonzero |entry| at this row
            for (size_t j = col; j < cols; ++j)
                if (a[row][j] != 0 && (nz == cols || abs(a[row][j]) < abs(a[row][nz]))) nz = j;
            if (nz == cols) break; // all zero in this row
            if (nz != col) {
                for (size_t i = 0; i < rows; ++i) std::swap(a[i][col], a[i][nz]);
                for (size_t i = 0; i < cols; ++i) std::swap(u[i][col], u[i][nz]);
            }
            bool done = true;
            for (size_t j = col + 1; j < cols; ++j) {
                if (a[row][j] == 0) continue;
                Int q = floor_div(a[row][j], a[row][col]);
                if (q != 0) {
                    for (size_t i = 0; i < rows; ++i) a[i][j] -= q * a[i][col];
                    for (size_t i = 0; i < cols; ++i) u[i][j] -= q * u[i][col];
                }
                if (a[row][j] != 0) done = false;
            }
            if (done) break;
        }
        if (a[row][col] != 0) {
            if (a[row][col] < 0) {
                for (size_t i = 0; i < rows; ++i) a[i][col] = -a[i][col];
                for (size_t i = 0; i < cols; ++i) u[i][col] = -u[i][col];
            }
            ++col;
        }
    }
}

} // namespace

std::optional<ZVec> z_solve(const ZMat &a_in, const ZVec &b) {
    ZMat a = a_in;
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    ZMat u;
    hnf_columns(a, u);
    // back-substitute b against the triangular columns
    ZVec y(cols, Int(0));
    ZVec r = b;
    size_t col = 0;
    for (size_t row = 0; row < rows; ++row) {
        if (col < cols && a[row][col] != 0) {
            Int q = r[row] / a[row][col];
            if (q * a[row][col] != r[row]) {
                Int qf = floor_div(r[row], a[row][col]);
                q = qf;
            }
            // exact divisibility needed
            if (r[row] % a[row][col] != 0) return std::nullopt;
            q = r[row] / a[row][col];
            y[col] = q;
            for (size_t i = row; i < rows; ++i) r[i] -= q * a[i][col];
            ++col;
        }
        if (r[row] != 0) return std::nullopt;
    }
    // x = U * y
    ZVec x(cols, Int(0));
    for (size_t i = 0; i < cols; ++i) {
        Int s(0);
        for (size_t j = 0; j < cols; ++j) s += u[i][j] * y[j];
        x[i] = s;
    }
    return x;
}

ZVec z_lattice_reduce(const ZMat &a_in, const ZVec &v) {
    ZMat a = a_in;
    ZMat u;
    hnf_columns(a, u);
    size_t n = v.size();
    ZVec r = v;
    // columns of a are triangular: reduce top-down
    size_t col = 0;
    for (size_t row = 0; row < n && col < n; ++row) {
        if (a[row][col] == 0) continue;
        Int q = floor_div(r[row], a[row][col]);
        if (q != 0)
            for (size_t i = row; i < n; ++i) r[i] -= q * a[i][col];
        ++col;
    }
    return r;
}

} // namespace diodef
