#include <cqp/linalg.hpp>

namespace cqp {

QMat to_q(const std::vector<Vec>& m) {
    QMat r;
    r.reserve(m.size());
    for (const auto& row : m) r.push_back(to_q(row));
    return r;
}

QVec to_q(const Vec& v) {
    QVec r;
    r.reserve(v.size());
    for (Int x : v) r.emplace_back(x);
    return r;
}

std::vector<int> rref(QMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Q inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Q f = m[i][c];
            for (int k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(QMat m) { return static_cast<int>(rref(m).size()); }
int rank(const std::vector<Vec>& m) { return rank(to_q(m)); }

QMat kernel(const QMat& m, int cols) {
    QMat a = m;
    auto piv = rref(a);
    std::vector<char> is_pivot(cols, 0);
    for (int c : piv) is_pivot[c] = 1;
    QMat basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVec x(cols, 0);
        x[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<Solution> solve(const QMat& m, const QVec& rhs, int cols) {
    QMat a;
    for (std::size_t r = 0; r < m.size(); ++r) {
        QVec row = m[r];
        row.push_back(rhs[r]);
        a.push_back(std::move(row));
    }
    auto piv = rref(a);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    Solution s;
    s.particular.assign(cols, 0);
    for (std::size_t r = 0; r < piv.size(); ++r) s.particular[piv[r]] = a[r][cols];
    s.homogeneous = kernel(m, cols);
    return s;
}

std::optional<Vec> to_int(const QVec& v) {
    Vec r;
    for (const Q& x : v) {
        if (denominator(x) != 1) return std::nullopt;
        r.push_back(static_cast<Int>(numerator(x)));
    }
    return r;
}

QVec operator*(const QMat& m, const QVec& v) {
    QVec r(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k) r[i] += m[i][k] * v[k];
    return r;
}

}  // namespace cqp
