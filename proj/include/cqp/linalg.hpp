#pragma once

#include <cqp/core.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

namespace cqp {

using Q = boost::multiprecision::cpp_rational;
using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;

QMat to_q(const std::vector<Vec>& m);
QVec to_q(const Vec& v);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMat& m);
int rank(QMat m);
int rank(const std::vector<Vec>& m);
// Basis of {x : m x = 0}.
QMat kernel(const QMat& m, int cols);

struct Solution {
    QVec particular;
    QMat homogeneous;  // basis of the solution space of m x = 0
};
// Solve m x = rhs exactly; nullopt when inconsistent.
std::optional<Solution> solve(const QMat& m, const QVec& rhs, int cols);

// Integer vector when every entry is integral.
std::optional<Vec> to_int(const QVec& v);
QVec operator*(const QMat& m, const QVec& v);

}  // namespace cqp
