#include "etsim/matrix.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "etsim/tolerances.hpp"

namespace etsim {

namespace {

using EigenCxMat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapCx = Eigen::Map<const EigenCxMat>;
using MapCxMut = Eigen::Map<EigenCxMat>;

MapCx map_of(const ComplexMatrix& m) {
    return MapCx(m.data(), m.rows(), m.cols());
}

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols, std::initializer_list<cxd> entries) : ComplexMatrix(rows, cols) {
    if (static_cast<size_t>(rows) * cols != entries.size())
        throw DimensionMismatch("initializer size does not match rows*cols");
    std::copy(entries.begin(), entries.end(), a_.begin());
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cxd>& d) {
    ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) out.a_[k] = std::conj(a_[k]);
    return out;
}

cxd ComplexMatrix::trace() const {
    if (!square()) throw DimensionMismatch("trace of a non-square matrix");
    cxd t = 0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const auto& z : a_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    if (!square()) return std::numeric_limits<double>::infinity();
    double m = 0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j) m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix addition shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix subtraction shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cxd s) {
    for (auto& z : a_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    MapCxMut(out.data(), out.rows(), out.cols()) = map_of(a) * map_of(b);
    return out;
}

int HilbertLayout::total_dim() const {
    int n = 1;
    for (int d : subsystem_dims) n *= d;
    return n;
}

void HilbertLayout::validate() const {
    if (subsystem_dims.empty()) throw DimensionMismatch("empty Hilbert layout");
    for (int d : subsystem_dims)
        if (d < 1) throw DimensionMismatch("subsystem dimension < 1");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cxd aij = a(i, j);
            if (aij == cxd(0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

cxd expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
    if (op.rows() != rho.rows() || op.cols() != rho.cols() || !op.square())
        throw DimensionMismatch("expectation value shape mismatch");
    // Tr(O rho) without forming the product
    cxd t = 0;
    for (int i = 0; i < op.rows(); ++i)
        for (int k = 0; k < op.cols(); ++k) t += op(i, k) * rho(k, i);
    return t;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const HilbertLayout& layout, const std::vector<int>& keep) {
    layout.validate();
    const int n = layout.total_dim();
    if (rho.rows() != n || rho.cols() != n) throw DimensionMismatch("state dimension does not match layout");
    const int ns = static_cast<int>(layout.subsystem_dims.size());
    std::vector<bool> kept(ns, false);
    for (int s : keep) {
        if (s < 0 || s >= ns) throw DimensionMismatch("keep index out of range");
        kept[s] = true;
    }

    int nk = 1, nt = 1;
    for (int s = 0; s < ns; ++s) (kept[s] ? nk : nt) *= layout.subsystem_dims[s];

    // strides of each subsystem index in the flattened basis label
    std::vector<int> stride(ns, 1);
    for (int s = ns - 2; s >= 0; --s) stride[s] = stride[s + 1] * layout.subsystem_dims[s + 1];

    // enumerate kept and traced multi-indices
    std::vector<int> kept_subs, traced_subs;
    for (int s = 0; s < ns; ++s) (kept[s] ? kept_subs : traced_subs).push_back(s);

    auto offset = [&](const std::vector<int>& subs, int flat) {
        int off = 0;
        for (int s = static_cast<int>(subs.size()) - 1; s >= 0; --s) {
            const int d = layout.subsystem_dims[subs[s]];
            off += (flat % d) * stride[subs[s]];
            flat /= d;
        }
        return off;
    };

    ComplexMatrix out(nk, nk);
    for (int i = 0; i < nk; ++i) {
        const int oi = offset(kept_subs, i);
        for (int j = 0; j < nk; ++j) {
            const int oj = offset(kept_subs, j);
            cxd sum = 0;
            for (int t = 0; t < nt; ++t) {
                const int ot = offset(traced_subs, t);
                sum += rho(oi + ot, oj + ot);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

HermitianEig eig_hermitian(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionMismatch("eig_hermitian needs a square matrix");
    if (a.hermiticity_defect() > tol::eig_hermitian_pre)
        throw NonHermitian("matrix is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<EigenCxMat> solver(map_of(a));
    if (solver.info() != Eigen::Success) throw NoConvergence("Hermitian eigensolver failed");
    HermitianEig out;
    const int n = a.rows();
    out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    out.eigenvectors = ComplexMatrix(n, n);
    MapCxMut(out.eigenvectors.data(), n, n) = solver.eigenvectors();
    return out;
}

std::vector<cxd> eig_general(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionMismatch("eig_general needs a square matrix");
    Eigen::ComplexEigenSolver<EigenCxMat> solver;
    solver.compute(map_of(a), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NoConvergence("complex QR iteration failed");
    const int n = a.rows();
    return std::vector<cxd>(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
}

std::vector<cxd> solve_linear(const ComplexMatrix& a, const std::vector<cxd>& b) {
    if (!a.square()) throw DimensionMismatch("solve_linear needs a square matrix");
    if (static_cast<size_t>(a.rows()) != b.size()) throw DimensionMismatch("rhs length mismatch");
    Eigen::PartialPivLU<EigenCxMat> lu(map_of(a));
    // rcond() is a norm estimator and can miss exactly singular but structured
    // systems; the pivot ratio catches those.
    double pivot_max = 0, pivot_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < a.rows(); ++i) {
        const double p = std::abs(lu.matrixLU()(i, i));
        pivot_max = std::max(pivot_max, p);
        pivot_min = std::min(pivot_min, p);
    }
    if (pivot_min <= 1e-14 * pivot_max || !(lu.rcond() > 1.0 / tol::condition_limit))
        throw Singular("matrix is singular or ill-conditioned");
    Eigen::VectorXcd rhs = Eigen::Map<const Eigen::VectorXcd>(b.data(), b.size());
    Eigen::VectorXcd x = lu.solve(rhs);
    return std::vector<cxd>(x.data(), x.data() + x.size());
}

}  // namespace etsim
