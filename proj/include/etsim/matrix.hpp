#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "etsim/errors.hpp"

namespace etsim {

using cxd = std::complex<double>;

/// Dense complex matrix, row-major. Sized for Hilbert dimensions up to ~64
/// (Liouvillians up to ~4096^2); no sparse or GPU paths.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    ComplexMatrix(int rows, int cols, std::initializer_list<cxd> entries);

    static ComplexMatrix identity(int n);
    static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }
    static ComplexMatrix diagonal(const std::vector<cxd>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cxd& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cxd& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    cxd* data() { return a_.data(); }
    const cxd* data() const { return a_.data(); }
    size_t size() const { return a_.size(); }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    cxd trace() const;

    double max_abs() const;
    /// max entrywise |A - A^dag|; 0 for the empty matrix.
    double hermiticity_defect() const;
    bool is_hermitian(double tolerance) const { return square() && hermiticity_defect() < tolerance; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cxd s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cxd s) { return a *= s; }
    friend ComplexMatrix operator*(cxd s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cxd> a_;
};

/// Composite-space bookkeeping: ordered local dimensions, e.g. (2, 2, n_cav+1).
struct HilbertLayout {
    std::vector<int> subsystem_dims;

    int total_dim() const;
    void validate() const;  // throws DimensionMismatch on a dim < 1
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(op * rho); matching dimensions required.
cxd expectation(const ComplexMatrix& op, const ComplexMatrix& rho);

/// Reduced matrix on the subsystems listed in `keep` (ascending order kept).
ComplexMatrix partial_trace(const ComplexMatrix& rho, const HilbertLayout& layout, const std::vector<int>& keep);

struct HermitianEig {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // orthonormal columns, same order
};

/// Eigendecomposition of a Hermitian matrix (checked against tol::eig_hermitian_pre).
HermitianEig eig_hermitian(const ComplexMatrix& a);

/// Eigenvalues of a general square complex matrix (no vectors).
std::vector<cxd> eig_general(const ComplexMatrix& a);

/// Solves A x = b by partial-pivot LU; rejects ill-conditioned systems.
std::vector<cxd> solve_linear(const ComplexMatrix& a, const std::vector<cxd>& b);

}  // namespace etsim
