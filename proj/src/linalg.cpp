// linalg.cpp
#include <ebsim/linalg.hpp>

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace ebsim::linalg {

namespace {

// Row-major strides: factor 0 varies slowest.
std::vector<Index> factor_strides(const FactorShape& shape) {
    std::vector<Index> strides(shape.dims.size());
    Index acc = 1;
    for (Index i = shape.num_factors() - 1; i >= 0; --i) {
        strides[static_cast<size_t>(i)] = acc;
        acc *= shape.dims[static_cast<size_t>(i)];
    }
    return strides;
}

void check_square_shape(const Matrix& rho, const FactorShape& shape, const char* who) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    if (rho.rows() != shape.total_dim())
        throw std::invalid_argument(std::string(who) + ": factor shape does not match matrix dimension");
}

} // namespace

// ------------------ construction ------------------

Matrix identity(Index n) {
    if (n < 1) throw std::invalid_argument("identity: dimension must be >= 1");
    return Matrix::Identity(n, n);
}

Vector basis_ket(Index dim, Index i) {
    if (dim < 1) throw std::invalid_argument("basis_ket: dimension must be >= 1");
    if (i < 0 || i >= dim) throw std::invalid_argument("basis_ket: index out of range");
    Vector v = Vector::Zero(dim);
    v(i) = Complex(1.0, 0.0);
    return v;
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// ------------------ diagnostics ------------------

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs_diff(m, m.adjoint()) <= tol;
}

// ------------------ tensor algebra ------------------

Matrix kron(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Vector kron(const Vector& a, const Vector& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

namespace {

// Flat offsets of the joint kept / traced indices for a keep subset.
struct TraceOffsets {
    std::vector<Index> kept;
    std::vector<Index> traced;
};

TraceOffsets trace_offsets(const FactorShape& shape, const std::vector<Index>& keep,
                           const char* who) {
    if (keep.empty())
        throw std::invalid_argument(std::string(who) + ": keep set must be non-empty");
    if (!std::is_sorted(keep.begin(), keep.end()) ||
        std::adjacent_find(keep.begin(), keep.end()) != keep.end())
        throw std::invalid_argument(std::string(who) + ": keep set must be sorted and duplicate-free");
    for (Index f : keep)
        if (f < 0 || f >= shape.num_factors())
            throw std::invalid_argument(std::string(who) + ": keep index out of range");

    const auto strides = factor_strides(shape);
    std::vector<Index> traced_factors;
    for (Index f = 0; f < shape.num_factors(); ++f)
        if (!std::binary_search(keep.begin(), keep.end(), f)) traced_factors.push_back(f);

    Index kept_dim = 1;
    for (Index f : keep) kept_dim *= shape.dims[static_cast<size_t>(f)];
    Index traced_dim = 1;
    for (Index f : traced_factors) traced_dim *= shape.dims[static_cast<size_t>(f)];

    // Flat offset of the j-th joint index of a factor subset.
    auto offset = [&](const std::vector<Index>& factors, Index j) {
        Index off = 0;
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            Index d = shape.dims[static_cast<size_t>(*it)];
            off += (j % d) * strides[static_cast<size_t>(*it)];
            j /= d;
        }
        return off;
    };

    TraceOffsets out;
    out.kept.resize(static_cast<size_t>(kept_dim));
    for (Index j = 0; j < kept_dim; ++j) out.kept[static_cast<size_t>(j)] = offset(keep, j);
    out.traced.resize(static_cast<size_t>(traced_dim));
    for (Index j = 0; j < traced_dim; ++j) out.traced[static_cast<size_t>(j)] = offset(traced_factors, j);
    return out;
}

} // namespace

Matrix partial_trace(const Matrix& rho, const FactorShape& shape,
                     const std::vector<Index>& keep) {
    check_square_shape(rho, shape, "partial_trace");
    const TraceOffsets off = trace_offsets(shape, keep, "partial_trace");
    const Index kept_dim = static_cast<Index>(off.kept.size());

    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    for (Index r = 0; r < kept_dim; ++r)
        for (Index c = 0; c < kept_dim; ++c) {
            const Index koff_r = off.kept[static_cast<size_t>(r)];
            const Index koff_c = off.kept[static_cast<size_t>(c)];
            Complex acc(0.0, 0.0);
            for (Index toff : off.traced) acc += rho(koff_r + toff, koff_c + toff);
            out(r, c) = acc;
        }
    return out;
}

Matrix partial_trace_pure(const Vector& psi, const FactorShape& shape,
                          const std::vector<Index>& keep) {
    if (psi.size() != shape.total_dim())
        throw std::invalid_argument("partial_trace_pure: factor shape does not match vector dimension");
    const TraceOffsets off = trace_offsets(shape, keep, "partial_trace_pure");
    const Index kept_dim = static_cast<Index>(off.kept.size());

    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    for (Index r = 0; r < kept_dim; ++r)
        for (Index c = 0; c < kept_dim; ++c) {
            const Index koff_r = off.kept[static_cast<size_t>(r)];
            const Index koff_c = off.kept[static_cast<size_t>(c)];
            Complex acc(0.0, 0.0);
            for (Index toff : off.traced)
                acc += psi(koff_r + toff) * std::conj(psi(koff_c + toff));
            out(r, c) = acc;
        }
    return out;
}

Matrix partial_transpose(const Matrix& rho, const FactorShape& shape, Index factor) {
    check_square_shape(rho, shape, "partial_transpose");
    if (factor < 0 || factor >= shape.num_factors())
        throw std::invalid_argument("partial_transpose: factor index out of range");

    const auto strides = factor_strides(shape);
    const Index d = shape.dims[static_cast<size_t>(factor)];
    const Index stride = strides[static_cast<size_t>(factor)];
    const Index n = rho.rows();

    Matrix out(n, n);
    for (Index r = 0; r < n; ++r) {
        const Index rf = (r / stride) % d;
        for (Index c = 0; c < n; ++c) {
            const Index cf = (c / stride) % d;
            out(r - rf * stride + cf * stride, c - cf * stride + rf * stride) = rho(r, c);
        }
    }
    return out;
}

// ------------------ Hermitian eigenvalues ------------------

namespace {

double off_diagonal_frobenius(const Matrix& a) {
    double acc = 0.0;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
}

} // namespace

RealVector hermitian_eigenvalues(const Matrix& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
    if (!is_hermitian(h))
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");

    const Index n = h.rows();
    Matrix a = h;

    constexpr int max_sweeps = 100;
    bool converged = off_diagonal_frobenius(a) <= EIGEN_TOL;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double absb = std::abs(apq);
                if (absb == 0.0) continue;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const Complex phase = apq / absb;
                const double tau = (aqq - app) / (2.0 * absb);
                const double t = tau >= 0.0 ? -1.0 / (tau + std::hypot(tau, 1.0))
                                            : 1.0 / (-tau + std::hypot(tau, 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Right-multiply by the rotation, then left-multiply by its adjoint.
                for (Index r = 0; r < n; ++r) {
                    const Complex vp = a(r, p), vq = a(r, q);
                    a(r, p) = c * vp + s * std::conj(phase) * vq;
                    a(r, q) = -s * phase * vp + c * vq;
                }
                for (Index col = 0; col < n; ++col) {
                    const Complex vp = a(p, col), vq = a(q, col);
                    a(p, col) = c * vp + s * phase * vq;
                    a(q, col) = -s * std::conj(phase) * vp + c * vq;
                }
                a(p, q) = a(q, p) = Complex(0.0, 0.0);
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);
            }
        }
        converged = off_diagonal_frobenius(a) <= EIGEN_TOL;
    }
    if (!converged)
        throw std::runtime_error("hermitian_eigenvalues: no convergence within 100 sweeps");

    RealVector evals(n);
    for (Index i = 0; i < n; ++i) evals(i) = a(i, i).real();
    std::sort(evals.begin(), evals.end());
    return evals;
}

} // namespace ebsim::linalg
