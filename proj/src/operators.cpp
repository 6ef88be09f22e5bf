#include "operators.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace qgrav {

namespace {

using Triplet = Eigen::Triplet<cd>;

Eigen::Index pair_index(int n1, int n2, int dim2) {
    return static_cast<Eigen::Index>(n1) * dim2 + n2;
}

int pattern_bandwidth(const Eigen::SparseMatrix<cd, Eigen::RowMajor>& m) {
    int bw = 0;
    for (int row = 0; row < m.outerSize(); ++row)
        for (Eigen::SparseMatrix<cd, Eigen::RowMajor>::InnerIterator it(m, row); it; ++it)
            bw = std::max(bw, std::abs(static_cast<int>(it.col()) - row));
    return bw;
}

} // namespace

OperatorMatrix OperatorMatrix::from_diagonal(int modes, int dim1, int dim2,
                                             Eigen::VectorXcd diag, bool hermitian) {
    OperatorMatrix op;
    op.modes_ = modes;
    op.dim1_ = dim1;
    op.dim2_ = modes == 2 ? dim2 : 1;
    op.total_dim_ = modes == 2 ? static_cast<Eigen::Index>(dim1) * dim2 : dim1;
    if (diag.size() != op.total_dim_)
        throw dimension_mismatch_error("diagonal length does not match dimension");
    op.storage_ = Storage::diagonal;
    op.bandwidth_ = 0;
    op.hermitian_ = hermitian;
    op.diag_ = std::move(diag);
    return op;
}

OperatorMatrix OperatorMatrix::from_sparse(int modes, int dim1, int dim2,
                                           Eigen::SparseMatrix<cd, Eigen::RowMajor> m,
                                           bool hermitian) {
    OperatorMatrix op;
    op.modes_ = modes;
    op.dim1_ = dim1;
    op.dim2_ = modes == 2 ? dim2 : 1;
    op.total_dim_ = modes == 2 ? static_cast<Eigen::Index>(dim1) * dim2 : dim1;
    if (m.rows() != op.total_dim_ || m.cols() != op.total_dim_)
        throw dimension_mismatch_error("sparse matrix shape does not match dimension");
    op.storage_ = Storage::sparse;
    op.sparse_ = std::move(m);
    op.sparse_.makeCompressed();
    op.bandwidth_ = pattern_bandwidth(op.sparse_);
    op.hermitian_ = hermitian;
    return op;
}

OperatorMatrix OperatorMatrix::from_dense(int modes, int dim1, int dim2, Eigen::MatrixXcd m,
                                          bool hermitian) {
    OperatorMatrix op;
    op.modes_ = modes;
    op.dim1_ = dim1;
    op.dim2_ = modes == 2 ? dim2 : 1;
    op.total_dim_ = modes == 2 ? static_cast<Eigen::Index>(dim1) * dim2 : dim1;
    if (m.rows() != op.total_dim_ || m.cols() != op.total_dim_)
        throw dimension_mismatch_error("dense matrix shape does not match dimension");
    op.storage_ = Storage::dense;
    op.dense_ = std::move(m);
    op.bandwidth_ = static_cast<int>(op.total_dim_) - 1;
    op.hermitian_ = hermitian;
    return op;
}

std::string OperatorMatrix::structure() const {
    if (storage_ == Storage::diagonal || bandwidth_ == 0) return "diagonal";
    if (storage_ == Storage::dense) return "dense";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "banded(%d)", bandwidth_);
    return buf;
}

Eigen::VectorXcd OperatorMatrix::apply(const Eigen::VectorXcd& v) const {
    if (v.size() != total_dim_) throw dimension_mismatch_error("vector length mismatch");
    switch (storage_) {
        case Storage::diagonal: return diag_.cwiseProduct(v);
        case Storage::sparse: return sparse_ * v;
        case Storage::dense: return dense_ * v;
    }
    throw std::logic_error("unreachable");
}

Eigen::MatrixXcd OperatorMatrix::dense_matrix() const {
    if (total_dim_ > 64 * 64)
        throw invalid_argument_error("dense materialization limited to flattened dim <= 4096");
    switch (storage_) {
        case Storage::diagonal: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(total_dim_, total_dim_);
            m.diagonal() = diag_;
            return m;
        }
        case Storage::sparse: return Eigen::MatrixXcd(sparse_);
        case Storage::dense: return dense_;
    }
    throw std::logic_error("unreachable");
}

double OperatorMatrix::hermiticity_defect() const {
    switch (storage_) {
        case Storage::diagonal: {
            double d = 0.0;
            for (Eigen::Index i = 0; i < diag_.size(); ++i)
                d = std::max(d, std::abs(diag_[i] - std::conj(diag_[i])));
            return d;
        }
        case Storage::sparse: {
            const Eigen::SparseMatrix<cd, Eigen::RowMajor> diff =
                sparse_ - Eigen::SparseMatrix<cd, Eigen::RowMajor>(
                              sparse_.adjoint());
            double d = 0.0;
            for (int row = 0; row < diff.outerSize(); ++row)
                for (Eigen::SparseMatrix<cd, Eigen::RowMajor>::InnerIterator it(diff, row); it;
                     ++it)
                    d = std::max(d, std::abs(it.value()));
            return d;
        }
        case Storage::dense: return (dense_ - dense_.adjoint()).cwiseAbs().maxCoeff();
    }
    throw std::logic_error("unreachable");
}

double OperatorMatrix::norm_bound() const {
    switch (storage_) {
        case Storage::diagonal: return diag_.cwiseAbs().maxCoeff();
        case Storage::sparse: {
            double best = 0.0;
            for (int row = 0; row < sparse_.outerSize(); ++row) {
                double sum = 0.0;
                for (Eigen::SparseMatrix<cd, Eigen::RowMajor>::InnerIterator it(sparse_, row);
                     it; ++it)
                    sum += std::abs(it.value());
                best = std::max(best, sum);
            }
            return best;
        }
        case Storage::dense: return dense_.cwiseAbs().rowwise().sum().maxCoeff();
    }
    throw std::logic_error("unreachable");
}

const Eigen::VectorXcd& OperatorMatrix::diagonal_entries() const {
    if (storage_ != Storage::diagonal)
        throw invalid_argument_error("operator is not stored diagonally");
    return diag_;
}

// --- single-mode builders ---

OperatorMatrix annihilation_op(int dim) {
    if (dim < 1) throw invalid_argument_error("dim must be >= 1");
    Eigen::SparseMatrix<cd, Eigen::RowMajor> m(dim, dim);
    std::vector<Triplet> t;
    for (int n = 1; n < dim; ++n) t.emplace_back(n - 1, n, std::sqrt(double(n)));
    m.setFromTriplets(t.begin(), t.end());
    return OperatorMatrix::from_sparse(1, dim, 1, std::move(m), false);
}

OperatorMatrix creation_op(int dim) {
    if (dim < 1) throw invalid_argument_error("dim must be >= 1");
    Eigen::SparseMatrix<cd, Eigen::RowMajor> m(dim, dim);
    std::vector<Triplet> t;
    for (int n = 0; n + 1 < dim; ++n) t.emplace_back(n + 1, n, std::sqrt(double(n + 1)));
    m.setFromTriplets(t.begin(), t.end());
    return OperatorMatrix::from_sparse(1, dim, 1, std::move(m), false);
}

OperatorMatrix number_op(int dim) {
    if (dim < 1) throw invalid_argument_error("dim must be >= 1");
    Eigen::VectorXcd d(dim);
    for (int n = 0; n < dim; ++n) d[n] = double(n);
    return OperatorMatrix::from_diagonal(1, dim, 1, std::move(d), true);
}

OperatorMatrix kerr_op(int dim) {
    if (dim < 1) throw invalid_argument_error("dim must be >= 1");
    Eigen::VectorXcd d(dim);
    for (int n = 0; n < dim; ++n) d[n] = double(n) * (n - 1.0);
    return OperatorMatrix::from_diagonal(1, dim, 1, std::move(d), true);
}

OperatorMatrix quadrature_op(int dim, double theta) {
    if (dim < 1) throw invalid_argument_error("dim must be >= 1");
    const cd up = std::polar(1.0 / std::sqrt(2.0), theta);   // a+ coefficient
    const cd down = std::polar(1.0 / std::sqrt(2.0), -theta); // a coefficient
    Eigen::SparseMatrix<cd, Eigen::RowMajor> m(dim, dim);
    std::vector<Triplet> t;
    for (int n = 1; n < dim; ++n) {
        const double root = std::sqrt(double(n));
        t.emplace_back(n - 1, n, down * root);
        t.emplace_back(n, n - 1, up * root);
    }
    m.setFromTriplets(t.begin(), t.end());
    return OperatorMatrix::from_sparse(1, dim, 1, std::move(m), true);
}

GeneratorSet single_mode_generators(int dim) {
    return GeneratorSet{kerr_op(dim), number_op(dim), "a+a+aa", "a+a"};
}

// --- two-mode builders ---

OperatorMatrix number_sum_op(int dim) {
    if (dim < 1) throw invalid_argument_error("dim must be >= 1");
    Eigen::VectorXcd d(static_cast<Eigen::Index>(dim) * dim);
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2) d[pair_index(n1, n2, dim)] = double(n1 + n2);
    return OperatorMatrix::from_diagonal(2, dim, dim, std::move(d), true);
}

OperatorMatrix number_diff_op(int dim) {
    if (dim < 1) throw invalid_argument_error("dim must be >= 1");
    Eigen::VectorXcd d(static_cast<Eigen::Index>(dim) * dim);
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2) d[pair_index(n1, n2, dim)] = double(n1 - n2);
    return OperatorMatrix::from_diagonal(2, dim, dim, std::move(d), true);
}

OperatorMatrix kerr_sum_op(int dim) {
    if (dim < 1) throw invalid_argument_error("dim must be >= 1");
    Eigen::VectorXcd d(static_cast<Eigen::Index>(dim) * dim);
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2)
            d[pair_index(n1, n2, dim)] = double(n1) * (n1 - 1.0) + double(n2) * (n2 - 1.0);
    return OperatorMatrix::from_diagonal(2, dim, dim, std::move(d), true);
}

OperatorMatrix bs_generator(int dim) {
    if (dim < 1) throw invalid_argument_error("dim must be >= 1");
    Eigen::SparseMatrix<cd, Eigen::RowMajor> m(static_cast<Eigen::Index>(dim) * dim,
                                               static_cast<Eigen::Index>(dim) * dim);
    std::vector<Triplet> t;
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2) {
            // a+ b : (n1,n2) -> (n1+1, n2-1)
            if (n1 + 1 < dim && n2 >= 1)
                t.emplace_back(pair_index(n1 + 1, n2 - 1, dim), pair_index(n1, n2, dim),
                               std::sqrt(double(n1 + 1) * n2));
            // b+ a : (n1,n2) -> (n1-1, n2+1)
            if (n1 >= 1 && n2 + 1 < dim)
                t.emplace_back(pair_index(n1 - 1, n2 + 1, dim), pair_index(n1, n2, dim),
                               std::sqrt(double(n1) * (n2 + 1)));
        }
    m.setFromTriplets(t.begin(), t.end());
    return OperatorMatrix::from_sparse(2, dim, dim, std::move(m), true);
}

OperatorMatrix bs_generator_alternative(int dim) {
    if (dim < 1) throw invalid_argument_error("dim must be >= 1");
    Eigen::SparseMatrix<cd, Eigen::RowMajor> m(static_cast<Eigen::Index>(dim) * dim,
                                               static_cast<Eigen::Index>(dim) * dim);
    std::vector<Triplet> t;
    const cd i_unit(0.0, 1.0);
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2) {
            if (n1 + 1 < dim && n2 >= 1)
                t.emplace_back(pair_index(n1 + 1, n2 - 1, dim), pair_index(n1, n2, dim),
                               i_unit * std::sqrt(double(n1 + 1) * n2));
            if (n1 >= 1 && n2 + 1 < dim)
                t.emplace_back(pair_index(n1 - 1, n2 + 1, dim), pair_index(n1, n2, dim),
                               -i_unit * std::sqrt(double(n1) * (n2 + 1)));
        }
    m.setFromTriplets(t.begin(), t.end());
    return OperatorMatrix::from_sparse(2, dim, dim, std::move(m), true);
}

MzGenerator mz_composed_generator(int dim, Convention convention) {
    if (dim < 1) throw invalid_argument_error("dim must be >= 1");
    const double c = convention == Convention::half ? 0.5 : 1.0;
    const Eigen::Index total = static_cast<Eigen::Index>(dim) * dim;

    Eigen::VectorXcd diag(total);
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2)
            diag[pair_index(n1, n2, dim)] =
                c * (double(n1) * (n1 - 1.0) + double(n2) * (n2 - 1.0) + 4.0 * n1 * n2);

    Eigen::SparseMatrix<cd, Eigen::RowMajor> minus(total, total);
    std::vector<Triplet> t;
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2) {
            // -a+a+ bb : (n1,n2) -> (n1+2, n2-2)
            if (n1 + 2 < dim && n2 >= 2)
                t.emplace_back(pair_index(n1 + 2, n2 - 2, dim), pair_index(n1, n2, dim),
                               -c * std::sqrt(double(n1 + 1) * (n1 + 2) * n2 * (n2 - 1)));
            // -aa b+b+ : (n1,n2) -> (n1-2, n2+2)
            if (n1 >= 2 && n2 + 2 < dim)
                t.emplace_back(pair_index(n1 - 2, n2 + 2, dim), pair_index(n1, n2, dim),
                               -c * std::sqrt(double(n1) * (n1 - 1) * (n2 + 1) * (n2 + 2)));
        }
    minus.setFromTriplets(t.begin(), t.end());

    Eigen::SparseMatrix<cd, Eigen::RowMajor> full(total, total);
    for (Eigen::Index k = 0; k < total; ++k) t.emplace_back(k, k, diag[k]);
    full.setFromTriplets(t.begin(), t.end());

    MzGenerator g{OperatorMatrix::from_sparse(2, dim, dim, std::move(full), true),
                  OperatorMatrix::from_diagonal(2, dim, dim, std::move(diag), true),
                  OperatorMatrix::from_sparse(2, dim, dim, std::move(minus), true), convention};
    return g;
}

OperatorMatrix thg_generator(int dim_pump, int dim_harmonic) {
    if (dim_pump < 4) throw invalid_argument_error("pump dim must be >= 4");
    if (dim_harmonic < 2) throw invalid_argument_error("harmonic dim must be >= 2");
    const Eigen::Index total = static_cast<Eigen::Index>(dim_pump) * dim_harmonic;
    Eigen::SparseMatrix<cd, Eigen::RowMajor> m(total, total);
    std::vector<Triplet> t;
    for (int n1 = 0; n1 < dim_pump; ++n1)
        for (int n2 = 0; n2 < dim_harmonic; ++n2) {
            // a^3 b+ : (n1,n2) -> (n1-3, n2+1)
            if (n1 >= 3 && n2 + 1 < dim_harmonic)
                t.emplace_back(pair_index(n1 - 3, n2 + 1, dim_harmonic),
                               pair_index(n1, n2, dim_harmonic),
                               std::sqrt(double(n1) * (n1 - 1) * (n1 - 2) * (n2 + 1)));
            // a+^3 b : (n1,n2) -> (n1+3, n2-1)
            if (n1 + 3 < dim_pump && n2 >= 1)
                t.emplace_back(pair_index(n1 + 3, n2 - 1, dim_harmonic),
                               pair_index(n1, n2, dim_harmonic),
                               std::sqrt(double(n1 + 1) * (n1 + 2) * (n1 + 3) * n2));
        }
    m.setFromTriplets(t.begin(), t.end());
    return OperatorMatrix::from_sparse(2, dim_pump, dim_harmonic, std::move(m), true);
}

} // namespace qgrav
