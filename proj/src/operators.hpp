#ifndef QGRAV_OPERATORS_HPP
#define QGRAV_OPERATORS_HPP

#include <complex>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "errors.hpp"
#include "fock.hpp"

namespace qgrav {

// Generators with and without the global 1/2 of the composed Mach-Zehnder
// form. The halved variant is the one the full interferometer unitary
// actually exponentiates.
enum class Convention { half, unhalved };

inline const char* convention_name(Convention c) {
    return c == Convention::half ? "half" : "unhalved";
}

// Operator on a truncated Fock space (one mode: dim1 x dim1, two modes:
// (dim1*dim2) square with row-major pair indexing n1*dim2+n2). Storage
// adapts to the structure; dense matrices are only materialized on request
// and only while the flattened dimension stays small.
class OperatorMatrix {
public:
    enum class Storage { diagonal, sparse, dense };

    static OperatorMatrix from_diagonal(int modes, int dim1, int dim2, Eigen::VectorXcd diag,
                                        bool hermitian);
    static OperatorMatrix from_sparse(int modes, int dim1, int dim2,
                                      Eigen::SparseMatrix<cd, Eigen::RowMajor> m,
                                      bool hermitian);
    static OperatorMatrix from_dense(int modes, int dim1, int dim2, Eigen::MatrixXcd m,
                                     bool hermitian);

    int modes() const { return modes_; }
    int dim1() const { return dim1_; }
    int dim2() const { return dim2_; }
    Eigen::Index total_dim() const { return total_dim_; }
    bool hermitian() const { return hermitian_; }
    Storage storage() const { return storage_; }

    // "diagonal", "banded(k)" or "dense", from the actual sparsity pattern.
    std::string structure() const;
    int bandwidth() const { return bandwidth_; }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

    // Dense copy; refuses flattened dimensions above 64^2.
    Eigen::MatrixXcd dense_matrix() const;

    // max_ij |O - O^dagger|_ij
    double hermiticity_defect() const;

    // Largest absolute row sum; upper bound on the spectral radius.
    double norm_bound() const;

    const Eigen::VectorXcd& diagonal_entries() const;

private:
    OperatorMatrix() = default;
    int modes_ = 1;
    int dim1_ = 1;
    int dim2_ = 1;
    Eigen::Index total_dim_ = 1;
    bool hermitian_ = false;
    Storage storage_ = Storage::diagonal;
    int bandwidth_ = 0;
    Eigen::VectorXcd diag_;
    Eigen::SparseMatrix<cd, Eigen::RowMajor> sparse_;
    Eigen::MatrixXcd dense_;
};

// --- single-mode builders ---

OperatorMatrix annihilation_op(int dim);
OperatorMatrix creation_op(int dim);
OperatorMatrix number_op(int dim);                   // diag(n)
OperatorMatrix kerr_op(int dim);                     // diag(n(n-1)), i.e. a+ a+ a a
OperatorMatrix quadrature_op(int dim, double theta); // (a e^{-i t} + a+ e^{i t})/sqrt(2)

// Quartic and quadratic phase generators of the single-mode interaction.
struct GeneratorSet {
    OperatorMatrix g_quantum;
    OperatorMatrix g_classical;
    std::string quantum_label;
    std::string classical_label;
};

GeneratorSet single_mode_generators(int dim);

// --- two-mode builders (equal per-mode truncation `dim` unless noted) ---

OperatorMatrix number_sum_op(int dim);  // n_a + n_b
OperatorMatrix number_diff_op(int dim); // n_a - n_b
OperatorMatrix kerr_sum_op(int dim);    // a+a+aa + b+b+bb

// Balanced-mixer generator a+ b + b+ a; the 50-50 beamsplitter used
// throughout is exp(-i (pi/4) (a+ b + b+ a)).
OperatorMatrix bs_generator(int dim);

// i (a+ b - b+ a): hermitian generator of the alternative (real-rotation)
// beamsplitter convention exp(theta (a+ b - b+ a)).
OperatorMatrix bs_generator_alternative(int dim);

// Composed generator of the full beamsplitter / Kerr / beamsplitter
// sequence, split into its pair-diagonal and pair-exchange parts:
//   full  = plus + minus (exactly)
//   plus  = c (a+a+aa + b+b+bb + 4 n_a n_b)   [diagonal]
//   minus = -c (a+a+ bb + aa b+b+)            [(n1,n2) <-> (n1+-2, n2-+2)]
// with c = 1/2 for Convention::half and c = 1 for Convention::unhalved.
struct MzGenerator {
    OperatorMatrix full;
    OperatorMatrix plus;
    OperatorMatrix minus;
    Convention convention;
};

MzGenerator mz_composed_generator(int dim, Convention convention = Convention::half);

// Third-harmonic-generation coupling a^3 b+ + a+^3 b between a pump mode
// (dim_pump >= 4) and a harmonic mode (dim_harmonic >= 2). Conserves
// n_a + 3 n_b.
OperatorMatrix thg_generator(int dim_pump, int dim_harmonic);

} // namespace qgrav

#endif
