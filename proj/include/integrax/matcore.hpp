#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "integrax/polycore.hpp"
#include "integrax/rational.hpp"

namespace integrax::matcore {

using polycore::RatPoly;

// Dense matrix over Q, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), entries_(rows * cols, Rat(0)) {}
    static RatMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    Rat& at(int i, int j) { return entries_[i * cols_ + j]; }
    const Rat& at(int i, int j) const { return entries_[i * cols_ + j]; }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator+(RatMatrix a, const RatMatrix& b);
    friend RatMatrix operator-(RatMatrix a, const RatMatrix& b);
    friend RatMatrix operator*(const Rat& s, RatMatrix m);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

    Rat trace() const;
    // Gauss-Jordan inverse; throws on singular input.
    RatMatrix inverse() const;
    int rank() const;
    RatMatrix block(int row0, int col0, int rows, int cols) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> entries_;
};

// Jordan data: pairwise distinct eigenvalues, each with its cell sizes in
// non-increasing order.
struct JordanSpec {
    struct Block {
        Rat eigenvalue;
        std::vector<int> cells;  // sizes, non-increasing
    };
    std::vector<Block> blocks;

    int size() const;  // n
    void validate() const;
    // eigenvalues with more than one cell (geometric multiplicity > 1)
    std::vector<Rat> repeated_eigenvalues() const;
    RatPoly char_poly() const;
};

// Bordered matrix [B u^T; v b]; not necessarily an integral of B.
struct IntegralExtension {
    RatMatrix B;
    std::vector<Rat> u;
    std::vector<Rat> v;
    Rat b;

    RatMatrix assemble() const;
    void validate_shape() const;
};

// Monic det(xI - B) by the Faddeev-LeVerrier recursion (divisions only by
// the integers 1..n).
RatPoly char_poly(const RatMatrix& B);

// Monic minimal polynomial: lcm of the Krylov annihilators of the standard
// basis vectors.
RatPoly min_poly(const RatMatrix& B);

// Monic squarefree h whose roots are the eigenvalues of geometric
// multiplicity > 1, computed as squarefree_part(char_poly / min_poly).
RatPoly multiple_locus(const RatMatrix& B);

bool is_integrable(const RatMatrix& B);

RatMatrix jordan_matrix(const JordanSpec& spec);

// For v with first nonzero coordinate v_r (0-based r), the polynomial h of
// degree <= k-r-1, h(0) = 1/v_r, with v * h(J_k) = e_r.
RatPoly solve_tail_annihilator(const std::vector<Rat>& v);

// Conjugates A by the block-diagonal commuting similarity built from
// solve_tail_annihilator so that every v-slice becomes a unit-or-zero
// pattern; preserves the characteristic polynomial.
IntegralExtension normalize_extension(const IntegralExtension& A, const JordanSpec& spec);

// Characteristic polynomial of the bordered matrix, evaluated through the
// border expansion (x - b) p_B(x) - sum over slices of u-weighted
// p_B(x) / (x - b_i)^t. Requires every v-slice normalized.
RatPoly extension_char_poly(const JordanSpec& spec, const std::vector<Rat>& u,
                            const std::vector<Rat>& v, const Rat& b);

// h with (f h)^{(i)}(t) = F^{(i)}(t) for i = 0..count-1, deg h <= count-1;
// forward substitution on the lower-triangular Leibniz system. f(t) != 0.
RatPoly solve_taylor_match(const RatPoly& f, const RatPoly& F, const Rat& t, int count);

// The constructive direction of the integrability criterion: an explicit
// integral of jordan_matrix(spec), or absent when none exists.
std::optional<IntegralExtension> construct_integral(const JordanSpec& spec);

// True iff A is an integral of B: p_A' = (n+1) p_B exactly.
bool verify_integral(const RatMatrix& B, const RatMatrix& A);

// diag(X,1) * A * diag(X^{-1},1); maps integrals of B to integrals of XBX^{-1}.
IntegralExtension conjugate_integral(const IntegralExtension& A, const RatMatrix& X);

// Re-borders the target Jordan form with the same (u, v, b); valid when the
// source is diagonalizable with zero slices on every repeated eigenvalue.
IntegralExtension transport_integral(const JordanSpec& spec_diag, const IntegralExtension& A,
                                     const JordanSpec& spec_target);

}  // namespace integrax::matcore
