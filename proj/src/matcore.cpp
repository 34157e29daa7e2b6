#include "integrax/matcore.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace integrax::matcore {

using polycore::antiderivative;
using polycore::constant_on_roots;
using polycore::derivative;
using polycore::divrem;
using polycore::eval;
using polycore::FactoredPoly;
using polycore::squarefree_part;
using polycore::taylor_coeffs;

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    RatMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

RatMatrix operator+(RatMatrix a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix sum shape mismatch");
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) a.at(i, j) += b.at(i, j);
    return a;
}

RatMatrix operator-(RatMatrix a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix difference shape mismatch");
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) a.at(i, j) -= b.at(i, j);
    return a;
}

RatMatrix operator*(const Rat& s, RatMatrix m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) *= s;
    return m;
}

Rat RatMatrix::trace() const {
    if (!is_square()) throw std::invalid_argument("trace of non-square matrix");
    Rat t(0);
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

RatMatrix RatMatrix::inverse() const {
    if (!is_square()) throw std::invalid_argument("inverse of non-square matrix");
    int n = rows_;
    RatMatrix work = *this;
    RatMatrix inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (work.at(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) throw std::invalid_argument("singular matrix");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(work.at(pivot, j), work.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        Rat d = work.at(col, col);
        for (int j = 0; j < n; ++j) {
            work.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Rat f = work.at(r, col);
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                work.at(r, j) -= f * work.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

int RatMatrix::rank() const {
    RatMatrix work = *this;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows_; ++r)
            if (work.at(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < cols_; ++j) std::swap(work.at(pivot, j), work.at(rank, j));
        for (int r = rank + 1; r < rows_; ++r) {
            Rat f = work.at(r, col) / work.at(rank, col);
            if (f == 0) continue;
            for (int j = col; j < cols_; ++j) work.at(r, j) -= f * work.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

RatMatrix RatMatrix::block(int row0, int col0, int rows, int cols) const {
    RatMatrix out(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out.at(i, j) = at(row0 + i, col0 + j);
    return out;
}

int JordanSpec::size() const {
    int n = 0;
    for (const auto& bl : blocks)
        for (int k : bl.cells) n += k;
    return n;
}

void JordanSpec::validate() const {
    std::set<Rat> seen;
    for (const auto& bl : blocks) {
        if (!seen.insert(bl.eigenvalue).second)
            throw std::invalid_argument("duplicate eigenvalue " + rat_to_string(bl.eigenvalue));
        if (bl.cells.empty()) throw std::invalid_argument("eigenvalue with no cells");
        for (std::size_t j = 0; j < bl.cells.size(); ++j) {
            if (bl.cells[j] < 1) throw std::invalid_argument("cell size < 1");
            if (j > 0 && bl.cells[j] > bl.cells[j - 1])
                throw std::invalid_argument("cell sizes must be non-increasing");
        }
    }
    if (size() < 1) throw std::invalid_argument("empty Jordan spec");
}

std::vector<Rat> JordanSpec::repeated_eigenvalues() const {
    std::vector<Rat> out;
    for (const auto& bl : blocks)
        if (bl.cells.size() > 1) out.push_back(bl.eigenvalue);
    return out;
}

RatPoly JordanSpec::char_poly() const {
    FactoredPoly f;
    for (const auto& bl : blocks) {
        int mult = 0;
        for (int k : bl.cells) mult += k;
        f.roots.emplace_back(bl.eigenvalue, mult);
    }
    return expand(f);
}

void IntegralExtension::validate_shape() const {
    if (!B.is_square()) throw std::invalid_argument("extension base must be square");
    if (static_cast<int>(u.size()) != B.rows() || static_cast<int>(v.size()) != B.rows())
        throw std::invalid_argument("extension border length mismatch");
}

RatMatrix IntegralExtension::assemble() const {
    validate_shape();
    int n = B.rows();
    RatMatrix A(n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A.at(i, j) = B.at(i, j);
        A.at(i, n) = u[i];
        A.at(n, i) = v[i];
    }
    A.at(n, n) = b;
    return A;
}

RatPoly char_poly(const RatMatrix& B) {
    if (!B.is_square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
    int n = B.rows();
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;
    RatMatrix M = RatMatrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        RatMatrix N = B * M;
        Rat ck = -N.trace() / Rat(k);
        c[n - k] = ck;
        if (k < n) {
            M = N;
            for (int i = 0; i < n; ++i) M.at(i, i) += ck;
        }
    }
    return RatPoly(std::move(c));
}

namespace {

// Minimal monic annihilator of e under B: tracks reduced Krylov vectors
// together with their expressions in powers of B.
RatPoly krylov_annihilator(const RatMatrix& B, int e) {
    int n = B.rows();
    struct Row {
        std::vector<Rat> vec;
        std::vector<Rat> comb;  // comb[t] = weight of B^t e
        int pivot;
    };
    std::vector<Row> rows;
    std::vector<Rat> w(n, Rat(0));
    w[e] = 1;
    for (int j = 0; j <= n; ++j) {
        std::vector<Rat> comb(j + 1, Rat(0));
        comb[j] = 1;
        std::vector<Rat> red = w;
        for (const Row& row : rows) {
            const Rat& f = red[row.pivot];
            if (f == 0) continue;
            Rat factor = f;  // row.vec has pivot entry 1
            for (int i = 0; i < n; ++i) red[i] -= factor * row.vec[i];
            for (std::size_t t = 0; t < row.comb.size(); ++t) comb[t] -= factor * row.comb[t];
        }
        int pivot = -1;
        for (int i = 0; i < n; ++i)
            if (red[i] != 0) { pivot = i; break; }
        if (pivot < 0) return RatPoly(std::move(comb));  // already monic: comb[j] = 1
        Rat d = red[pivot];
        for (int i = 0; i < n; ++i) red[i] /= d;
        for (auto& t : comb) t /= d;
        rows.push_back({std::move(red), std::move(comb), pivot});
        // advance the Krylov sequence
        std::vector<Rat> next(n, Rat(0));
        for (int i = 0; i < n; ++i)
            for (int k2 = 0; k2 < n; ++k2) next[i] += B.at(i, k2) * w[k2];
        w = std::move(next);
    }
    throw std::logic_error("Krylov iteration failed to terminate");
}

RatPoly poly_lcm(const RatPoly& p, const RatPoly& q) {
    RatPoly g = polycore::gcd(p, q);
    return divrem(p * q, g).first.monic();
}

// Splits a border vector into per-cell slices following the Jordan cell layout and
// reports each slice's unit offset: r in [0, k) for the pattern
// (0,..,0,1,0,..,0), r = k for the zero slice. Throws when not normalized.
std::vector<int> slice_offsets(const JordanSpec& spec, const std::vector<Rat>& v) {
    std::vector<int> offsets;
    int pos = 0;
    for (const auto& bl : spec.blocks)
        for (int k : bl.cells) {
            int r = k;
            for (int t = 0; t < k; ++t) {
                const Rat& x = v[pos + t];
                if (x == 0) continue;
                if (x != 1 || r != k)
                    throw std::invalid_argument("border vector v is not normalized");
                r = t;
            }
            offsets.push_back(r);
            pos += k;
        }
    return offsets;
}

}  // namespace

RatPoly min_poly(const RatMatrix& B) {
    if (!B.is_square()) throw std::invalid_argument("minimal polynomial of non-square matrix");
    int n = B.rows();
    RatPoly m = RatPoly::constant(Rat(1));
    for (int e = 0; e < n; ++e) {
        m = poly_lcm(m, krylov_annihilator(B, e));
        if (m.degree() == n) break;
    }
    return m;
}

RatPoly multiple_locus(const RatMatrix& B) {
    RatPoly p = char_poly(B);
    RatPoly m = min_poly(B);
    auto [q, r] = divrem(p, m);
    if (!r.is_zero()) throw std::logic_error("minimal polynomial does not divide characteristic");
    return squarefree_part(q);
}

bool is_integrable(const RatMatrix& B) {
    if (!B.is_square() || B.rows() < 1)
        throw std::invalid_argument("integrability requires a square matrix of size >= 1");
    return constant_on_roots(antiderivative(char_poly(B)), multiple_locus(B));
}

RatMatrix jordan_matrix(const JordanSpec& spec) {
    spec.validate();
    int n = spec.size();
    RatMatrix B(n, n);
    int pos = 0;
    for (const auto& bl : spec.blocks)
        for (int k : bl.cells) {
            for (int i = 0; i < k; ++i) {
                B.at(pos + i, pos + i) = bl.eigenvalue;
                if (i + 1 < k) B.at(pos + i, pos + i + 1) = 1;
            }
            pos += k;
        }
    return B;
}

RatPoly solve_tail_annihilator(const std::vector<Rat>& v) {
    int k = static_cast<int>(v.size());
    int r = -1;
    for (int i = 0; i < k; ++i)
        if (v[i] != 0) { r = i; break; }
    if (r < 0) throw std::invalid_argument("tail annihilator of zero vector");
    std::vector<Rat> c(k - r, Rat(0));
    c[0] = 1 / v[r];
    for (int j = r + 1; j < k; ++j) {
        Rat acc(0);
        for (int i = r + 1; i <= j; ++i) acc += v[i] * c[j - i];
        c[j - r] = -acc / v[r];
    }
    return RatPoly(std::move(c));
}

IntegralExtension normalize_extension(const IntegralExtension& A, const JordanSpec& spec) {
    A.validate_shape();
    if (!(A.B == jordan_matrix(spec)))
        throw std::invalid_argument("extension base does not match the Jordan spec");
    int n = A.B.rows();
    RatMatrix C = RatMatrix::identity(n + 1);
    int pos = 0;
    for (const auto& bl : spec.blocks)
        for (int k : bl.cells) {
            std::vector<Rat> slice(A.v.begin() + pos, A.v.begin() + pos + k);
            bool zero = std::all_of(slice.begin(), slice.end(), [](const Rat& x) { return x == 0; });
            if (!zero) {
                // h(J_k) is upper-triangular Toeplitz with the coefficients
                // of h along the diagonals
                RatPoly h = solve_tail_annihilator(slice);
                for (int i = 0; i < k; ++i)
                    for (int j = i; j < k; ++j) C.at(pos + i, pos + j) = h.coeff(j - i);
            }
            pos += k;
        }
    RatMatrix tilde = C.inverse() * A.assemble() * C;
    IntegralExtension out;
    out.B = tilde.block(0, 0, n, n);
    out.u.resize(n);
    out.v.resize(n);
    for (int i = 0; i < n; ++i) {
        out.u[i] = tilde.at(i, n);
        out.v[i] = tilde.at(n, i);
    }
    out.b = tilde.at(n, n);
    return out;
}

RatPoly extension_char_poly(const JordanSpec& spec, const std::vector<Rat>& u,
                            const std::vector<Rat>& v, const Rat& b) {
    spec.validate();
    int n = spec.size();
    if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
        throw std::invalid_argument("border vector length mismatch");
    std::vector<int> offsets = slice_offsets(spec, v);
    RatPoly pB = spec.char_poly();
    RatPoly out = RatPoly({-b, Rat(1)}) * pB;
    int pos = 0, cell_index = 0;
    for (const auto& bl : spec.blocks) {
        for (int k : bl.cells) {
            int r = offsets[cell_index++];
            RatPoly quotient = pB;
            RatPoly lin = RatPoly::linear_root(bl.eigenvalue);
            for (int t = 1; t <= k - r; ++t) {
                quotient = divrem(quotient, lin).first;  // p_B / (x - b_i)^t, exact
                out -= u[pos + r + t - 1] * quotient;
            }
            pos += k;
        }
    }
    return out;
}

RatPoly solve_taylor_match(const RatPoly& f, const RatPoly& F, const Rat& t, int count) {
    if (count < 1) throw std::invalid_argument("Taylor match needs count >= 1");
    if (eval(f, t) == 0) throw std::invalid_argument("Taylor match requires f(t) != 0");
    // d-th derivative values from shifted coefficients
    std::vector<Rat> fshift = taylor_coeffs(f, t, count);
    std::vector<Rat> Fshift = taylor_coeffs(F, t, count);
    std::vector<Rat> fact(count, Rat(1));
    for (int i = 1; i < count; ++i) fact[i] = fact[i - 1] * Rat(i);
    std::vector<Rat> a(count, Rat(0));
    for (int s = 0; s < count; ++s) {
        // (f h)^{(s)}(t) = sum_i C(s,i) i! a_i f^{(s-i)}(t)
        Rat rhs = Fshift[s] * fact[s];
        for (int i = 0; i < s; ++i) {
            Rat binom = fact[s] / (fact[i] * fact[s - i]);
            rhs -= binom * fact[i] * a[i] * (fshift[s - i] * fact[s - i]);
        }
        a[s] = rhs / (fact[s] * fshift[0]);
    }
    RatPoly h;
    RatPoly lin = RatPoly::linear_root(t);
    RatPoly power = RatPoly::constant(Rat(1));
    for (int i = 0; i < count; ++i) {
        h += a[i] * power;
        power *= lin;
    }
    return h;
}

std::optional<IntegralExtension> construct_integral(const JordanSpec& spec) {
    spec.validate();
    RatMatrix B = jordan_matrix(spec);
    if (!is_integrable(B)) return std::nullopt;
    int n = spec.size();
    RatPoly pB = spec.char_poly();
    std::vector<Rat> S = spec.repeated_eigenvalues();

    RatPoly F = antiderivative(Rat(n + 1) * pB);
    if (!S.empty()) {
        Rat anchor = *std::min_element(S.begin(), S.end());
        F -= RatPoly::constant(eval(F, anchor));
    }

    IntegralExtension A;
    A.B = B;
    A.u.assign(n, Rat(0));
    A.v.assign(n, Rat(0));
    A.b = B.trace() / Rat(n);

    int pos = 0;
    for (const auto& bl : spec.blocks) {
        int alpha = 0;
        for (int k : bl.cells) alpha += k;
        if (bl.cells.size() > 1) {  // eigenvalue in S: zero border slices
            pos += alpha;
            continue;
        }
        RatPoly f = pB;
        RatPoly lin = RatPoly::linear_root(bl.eigenvalue);
        for (int t = 0; t < alpha; ++t) f = divrem(f, lin).first;
        RatPoly h0 = solve_taylor_match(f, F, bl.eigenvalue, alpha);
        std::vector<Rat> w = taylor_coeffs(h0, bl.eigenvalue, alpha);
        A.v[pos] = 1;
        for (int t = 1; t <= alpha; ++t) A.u[pos + t - 1] = -w[alpha - t];
        pos += alpha;
    }
    return A;
}

bool verify_integral(const RatMatrix& B, const RatMatrix& A) {
    if (!B.is_square() || !A.is_square() || A.rows() != B.rows() + 1)
        throw std::invalid_argument("integral must have size n+1 over a square base of size n");
    int n = B.rows();
    if (!(A.block(0, 0, n, n) == B))
        throw std::invalid_argument("top-left block of the candidate integral must equal B");
    return derivative(char_poly(A)) == Rat(n + 1) * char_poly(B);
}

IntegralExtension conjugate_integral(const IntegralExtension& A, const RatMatrix& X) {
    A.validate_shape();
    int n = A.B.rows();
    if (!X.is_square() || X.rows() != n)
        throw std::invalid_argument("conjugation matrix shape mismatch");
    RatMatrix Xinv = X.inverse();
    IntegralExtension out;
    out.B = X * A.B * Xinv;
    out.b = A.b;
    out.u.assign(n, Rat(0));
    out.v.assign(n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out.u[i] += X.at(i, j) * A.u[j];
            out.v[i] += A.v[j] * Xinv.at(j, i);
        }
    return out;
}

IntegralExtension transport_integral(const JordanSpec& spec_diag, const IntegralExtension& A,
                                     const JordanSpec& spec_target) {
    spec_diag.validate();
    spec_target.validate();
    for (const auto& bl : spec_diag.blocks)
        for (int k : bl.cells)
            if (k != 1) throw std::invalid_argument("transport source must be diagonalizable");
    if (spec_diag.blocks.size() != spec_target.blocks.size())
        throw std::invalid_argument("transport: characteristic polynomial mismatch");
    for (std::size_t i = 0; i < spec_diag.blocks.size(); ++i) {
        int mult_src = static_cast<int>(spec_diag.blocks[i].cells.size());
        int mult_dst = 0;
        for (int k : spec_target.blocks[i].cells) mult_dst += k;
        if (spec_diag.blocks[i].eigenvalue != spec_target.blocks[i].eigenvalue || mult_src != mult_dst)
            throw std::invalid_argument("transport: characteristic polynomial mismatch");
    }
    A.validate_shape();
    if (!(A.B == jordan_matrix(spec_diag)))
        throw std::invalid_argument("transport: extension base does not match the source spec");
    slice_offsets(spec_diag, A.v);  // normalized check
    int pos = 0;
    for (const auto& bl : spec_diag.blocks) {
        int mult = static_cast<int>(bl.cells.size());
        if (mult > 1)
            for (int i = 0; i < mult; ++i)
                if (A.u[pos + i] != 0 || A.v[pos + i] != 0)
                    throw std::invalid_argument(
                        "transport: border slices on repeated eigenvalues must be zero");
        pos += mult;
    }
    IntegralExtension out;
    out.B = jordan_matrix(spec_target);
    out.u = A.u;
    out.v = A.v;
    out.b = A.b;
    return out;
}

}  // namespace integrax::matcore
