#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "integrax/rational.hpp"

namespace integrax::polycore {

// Dense univariate polynomial over Q. coeffs[i] is the coefficient of x^i;
// the zero polynomial is the empty list, otherwise the leading coefficient
// is nonzero.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    static RatPoly constant(const Rat& c);
    static RatPoly monomial(const Rat& c, std::size_t degree);
    // x - root
    static RatPoly linear_root(const Rat& root);

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rat& leading() const;
    Rat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    RatPoly operator-() const;
    RatPoly& operator+=(const RatPoly& o);
    RatPoly& operator-=(const RatPoly& o);
    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    RatPoly& operator*=(const RatPoly& o) { return *this = *this * o; }
    friend RatPoly operator*(const Rat& s, const RatPoly& p);
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs_ == b.coeffs_; }

    RatPoly monic() const;

private:
    void trim();
    std::vector<Rat> coeffs_;
};

// Product of distinct linear factors with multiplicities, times a leading
// coefficient.
struct FactoredPoly {
    std::vector<std::pair<Rat, int>> roots;  // (root, multiplicity >= 1), pairwise distinct
    Rat leading = Rat(1);
};

// Root-multiplicity data (alphas >= 2 for the eigenvalues with repeated
// cells, betas >= 1 for the rest).
struct MultiplicitySignature {
    std::vector<int> alphas;
    std::vector<int> betas;

    int m() const { return static_cast<int>(alphas.size()); }
    int k() const { return static_cast<int>(betas.size()); }
    int total_alpha() const;  // M
    int n() const;
    void validate() const;
};

enum class Verdict { AllIntegrable, Mixed, NoneIntegrable };

const char* to_string(Verdict v);

RatPoly derivative(const RatPoly& p);
// P with P' = p and P(0) = c0
RatPoly antiderivative(const RatPoly& p, const Rat& c0 = Rat(0));
Rat eval(const RatPoly& p, const Rat& x);
// p = q * quotient + remainder, deg(remainder) < deg(q)
std::pair<RatPoly, RatPoly> divrem(const RatPoly& p, const RatPoly& q);
// monic gcd via the Euclidean remainder sequence
RatPoly gcd(const RatPoly& p, const RatPoly& q);
// monic polynomial with the same roots as p, all simple: monic(p / gcd(p, p'))
RatPoly squarefree_part(const RatPoly& p);
RatPoly expand(const FactoredPoly& f);

// S-full integral of f: antiderivative F with F(s) = 0 on all of S.
// S must lie inside the multiplicity->=2 roots of f. Anchored at the
// smallest element of S (F(0) = 0 when S is empty); absent when no
// anchoring can kill every point of S.
std::optional<RatPoly> sfull_integral(const FactoredPoly& f, const std::vector<Rat>& S);

// True iff F takes a single value on the root set of the squarefree monic h,
// decided exactly as deg(F mod h) <= 0.
bool constant_on_roots(const RatPoly& F, const RatPoly& h);

Verdict classify_signature(const MultiplicitySignature& sig);

// Precomposition with mu(x) = a*x + b, a != 0: roots map through mu^{-1},
// and so does S. Preserves S-full integrability.
std::pair<FactoredPoly, std::vector<Rat>> affine_transport(const FactoredPoly& f,
                                                           const std::vector<Rat>& S,
                                                           const Rat& a, const Rat& b);

// Coefficients of p in powers of (x - t), lowest order first.
std::vector<Rat> taylor_coeffs(const RatPoly& p, const Rat& t, std::size_t count);

// All rational roots of p (each listed once, ascending), by the rational
// root theorem on the cleared-denominator form.
std::vector<Rat> rational_roots(const RatPoly& p);

}  // namespace integrax::polycore
