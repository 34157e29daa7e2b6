#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "integrax/polycore.hpp"
#include "integrax/trees.hpp"

namespace integrax::drawfuns {

using Complex = std::complex<double>;
// dense complex polynomial, coeffs[i] = coefficient of x^i
using CPoly = std::vector<Complex>;

CPoly cpoly_mul(const CPoly& a, const CPoly& b);
CPoly cpoly_sub(CPoly a, const CPoly& b);
CPoly cpoly_derivative(const CPoly& p);
CPoly cpoly_antiderivative(const CPoly& p);
Complex cpoly_eval(const CPoly& p, Complex x);
// prod over (root, multiplicity) pairs, monic
CPoly cpoly_from_roots(const std::vector<std::pair<Complex, int>>& roots);

// signature mismatch between the requested witness regime and the input
struct regime_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Newton failed to converge within the restart budget
struct solver_error : std::runtime_error {
    solver_error(const std::string& msg, double best) : std::runtime_error(msg), best_residual(best) {}
    double best_residual;
};

// Solution of c prod(x-a_i)^{alpha_i} - 1 = c prod(x-b_j)^{beta_j},
// normalized so a_1 = 0 and b_1 = 1.
struct ShabatWitness {
    std::vector<Complex> white_roots;  // a_1..a_p
    std::vector<int> white_mults;      // white valencies
    std::vector<Complex> black_roots;  // b_1..b_q
    std::vector<int> black_mults;      // black valencies
    Complex scale;                     // c
    double residual;

    // P = scale * prod (x - a_i)^{alpha_i}; critical values {0, 1}
    CPoly polynomial() const;
};

// Monic degree-(n+1) polynomial with C(0) = 0 whose critical points are all
// fixed; critical multiplicities follow the white valencies of the tree.
struct ConservativeWitness {
    std::vector<Complex> critical_points;  // c_1..c_p
    std::vector<int> gammas;               // white valencies
    std::vector<Complex> free_fixed_points;  // the non-critical fixed points (black vertices)
    Complex scale;                         // c = deg C
    CPoly C;
    double residual;
};

struct FactoredCPoly {
    Complex leading{1.0, 0.0};
    std::vector<std::pair<Complex, int>> roots;

    CPoly expand() const;
};

// Witness polynomial for a multiplicity signature: f in factored form plus
// the set S of designated multiple roots, with the tree the solver ran on.
struct SignatureWitness {
    FactoredCPoly f;
    std::vector<Complex> S;
    std::string tree;
    Complex scale;
    double residual;
};

ShabatWitness shabat_solve(const trees::PlaneTree& t, double tol = 1e-10, std::uint64_t seed = 0);

ConservativeWitness conservative_solve(const trees::PlaneTree& t, double tol = 1e-10,
                                       std::uint64_t seed = 0);

// Realizes the mixed-regime signature (2 <= m <= n - M + 1) by a polynomial
// f1 that has an S-full integral: f1 = P'/lc for the Shabat polynomial of a
// tree whose first m white valencies are alpha_j + 1.
SignatureWitness shabat_witness_for_signature(const polycore::MultiplicitySignature& sig,
                                              double tol = 1e-10, std::uint64_t seed = 0);

// The opposite witness: f2 = C'/lc for a conservative polynomial with
// critical multiplicities (alpha, beta); for m >= 2 the fixed-point values
// force every antiderivative apart on S.
SignatureWitness conservative_witness_for_signature(const polycore::MultiplicitySignature& sig,
                                                    double tol = 1e-10, std::uint64_t seed = 0);

// Numerical S-full check: antiderivative anchored at the first element of S
// vanishes on all of S relative to its coefficient scale.
bool check_sfull_numeric(const FactoredCPoly& f, const std::vector<Complex>& S, double tol = 1e-8);

// Degree-n Chebyshev polynomial mapped to critical values {0, 1}: (T_n+1)/2.
CPoly chebyshev_reference(int n);

}  // namespace integrax::drawfuns
