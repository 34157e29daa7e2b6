#include "integrax/polycore.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace integrax::polycore {

RatPoly RatPoly::constant(const Rat& c) {
    if (c == 0) return RatPoly();
    return RatPoly({c});
}

RatPoly RatPoly::monomial(const Rat& c, std::size_t degree) {
    if (c == 0) return RatPoly();
    std::vector<Rat> cs(degree + 1, Rat(0));
    cs[degree] = c;
    return RatPoly(std::move(cs));
}

RatPoly RatPoly::linear_root(const Rat& root) {
    return RatPoly({-root, Rat(1)});
}

const Rat& RatPoly::leading() const {
    if (coeffs_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return coeffs_.back();
}

void RatPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RatPoly RatPoly::operator-() const {
    RatPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rat> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RatPoly(std::move(out));
}

RatPoly operator*(const Rat& s, const RatPoly& p) {
    if (s == 0) return RatPoly();
    RatPoly r = p;
    for (auto& c : r.coeffs_) c *= s;
    return r;
}

RatPoly RatPoly::monic() const {
    if (is_zero()) throw std::invalid_argument("monic of zero polynomial");
    return Rat(1 / leading()) * *this;
}

int MultiplicitySignature::total_alpha() const {
    int s = 0;
    for (int a : alphas) s += a;
    return s;
}

int MultiplicitySignature::n() const {
    int s = total_alpha();
    for (int b : betas) s += b;
    return s;
}

void MultiplicitySignature::validate() const {
    for (int a : alphas)
        if (a < 2) throw std::invalid_argument("signature: every alpha must be >= 2");
    for (int b : betas)
        if (b < 1) throw std::invalid_argument("signature: every beta must be >= 1");
    if (n() < 1) throw std::invalid_argument("signature: n must be >= 1");
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::AllIntegrable: return "AllIntegrable";
        case Verdict::Mixed: return "Mixed";
        case Verdict::NoneIntegrable: return "NoneIntegrable";
    }
    return "?";
}

RatPoly derivative(const RatPoly& p) {
    if (p.degree() <= 0) return RatPoly();
    std::vector<Rat> out(p.degree());
    for (int i = 1; i <= p.degree(); ++i) out[i - 1] = Rat(i) * p.coeff(i);
    return RatPoly(std::move(out));
}

RatPoly antiderivative(const RatPoly& p, const Rat& c0) {
    std::vector<Rat> out(p.degree() + 2, Rat(0));
    out[0] = c0;
    for (int i = 0; i <= p.degree(); ++i) out[i + 1] = p.coeff(i) / Rat(i + 1);
    return RatPoly(std::move(out));
}

Rat eval(const RatPoly& p, const Rat& x) {
    Rat acc(0);
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(i);
    return acc;
}

std::pair<RatPoly, RatPoly> divrem(const RatPoly& p, const RatPoly& q) {
    if (q.is_zero()) throw std::invalid_argument("division by zero polynomial");
    std::vector<Rat> rem(p.coeffs());
    int dq = q.degree();
    if (p.degree() < dq) return {RatPoly(), p};
    std::vector<Rat> quot(p.degree() - dq + 1, Rat(0));
    for (int i = p.degree(); i >= dq; --i) {
        if (rem[i] == 0) continue;
        Rat c = rem[i] / q.leading();
        quot[i - dq] = c;
        for (int j = 0; j <= dq; ++j) rem[i - dq + j] -= c * q.coeff(j);
    }
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

RatPoly gcd(const RatPoly& p, const RatPoly& q) {
    if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd(0, 0) undefined");
    RatPoly a = p, b = q;
    while (!b.is_zero()) {
        RatPoly r = divrem(a, b).second;
        a = b;
        // normalizing each remainder keeps coefficients small
        b = r.is_zero() ? r : r.monic();
    }
    return a.monic();
}

RatPoly squarefree_part(const RatPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree part of zero polynomial");
    if (p.degree() == 0) return RatPoly::constant(Rat(1));
    RatPoly g = gcd(p, derivative(p));
    return divrem(p, g).first.monic();
}

RatPoly expand(const FactoredPoly& f) {
    std::set<Rat> seen;
    for (const auto& [root, mult] : f.roots) {
        if (mult < 1) throw std::invalid_argument("factored polynomial: multiplicity < 1");
        if (!seen.insert(root).second)
            throw std::invalid_argument("factored polynomial: duplicate root " + rat_to_string(root));
    }
    RatPoly out = RatPoly::constant(f.leading);
    for (const auto& [root, mult] : f.roots) {
        RatPoly lin = RatPoly::linear_root(root);
        for (int i = 0; i < mult; ++i) out *= lin;
    }
    return out;
}

std::optional<RatPoly> sfull_integral(const FactoredPoly& f, const std::vector<Rat>& S) {
    for (const Rat& s : S) {
        bool ok = false;
        for (const auto& [root, mult] : f.roots)
            if (root == s && mult >= 2) { ok = true; break; }
        if (!ok)
            throw std::invalid_argument("S contains " + rat_to_string(s) +
                                        ", not a multiplicity->=2 root of f");
    }
    RatPoly F = antiderivative(expand(f));
    if (S.empty()) return F;
    Rat anchor = *std::min_element(S.begin(), S.end());
    F -= RatPoly::constant(eval(F, anchor));
    for (const Rat& s : S)
        if (eval(F, s) != 0) return std::nullopt;
    return F;
}

bool constant_on_roots(const RatPoly& F, const RatPoly& h) {
    if (h.is_zero()) throw std::invalid_argument("locus polynomial is zero");
    if (h.leading() != 1) throw std::invalid_argument("locus polynomial must be monic");
    if (h.degree() <= 1) return true;
    if (gcd(h, derivative(h)).degree() != 0)
        throw std::invalid_argument("locus polynomial must be squarefree");
    return divrem(F, h).second.degree() <= 0;
}

Verdict classify_signature(const MultiplicitySignature& sig) {
    sig.validate();
    int m = sig.m();
    if (m <= 1) return Verdict::AllIntegrable;
    if (m <= sig.n() - sig.total_alpha() + 1) return Verdict::Mixed;
    return Verdict::NoneIntegrable;
}

std::pair<FactoredPoly, std::vector<Rat>> affine_transport(const FactoredPoly& f,
                                                           const std::vector<Rat>& S,
                                                           const Rat& a, const Rat& b) {
    if (a == 0) throw std::invalid_argument("affine transport requires a != 0");
    FactoredPoly g;
    g.leading = f.leading;
    int deg = 0;
    for (const auto& [root, mult] : f.roots) {
        g.roots.emplace_back((root - b) / a, mult);
        deg += mult;
    }
    for (int i = 0; i < deg; ++i) g.leading *= a;
    std::vector<Rat> T;
    T.reserve(S.size());
    for (const Rat& s : S) T.push_back((s - b) / a);
    return {g, T};
}

namespace {

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
    mpz_class a = abs(n);
    std::vector<mpz_class> out;
    for (mpz_class i = 1; i * i <= a; ++i) {
        if (a % i != 0) continue;
        out.push_back(i);
        mpz_class j = a / i;
        if (j != i) out.push_back(j);
    }
    return out;
}

}  // namespace

std::vector<Rat> rational_roots(const RatPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("rational roots of zero polynomial");
    std::vector<Rat> out;
    RatPoly q = p;
    // strip the root at zero
    while (q.coeff(0) == 0 && q.degree() > 0) {
        if (out.empty()) out.emplace_back(0);
        q = divrem(q, RatPoly::monomial(Rat(1), 1)).first;
    }
    if (q.degree() < 1) {
        std::sort(out.begin(), out.end());
        return out;
    }
    mpz_class denom_lcm(1);
    for (int i = 0; i <= q.degree(); ++i)
        denom_lcm = lcm(denom_lcm, mpz_class(q.coeff(i).get_den()));
    std::vector<mpz_class> c(q.degree() + 1);
    for (int i = 0; i <= q.degree(); ++i)
        c[i] = mpz_class(q.coeff(i).get_num()) * (denom_lcm / mpz_class(q.coeff(i).get_den()));
    for (const mpz_class& num : positive_divisors(c.front()))
        for (const mpz_class& den : positive_divisors(c.back()))
            for (int sign : {1, -1}) {
                Rat cand(sign * num, den);
                cand.canonicalize();
                if (eval(q, cand) == 0 &&
                    std::find(out.begin(), out.end(), cand) == out.end())
                    out.push_back(cand);
            }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rat> taylor_coeffs(const RatPoly& p, const Rat& t, std::size_t count) {
    std::vector<Rat> out;
    out.reserve(count);
    RatPoly rest = p;
    RatPoly lin = RatPoly::linear_root(t);
    for (std::size_t i = 0; i < count; ++i) {
        if (rest.is_zero()) {
            out.emplace_back(0);
            continue;
        }
        auto [q, r] = divrem(rest, lin);
        out.push_back(r.coeff(0));
        rest = q;
    }
    return out;
}

}  // namespace integrax::polycore
