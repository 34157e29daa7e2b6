#include "integrax/drawfuns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace integrax::drawfuns {

namespace {

constexpr int kMaxRestarts = 32;
constexpr int kMaxNewtonSteps = 200;
constexpr double kClusterTol = 1e-6;
constexpr double kDownstreamTol = 1e-8;

void trim(CPoly& p) {
    while (!p.empty() && std::abs(p.back()) == 0.0) p.pop_back();
}

}  // namespace

CPoly cpoly_mul(const CPoly& a, const CPoly& b) {
    if (a.empty() || b.empty()) return {};
    CPoly out(a.size() + b.size() - 1, Complex{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

CPoly cpoly_sub(CPoly a, const CPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Complex{});
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

CPoly cpoly_derivative(const CPoly& p) {
    if (p.size() <= 1) return {};
    CPoly out(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = double(i) * p[i];
    return out;
}

CPoly cpoly_antiderivative(const CPoly& p) {
    CPoly out(p.size() + 1, Complex{});
    for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / double(i + 1);
    return out;
}

Complex cpoly_eval(const CPoly& p, Complex x) {
    Complex acc{};
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

CPoly cpoly_from_roots(const std::vector<std::pair<Complex, int>>& roots) {
    CPoly out{Complex{1.0, 0.0}};
    for (const auto& [r, mult] : roots) {
        CPoly lin{-r, Complex{1.0, 0.0}};
        for (int i = 0; i < mult; ++i) out = cpoly_mul(out, lin);
    }
    return out;
}

CPoly FactoredCPoly::expand() const {
    CPoly out = cpoly_from_roots(roots);
    for (auto& c : out) c *= leading;
    return out;
}

CPoly ShabatWitness::polynomial() const {
    std::vector<std::pair<Complex, int>> rs;
    for (std::size_t i = 0; i < white_roots.size(); ++i) rs.emplace_back(white_roots[i], white_mults[i]);
    CPoly P = cpoly_from_roots(rs);
    for (auto& c : P) c *= scale;
    return P;
}

namespace {

// Gaussian elimination with partial pivoting; solves J x = rhs in place.
std::vector<Complex> solve_linear(std::vector<std::vector<Complex>> J, std::vector<Complex> rhs) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(J[col][col]);
        for (int r = col + 1; r < n; ++r)
            if (std::abs(J[r][col]) > best) { best = std::abs(J[r][col]); pivot = r; }
        if (best == 0.0) throw std::runtime_error("singular Newton system");
        std::swap(J[pivot], J[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (int r = col + 1; r < n; ++r) {
            Complex f = J[r][col] / J[col][col];
            if (f == Complex{}) continue;
            for (int c = col; c < n; ++c) J[r][c] -= f * J[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Complex> x(n);
    for (int r = n - 1; r >= 0; --r) {
        Complex acc = rhs[r];
        for (int c = r + 1; c < n; ++c) acc -= J[r][c] * x[c];
        x[r] = acc / J[r][r];
    }
    return x;
}

double inf_norm(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

// Breadth-first angular layout with unit edges: the root holds the full
// circle, each child inherits an equal slice of its parent's sector and sits
// at unit distance along the slice midline.
std::vector<Complex> angular_layout(const trees::PlaneTree& t) {
    const double two_pi = 2.0 * std::numbers::pi;
    int V = t.vertex_count();
    std::vector<Complex> pos(V, Complex{});
    std::vector<std::pair<double, double>> sector(V, {0.0, two_pi});
    std::vector<int> order{t.root};
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        auto [s0, s1] = sector[v];
        std::size_t count = t.children[v].size();
        for (std::size_t k = 0; k < count; ++k) {
            int w = t.children[v][k];
            double a0 = s0 + (s1 - s0) * double(k) / double(count);
            double a1 = s0 + (s1 - s0) * double(k + 1) / double(count);
            double mid = 0.5 * (a0 + a1);
            pos[w] = pos[v] + Complex{std::cos(mid), std::sin(mid)};
            sector[w] = {a0, a1};
            order.push_back(w);
        }
    }
    return pos;
}

double layout_diameter(const std::vector<Complex>& pos) {
    double d = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i + 1; j < pos.size(); ++j) d = std::max(d, std::abs(pos[i] - pos[j]));
    return d > 0.0 ? d : 1.0;
}

bool pairwise_distinct(const std::vector<Complex>& pts, double min_gap) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (std::abs(pts[i] - pts[j]) < min_gap) return false;
    return true;
}

struct NewtonProblem {
    // residual and Jacobian at z; both sized n x 1 and n x n
    virtual std::vector<Complex> residual(const std::vector<Complex>& z) const = 0;
    virtual std::vector<std::vector<Complex>> jacobian(const std::vector<Complex>& z) const = 0;
    virtual ~NewtonProblem() = default;
};

// Damped Newton: full step first, halved while the residual norm fails to
// drop. Returns the final iterate and its residual norm.
std::pair<std::vector<Complex>, double> newton_run(const NewtonProblem& prob,
                                                   std::vector<Complex> z, double tol) {
    double rnorm = inf_norm(prob.residual(z));
    for (int step = 0; step < kMaxNewtonSteps && rnorm >= tol; ++step) {
        std::vector<Complex> r = prob.residual(z);
        std::vector<Complex> rhs(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) rhs[i] = -r[i];
        std::vector<Complex> delta;
        try {
            delta = solve_linear(prob.jacobian(z), rhs);
        } catch (const std::runtime_error&) {
            break;
        }
        double lambda = 1.0;
        std::vector<Complex> best_z = z;
        double best_norm = rnorm;
        bool improved = false;
        for (int h = 0; h < 8; ++h, lambda *= 0.5) {
            std::vector<Complex> trial = z;
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += lambda * delta[i];
            double tn = inf_norm(prob.residual(trial));
            if (std::isfinite(tn) && tn < best_norm) {
                best_z = std::move(trial);
                best_norm = tn;
                improved = true;
                break;
            }
        }
        if (!improved) break;
        z = std::move(best_z);
        rnorm = best_norm;
        if (!std::isfinite(rnorm)) break;
    }
    return {z, rnorm};
}

struct ShabatProblem : NewtonProblem {
    std::vector<int> white_mults, black_mults;
    int n;  // edges = system size

    // z = (a_2..a_p, b_2..b_q, c); a_1 = 0 and b_1 = 1 stay fixed
    std::vector<Complex> whites(const std::vector<Complex>& z) const {
        std::vector<Complex> a{Complex{0.0, 0.0}};
        a.insert(a.end(), z.begin(), z.begin() + (white_mults.size() - 1));
        return a;
    }
    std::vector<Complex> blacks(const std::vector<Complex>& z) const {
        std::vector<Complex> b{Complex{1.0, 0.0}};
        b.insert(b.end(), z.begin() + (white_mults.size() - 1), z.end() - 1);
        return b;
    }

    static CPoly product(const std::vector<Complex>& roots, const std::vector<int>& mults,
                         int skip = -1) {
        std::vector<std::pair<Complex, int>> rs;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            int m = mults[i] - (static_cast<int>(i) == skip ? 1 : 0);
            if (m > 0) rs.emplace_back(roots[i], m);
        }
        return cpoly_from_roots(rs);
    }

    std::vector<Complex> residual(const std::vector<Complex>& z) const override {
        Complex c = z.back();
        CPoly diff = cpoly_sub(product(whites(z), white_mults), product(blacks(z), black_mults));
        std::vector<Complex> r(n, Complex{});
        for (std::size_t i = 0; i < diff.size() && i < r.size(); ++i) r[i] = c * diff[i];
        r[0] -= 1.0;
        return r;
    }

    std::vector<std::vector<Complex>> jacobian(const std::vector<Complex>& z) const override {
        Complex c = z.back();
        auto a = whites(z);
        auto b = blacks(z);
        std::vector<std::vector<Complex>> J(n, std::vector<Complex>(n, Complex{}));
        int col = 0;
        for (std::size_t i = 1; i < a.size(); ++i, ++col) {
            CPoly d = product(a, white_mults, static_cast<int>(i));
            for (std::size_t k = 0; k < d.size() && k < std::size_t(n); ++k)
                J[k][col] = -c * double(white_mults[i]) * d[k];
        }
        for (std::size_t j = 1; j < b.size(); ++j, ++col) {
            CPoly d = product(b, black_mults, static_cast<int>(j));
            for (std::size_t k = 0; k < d.size() && k < std::size_t(n); ++k)
                J[k][col] = c * double(black_mults[j]) * d[k];
        }
        CPoly diff = cpoly_sub(product(a, white_mults), product(b, black_mults));
        for (std::size_t k = 0; k < diff.size() && k < std::size_t(n); ++k) J[k][col] = diff[k];
        return J;
    }
};

struct ConservativeProblem : NewtonProblem {
    std::vector<int> vertex_ids;  // unknown vertices, id order, root excluded
    int n;                        // edges; system size n + 1

    // all vertex positions in id order, root pinned at the origin
    std::vector<Complex> positions(const std::vector<Complex>& z, int root) const {
        std::vector<Complex> pos(vertex_ids.size() + 1);
        pos[root] = Complex{};
        for (std::size_t i = 0; i < vertex_ids.size(); ++i) pos[vertex_ids[i]] = z[i];
        return pos;
    }

    const trees::PlaneTree* tree = nullptr;

    std::vector<std::pair<Complex, int>> critical_roots(const std::vector<Complex>& z) const {
        std::vector<Complex> pos = positions(z, tree->root);
        std::vector<std::pair<Complex, int>> rs;
        for (int v = 0; v < tree->vertex_count(); ++v)
            if (tree->color[v] == trees::Color::White) rs.emplace_back(pos[v], tree->valency(v));
        return rs;
    }

    // R = (V + x)' - c W = V' + 1 - c W, V the monic vertex polynomial
    std::vector<Complex> residual(const std::vector<Complex>& z) const override {
        std::vector<Complex> pos = positions(z, tree->root);
        std::vector<std::pair<Complex, int>> all;
        for (int v = 0; v < tree->vertex_count(); ++v) all.emplace_back(pos[v], 1);
        CPoly Vp = cpoly_derivative(cpoly_from_roots(all));
        CPoly W = cpoly_from_roots(critical_roots(z));
        Complex c = z.back();
        std::vector<Complex> r(n + 1, Complex{});
        for (std::size_t k = 0; k < Vp.size(); ++k) r[k] = Vp[k];
        r[0] += 1.0;
        for (std::size_t k = 0; k < W.size(); ++k) r[k] -= c * W[k];
        return r;
    }

    std::vector<std::vector<Complex>> jacobian(const std::vector<Complex>& z) const override {
        std::vector<Complex> pos = positions(z, tree->root);
        Complex c = z.back();
        int V = tree->vertex_count();
        std::vector<std::vector<Complex>> J(n + 1, std::vector<Complex>(n + 1, Complex{}));
        auto criticals = critical_roots(z);
        for (std::size_t col = 0; col < vertex_ids.size(); ++col) {
            int v = vertex_ids[col];
            // d/dpos_v of V' = -(V / (x - pos_v))'
            std::vector<std::pair<Complex, int>> others;
            for (int w = 0; w < V; ++w)
                if (w != v) others.emplace_back(pos[w], 1);
            CPoly d = cpoly_derivative(cpoly_from_roots(others));
            for (std::size_t k = 0; k < d.size(); ++k) J[k][col] -= d[k];
            if (tree->color[v] == trees::Color::White) {
                // d/dpos_v of -c W = c gamma_v W / (x - pos_v)
                std::vector<std::pair<Complex, int>> rs = criticals;
                for (auto& [root, mult] : rs)
                    if (root == pos[v]) { mult -= 1; break; }
                std::erase_if(rs, [](const auto& rm) { return rm.second == 0; });
                CPoly w = cpoly_from_roots(rs);
                double gamma = tree->valency(v);
                for (std::size_t k = 0; k < w.size(); ++k) J[k][col] += c * gamma * w[k];
            }
        }
        CPoly W = cpoly_from_roots(criticals);
        for (std::size_t k = 0; k < W.size(); ++k) J[k][vertex_ids.size()] = -W[k];
        return J;
    }
};

std::vector<Complex> perturb(const std::vector<Complex>& base, std::mt19937_64& rng, double sigma) {
    std::normal_distribution<double> noise(0.0, sigma);
    std::vector<Complex> out = base;
    for (auto& z : out) z += Complex{noise(rng), noise(rng)};
    return out;
}

}  // namespace

ShabatWitness shabat_solve(const trees::PlaneTree& t, double tol, std::uint64_t seed) {
    t.validate();
    if (t.edge_count() < 1) throw std::invalid_argument("Shabat solve needs a tree with edges");
    ShabatProblem prob;
    std::vector<int> white_ids, black_ids;
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (t.color[v] == trees::Color::White) {
            white_ids.push_back(v);
            prob.white_mults.push_back(t.valency(v));
        } else {
            black_ids.push_back(v);
            prob.black_mults.push_back(t.valency(v));
        }
    }
    prob.n = t.edge_count();

    std::vector<Complex> layout = angular_layout(t);
    double sigma = 0.1 * layout_diameter(layout);
    std::mt19937_64 rng(seed);

    double best_residual = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt <= kMaxRestarts; ++attempt) {
        std::vector<Complex> pts = attempt == 0 ? layout : perturb(layout, rng, sigma);
        // normalize the embedding so the first white sits at 0, first black at 1
        Complex A = pts[white_ids[0]], B = pts[black_ids[0]];
        if (std::abs(B - A) < 1e-12) B = A + 1.0;
        std::vector<Complex> z;
        for (std::size_t i = 1; i < white_ids.size(); ++i) z.push_back((pts[white_ids[i]] - A) / (B - A));
        for (std::size_t j = 1; j < black_ids.size(); ++j) z.push_back((pts[black_ids[j]] - A) / (B - A));
        // seed c from the constant coefficient equation
        z.push_back(Complex{1.0, 0.0});
        {
            std::vector<Complex> probe = z;
            CPoly diff = cpoly_sub(ShabatProblem::product(prob.whites(probe), prob.white_mults),
                                   ShabatProblem::product(prob.blacks(probe), prob.black_mults));
            if (!diff.empty() && std::abs(diff[0]) > 1e-12) z.back() = 1.0 / diff[0];
        }
        auto [zf, rnorm] = newton_run(prob, std::move(z), tol);
        best_residual = std::min(best_residual, rnorm);
        if (rnorm >= tol) continue;
        std::vector<Complex> all = prob.whites(zf);
        auto blacks = prob.blacks(zf);
        all.insert(all.end(), blacks.begin(), blacks.end());
        if (!pairwise_distinct(all, kClusterTol)) continue;
        ShabatWitness w;
        w.white_roots = prob.whites(zf);
        w.white_mults = prob.white_mults;
        w.black_roots = blacks;
        w.black_mults = prob.black_mults;
        w.scale = zf.back();
        w.residual = rnorm;
        return w;
    }
    throw solver_error("Shabat solve did not converge", best_residual);
}

ConservativeWitness conservative_solve(const trees::PlaneTree& t, double tol, std::uint64_t seed) {
    t.validate();
    if (t.edge_count() < 1) throw std::invalid_argument("conservative solve needs a tree with edges");
    ConservativeProblem prob;
    prob.tree = &t;
    prob.n = t.edge_count();
    for (int v = 0; v < t.vertex_count(); ++v)
        if (v != t.root) prob.vertex_ids.push_back(v);

    std::vector<Complex> layout = angular_layout(t);
    double sigma = 0.1 * layout_diameter(layout);
    std::mt19937_64 rng(seed);

    double best_residual = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt <= kMaxRestarts; ++attempt) {
        std::vector<Complex> pts = attempt == 0 ? layout : perturb(layout, rng, sigma);
        std::vector<Complex> z;
        for (int v : prob.vertex_ids) z.push_back(pts[v] - pts[t.root]);
        z.push_back(Complex{double(prob.n + 1), 0.0});
        auto [zf, rnorm] = newton_run(prob, std::move(z), tol);
        best_residual = std::min(best_residual, rnorm);
        if (rnorm >= tol) continue;
        std::vector<Complex> pos = prob.positions(zf, t.root);
        if (!pairwise_distinct(pos, kClusterTol)) continue;

        ConservativeWitness w;
        for (int v = 0; v < t.vertex_count(); ++v) {
            if (t.color[v] == trees::Color::White) {
                w.critical_points.push_back(pos[v]);
                w.gammas.push_back(t.valency(v));
            } else {
                w.free_fixed_points.push_back(pos[v]);
            }
        }
        w.scale = zf.back();
        std::vector<std::pair<Complex, int>> all;
        for (int v = 0; v < t.vertex_count(); ++v) all.emplace_back(pos[v], 1);
        w.C = cpoly_from_roots(all);
        w.C[1] += 1.0;  // C = V + x
        double fixed_err = 0.0;
        for (const Complex& cp : w.critical_points)
            fixed_err = std::max(fixed_err, std::abs(cpoly_eval(w.C, cp) - cp));
        w.residual = std::max(fixed_err, rnorm);
        return w;
    }
    throw solver_error("conservative solve did not converge", best_residual);
}

SignatureWitness shabat_witness_for_signature(const polycore::MultiplicitySignature& sig,
                                              double tol, std::uint64_t seed) {
    sig.validate();
    int m = sig.m(), k = sig.k(), n = sig.n(), M = sig.total_alpha();
    if (m < 2 || m > n - M + 1)
        throw regime_error("shabat witness requires 2 <= m <= n - M + 1");
    trees::Partition gamma;
    for (int a : sig.alphas) gamma.push_back(a + 1);
    for (int b : sig.betas) gamma.push_back(b + 1);
    for (int i = 0; i < n - (m + k) + 2; ++i) gamma.push_back(1);
    trees::PlaneTree t = trees::bicolored_with_white_prefix(gamma, m);

    ShabatWitness w = shabat_solve(t, tol, seed);
    SignatureWitness out;
    out.tree = trees::encode(t);
    out.scale = w.scale;
    out.residual = w.residual;
    // P' vanishes at every vertex of valency >= 2, to order valency - 1
    for (int j = 0; j < m; ++j) {
        out.f.roots.emplace_back(w.white_roots[j], w.white_mults[j] - 1);
        out.S.push_back(w.white_roots[j]);
    }
    for (std::size_t j = m; j < w.white_roots.size(); ++j)
        if (w.white_mults[j] >= 2) out.f.roots.emplace_back(w.white_roots[j], w.white_mults[j] - 1);
    for (std::size_t j = 0; j < w.black_roots.size(); ++j)
        if (w.black_mults[j] >= 2) out.f.roots.emplace_back(w.black_roots[j], w.black_mults[j] - 1);
    if (!check_sfull_numeric(out.f, out.S, kDownstreamTol))
        throw solver_error("shabat witness failed the S-full check", w.residual);
    return out;
}

SignatureWitness conservative_witness_for_signature(const polycore::MultiplicitySignature& sig,
                                                    double tol, std::uint64_t seed) {
    sig.validate();
    int m = sig.m(), k = sig.k(), n = sig.n();
    int l = m + k;
    if (l < 1) throw regime_error("conservative witness requires at least one critical point");
    trees::Partition gamma;
    for (int a : sig.alphas) gamma.push_back(a);
    for (int b : sig.betas) gamma.push_back(b);
    trees::Partition delta{l};
    for (int i = 0; i < n - l; ++i) delta.push_back(1);
    trees::PlaneTree t = trees::bicolored_from_partitions(gamma, delta);

    ConservativeWitness w = conservative_solve(t, tol, seed);
    SignatureWitness out;
    out.tree = trees::encode(t);
    out.scale = w.scale;
    out.residual = w.residual;
    for (int j = 0; j < l; ++j) out.f.roots.emplace_back(w.critical_points[j], w.gammas[j]);
    for (int j = 0; j < m; ++j) out.S.push_back(w.critical_points[j]);
    if (m >= 2 && check_sfull_numeric(out.f, out.S, kDownstreamTol))
        throw solver_error("conservative witness failed to separate the anchor values", w.residual);
    return out;
}

bool check_sfull_numeric(const FactoredCPoly& f, const std::vector<Complex>& S, double tol) {
    for (const Complex& s : S) {
        bool near = false;
        for (const auto& [root, mult] : f.roots)
            if (mult >= 2 && std::abs(root - s) <= kClusterTol) { near = true; break; }
        if (!near)
            throw std::invalid_argument("S contains a point away from the multiple roots of f");
    }
    if (S.empty()) return true;
    CPoly F = cpoly_antiderivative(f.expand());
    Complex offset = cpoly_eval(F, S.front());
    F[0] -= offset;
    double scale = 0.0;
    for (const auto& c : F) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) scale = 1.0;
    double worst = 0.0;
    for (const Complex& s : S) worst = std::max(worst, std::abs(cpoly_eval(F, s)));
    return worst < tol * scale;
}

CPoly chebyshev_reference(int n) {
    if (n < 1) throw std::invalid_argument("Chebyshev reference needs n >= 1");
    CPoly prev{Complex{1.0, 0.0}};        // T_0
    CPoly cur{Complex{}, Complex{1.0, 0.0}};  // T_1
    for (int k = 2; k <= n; ++k) {
        CPoly next(cur.size() + 1, Complex{});
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = 2.0 * cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    // map critical values {-1, 1} to {0, 1}
    cur[0] += 1.0;
    for (auto& c : cur) c *= 0.5;
    return cur;
}

}  // namespace integrax::drawfuns
