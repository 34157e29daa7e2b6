// Acceptance suite: end-to-end checks of the library and CLI, one line of
// output per criterion. Exits nonzero if any criterion fails its assertions
// or its time budget.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "integrax/drawfuns.hpp"
#include "integrax/json_io.hpp"
#include "integrax/matcore.hpp"
#include "integrax/polycore.hpp"
#include "integrax/trees.hpp"
#include "test_support.hpp"

using namespace integrax;
using nlohmann::json;
using test_support::det_char_poly;
using test_support::matrix;
using test_support::poly;
using test_support::Q;

namespace {

struct Checker {
    int failures = 0;
    std::ostringstream log;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            log << "    FAILED: " << what << "\n";
        }
    }
};

struct CliResult {
    int exit_code;
    json doc;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(INTEGRAX_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    json doc;
    try {
        doc = json::parse(out);
    } catch (...) {
    }
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, doc};
}

// every Jordan spec with the given total size over eigenvalue values chosen
// in increasing index order
std::vector<matcore::JordanSpec> all_specs(int n, const std::vector<Rat>& values) {
    std::vector<matcore::JordanSpec> out;
    auto rec = [&](auto&& self, int rest, std::size_t value_from, matcore::JordanSpec acc) -> void {
        if (rest == 0) {
            out.push_back(acc);
            return;
        }
        for (int mult = 1; mult <= rest; ++mult)
            for (std::size_t vi = value_from; vi < values.size(); ++vi)
                for (const auto& cells : test_support::partitions(mult, 1)) {
                    matcore::JordanSpec next = acc;
                    next.blocks.push_back({values[vi], cells});
                    self(self, rest - mult, vi + 1, std::move(next));
                }
    };
    rec(rec, n, 0, {});
    return out;
}

std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    if (parts == 1) {
        if (total >= 1) out.push_back({total});
        return out;
    }
    for (int first = 1; first <= total - parts + 1; ++first)
        for (auto& rest : compositions(total - first, parts - 1)) {
            rest.insert(rest.begin(), first);
            out.push_back(std::move(rest));
        }
    return out;
}

matcore::JordanSpec placement(const polycore::MultiplicitySignature& sig,
                              const std::vector<Rat>& eigenvalues) {
    matcore::JordanSpec spec;
    int idx = 0;
    for (int a : sig.alphas) spec.blocks.push_back({eigenvalues[idx++], {a - 1, 1}});
    for (int b : sig.betas) spec.blocks.push_back({eigenvalues[idx++], {b}});
    return spec;
}

double coeff_distance(const drawfuns::CPoly& a, const drawfuns::CPoly& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        drawfuns::Complex ca = i < a.size() ? a[i] : drawfuns::Complex{};
        drawfuns::Complex cb = i < b.size() ? b[i] : drawfuns::Complex{};
        d = std::max(d, std::abs(ca - cb));
    }
    return d;
}

// ---- criteria ----

void criterion_1(Checker& c) {
    const char* mat =
        R"x([["1","0","0","0"],["0","1","0","0"],["0","0","-1","1"],["0","0","0","-1"]])x";
    CliResult r = run_cli(std::string("analyze -i '") + mat + "'");
    c.expect(r.exit_code == 0, "cmd_analyze exits 0");
    c.expect(r.doc.value("integrable", false), "cmd_analyze reports integrable");

    matcore::RatMatrix B = matrix({{"1", "0", "0", "0"},
                                   {"0", "1", "0", "0"},
                                   {"0", "0", "-1", "1"},
                                   {"0", "0", "0", "-1"}});
    matcore::RatMatrix A = matrix({{"1", "0", "0", "0", "0"},
                                   {"0", "1", "0", "0", "0"},
                                   {"0", "0", "-1", "1", "0"},
                                   {"0", "0", "0", "-1", "4/3"},
                                   {"0", "0", "1", "1", "0"}});
    c.expect(matcore::verify_integral(B, A), "known bordered matrix verifies");
    c.expect(matcore::char_poly(A) == poly({"-8/3", "5", "0", "-10/3", "0", "1"}),
             "p_A equals x^5 - 10/3 x^3 + 5x - 8/3 exactly");
}

void criterion_2(Checker& c) {
    const char* mat =
        R"x([["1","0","0","0"],["0","1","0","0"],["0","0","-1","0"],["0","0","0","-1"]])x";
    CliResult r = run_cli(std::string("analyze -i '") + mat + "'");
    c.expect(r.exit_code == 0, "cmd_analyze exits 0");
    c.expect(r.doc.value("integrable", true) == false, "reported non-integrable");
    c.expect(r.doc.contains("obstruction") && r.doc["obstruction"].value("gap", "") == "16/15",
             "exact obstruction 16/15 emitted");
}

void criterion_3(Checker& c) {
    std::vector<Rat> values{Q("-2"), Q("-1"), Q("0"), Q("1"), Q("2")};
    long checked = 0, integrable = 0;
    for (int n = 1; n <= 5; ++n)
        for (const auto& spec : all_specs(n, values)) {
            ++checked;
            matcore::RatMatrix B = matcore::jordan_matrix(spec);
            auto A = matcore::construct_integral(spec);
            if (!matcore::is_integrable(B)) {
                c.expect(!A.has_value(), "no construction for non-integrable spec");
                continue;
            }
            ++integrable;
            if (!A.has_value()) {
                c.expect(false, "construction missing for an integrable spec");
                continue;
            }
            matcore::RatMatrix M = A->assemble();
            bool sound = polycore::derivative(matcore::char_poly(M)) ==
                         Rat(n + 1) * matcore::char_poly(B);
            c.expect(sound, "p_A' = (n+1) p_B exactly");
            c.expect(A->b == B.trace() / Rat(n), "corner entry equals tr(B)/n");
        }
    c.log << "    (" << checked << " specs swept, " << integrable << " integrable)\n";
}

void criterion_4(Checker& c) {
    long placements = 0, mixed = 0;
    for (int n = 1; n <= 6; ++n)
        for (const auto& sig : test_support::signatures_of(n)) {
            polycore::Verdict verdict = polycore::classify_signature(sig);
            int count = sig.m() + sig.k();
            if (verdict == polycore::Verdict::Mixed) {
                ++mixed;
                auto w1 = drawfuns::shabat_witness_for_signature(sig, 1e-10, 0);
                c.expect(drawfuns::check_sfull_numeric(w1.f, w1.S, 1e-8),
                         "shabat witness admits the S-full integral");
                auto w2 = drawfuns::conservative_witness_for_signature(sig, 1e-10, 0);
                c.expect(!drawfuns::check_sfull_numeric(w2.f, w2.S, 1e-8),
                         "conservative witness blocks the S-full integral");
                continue;
            }
            for (int trial = 0; trial < 50; ++trial) {
                auto vals = test_support::random_distinct_rationals(
                    count, 10007ull * n + 131ull * trial + sig.m());
                matcore::RatMatrix B = matcore::jordan_matrix(placement(sig, vals));
                polycore::FactoredPoly f;
                std::vector<Rat> S;
                for (int i = 0; i < sig.m(); ++i) {
                    f.roots.emplace_back(vals[i], sig.alphas[i]);
                    S.push_back(vals[i]);
                }
                for (int i = 0; i < sig.k(); ++i)
                    f.roots.emplace_back(vals[sig.m() + i], sig.betas[i]);
                ++placements;
                if (verdict == polycore::Verdict::AllIntegrable) {
                    c.expect(matcore::is_integrable(B), "m <= 1 placement is integrable");
                } else {
                    c.expect(!matcore::is_integrable(B), "m > n-M+1 placement is non-integrable");
                    c.expect(!polycore::sfull_integral(f, S).has_value(),
                             "m > n-M+1 placement has no S-full integral");
                }
            }
        }
    c.log << "    (" << placements << " placements, " << mixed << " mixed signatures)\n";
}

void criterion_5(Checker& c) {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> entry(-5, 5), nd(1, 5), vd(1, 4);
    std::vector<Rat> pool{Q("-2"), Q("-1"), Q("0"), Q("1"), Q("2"), Q("1/2"), Q("-3/2")};
    for (int trial = 0; trial < 200; ++trial) {
        int n = nd(rng);
        // random spec over distinct eigenvalues
        matcore::JordanSpec spec;
        std::vector<Rat> values = pool;
        std::shuffle(values.begin(), values.end(), rng);
        int rest = n, vi = 0;
        while (rest > 0) {
            int mult = std::uniform_int_distribution<int>(1, rest)(rng);
            auto parts = test_support::partitions(mult, 1);
            spec.blocks.push_back(
                {values[vi++], parts[std::uniform_int_distribution<std::size_t>(0, parts.size() - 1)(rng)]});
            rest -= mult;
        }
        std::vector<Rat> u(n), v(n, Q("0"));
        for (int i = 0; i < n; ++i) u[i] = rat(entry(rng), vd(rng));
        int pos = 0;
        for (const auto& bl : spec.blocks)
            for (int k : bl.cells) {
                int r = std::uniform_int_distribution<int>(0, k)(rng);
                if (r < k) v[pos + r] = 1;
                pos += k;
            }
        Rat b = rat(entry(rng), vd(rng));
        matcore::IntegralExtension A{matcore::jordan_matrix(spec), u, v, b};
        c.expect(matcore::extension_char_poly(spec, u, v, b) == det_char_poly(A.assemble()),
                 "border expansion equals the determinant");
    }
}

void criterion_6(Checker& c) {
    long plain = 0, bicolored = 0, prefixed = 0;
    for (int n = 1; n <= 8; ++n)
        for (const auto& gamma : compositions(2 * n, n + 1)) {
            trees::PlaneTree t = trees::tree_from_partition(gamma);
            ++plain;
            int total = 0;
            for (int v = 0; v <= n; ++v) {
                if (t.valency(v) != gamma[v]) c.expect(false, "valency mismatch");
                total += t.valency(v);
            }
            c.expect(total == 2 * n, "valencies sum to twice the edges");
        }
    for (int n = 1; n <= 8; ++n)
        for (int p = 1; p <= n; ++p)
            for (const auto& alpha : compositions(n, p))
                for (const auto& beta : compositions(n, n + 1 - p)) {
                    trees::PlaneTree t = trees::bicolored_from_partitions(alpha, beta);
                    ++bicolored;
                    auto [white, black] = trees::valency_sequences(t);
                    c.expect(white == alpha && black == beta, "white/black sequences realized");
                    c.expect(std::accumulate(white.begin(), white.end(), 0) == n &&
                                 std::accumulate(black.begin(), black.end(), 0) == n,
                             "white and black weights both equal n");
                    c.expect(static_cast<int>(white.size() + black.size()) == n + 1,
                             "p + q = n + 1");
                }
    for (int n = 1; n <= 7; ++n)
        for (const auto& gamma : compositions(2 * n, n + 1))
            for (int l = 1; l <= n; ++l) {
                int prefix = std::accumulate(gamma.begin(), gamma.begin() + l, 0);
                if (prefix > n) continue;
                int target = n - prefix;
                std::vector<char> reach(target + 1, 0);
                reach[0] = 1;
                for (std::size_t i = l; i < gamma.size(); ++i)
                    for (int s = target; s >= gamma[i]; --s)
                        if (reach[s - gamma[i]]) reach[s] = 1;
                if (!reach[target]) {
                    bool threw = false;
                    try {
                        trees::bicolored_with_white_prefix(gamma, l);
                    } catch (const std::invalid_argument&) {
                        threw = true;
                    }
                    c.expect(threw, "unbalanced prefix rejected");
                    continue;
                }
                trees::PlaneTree t = trees::bicolored_with_white_prefix(gamma, l);
                ++prefixed;
                auto [white, black] = trees::valency_sequences(t);
                bool prefix_ok = static_cast<int>(white.size()) >= l;
                for (int i = 0; i < l && prefix_ok; ++i) prefix_ok = (white[i] == gamma[i]);
                c.expect(prefix_ok, "white sequence starts with the prescribed prefix");
                std::multiset<int> have(white.begin(), white.end());
                have.insert(black.begin(), black.end());
                c.expect(have == std::multiset<int>(gamma.begin(), gamma.end()),
                         "full valency multiset preserved");
            }
    c.log << "    (" << plain << " partitions, " << bicolored << " pairs, " << prefixed
          << " prefixed trees)\n";
}

void criterion_7(Checker& c) {
    // exact brute force over monic quadratics C = x^2 + b x with C(0) = 0:
    // the critical point -b/2 is fixed iff b^2 = 2b
    std::vector<Rat> solutions;
    for (int p = -40; p <= 40; ++p)
        for (int q = 1; q <= 10; ++q) {
            Rat b = rat(p, q);
            if (b * b == Q("2") * b &&
                std::find(solutions.begin(), solutions.end(), b) == solutions.end())
                solutions.push_back(b);
        }
    std::sort(solutions.begin(), solutions.end());
    c.expect(solutions == std::vector<Rat>{Q("0"), Q("2")},
             "brute force finds exactly {x^2, x^2 + 2x}");

    drawfuns::ConservativeWitness a = drawfuns::conservative_solve(trees::decode("w(b)"));
    drawfuns::ConservativeWitness b = drawfuns::conservative_solve(trees::decode("b(w)"));
    drawfuns::CPoly x2{{0, 0}, {0, 0}, {1, 0}};
    drawfuns::CPoly x2p2x{{0, 0}, {2, 0}, {1, 0}};
    c.expect(coeff_distance(a.C, x2) < 1e-10, "white-rooted edge recovers x^2");
    c.expect(coeff_distance(b.C, x2p2x) < 1e-10, "black-rooted edge recovers x^2 + 2x");
}

void criterion_8(Checker& c) {
    for (int n = 2; n <= 5; ++n) {
        std::string enc, close;
        char root = (n % 2) ? 'w' : 'b';
        for (int i = 0; i <= n; ++i) {
            enc += (i % 2) ? (root == 'w' ? 'b' : 'w') : root;
            if (i < n) {
                enc += '(';
                close += ')';
            }
        }
        enc += close;
        drawfuns::ShabatWitness w = drawfuns::shabat_solve(trees::decode(enc));
        drawfuns::CPoly ref = drawfuns::chebyshev_reference(n);
        double endpoint = -1.0;
        double neighbor = std::cos(M_PI * double(n - 1) / double(n));
        double w0 = (n % 2) ? endpoint : neighbor;
        double b0 = (n % 2) ? neighbor : endpoint;
        drawfuns::CPoly mu{{w0, 0.0}, {b0 - w0, 0.0}};
        drawfuns::CPoly expect{ref.back()};
        for (int i = static_cast<int>(ref.size()) - 2; i >= 0; --i) {
            expect = drawfuns::cpoly_mul(expect, mu);
            if (expect.empty()) expect = {{0, 0}};
            expect[0] += ref[i];
        }
        std::ostringstream what;
        what << "path with " << n << " edges matches the Chebyshev reference";
        c.expect(coeff_distance(w.polynomial(), expect) < 1e-8, what.str());
    }
}

void criterion_9(Checker& c) {
    std::vector<matcore::JordanSpec> fixtures{
        {{{Q("1"), {1, 1}}, {Q("-1"), {2}}}},   // integrable, mixed structure
        {{{Q("1"), {1, 1}}, {Q("-1"), {1, 1}}}},  // non-integrable
        {{{Q("0"), {2}}}},                       // nilpotent cell
        {{{Q("2"), {2, 1}}, {Q("-1/2"), {1}}}},  // repeated eigenvalue with tail
    };
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (const auto& spec : fixtures) {
        matcore::RatMatrix B = matcore::jordan_matrix(spec);
        bool expect_integrable = matcore::is_integrable(B);
        auto A = matcore::construct_integral(spec);
        c.expect(A.has_value() == expect_integrable, "construction agrees with the decision");
        int n = B.rows();
        int done = 0;
        while (done < 50) {
            matcore::RatMatrix X(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) X.at(i, j) = entry(rng);
            try {
                X.inverse();
            } catch (const std::invalid_argument&) {
                continue;
            }
            ++done;
            c.expect(matcore::is_integrable(X * B * X.inverse()) == expect_integrable,
                     "integrability invariant under similarity");
            if (A) {
                matcore::IntegralExtension conj = matcore::conjugate_integral(*A, X);
                c.expect(matcore::verify_integral(conj.B, conj.assemble()),
                         "conjugated integral still verifies");
            }
        }
    }
}

struct Criterion {
    int number;
    const char* title;
    double budget_seconds;
    std::function<void(Checker&)> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "mixed-cell 4x4 fixture: analyze report and exact integral check", 1.0, criterion_1},
        {2, "non-integrability fixture emits the exact 16/15 obstruction", 1.0, criterion_2},
        {3, "construction soundness sweep, n <= 5, eigenvalues in {-2..2}", 60.0, criterion_3},
        {4, "trichotomy at desk scale, n <= 6", 600.0, criterion_4},
        {5, "border expansion equals brute-force determinants, 200 trials", 60.0, criterion_5},
        {6, "tree lemmas exhaustive at n <= 8 (prefix variant n <= 7)", 60.0, criterion_6},
        {7, "both normalized conservative quadratics recovered", 10.0, criterion_7},
        {8, "Chebyshev oracle on paths, n in {2..5}", 10.0, criterion_8},
        {9, "conjugation invariance over 50 random similarities per fixture", 30.0, criterion_9},
    };

    int failed = 0;
    for (const auto& crit : criteria) {
        Checker checker;
        auto start = std::chrono::steady_clock::now();
        try {
            crit.run(checker);
        } catch (const std::exception& e) {
            checker.expect(false, std::string("unexpected exception: ") + e.what());
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        checker.expect(elapsed < crit.budget_seconds, "within the time budget");
        bool ok = checker.failures == 0;
        if (!ok) ++failed;
        std::printf("%s  criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", crit.number,
                    crit.title, elapsed);
        if (!ok) std::fputs(checker.log.str().c_str(), stdout);
    }
    if (failed) std::printf("%d criterion(s) failed\n", failed);
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failed == 0 ? 0 : 1;
}
