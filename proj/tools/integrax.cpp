#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "integrax/drawfuns.hpp"
#include "integrax/json_io.hpp"
#include "integrax/matcore.hpp"
#include "integrax/polycore.hpp"
#include "integrax/trees.hpp"

namespace {

using integrax::Rat;
using integrax::rat_to_string;
using nlohmann::json;
namespace io = integrax::io;
namespace polycore = integrax::polycore;
namespace matcore = integrax::matcore;
namespace trees = integrax::trees;
namespace drawfuns = integrax::drawfuns;

constexpr int kExitInput = 2;
constexpr int kExitRegime = 3;
constexpr int kExitSolver = 4;

// -i accepts a file path, "-" for stdin, or an inline JSON literal.
json load_input(const std::string& spec) {
    if (spec.empty()) throw std::invalid_argument("missing input (-i)");
    if (spec == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        return json::parse(buf.str());
    }
    if (spec.front() == '{' || spec.front() == '[' || spec.front() == '"')
        return json::parse(spec);
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("cannot open input file '" + spec + "'");
    json j;
    in >> j;
    return j;
}

void write_output(const json& doc, const std::string& path) {
    if (path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out << doc.dump(2) << "\n";
}

json obstruction_report(const polycore::RatPoly& F, const polycore::RatPoly& locus) {
    json out;
    out["remainder"] = io::poly_to_json(polycore::divrem(F, locus).second);
    std::vector<Rat> roots = polycore::rational_roots(locus);
    if (roots.size() >= 2) {
        json values = json::array();
        Rat lo, hi;
        bool first = true;
        for (const Rat& r : roots) {
            Rat val = polycore::eval(F, r);
            values.push_back({{"root", rat_to_string(r)}, {"value", rat_to_string(val)}});
            if (first || val < lo) lo = val;
            if (first || val > hi) hi = val;
            first = false;
        }
        out["values"] = std::move(values);
        out["gap"] = rat_to_string(Rat(hi - lo));
    }
    return out;
}

json analyze_report(const matcore::RatMatrix& B, const matcore::JordanSpec* spec) {
    if (!B.is_square()) throw std::invalid_argument("matrix must be square");
    polycore::RatPoly p = matcore::char_poly(B);
    polycore::RatPoly m = matcore::min_poly(B);
    polycore::RatPoly locus = matcore::multiple_locus(B);
    bool integrable = matcore::is_integrable(B);
    json out;
    out["input"] = spec ? "jordan_spec" : "matrix";
    out["n"] = B.rows();
    out["char_poly"] = io::poly_to_json(p);
    out["min_poly"] = io::poly_to_json(m);
    out["locus"] = io::poly_to_json(locus);
    out["integrable"] = integrable;
    out["integral"] = nullptr;
    out["verification"] = nullptr;
    if (!integrable)
        out["obstruction"] = obstruction_report(polycore::antiderivative(p), locus);
    if (spec && integrable) {
        auto A = matcore::construct_integral(*spec);
        if (A) {
            out["integral"] = io::extension_to_json(*A);
            out["verification"] = matcore::verify_integral(B, A->assemble());
        }
    }
    return out;
}

int cmd_analyze(const std::string& input, const std::string& output) {
    json j = load_input(input);
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a matrix or a Jordan spec");
    if (j[0].is_object()) {
        matcore::JordanSpec spec = io::jordan_from_json(j);
        write_output(analyze_report(matcore::jordan_matrix(spec), &spec), output);
    } else {
        write_output(analyze_report(io::matrix_from_json(j), nullptr), output);
    }
    return 0;
}

int cmd_sfull(const std::string& input, const std::string& output) {
    json j = load_input(input);
    polycore::FactoredPoly f = io::factored_from_json(j.at("factored"));
    std::vector<Rat> S;
    for (const auto& s : j.at("S")) S.push_back(integrax::rat_from_string(s.get<std::string>()));
    auto F = polycore::sfull_integral(f, S);
    json out;
    out["exists"] = F.has_value();
    out["F"] = F ? io::poly_to_json(*F) : json(nullptr);
    write_output(out, output);
    return 0;
}

int cmd_classify(const std::string& input, const std::string& output) {
    polycore::MultiplicitySignature sig = io::signature_from_json(load_input(input));
    json out;
    out["verdict"] = polycore::to_string(polycore::classify_signature(sig));
    out["n"] = sig.n();
    out["M"] = sig.total_alpha();
    out["m"] = sig.m();
    out["k"] = sig.k();
    write_output(out, output);
    return 0;
}

int cmd_witness(const std::string& input, const std::string& output, const std::string& kind,
                double tol, std::uint64_t seed) {
    polycore::MultiplicitySignature sig = io::signature_from_json(load_input(input));
    drawfuns::SignatureWitness w;
    if (kind == "integrable")
        w = drawfuns::shabat_witness_for_signature(sig, tol, seed);
    else if (kind == "nonintegrable")
        w = drawfuns::conservative_witness_for_signature(sig, tol, seed);
    else
        throw std::invalid_argument("--kind must be 'integrable' or 'nonintegrable'");
    json out = io::signature_witness_to_json(w);
    out["kind"] = kind;
    out["signature"] = io::signature_to_json(sig);
    out["check_sfull"] = drawfuns::check_sfull_numeric(w.f, w.S);
    out["tol"] = tol;
    out["seed"] = seed;
    write_output(out, output);
    return 0;
}

int cmd_tree(const std::string& input, const std::string& output, int l) {
    json j = load_input(input);
    trees::Partition gamma;
    for (const auto& g : j.at("gamma")) gamma.push_back(g.get<int>());
    trees::PlaneTree t =
        l > 0 ? trees::bicolored_with_white_prefix(gamma, l) : trees::tree_from_partition(gamma);
    write_output(io::tree_to_json(t), output);
    return 0;
}

int cmd_solve_tree(const std::string& input, const std::string& output, bool shabat,
                   bool conservative, double tol, std::uint64_t seed) {
    json j = load_input(input);
    std::string enc = j.is_string() ? j.get<std::string>() : j.at("tree").get<std::string>();
    trees::PlaneTree t = trees::decode(enc);
    if (shabat == conservative)
        throw std::invalid_argument("pick exactly one of --shabat / --conservative");
    json out;
    if (shabat)
        out = io::shabat_witness_to_json(drawfuns::shabat_solve(t, tol, seed));
    else
        out = io::conservative_witness_to_json(drawfuns::conservative_solve(t, tol, seed));
    out["tree"] = enc;
    out["tol"] = tol;
    out["seed"] = seed;
    write_output(out, output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact matrix integrability toolkit"};
    app.require_subcommand(1);

    std::string input, output, kind;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    int prefix_len = 0;
    bool shabat = false, conservative = false;

    auto add_io = [&](CLI::App* cmd, bool need_input = true) {
        auto* opt = cmd->add_option("-i,--input", input, "input file, '-' for stdin, or inline JSON");
        if (need_input) opt->required();
        cmd->add_option("-o,--output", output, "output file (default: stdout)");
    };
    auto add_solver_opts = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "solver tolerance")->capture_default_str();
        cmd->add_option("--seed", seed, "random seed")->envname("INTEGRAX_SEED");
    };

    auto* analyze = app.add_subcommand("analyze", "integrability report for a matrix or Jordan spec");
    add_io(analyze);
    auto* sfull = app.add_subcommand("sfull", "S-full integral of a factored polynomial");
    add_io(sfull);
    auto* classify = app.add_subcommand("classify", "trichotomy verdict for a multiplicity signature");
    add_io(classify);
    auto* witness = app.add_subcommand("witness", "witness polynomial for a mixed-regime signature");
    add_io(witness);
    witness->add_option("--kind", kind, "integrable | nonintegrable")->required();
    add_solver_opts(witness);
    auto* tree = app.add_subcommand("tree", "plane tree realizing a valency partition");
    add_io(tree);
    tree->add_option("--l", prefix_len, "force the first l parts white");
    auto* solve_tree = app.add_subcommand("solve-tree", "Shabat or conservative polynomial of a tree");
    add_io(solve_tree);
    solve_tree->add_flag("--shabat", shabat, "solve the Shabat system");
    solve_tree->add_flag("--conservative", conservative, "solve the conservative system");
    add_solver_opts(solve_tree);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(input, output);
        if (sfull->parsed()) return cmd_sfull(input, output);
        if (classify->parsed()) return cmd_classify(input, output);
        if (witness->parsed()) return cmd_witness(input, output, kind, tol, seed);
        if (tree->parsed()) return cmd_tree(input, output, prefix_len);
        if (solve_tree->parsed())
            return cmd_solve_tree(input, output, shabat, conservative, tol, seed);
    } catch (const drawfuns::regime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const drawfuns::solver_error& e) {
        std::cerr << "error: " << e.what() << " (best residual " << e.best_residual << ")\n";
        return kExitSolver;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
