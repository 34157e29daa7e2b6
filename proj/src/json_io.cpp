#include "integrax/json_io.hpp"

#include <stdexcept>

namespace integrax::io {

namespace {

Rat rat_field(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("expected a rational string");
    return rat_from_string(j.get<std::string>());
}

}  // namespace

json poly_to_json(const polycore::RatPoly& p) {
    json out = json::array();
    for (const Rat& c : p.coeffs()) out.push_back(rat_to_string(c));
    return out;
}

polycore::RatPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of rationals");
    std::vector<Rat> cs;
    for (const auto& c : j) cs.push_back(rat_field(c));
    return polycore::RatPoly(std::move(cs));
}

json matrix_to_json(const matcore::RatMatrix& m) {
    json out = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m.at(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

matcore::RatMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
    int rows = static_cast<int>(j.size());
    if (!j[0].is_array() || j[0].empty())
        throw std::invalid_argument("matrix rows must be non-empty arrays");
    int cols = static_cast<int>(j[0].size());
    matcore::RatMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m.at(r, c) = rat_field(j[r][c]);
    }
    return m;
}

json jordan_to_json(const matcore::JordanSpec& spec) {
    json out = json::array();
    for (const auto& bl : spec.blocks)
        out.push_back({{"eigenvalue", rat_to_string(bl.eigenvalue)}, {"cells", bl.cells}});
    return out;
}

matcore::JordanSpec jordan_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("Jordan spec must be a non-empty array of blocks");
    matcore::JordanSpec spec;
    for (const auto& bj : j) {
        matcore::JordanSpec::Block bl;
        bl.eigenvalue = rat_field(bj.at("eigenvalue"));
        for (const auto& c : bj.at("cells")) bl.cells.push_back(c.get<int>());
        spec.blocks.push_back(std::move(bl));
    }
    spec.validate();
    return spec;
}

json factored_to_json(const polycore::FactoredPoly& f) {
    json roots = json::array();
    for (const auto& [root, mult] : f.roots)
        roots.push_back({{"root", rat_to_string(root)}, {"mult", mult}});
    return {{"leading", rat_to_string(f.leading)}, {"roots", std::move(roots)}};
}

polycore::FactoredPoly factored_from_json(const json& j) {
    polycore::FactoredPoly f;
    if (j.contains("leading")) f.leading = rat_field(j.at("leading"));
    for (const auto& rj : j.at("roots"))
        f.roots.emplace_back(rat_field(rj.at("root")), rj.at("mult").get<int>());
    return f;
}

polycore::MultiplicitySignature signature_from_json(const json& j) {
    polycore::MultiplicitySignature sig;
    for (const auto& a : j.at("alphas")) sig.alphas.push_back(a.get<int>());
    for (const auto& b : j.at("betas")) sig.betas.push_back(b.get<int>());
    sig.validate();
    return sig;
}

json signature_to_json(const polycore::MultiplicitySignature& sig) {
    return {{"alphas", sig.alphas}, {"betas", sig.betas}};
}

json extension_to_json(const matcore::IntegralExtension& a) {
    json u = json::array(), v = json::array();
    for (const Rat& x : a.u) u.push_back(rat_to_string(x));
    for (const Rat& x : a.v) v.push_back(rat_to_string(x));
    return {{"b", rat_to_string(a.b)},
            {"u", std::move(u)},
            {"v", std::move(v)},
            {"matrix", matrix_to_json(a.assemble())}};
}

json complex_to_json(drawfuns::Complex z) {
    return json::array({z.real(), z.imag()});
}

json cpoly_to_json(const drawfuns::CPoly& p) {
    json out = json::array();
    for (const auto& c : p) out.push_back(complex_to_json(c));
    return out;
}

json factored_cpoly_to_json(const drawfuns::FactoredCPoly& f) {
    json roots = json::array();
    for (const auto& [root, mult] : f.roots)
        roots.push_back({{"root", complex_to_json(root)}, {"mult", mult}});
    return {{"leading", complex_to_json(f.leading)}, {"roots", std::move(roots)}};
}

json tree_to_json(const trees::PlaneTree& t) {
    json colors = json::array();
    for (auto c : t.color) colors.push_back(c == trees::Color::White ? "w" : "b");
    auto [white, black] = valency_sequences(t);
    return {{"encoding", trees::encode(t)}, {"root", t.root},
            {"children", t.children},       {"colors", std::move(colors)},
            {"white_valencies", white},     {"black_valencies", black},
            {"edges", t.edge_count()}};
}

json shabat_witness_to_json(const drawfuns::ShabatWitness& w) {
    json wr = json::array(), br = json::array();
    for (const auto& z : w.white_roots) wr.push_back(complex_to_json(z));
    for (const auto& z : w.black_roots) br.push_back(complex_to_json(z));
    return {{"type", "shabat"},
            {"white_roots", std::move(wr)},
            {"white_mults", w.white_mults},
            {"black_roots", std::move(br)},
            {"black_mults", w.black_mults},
            {"scale", complex_to_json(w.scale)},
            {"residual", w.residual},
            {"P", cpoly_to_json(w.polynomial())}};
}

json conservative_witness_to_json(const drawfuns::ConservativeWitness& w) {
    json cp = json::array(), fp = json::array();
    for (const auto& z : w.critical_points) cp.push_back(complex_to_json(z));
    for (const auto& z : w.free_fixed_points) fp.push_back(complex_to_json(z));
    return {{"type", "conservative"},
            {"critical_points", std::move(cp)},
            {"gammas", w.gammas},
            {"free_fixed_points", std::move(fp)},
            {"scale", complex_to_json(w.scale)},
            {"residual", w.residual},
            {"C", cpoly_to_json(w.C)}};
}

json signature_witness_to_json(const drawfuns::SignatureWitness& w) {
    json S = json::array();
    for (const auto& z : w.S) S.push_back(complex_to_json(z));
    return {{"f", factored_cpoly_to_json(w.f)},
            {"S", std::move(S)},
            {"tree", w.tree},
            {"scale", complex_to_json(w.scale)},
            {"residual", w.residual}};
}

}  // namespace integrax::io
