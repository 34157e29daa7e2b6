#pragma once

#include <json.hpp>

#include "integrax/drawfuns.hpp"
#include "integrax/matcore.hpp"
#include "integrax/polycore.hpp"
#include "integrax/rational.hpp"
#include "integrax/trees.hpp"

// JSON wire formats: rationals as "p/q" strings, polynomials as coefficient
// arrays (constant term first), matrices as row arrays, complex numbers as
// [re, im] pairs.
namespace integrax::io {

using nlohmann::json;

json poly_to_json(const polycore::RatPoly& p);
polycore::RatPoly poly_from_json(const json& j);

json matrix_to_json(const matcore::RatMatrix& m);
matcore::RatMatrix matrix_from_json(const json& j);

json jordan_to_json(const matcore::JordanSpec& spec);
matcore::JordanSpec jordan_from_json(const json& j);

json factored_to_json(const polycore::FactoredPoly& f);
polycore::FactoredPoly factored_from_json(const json& j);

polycore::MultiplicitySignature signature_from_json(const json& j);
json signature_to_json(const polycore::MultiplicitySignature& sig);

json extension_to_json(const matcore::IntegralExtension& a);

json complex_to_json(drawfuns::Complex z);
json cpoly_to_json(const drawfuns::CPoly& p);
json factored_cpoly_to_json(const drawfuns::FactoredCPoly& f);

json tree_to_json(const trees::PlaneTree& t);

json shabat_witness_to_json(const drawfuns::ShabatWitness& w);
json conservative_witness_to_json(const drawfuns::ConservativeWitness& w);
json signature_witness_to_json(const drawfuns::SignatureWitness& w);

}  // namespace integrax::io
