#ifndef SFP_JSON_IO_HPP
#define SFP_JSON_IO_HPP

#include <json.hpp>

#include "sfp/lifting.hpp"

namespace sfp {

using Json = nlohmann::ordered_json;

template <Field K>
Json to_json(const Poly<K>& p) {
    return p.to_string();
}

template <Field K>
Json to_json(const std::vector<Poly<K>>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(p.to_string());
    return a;
}

inline Json to_json(const CertifiedBounds& b) {
    Json j;
    j["homological"] = b.homological ? Json(*b.homological) : Json(nullptr);
    j["internal"] = b.internal ? Json(*b.internal) : Json(nullptr);
    j["caveat"] = b.caveat;
    return j;
}

inline Json to_json(const TriState& t) {
    Json j;
    j["verdict"] = to_string(t.verdict);
    j["reason"] = t.reason;
    j["certified_bounds"] = to_json(t.bounds);
    return j;
}

/// {"betti": [[i, j, dim]...], "certified_i", "certified_j", "poincare"}.
inline Json to_json(const BettiTable& b) {
    Json j;
    Json rows = Json::array();
    for (const auto& [ij, dim] : b.entries) rows.push_back(Json::array({ij.first, ij.second, dim}));
    j["betti"] = rows;
    j["certified_i"] = b.certified_i;
    j["certified_j"] = b.certified_j;
    j["poincare"] = b.poincare();
    return j;
}

template <Field K>
Json to_json(const AlgebraPtr<K>& A) {
    Json j;
    j["name"] = A->name();
    Json vars = Json::array();
    for (std::size_t i = 0; i < A->nvars(); ++i) vars.push_back(A->names()[i] + "(" + std::to_string(A->weight(i)) + ")");
    j["vars"] = vars;
    j["relations"] = to_json(A->relations());
    j["truncation"] = A->truncation() ? Json(*A->truncation()) : Json(nullptr);
    return j;
}

template <Field K>
Json to_json(const AlgebraMorphism<K>& f) {
    Json j;
    j["source"] = f.source->name();
    j["target"] = f.target->name();
    Json images;
    for (std::size_t i = 0; i < f.images.size(); ++i) images[f.source->names()[i]] = f.images[i].to_string();
    j["images"] = images.is_null() ? Json::object() : images;
    return j;
}

template <Field K>
Json to_json(const DecompositionCertificate<K>& c) {
    Json j;
    j["u_generators"] = to_json(c.u_generators);
    j["I_generators"] = to_json(c.I_generators);
    j["checked_degree"] = c.checked_degree;
    j["verdict"] = to_string(c.verdict.verdict);
    j["reason"] = c.verdict.reason;
    j["failing_degree"] = c.failing_degree ? Json(*c.failing_degree) : Json(nullptr);
    j["witness"] = c.witness ? Json(c.witness->to_string()) : Json(nullptr);
    Json dims = Json::array();
    for (const auto& [u, i] : c.dims) dims.push_back(Json::array({u, i}));
    j["dims"] = dims;
    return j;
}

template <Field K>
Json to_json(const InfeasibilityCertificate<K>& c) {
    Json j;
    j["degree"] = c.degree;
    j["method"] = c.cofactors.empty() ? "groebner" : "cofactors";
    Json unknowns = Json::array();
    for (std::size_t i = 0; i < c.system.meanings.size(); ++i)
        unknowns.push_back(Json::array({c.system.unknowns->names()[i], c.system.meanings[i]}));
    j["unknowns"] = unknowns;
    Json eqs = Json::array();
    for (std::size_t i = 0; i < c.system.equations.size(); ++i) {
        Json e;
        e["origin"] = c.system.origins[i];
        e["equation"] = c.system.equations[i].to_string();
        if (!c.cofactors.empty()) e["cofactor"] = c.cofactors[i].to_string();
        eqs.push_back(e);
    }
    j["equations"] = eqs;
    return j;
}

template <Field K>
Json to_json(const SearchResult<K>& r) {
    Json j;
    j["outcome"] = to_string(r.outcome);
    j["reason"] = r.reason;
    j["bound"] = r.bound;
    j["unknown_count"] = r.unknown_count;
    if (r.found) j["morphism"] = to_json(*r.found);
    if (r.certificate) j["infeasibility"] = to_json(*r.certificate);
    return j;
}

inline Json to_json(const LiftingCheck& c) {
    Json j;
    j["verdict"] = to_string(c.verdict);
    j["reason"] = c.reason;
    j["certified_bounds"] = to_json(c.bounds);
    return j;
}

template <Field K>
Json to_json(const FlatnessCertificate<K>& c) {
    Json j;
    j["morphism"] = to_json(c.morphism);
    j["checked_homological_range"] = c.checked_homological_range;
    j["verdict"] = to_string(c.verdict.verdict);
    j["reason"] = c.verdict.reason;
    if (c.witness) {
        Json w;
        w["homological"] = c.witness->homological;
        w["internal"] = c.witness->internal;
        w["cycle"] = to_json(c.witness->cycle);
        j["witness"] = w;
    }
    return j;
}

/// {"procedure", "inputs", "verdict", "certificate", "certified_bounds"}.
inline Json verdict_document(const std::string& procedure, Json inputs, const std::string& verdict, Json certificate,
                             const CertifiedBounds& bounds) {
    Json j;
    j["procedure"] = procedure;
    j["inputs"] = std::move(inputs);
    j["verdict"] = verdict;
    j["certificate"] = std::move(certificate);
    j["certified_bounds"] = to_json(bounds);
    return j;
}

}  // namespace sfp

#endif  // SFP_JSON_IO_HPP
