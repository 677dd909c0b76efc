#ifndef SFP_RUNNER_HPP
#define SFP_RUNNER_HPP

#include <cstdio>
#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sfp/json_io.hpp"
#include "sfp/manifest.hpp"

#ifndef SFP_VERSION
#define SFP_VERSION "1.0.0"
#endif

namespace sfp {

inline constexpr const char* report_schema = "sfpwb.report/1";

/// Command-line overrides; a set flag replaces the task key of the same name.
struct RunOptions {
    std::optional<int> hdeg;
    std::optional<int> tdeg;
    std::optional<int> bound;
    bool parallel = false;

    std::string canonical() const {
        auto f = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
        return "hdeg=" + f(hdeg) + " tdeg=" + f(tdeg) + " bound=" + f(bound);
    }
};

namespace detail {

template <Field K>
class Session {
  public:
    Session(const Manifest& m, K field, const RunOptions& opt) : m_(m), field_(std::move(field)), opt_(opt) {
        for (const auto& a : m.algebras) algebras_[a.name] = build_algebra(a);
        for (const auto& t : m.actions) actions_.emplace(t.name, build_action(t));
    }

    Json run(const TaskDecl& t) const {
        try {
            Task task{*this, t, Json::object()};
            return task.run();
        } catch (const ManifestError&) {
            throw;
        } catch (const InputError& e) {
            throw ManifestError(t.pos, "task " + t.procedure + ": " + e.what());
        }
    }

  private:
    const Manifest& m_;
    K field_;
    RunOptions opt_;
    std::map<std::string, AlgebraPtr<K>> algebras_;
    std::map<std::string, ActionTable<K>> actions_;

    static SourcePos offset(SourcePos p, std::size_t bytes) {
        p.col += static_cast<int>(bytes);
        return p;
    }

    static Poly<K> parse_at(const Located& v, const RingPtr<K>& ring) {
        try {
            return parse_poly(v.text, ring);
        } catch (const ParseError& e) {
            throw ManifestError(offset(v.pos, e.offset()), e.what());
        }
    }

    AlgebraPtr<K> build_algebra(const AlgebraDecl& a) const {
        std::vector<std::string> names;
        std::vector<int> weights;
        for (const auto& v : a.vars) {
            names.push_back(v.name);
            weights.push_back(v.weight);
        }
        auto ring = make_ring(field_, names, weights);
        std::vector<Poly<K>> rels;
        for (const auto& r : a.rels) {
            Poly<K> p = parse_at(r, ring);
            if (!field_.is_zero(p.constant_term()))
                throw ManifestError(r.pos, "relation '" + r.text +
                                               "' has a nonzero constant term; relations must lie in the ideal of the "
                                               "variables so that the residue field is k");
            if (!p.is_homogeneous()) throw ManifestError(r.pos, "relation '" + r.text + "' is not homogeneous");
            rels.push_back(p);
        }
        try {
            return new_algebra(a.name, ring, rels, a.trunc);
        } catch (const InputError& e) {
            throw ManifestError(a.pos, "algebra " + a.name + ": " + e.what());
        }
    }

    ActionTable<K> build_action(const ActionDecl& d) const {
        auto t = ActionTable<K>::zero(algebras_.at(d.R), algebras_.at(d.S));
        const auto& R = t.R;
        const auto& S = t.S;
        for (const auto& e : d.entries) {
            auto i = R->ring()->index_of(e.r_var);
            auto j = S->ring()->index_of(e.s_var);
            t.entries[*i][*j] = S->normal_form(parse_at(e.value, S->ring()));
        }
        return t;
    }

    /// One task: reads keys on demand and records every value used in `inputs`.
    struct Task {
        const Session& s;
        const TaskDecl& t;
        Json inputs;

        const Located* raw(const std::string& key) const {
            const TaskParam* p = t.find(key);
            return p ? &p->value : nullptr;
        }
        std::optional<int> integer(const std::string& key) {
            std::optional<int> v;
            if (const Located* r = raw(key)) v = parse_int_value(*r);
            if (key == "hdeg" && s.opt_.hdeg) v = s.opt_.hdeg;
            if (key == "tdeg" && s.opt_.tdeg) v = s.opt_.tdeg;
            if (key == "bound" && s.opt_.bound) v = s.opt_.bound;
            return v;
        }
        int integer(const std::string& key, int fallback) {
            int v = integer(key).value_or(fallback);
            inputs[key] = v;
            return v;
        }
        AlgebraPtr<K> algebra(const std::string& key = "algebra") {
            const Located* r = raw(key);
            std::string name = r ? r->text : s.m_.algebras.front().name;
            inputs[key] = name;
            return s.algebras_.at(name);
        }
        const ActionTable<K>& action() {
            const Located* r = raw("action");
            inputs["action"] = r->text;
            return s.actions_.at(r->text);
        }
        std::vector<Poly<K>> polys(const AlgebraPtr<K>& A, const std::string& key) {
            const Located* r = raw(key);
            std::vector<Poly<K>> out;
            Json list = Json::array();
            for (const auto& item : split_list(*r)) {
                out.push_back(A->normal_form(parse_at(item, A->ring())));
                list.push_back(item.text);
            }
            inputs[key] = list;
            return out;
        }
        Poly<K> poly(const AlgebraPtr<K>& A, const std::string& key) {
            const Located* r = raw(key);
            inputs[key] = r->text;
            return A->normal_form(parse_at(*r, A->ring()));
        }
        /// `module = k` or a list of generators of J for the cyclic module A/J.
        std::optional<ModulePresentation<K>> module(const AlgebraPtr<K>& A) {
            const Located* r = raw("module");
            if (!r || r->text == "k") {
                inputs["module"] = "k";
                return std::nullopt;
            }
            return ModulePresentation<K>::cyclic(A, polys(A, "module"));
        }
        AlgebraMorphism<K> morphism(const AlgebraPtr<K>& source, const AlgebraPtr<K>& target,
                                    const std::string& key) {
            auto images = polys(target, key);
            if (images.size() != source->nvars())
                throw ManifestError(raw(key)->pos, "expected " + std::to_string(source->nvars()) + " images, got " +
                                                       std::to_string(images.size()));
            return verify_morphism(make_morphism(source, target, images));
        }
        /// `sub = a, b` (free polynomial ring on the listed homogeneous elements) or
        /// `source = T; images = ...`.
        AlgebraMorphism<K> inclusion(const AlgebraPtr<K>& R) {
            if (raw("source")) {
                if (!raw("images")) throw ManifestError(t.pos, "'source' needs 'images'");
                return morphism(algebra("source"), R, "images");
            }
            if (!raw("sub")) throw ManifestError(t.pos, "task " + t.procedure + " needs 'sub' or 'source'");
            auto gens = polys(R, "sub");
            std::vector<std::string> names;
            std::vector<int> weights;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                auto h = gens[i].homogeneous_degree();
                if (gens[i].is_zero() || !h || *h < 1)
                    throw InputError("'" + gens[i].to_string() + "' is not a nonzero homogeneous element of m");
                std::string name = gens[i].to_string();
                if (!R->ring()->index_of(name)) name = "t" + std::to_string(i + 1);
                names.push_back(name);
                weights.push_back(*h);
            }
            auto T = new_algebra<K>("T", make_ring(R->field(), names, weights), {});
            return verify_morphism(make_morphism(T, R, gens));
        }
        SearchOptions search_options() {
            SearchOptions o;
            o.budget = static_cast<std::size_t>(integer("budget", static_cast<int>(o.budget)));
            return o;
        }
        int tdeg_for(const AlgebraPtr<K>& A, int n) {
            if (auto v = integer("tdeg")) {
                inputs["tdeg"] = *v;
                return *v;
            }
            int d = default_internal_bound(A, n);
            inputs["tdeg"] = d;
            return d;
        }
        static int cap(const AlgebraPtr<K>& A, int d) { return A->truncation() ? std::min(d, *A->truncation()) : d; }

        static Json dims(const AlgebraPtr<K>& A, int d) {
            Json a = Json::array();
            for (int e = 0; e <= d; ++e) a.push_back(A->dim(e));
            return a;
        }

        static Json bare(Json j) {
            j.erase("certified_bounds");
            return j;
        }

        Json doc(const std::string& verdict, Json cert, const CertifiedBounds& b) {
            return verdict_document(t.procedure, inputs, verdict, std::move(cert), b);
        }

        Json run() {
            const std::string& p = t.procedure;
            if (p == "betti") return betti();
            if (p == "homology") return homology();
            if (p == "minimal_generators") return minimal_gens();
            if (p == "flatness") return flatness();
            if (p == "check_action") return check_action_task();
            if (p == "semi_fiber") return semi_fiber();
            if (p == "fiber_product") return fiber();
            if (p == "tensor") return tensor();
            if (p == "trivial_extension") return trivial_ext();
            if (p == "psi") return psi();
            if (p == "universal") return universal();
            if (p == "decomposition") return decomposition();
            if (p == "check_lift") return check_lift();
            if (p == "min_gen_test") return min_gen();
            if (p == "poincare_test") return poincare();
            if (p == "ext2") return ext2();
            if (p == "socle") return socle();
            if (p == "retraction") return retraction();
            if (p == "section") return section();
            if (p == "regular_sequence") return regular();
            if (p == "annihilator_check") return annihilator_check();
            if (p == "mT_generates") return mT();
            if (p == "harness") return harness();
            throw ManifestError(t.pos, "unknown procedure '" + p + "'");
        }

        Json betti() {
            auto R = algebra();
            auto M = module(R);
            int n = integer("hdeg", 4);
            int d = tdeg_for(R, n);
            auto res = minimal_free_resolution(R, M ? *M : ModulePresentation<K>::residue_field(R), n, d);
            CertifiedBounds b{n, d, "Betti numbers beta_ij certified for i <= " + std::to_string(n) + " and j <= " +
                                        std::to_string(d)};
            if (R->truncation()) b.caveat += "; computed over the truncation at degree " + std::to_string(*R->truncation());
            return doc("Computed", to_json(res.betti), b);
        }

        Json homology() {
            auto R = algebra();
            auto cycle = polys(R, "cycle");
            int len = integer("length", 4);
            int d = tdeg_for(R, len);
            auto C = verify_complex(periodic_complex(R, cycle, len));
            Json h = Json::array();
            for (int i = 0; i <= len; ++i) h.push_back(Json::array({i, homology_dims(C, static_cast<std::size_t>(i), d)}));
            Json cert;
            cert["ranks"] = C.ranks();
            cert["minimal"] = C.minimal;
            cert["homology"] = h;
            return doc("Computed", cert, {len, d, "homology dimensions per internal degree <= " + std::to_string(d)});
        }

        Json minimal_gens() {
            auto R = algebra();
            auto mg = minimal_generators(R, polys(R, "ideal"));
            Json cert;
            cert["generators"] = to_json(mg.generators);
            cert["nu"] = mg.nu;
            return doc("Computed", cert, {});
        }

        Json flatness() {
            auto R = algebra();
            auto phi = morphism(algebra("source"), R, "images");
            int n = integer("hdeg", 2);
            auto d = integer("tdeg");
            if (d) inputs["tdeg"] = *d;
            auto c = flatness_certificate(phi, n, d);
            return doc(to_string(c.verdict.verdict), to_json(c), c.verdict.bounds);
        }

        int action_degree(const ActionTable<K>& a) {
            int fallback = 6;
            if (a.S->truncation()) fallback = std::min(fallback, *a.S->truncation());
            return integer("tdeg", fallback);
        }

        Json check_action_task() {
            auto a = action();
            int d = action_degree(a);
            auto v = check_action(a, d);
            Json cert;
            cert["violation"] = v ? Json(v->message()) : Json(nullptr);
            return doc(v ? "Refuted" : "Proved", cert, {std::nullopt, d, "identities checked in total degree <= " + std::to_string(d)});
        }

        Json semi_fiber() {
            auto a = action();
            int d = action_degree(a);
            auto P = semi_fiber_product(validate_action(a, d), d);
            Json cert;
            cert["algebra"] = to_json(P.A);
            cert["dims"] = dims(P.A, d);
            cert["embed_R"] = to_json(P.embed_R);
            cert["embed_S"] = to_json(P.embed_S);
            cert["decomposition"] = to_json(P.certificate);
            return doc(to_string(P.certificate.verdict.verdict), cert, {std::nullopt, P.certificate.checked_degree, ""});
        }

        Json fiber() {
            auto L = algebra("left");
            auto R = algebra("right");
            int d = integer("tdeg", 6);
            auto fp = fiber_product(L, R).first;
            auto semi = semi_fiber_product(validate_action(ActionTable<K>::zero(L, R), d), d);
            Json cert;
            cert["algebra"] = to_json(fp);
            cert["dims"] = dims(fp, d);
            cert["zero_action_dims"] = dims(semi.A, d);
            bool same = cert["dims"] == cert["zero_action_dims"];
            cert["isomorphic_to_zero_action"] = same;
            return doc(same ? "Proved" : "Refuted", cert,
                       {std::nullopt, d, "degreewise dimensions compared for internal degree <= " + std::to_string(d)});
        }

        Json tensor() {
            auto L = algebra("left");
            auto R = algebra("right");
            int d = integer("tdeg", 6);
            auto tp = tensor_algebra(L, R, d);
            Json cert;
            cert["algebra"] = to_json(tp.A);
            cert["dims"] = dims(tp.A, cap(tp.A, d));
            cert["decomposition"] = to_json(tp.certificate);
            return doc(to_string(tp.certificate.verdict.verdict), cert, {std::nullopt, tp.certificate.checked_degree, ""});
        }

        Json trivial_ext() {
            auto R = algebra();
            auto M = module(R);
            int shift = integer("shift", 1);
            int d = integer("tdeg", 6);
            auto A = trivial_extension(R, M ? *M : ModulePresentation<K>::residue_field(R), shift);
            Json cert;
            cert["algebra"] = to_json(A);
            cert["dims"] = dims(A, cap(A, d));
            return doc("Computed", cert, {std::nullopt, d, ""});
        }

        Json psi() {
            auto S = algebra();
            auto f = morphism(algebra("source"), S, "images");
            int d = integer("tdeg", 6);
            auto r = psi_isomorphism(f, d);
            Json cert;
            cert["semi_fiber"] = to_json(r.semi.A);
            cert["fiber_product"] = to_json(r.fiber);
            cert["psi"] = to_json(r.psi);
            cert["inverse"] = to_json(r.inverse);
            cert["reason"] = r.verdict.reason;
            return doc(to_string(r.verdict.verdict), cert, r.verdict.bounds);
        }

        Json universal() {
            auto a = action();
            auto T = algebra("target");
            int d = action_degree(a);
            auto P = semi_fiber_product(validate_action(a, d), d);
            auto f = morphism(a.R, T, "f");
            auto g = polys(T, "g");
            Json cert;
            try {
                auto phi = universal_morphism(P, f, g);
                cert["morphism"] = to_json(phi);
                return doc("Proved", cert, {std::nullopt, d, ""});
            } catch (const InputError& e) {
                cert["reason"] = e.what();
                return doc("Refuted", cert, {std::nullopt, d, ""});
            }
        }

        Json decomposition() {
            auto A = algebra();
            auto u = polys(A, "u");
            auto I = polys(A, "ideal");
            int d = integer("tdeg", 8);
            auto c = decomposition_verify(A, u, I, d);
            return doc(to_string(c.verdict.verdict), to_json(c), {std::nullopt, c.checked_degree, c.verdict.bounds.caveat});
        }

        Json check_lift() {
            auto R = algebra();
            auto I = polys(R, "ideal");
            auto cycle = polys(R, "cycle");
            int n = integer("hdeg", 4);
            auto d = integer("tdeg");
            auto P = make_lifting_problem(R, I, n, d);
            inputs["tdeg"] = P.d;
            auto c = check_lifting(P, periodic_complex(R, cycle, n + 1));
            Json cert = bare(to_json(c));
            cert["resolution_ranks"] = P.F.ranks();
            return doc(to_string(c.verdict), cert, c.bounds);
        }

        Json min_gen() {
            auto R = algebra();
            auto v = thm_minimal_generator_test(R, polys(R, "ideal"));
            return doc(to_string(v.verdict), bare(to_json(v)), v.bounds);
        }

        Json poincare() {
            auto R = algebra();
            auto I = polys(R, "ideal");
            int n = integer("hdeg", 4);
            auto d = integer("tdeg");
            std::optional<ModulePresentation<K>> M;
            if (raw("module") && raw("module")->text != "k") M = module(quotient_algebra(R, I));
            else inputs["module"] = "k";
            auto pf = poincare_factorization_test(R, I, n, M, d);
            inputs["tdeg"] = pf.d;
            Json cert;
            cert["over_R"] = pf.over_R;
            cert["over_Rbar"] = pf.over_Rbar;
            cert["quotient"] = pf.quotient;
            cert["product"] = pf.product;
            cert["first_mismatch"] = pf.first_mismatch ? Json(*pf.first_mismatch) : Json(nullptr);
            cert["nu"] = Json{{"R", pf.nu_R}, {"Rbar", pf.nu_Rbar}, {"I", pf.nu_I}, {"identity", pf.nu_identity}};
            cert["reason"] = pf.verdict.reason;
            return doc(to_string(pf.verdict.verdict), cert, pf.verdict.bounds);
        }

        Json ext2() {
            auto R = algebra();
            auto Rbar = R;
            if (raw("ideal")) Rbar = quotient_algebra(R, polys(R, "ideal"));
            auto v = ext2_sufficiency(Rbar);
            return doc(to_string(v.verdict), bare(to_json(v)), v.bounds);
        }

        Json socle() {
            auto R = algebra();
            auto I = polys(R, "ideal");
            auto d = integer("tdeg");
            auto s = socle_case_decide(R, I, d, search_options());
            inputs["tdeg"] = s.d;
            std::string verdict = s.verdict.is_proved() ? "Liftable" : s.verdict.is_refuted() ? "NotLiftable" : "Unknown";
            Json cert;
            cert["reason"] = s.verdict.reason;
            cert["generator_test"] = to_json(s.generator_test);
            cert["section"] = s.section ? to_json(*s.section) : Json(nullptr);
            cert["decomposition"] = s.decomposition ? to_json(*s.decomposition) : Json(nullptr);
            cert["model"] = s.model ? to_json(*s.model) : Json(nullptr);
            Json md = Json::array();
            for (const auto& [a, b] : s.model_dims) md.push_back(Json::array({a, b}));
            cert["model_dims"] = md;
            return doc(verdict, cert, s.verdict.bounds);
        }

        Json retraction() {
            auto R = algebra();
            auto inc = inclusion(R);
            int d = integer("bound", 10);
            auto r = retraction_search(inc, d, search_options());
            Json cert = to_json(r);
            cert["inclusion"] = to_json(inc);
            return doc(to_string(r.outcome), cert, {std::nullopt, d, "images searched up to internal degree " + std::to_string(d)});
        }

        Json section() {
            auto R = algebra();
            auto I = polys(R, "ideal");
            int d = integer("bound", 10);
            auto pi = quotient_map(R, quotient_algebra(R, I));
            auto r = section_search(pi, d, search_options());
            return doc(to_string(r.outcome), to_json(r), {std::nullopt, d, "images searched up to internal degree " + std::to_string(d)});
        }

        Json regular() {
            auto R = algebra();
            auto elems = polys(R, "elems");
            int d = integer("tdeg", 8);
            auto v = regular_sequence_check(R, elems, d);
            return doc(to_string(v.verdict), bare(to_json(v)), v.bounds);
        }

        Json annihilator_check() {
            auto R = algebra();
            auto x = poly(R, "element");
            int n = integer("hdeg", 2);
            auto c = annihilator_hypothesis_check(R, x, n);
            Json cert;
            cert["reason"] = c.verdict.reason;
            cert["annihilator"] = to_json(c.annihilator);
            cert["phi"] = c.phi ? to_json(*c.phi) : Json(nullptr);
            cert["flatness"] = to_json(c.flatness);
            return doc(to_string(c.verdict.verdict), cert, c.verdict.bounds);
        }

        Json mT() {
            auto R = algebra();
            auto phi = morphism(algebra("source"), R, "images");
            auto v = mT_generates_check(phi);
            return doc(to_string(v.verdict), bare(to_json(v)), v.bounds);
        }

        Json harness() {
            auto R = algebra();
            auto phi = inclusion(R);
            int d = integer("bound", 8);
            int n = integer("hdeg", 3);
            auto h = main_theorem_harness(phi, d, n, search_options());
            Json cert;
            cert["flatness"] = to_json(h.flatness);
            cert["Rbar"] = to_json(h.Rbar);
            cert["lifting"] = to_json(h.lifting);
            cert["retraction"] = to_json(h.retraction);
            cert["decomposition"] = to_json(h.decomposition);
            cert["candidate"] = h.candidate ? to_json(*h.candidate) : Json(nullptr);
            cert["kernel"] = to_json(h.kernel);
            cert["conclusion"] = h.conclusion;
            cert["inconsistency"] = h.inconsistency;
            return doc(h.consistent ? "Consistent" : "Inconsistent", cert,
                       {n, d, "verdicts hold in internal degrees <= " + std::to_string(d)});
        }
    };
};

template <Field K>
Json run_tasks(const Manifest& m, K field, const RunOptions& opt) {
    Session<K> session(m, std::move(field), opt);
    Json tasks = Json::array();
    if (opt.parallel) {
        std::vector<std::future<Json>> jobs;
        for (const auto& t : m.tasks) jobs.push_back(std::async(std::launch::async, [&session, &t] { return session.run(t); }));
        for (auto& j : jobs) tasks.push_back(j.get());
    } else {
        for (const auto& t : m.tasks) tasks.push_back(session.run(t));
    }
    return tasks;
}

}  // namespace detail

/// The report document. Byte-identical for identical manifests, options and version.
inline Json run_manifest(const Manifest& m, const RunOptions& opt = {}) {
    Json doc;
    doc["schema"] = report_schema;
    doc["tool_version"] = SFP_VERSION;
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a(pretty_print(m) + "\n" + opt.canonical())));
    doc["input_hash"] = std::string("fnv1a64:") + hash;
    doc["field"] = m.field_name();
    doc["options"] = Json{{"hdeg", opt.hdeg ? Json(*opt.hdeg) : Json(nullptr)},
                          {"tdeg", opt.tdeg ? Json(*opt.tdeg) : Json(nullptr)},
                          {"bound", opt.bound ? Json(*opt.bound) : Json(nullptr)}};
    if (m.prime)
        doc["tasks"] = detail::run_tasks(m, PrimeField(*m.prime), opt);
    else
        doc["tasks"] = detail::run_tasks(m, RationalField(), opt);
    return doc;
}

namespace detail {

inline std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    if (v.is_array()) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : " ") + (x.is_array() ? "(" + scalar_text(x) + ")" : scalar_text(x));
        return s;
    }
    return v.dump();
}

inline void flatten(const Json& v, const std::string& prefix, std::string& out) {
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
        return;
    }
    if (v.is_array() && !v.empty() && v.front().is_object()) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
        return;
    }
    out += "  " + prefix + ": " + scalar_text(v) + "\n";
}

/// Rows j - i, columns i, as in the usual Betti diagram.
inline std::string betti_diagram(const Json& cert) {
    int n = cert["certified_i"].get<int>();
    std::map<int, std::map<int, std::size_t>> rows;
    for (const auto& e : cert["betti"]) rows[e[1].get<int>() - e[0].get<int>()][e[0].get<int>()] = e[2].get<std::size_t>();
    std::ostringstream s;
    s << "  betti (i <= " << n << ", j <= " << cert["certified_j"].get<int>() << ")\n        ";
    for (int i = 0; i <= n; ++i) s << " " << i;
    s << "\n  total:";
    for (const auto& c : cert["poincare"]) s << " " << c.get<std::size_t>();
    s << "\n";
    for (const auto& [r, cols] : rows) {
        std::string label = std::to_string(r) + ":";
        s << "  " << std::string(label.size() < 6 ? 6 - label.size() : 0, ' ') << label;
        for (int i = 0; i <= n; ++i) {
            auto it = cols.find(i);
            s << " " << (it == cols.end() ? std::string(".") : std::to_string(it->second));
        }
        s << "\n";
    }
    return s.str();
}

}  // namespace detail

/// Plain-text rendering of a report document.
inline std::string render_text(const Json& report) {
    std::string out = std::string(report["schema"].get<std::string>()) + " " + report["tool_version"].get<std::string>() +
                      " " + report["input_hash"].get<std::string>() + "\nfield " + report["field"].get<std::string>() + "\n";
    for (const auto& t : report["tasks"]) {
        out += "\ntask " + t["procedure"].get<std::string>() + ": " + t["verdict"].get<std::string>() + "\n";
        detail::flatten(t["inputs"], "inputs", out);
        if (t["procedure"] == "betti") out += detail::betti_diagram(t["certificate"]);
        else detail::flatten(t["certificate"], "certificate", out);
        detail::flatten(t["certified_bounds"], "certified_bounds", out);
    }
    return out;
}

}  // namespace sfp

#endif  // SFP_RUNNER_HPP
