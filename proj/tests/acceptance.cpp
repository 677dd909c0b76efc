// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "sfp/runner.hpp"

using namespace sfp;

namespace {

using K = PrimeField;
using P = Poly<K>;

AlgebraPtr<K> alg(std::string name, std::vector<std::string> vars, std::vector<int> w, std::vector<std::string> rels,
                  std::optional<int> trunc = std::nullopt) {
    return new_algebra<K>(std::move(name), K(), std::move(vars), std::move(w), rels, trunc);
}

std::vector<P> polys(const AlgebraPtr<K>& A, std::vector<std::string> ss) {
    std::vector<P> out;
    for (const auto& s : ss) out.push_back(parse_poly(s, A->ring()));
    return out;
}

using Series = std::vector<std::size_t>;

/// Truncated product of power series, computed directly from the coefficients.
Series convolve(const Series& a, const Series& b, std::size_t n) {
    Series c(n + 1, 0);
    for (std::size_t i = 0; i <= n && i < a.size(); ++i)
        for (std::size_t j = 0; i + j <= n && j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

/// Coefficients of (1 + t)/(1 - t) up to t^n.
Series one_plus_t_over_one_minus_t(std::size_t n) {
    Series s(n + 1, 2);
    s[0] = 1;
    return s;
}

struct Check {
    std::vector<std::string> failures;
    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

FreeComplex<K> random_complex(const AlgebraPtr<K>& R, std::mt19937& rng, int d) {
    std::size_t r0 = 1 + rng() % 2, r1 = 1 + rng() % 2;
    ModulePresentation<K> M{std::vector<int>(r0, 0), {}};
    for (std::size_t c = 0; c < r1; ++c) {
        int deg = 1 + static_cast<int>(rng() % 2);
        std::vector<P> col;
        for (std::size_t r = 0; r < r0; ++r) {
            std::vector<Term<K>> terms;
            for (const auto& m : R->basis(deg))
                if (rng() % 2) terms.push_back({m, R->field().random(rng)});
            col.push_back(P::from_terms(R->ring(), terms));
        }
        M.relations.push_back(col);
    }
    auto F = minimal_free_resolution(R, M, 2, d).complex;
    if (rng() % 2 && F.rank(2) > 0) {
        std::size_t drop = rng() % F.rank(2);
        PolyMatrix<K> d2(R, F.rank(1), 0);
        std::vector<int> s2;
        for (std::size_t c = 0; c < F.rank(2); ++c)
            if (c != drop) {
                d2.append_column(F.d(2).column(c));
                s2.push_back(F.shifts[2][c]);
            }
        F.diffs[1] = d2;
        F.shifts[2] = s2;
        F = verify_complex(F);
    }
    return F;
}

P random_element(const AlgebraPtr<K>& A, std::mt19937& rng, int from, int to) {
    P p = A->zero();
    for (int e = from; e <= to; ++e)
        for (const auto& m : A->basis(e)) p += P::monomial(A->ring(), m, A->field().random(rng));
    return p;
}

bool all_zero(const std::vector<std::size_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::size_t x) { return x == 0; });
}

void criterion1(Check& c) {
    auto R = alg("R", {"x", "y"}, {1, 1}, {"x*y"});
    auto res = minimal_free_resolution(R, ModulePresentation<K>::residue_field(R), 4, 8);
    Series beta = res.betti.poincare();
    c.require(beta == Series({1, 2, 2, 2, 2}), "beta over k[x,y]/(xy) is not (1,2,2,2,2)");
    c.require(beta == one_plus_t_over_one_minus_t(4), "beta disagrees with (1+t)/(1-t)");
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 8; ++j)
            if (j != i) c.require(res.betti.at(i, j) == 0, "off-diagonal Betti entry");
    auto pf = poincare_factorization_test(R, polys(R, {"x - y"}), 4, std::optional<ModulePresentation<K>>{}, 8);
    c.require(convolve(pf.over_Rbar, pf.quotient, 4) == beta, "convolution oracle disagrees with the resolution");
}

void criterion2(Check& c) {
    auto R = alg("R", {"x", "y"}, {1, 1}, {"x*y"});
    auto pf = poincare_factorization_test(R, polys(R, {"x - y"}), 4);
    c.require(pf.over_R == Series({1, 2, 2, 2, 2}), "P^R_k != (1,2,2,2,2)");
    c.require(pf.over_Rbar == Series({1, 1, 1, 1, 1}), "P^Rbar_k != (1,1,1,1,1)");
    c.require(pf.quotient == Series({1, 1, 0, 0, 0}), "P^R_Rbar != (1,1,0,0,0)");
    c.require(convolve(pf.over_Rbar, pf.quotient, 4) == pf.over_R, "factorization fails");
    c.require(pf.product == pf.over_R && !pf.first_mismatch, "procedure reports a mismatch");
}

void criterion3(Check& c) {
    auto R = alg("R", {"x", "y"}, {1, 1}, {"x*y"});
    auto P3 = make_lifting_problem(R, polys(R, {"x - y"}), 4);
    c.require(check_lifting(P3, periodic_complex(R, polys(R, {"x", "y"}), 5)).verdict == LiftingVerdict::Verified,
              "(x, y, x, ...) not verified");
    c.require(check_lifting(P3, periodic_complex(R, polys(R, {"y", "x"}), 5)).verdict == LiftingVerdict::Verified,
              "(y, x, y, ...) not verified");
    auto bad = check_lifting(P3, periodic_complex(R, polys(R, {"x"}), 5));
    c.require(bad.verdict == LiftingVerdict::Rejected, "constant-x candidate not rejected");
    c.require(bad.reason.find("not a complex") != std::string::npos && bad.reason.find("x^2") != std::string::npos,
              "constant-x rejection does not cite d^2 = x^2 != 0: " + bad.reason);
}

void criterion4(Check& c) {
    auto A = alg("A", {"x"}, {1}, {});
    c.require(thm_minimal_generator_test(A, polys(A, {"x^2"})).is_refuted(), "k[x], (x^2) not refuted");
    auto C = alg("R", {"x", "y"}, {3, 2}, {"x^2 - y^3"});
    auto I = polys(C, {"y"});
    c.require(thm_minimal_generator_test(C, I).is_unknown(), "cusp generator test not inconclusive");
    c.require(poincare_factorization_test(C, I, 4).verdict.is_unknown(), "cusp Poincare test not inconclusive");
    auto T = alg("T", {"y"}, {2}, {});
    auto inc = verify_morphism(make_morphism(T, C, I));
    auto r = retraction_search(inc, 12);
    c.require(r.outcome == SearchOutcome::NoneExists, "cusp retraction search is " + to_string(r.outcome));
    c.require(r.certificate && replay_certificate(retraction_problem(inc, 12), *r.certificate),
              "cusp certificate does not replay");
    c.require(r.certificate && certificate_is_inconsistent(*r.certificate), "cusp certificate is not a contradiction");
}

void criterion5(Check& c) {
    auto R = alg("R", {"x", "y"}, {1, 1}, {"x*y"});
    auto I = polys(R, {"x - y"});
    auto pi = quotient_map(R, quotient_algebra(R, I));
    auto s = section_search(pi, 6);
    c.require(s.outcome == SearchOutcome::NoneExists, "section search is " + to_string(s.outcome));
    c.require(s.certificate && replay_certificate(section_problem(pi, 6), *s.certificate), "certificate does not replay");
    auto P5 = make_lifting_problem(R, I, 4);
    c.require(check_lifting(P5, periodic_complex(R, polys(R, {"x", "y"}), 5)).verdict == LiftingVerdict::Verified,
              "the same problem is not liftable");
}

void criterion6(Check& c) {
    auto R = alg("R", {"x", "y"}, {1, 1}, {"x*y", "y^2"});
    auto s = socle_case_decide(R, polys(R, {"y"}), 8);
    c.require(s.verdict.is_proved(), "socle case not liftable: " + s.verdict.reason);
    c.require(s.section.has_value(), "no section produced");
    if (s.section) {
        auto pi = quotient_map(R, s.section->source);
        c.require(same_morphism(compose(pi, *s.section), identity_morphism(s.section->source)),
                  "section does not split pi");
    }
    c.require(s.decomposition && s.decomposition->verdict.is_proved() && s.decomposition->checked_degree == 8,
              "decomposition not verified to degree 8");
    if (s.decomposition) {
        auto again = decomposition_verify(R, s.decomposition->u_generators, s.decomposition->I_generators, 8);
        c.require(again.verdict.is_proved(), "decomposition does not re-verify");
    }
    auto A = alg("A", {"x"}, {1}, {});
    bool rejected = false;
    try {
        socle_case_decide(A, polys(A, {"x^2"}));
    } catch (const InputError& e) {
        rejected = std::string(e.what()).find("m_R*I != 0") != std::string::npos;
    }
    c.require(rejected, "precondition m_R*I = 0 not rejected for (x^2) over k[x]");
}

void criterion7(Check& c) {
    auto R = alg("R", {"x", "y"}, {1, 1}, {"x^3", "y^2"});
    auto hyp = annihilator_hypothesis_check(R, polys(R, {"x"})[0], 2);
    c.require(hyp.verdict.is_proved() && hyp.flatness.is_proved() && hyp.phi, "flatness hypothesis not proved");
    if (!hyp.phi) return;
    auto h = main_theorem_harness(*hyp.phi, 6, 3);
    c.require(h.flatness.verdict.is_proved(), "flatness certificate not proved");
    c.require(h.lifting.is_proved(), "(i) not positive: " + h.lifting.reason);
    c.require(h.retraction.outcome == SearchOutcome::Found, "(ii) not positive");
    c.require(h.decomposition.is_proved(), "(iii) not positive: " + h.decomposition.reason);
    c.require(h.consistent, "inconsistent: " + h.inconsistency);

    auto C = alg("C", {"x", "y"}, {3, 2}, {"x^2 - y^3"});
    auto Ty = alg("T", {"y"}, {2}, {});
    auto k = alg("k", {}, {}, {});
    auto T3 = alg("T", {"x"}, {1}, {"x^3"});
    auto B = alg("B", {"x", "y"}, {1, 1}, {"y^2 - x*y"});
    auto Tt = alg("T", {"t"}, {1}, {});
    std::vector<AlgebraMorphism<K>> fixtures{
        verify_morphism(make_morphism(T3, R, polys(R, {"x"}))),
        verify_morphism(make_morphism(Ty, C, polys(C, {"y"}))),
        verify_morphism(make_morphism(k, R, {})),
        verify_morphism(make_morphism(Tt, B, polys(B, {"x"}))),
    };
    for (const auto& phi : fixtures) {
        auto r = main_theorem_harness(phi, 8, 3);
        c.require(r.consistent, phi.target->describe() + ": " + r.inconsistency);
        std::vector<Verdict> definitive;
        for (Verdict v : {r.lifting.verdict, r.decomposition.verdict})
            if (v != Verdict::Unknown) definitive.push_back(v);
        if (r.retraction.outcome != SearchOutcome::Unknown)
            definitive.push_back(r.retraction.outcome == SearchOutcome::Found ? Verdict::Proved : Verdict::Refuted);
        for (std::size_t i = 1; i < definitive.size(); ++i)
            c.require(definitive[i] == definitive[0], phi.target->describe() + ": definitive verdicts disagree");
    }
}

void criterion8(Check& c) {
    struct Pair {
        AlgebraPtr<K> T, R;
        std::vector<std::string> images;
    };
    std::vector<Pair> pairs{
        {alg("T", {"t"}, {1}, {"t^3"}), alg("R", {"x", "y"}, {1, 1}, {"x^3", "y^2"}), {"x"}},
        {alg("T", {"t"}, {1}, {}), alg("R", {"x", "y"}, {1, 1}, {"y^2"}), {"x"}},
        {alg("T", {"t"}, {1}, {}), alg("R", {"x", "y"}, {1, 1}, {"y^2 - x*y"}), {"x"}},
    };
    std::mt19937 rng(8);
    const int d = 5;
    int tested = 0;
    for (const auto& pr : pairs) {
        auto imgs = polys(pr.R, pr.images);
        auto f = verify_morphism(make_morphism(pr.T, pr.R, imgs));
        if (!flatness_certificate(f, 3).verdict.is_proved()) {
            c.require(false, pr.R->describe() + " is not certified flat");
            continue;
        }
        auto q = quotient_map(pr.R, quotient_algebra(pr.R, imgs));
        for (int trial = 0; trial < 100; ++trial) {
            auto F = random_complex(pr.R, rng, d);
            auto Fk = base_change(F, q);
            for (std::size_t n = 0; n <= 1; ++n) {
                if (!all_zero(homology_dims(Fk, n, d))) continue;
                ++tested;
                c.require(all_zero(homology_dims(F, n, d)),
                          pr.R->describe() + ": counterexample in trial " + std::to_string(trial));
            }
        }
    }
    c.require(tested > 0, "no complex had vanishing fibre homology");
}

void criterion9(Check& c) {
    std::vector<ActionTable<K>> tables;
    {
        auto R = alg("R", {"x"}, {1}, {"x^2"});
        auto S = alg("S", {"y"}, {1}, {"y^3"});
        tables.push_back(validate_action(ActionTable<K>::zero(R, S), 6));
    }
    {
        auto R = alg("R", {"x", "z"}, {1, 2}, {"x^3"});
        auto S = alg("S", {"y", "w"}, {1, 1}, {"y^2", "w^2"});
        auto f = verify_morphism(make_morphism(R, S, polys(S, {"y + w", "y*w"})));
        tables.push_back(validate_action(ActionTable<K>::induced(f), 6));
    }
    tables.push_back(validate_action(monomial_curve_avatar(K(), 6), 6));
    std::mt19937 rng(9);
    for (const auto& t : tables) {
        SemiFiberRing<K> ring(t);
        auto rnd = [&] {
            auto l = P::constant(t.R->ring(), t.R->field().random(rng));
            return ring.make(l + random_element(t.R, rng, 1, 3), random_element(t.S, rng, 1, 3));
        };
        auto one = ring.one();
        bool ok = true;
        for (int i = 0; i < 500 && ok; ++i) {
            auto a = rnd(), b = rnd(), x = rnd();
            ok = ring.mul(ring.mul(a, b), x) == ring.mul(a, ring.mul(b, x)) && ring.mul(a, b) == ring.mul(b, a) &&
                 ring.mul(a, ring.add(b, x)) == ring.add(ring.mul(a, b), ring.mul(a, x)) && ring.mul(one, a) == a;
        }
        c.require(ok, "ring axiom fails for " + t.R->describe() + " on " + t.S->describe());
    }
    auto R = alg("R", {"x", "z"}, {1, 1}, {"x*z", "z^2"});
    auto S = alg("S", {"y"}, {2}, {"y^3"});
    auto semi = semi_fiber_product(validate_action(ActionTable<K>::zero(R, S), 8));
    auto fp = fiber_product(R, S).first;
    std::vector<P> to_fp, from_fp;
    for (std::size_t i = 0; i < semi.A->nvars(); ++i) {
        to_fp.push_back(P::variable(fp->ring(), i));
        from_fp.push_back(P::variable(semi.A->ring(), i));
    }
    auto f = verify_morphism(make_morphism(semi.A, fp, to_fp));
    auto g = verify_morphism(make_morphism(fp, semi.A, from_fp));
    for (int e = 0; e <= 8; ++e) {
        c.require(semi.A->dim(e) == fp->dim(e), "dimension differs in degree " + std::to_string(e));
        for (const auto& m : semi.A->basis(e)) {
            auto p = P::monomial(semi.A->ring(), m, K().one());
            c.require(g.apply(f.apply(p)) == p, "map is not bijective in degree " + std::to_string(e));
        }
    }
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void criterion10(Check& c) {
    std::filesystem::path dir = SFP_CORPUS_DIR;
    std::vector<std::filesystem::path> manifests;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".sfp") manifests.push_back(e.path());
    std::sort(manifests.begin(), manifests.end());
    c.require(!manifests.empty(), "empty corpus");
    for (const auto& p : manifests) {
        auto m = parse_manifest(slurp(p));
        std::string first = run_manifest(m).dump(2) + "\n";
        std::string second = run_manifest(m).dump(2) + "\n";
        RunOptions par;
        par.parallel = true;
        std::string third = run_manifest(m, par).dump(2) + "\n";
        c.require(first == second && first == third, p.filename().string() + " is not reproducible");
        auto golden = dir / "golden" / (p.stem().string() + ".json");
        c.require(std::filesystem::exists(golden) && slurp(golden) == first,
                  p.filename().string() + " differs from its golden report");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"fiber-product Betti numbers (1,2,2,2,2) with convolution oracle", criterion1},
        {"Poincare factorization (1,2,2,2,2) = (1,1,1,1,1)*(1,1,0,0,0)", criterion2},
        {"alternating candidates verified, constant-x rejected at d^2 != 0", criterion3},
        {"non-liftability: (x^2) refuted; cusp inconclusive then NoneExists at bound 12", criterion4},
        {"section nonexistence with replayable certificate while liftable", criterion5},
        {"socle case liftable with section and decomposition to degree 8; precondition enforced", criterion6},
        {"harness on k[x]/(x^3) -> k[x,y]/(x^3,y^2) positive and consistent on all fixtures", criterion7},
        {"fibre homology vanishing implies homology vanishing on 100 random complexes per pair", criterion8},
        {"semi-fiber ring axioms on 500 random triples; zero action matches fiber product", criterion9},
        {"corpus reports byte-identical across runs and with goldens", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        bool ok = c.failures.empty();
        failed += ok ? 0 : 1;
        std::cout << "criterion " << (i + 1) << ": " << (ok ? "PASS" : "FAIL") << "  " << criteria[i].first << "\n";
        for (const auto& f : c.failures) std::cout << "    " << f << "\n";
    }
    return failed ? 1 : 0;
}
