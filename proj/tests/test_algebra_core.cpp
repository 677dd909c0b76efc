#include <gtest/gtest.h>

#include <random>

#include "sfp/algebra.hpp"

using namespace sfp;

namespace {

using K = PrimeField;
using P = Poly<K>;
using Elem = AlgebraElement<K>;

AlgebraPtr<K> alg(std::vector<std::string> vars, std::vector<int> w, std::vector<std::string> rels,
                  std::optional<int> trunc = std::nullopt) {
    return new_algebra<K>("A", K(), std::move(vars), std::move(w), rels, trunc);
}

P in(const AlgebraPtr<K>& A, const std::string& s) { return parse_poly(s, A->ring()); }

P random_poly(const AlgebraPtr<K>& A, std::mt19937& rng, int maxdeg) {
    std::vector<Term<K>> terms;
    std::uniform_int_distribution<int> coin(0, 2);
    for (int d = 0; d <= maxdeg; ++d)
        for (const auto& m : A->ring()->monomials_of_degree(d))
            if (coin(rng) == 0) terms.push_back({m, A->field().random(rng)});
    return P::from_terms(A->ring(), std::move(terms));
}

/// dim I/mI as sum over degrees of dim I_e - dim (mI)_e, both from raw spans.
std::size_t nu_by_spans(const AlgebraPtr<K>& A, const std::vector<P>& gens, int maxdeg) {
    std::size_t total = 0;
    for (int e = 0; e <= maxdeg; ++e) {
        EchelonSpan<K> whole(A->field(), A->dim(e)), inner(A->field(), A->dim(e));
        for (const auto& g : gens) {
            int d = *g.homogeneous_degree();
            for (int s = 0; s <= e - d; ++s)
                for (const auto& mu : A->ring()->monomials_of_degree(s)) {
                    auto v = A->coords(g * P::monomial(A->ring(), mu, A->field().one()), e);
                    whole.insert(v);
                    if (s > 0) inner.insert(v);
                }
        }
        total += whole.dim() - inner.dim();
    }
    return total;
}

}  // namespace

TEST(NewAlgebra, FiberProductRing) {
    auto R = alg({"x", "y"}, {1, 1}, {"x*y"});
    EXPECT_EQ(R->dim(0), 1u);
    EXPECT_EQ(R->dim(3), 2u);
    EXPECT_TRUE(R->is_zero(in(R, "x^2*y")));
}

TEST(NewAlgebra, PolynomialRing) {
    auto R = alg({"x"}, {1}, {});
    for (int d = 0; d < 6; ++d) EXPECT_EQ(R->dim(d), 1u);
    EXPECT_FALSE(R->top_degree().has_value());
}

TEST(NewAlgebra, RejectsConstantTerm) {
    EXPECT_THROW(alg({"x"}, {1}, {"x + 1"}), InputError);
}

TEST(NewAlgebra, RejectsBadWeights) {
    EXPECT_THROW(alg({"x"}, {0}, {}), InputError);
    EXPECT_THROW(alg({"x"}, {-2}, {}), InputError);
}

TEST(NewAlgebra, RejectsInhomogeneousRelation) {
    EXPECT_THROW(alg({"x", "y"}, {1, 1}, {"x^2 - y^3"}), InputError);
    EXPECT_NO_THROW(alg({"x", "y"}, {3, 2}, {"x^2 - y^3"}));
}

TEST(NewAlgebra, TruncationKillsHighDegrees) {
    auto R = alg({"x", "y"}, {1, 1}, {}, 3);
    EXPECT_EQ(R->dim(3), 4u);
    EXPECT_EQ(R->dim(4), 0u);
    EXPECT_EQ(R->top_degree(), 3);
    // Weighted: every monomial of weighted degree > 4 vanishes.
    auto W = alg({"u", "v"}, {2, 3}, {}, 4);
    EXPECT_TRUE(W->is_zero(in(W, "u*v")));
    EXPECT_FALSE(W->is_zero(in(W, "u^2")));
    EXPECT_EQ(W->top_degree(), 4);
}

TEST(NewAlgebra, TopDegreeOfArtinianRing) {
    EXPECT_EQ(alg({"x", "y"}, {1, 1}, {"x^3", "y^2"})->top_degree(), 3);
    EXPECT_EQ(alg({"x"}, {2}, {"x^2"})->top_degree(), 2);
    EXPECT_FALSE(alg({"x", "y"}, {1, 1}, {"x*y"})->top_degree().has_value());
}

TEST(Decompose, ReadsOffScalarPart) {
    auto R = alg({"x", "y"}, {1, 1}, {"x*y"});
    K k;
    auto [l, x] = Elem(R, in(R, "3 + x + 2*y^2")).decompose();
    EXPECT_EQ(l, k.from_int(3));
    EXPECT_EQ(x, in(R, "x + 2*y^2"));
    auto [l0, x0] = Elem(R, R->zero()).decompose();
    EXPECT_TRUE(k.is_zero(l0));
    EXPECT_TRUE(x0.is_zero());
    auto [l1, x1] = Elem(R, in(R, "x*y")).decompose();
    EXPECT_TRUE(k.is_zero(l1));
    EXPECT_TRUE(x1.is_zero());
}

TEST(Decompose, RecomposeIsIdentity) {
    std::mt19937 rng(7);
    auto R = alg({"x", "y"}, {1, 1}, {"x*y", "y^3"});
    for (int i = 0; i < 300; ++i) {
        Elem r(R, random_poly(R, rng, 4));
        auto [l, x] = r.decompose();
        EXPECT_TRUE(R->field().is_zero(x.constant_term()));
        EXPECT_EQ(Elem::recompose(R, l, x), r);
    }
}

TEST(ProductDecomposed, Examples) {
    auto R = alg({"x", "y"}, {1, 1}, {"x*y"});
    EXPECT_EQ(product_decomposed(Elem(R, in(R, "1 + x")), Elem(R, in(R, "1 + y"))), Elem(R, in(R, "1 + x + y")));
    EXPECT_EQ(product_decomposed(Elem(R, in(R, "3")), Elem(R, in(R, "5"))), Elem(R, in(R, "15")));
    auto D = alg({"x"}, {1}, {"x^2"});
    EXPECT_EQ(product_decomposed(Elem(D, in(D, "x")), Elem(D, in(D, "x"))), Elem(D, D->zero()));
}

TEST(ProductDecomposed, AgreesWithDirectMultiplication) {
    std::mt19937 rng(11);
    std::vector<AlgebraPtr<K>> fixtures = {
        alg({"x", "y"}, {1, 1}, {"x*y"}),
        alg({"x", "y"}, {3, 2}, {"x^2 - y^3"}, 12),
        alg({"x", "y"}, {1, 1}, {"x^3", "y^2"}),
        alg({"x"}, {1}, {"x^2"}),
    };
    for (const auto& R : fixtures)
        for (int i = 0; i < 1000; ++i) {
            Elem a(R, random_poly(R, rng, 3)), b(R, random_poly(R, rng, 3));
            ASSERT_EQ(product_decomposed(a, b), a * b) << R->describe();
        }
}

TEST(ProductDecomposed, RationalField) {
    auto R = new_algebra<RationalField>("R", RationalField{}, {"x", "y"}, {1, 1}, {"x*y"});
    auto p = [&](const char* s) { return AlgebraElement<RationalField>(R, parse_poly(s, R->ring())); };
    EXPECT_EQ(product_decomposed(p("1/2 + x"), p("2/3 + y")), p("1/3 + 2/3*x + 1/2*y"));
}

TEST(MinimalGenerators, Examples) {
    auto R = alg({"x", "y"}, {1, 1}, {"x*y"});
    EXPECT_EQ(minimal_generators(R, {in(R, "x"), in(R, "y")}).nu, 2u);
    EXPECT_EQ(minimal_generators(R, {in(R, "x - y")}).nu, 1u);
    auto T = alg({"x"}, {1}, {});
    auto mg = minimal_generators(T, {in(T, "x^3"), in(T, "x^2")});
    ASSERT_EQ(mg.nu, 1u);
    EXPECT_EQ(mg.generators[0], in(T, "x^2"));
}

TEST(MinimalGenerators, RejectsIdealOutsideM) {
    auto T = alg({"x"}, {1}, {});
    EXPECT_THROW(minimal_generators(T, {in(T, "1 + x")}), InputError);
    EXPECT_THROW(minimal_generators(T, {in(T, "x + x^2")}), InputError);
}

TEST(MinimalGenerators, CountMatchesIndependentSpans) {
    auto R = alg({"x", "y", "z"}, {1, 1, 1}, {"x*y", "z^2"});
    std::vector<std::vector<std::string>> ideals = {
        {"x", "y", "z"},
        {"x^2", "x*z", "x^2*z", "x^3"},
        {"y^2", "y^2 + x^2", "x^2", "z*x"},
        {"x - y", "x^2 - y^2", "z*y"},
    };
    for (const auto& gens : ideals) {
        std::vector<P> ps;
        for (const auto& g : gens) ps.push_back(R->normal_form(in(R, g)));
        ps.erase(std::remove_if(ps.begin(), ps.end(), [](const P& p) { return p.is_zero(); }), ps.end());
        EXPECT_EQ(minimal_generators(R, ps).nu, nu_by_spans(R, ps, 6));
    }
}

TEST(VerifyMorphism, Examples) {
    auto A = alg({"x", "y"}, {1, 1}, {"x*y"});
    auto T = alg({"x"}, {1}, {});
    auto f = verify_morphism(make_morphism(A, T, {in(T, "x"), T->zero()}));
    EXPECT_TRUE(f.verified);
    EXPECT_TRUE(f.is_graded());

    auto D = alg({"x"}, {1}, {"x^2"});
    EXPECT_THROW(verify_morphism(make_morphism(D, T, {in(T, "x")})), InputError);
    EXPECT_TRUE(identity_morphism(A).verified);
    EXPECT_NO_THROW(verify_morphism(identity_morphism(D)));
}

TEST(VerifyMorphism, RejectsUnitImage) {
    auto T = alg({"x"}, {1}, {});
    EXPECT_THROW(verify_morphism(make_morphism(T, T, {in(T, "1 + x")})), InputError);
}

TEST(VerifyMorphism, CompositionClosure) {
    auto T = alg({"t"}, {1}, {"t^3"});
    auto R = alg({"x", "y"}, {1, 1}, {"x^3", "y^2"});
    auto S = alg({"u"}, {1}, {"u^3"});
    auto f = verify_morphism(make_morphism(T, R, {in(R, "x")}));
    auto g = verify_morphism(make_morphism(R, S, {in(S, "u"), S->zero()}));
    auto h = compose(g, f);
    EXPECT_TRUE(h.verified);
    EXPECT_NO_THROW(verify_morphism(h));
    EXPECT_EQ(h.images[0], in(S, "u"));
}

TEST(QuotientAlgebra, CanonicalSurjection) {
    auto R = alg({"x", "y"}, {1, 1}, {"x*y"});
    auto Rbar = quotient_algebra(R, {in(R, "x - y")});
    EXPECT_EQ(Rbar->dim(1), 1u);
    EXPECT_EQ(Rbar->dim(2), 0u);
    auto pi = quotient_map(R, Rbar);
    EXPECT_TRUE(pi.verified);
}
