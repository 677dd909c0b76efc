#include <gtest/gtest.h>

#include <random>

#include "sfp/constructions.hpp"

using namespace sfp;

namespace {

using K = PrimeField;
using P = Poly<K>;

AlgebraPtr<K> alg(std::string name, std::vector<std::string> vars, std::vector<int> w, std::vector<std::string> rels,
                  std::optional<int> trunc = std::nullopt) {
    return new_algebra<K>(std::move(name), K(), std::move(vars), std::move(w), rels, trunc);
}

P in(const AlgebraPtr<K>& A, const std::string& s) { return parse_poly(s, A->ring()); }

std::vector<P> polys(const AlgebraPtr<K>& A, std::vector<std::string> ss) {
    std::vector<P> out;
    for (const auto& s : ss) out.push_back(in(A, s));
    return out;
}

/// k ⋉ k^3 with basis e1, e2, e3 in degrees 1, 2, 3.
AlgebraPtr<K> square_zero3() {
    return alg("S", {"e1", "e2", "e3"}, {1, 2, 3}, {"e1^2", "e1*e2", "e1*e3", "e2^2", "e2*e3", "e3^2"});
}

ActionTable<K> table(const AlgebraPtr<K>& R, const AlgebraPtr<K>& S, std::vector<std::vector<std::string>> rows) {
    auto t = ActionTable<K>::zero(R, S);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) t.entries[i][j] = in(S, rows[i][j]);
    return t;
}

P random_in(const AlgebraPtr<K>& A, std::mt19937& rng, int lo, int hi) {
    std::vector<Term<K>> terms;
    for (int d = lo; d <= hi; ++d)
        for (const auto& m : A->basis(d))
            if (rng() % 2) terms.push_back({m, A->field().random(rng)});
    return P::from_terms(A->ring(), std::move(terms));
}

std::vector<std::size_t> dims(const AlgebraPtr<K>& A, int d) {
    std::vector<std::size_t> v;
    for (int e = 0; e <= d; ++e) v.push_back(A->dim(e));
    return v;
}

}  // namespace

TEST(ValidateAction, ZeroActionIsValid) {
    auto R = alg("R", {"x", "z"}, {1, 2}, {"x^3", "z^2"});
    auto S = alg("S", {"y"}, {1}, {"y^3"});
    auto t = validate_action(ActionTable<K>::zero(R, S), 8);
    EXPECT_TRUE(t.validated);
    EXPECT_EQ(t.checked_degree, 8);
}

TEST(ValidateAction, InducedActionIsValid) {
    auto R = alg("R", {"x"}, {1}, {});
    auto S = alg("S", {"y", "w"}, {1, 1}, {"y^2", "w^2"});
    auto f = verify_morphism(make_morphism(R, S, {in(S, "y + w")}));
    EXPECT_TRUE(validate_action(ActionTable<K>::induced(f), 6).validated);
}

TEST(ValidateAction, RejectsRelationViolation) {
    auto R = alg("R", {"x"}, {1}, {"x^2"});
    auto t = table(R, square_zero3(), {{"e2", "e3", "0"}});
    auto v = check_action(t, 6);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->identity, "associativity over J_R");
    EXPECT_EQ(v->degree, 3);
    EXPECT_THROW(validate_action(t, 6), InputError);
    // Over k[x] every endomorphism of the square-zero module is a valid action.
    EXPECT_FALSE(check_action(table(alg("R", {"x"}, {1}, {}), square_zero3(), {{"e2", "e3", "0"}}), 6).has_value());
}

TEST(ValidateAction, RejectsNonCommutingOperators) {
    auto R = alg("R", {"x", "z"}, {1, 1}, {});
    auto S = alg("S", {"e1", "e2", "e3"}, {1, 2, 3}, {"e1^2", "e1*e2", "e1*e3", "e2^2", "e2*e3", "e3^2"});
    auto t = table(R, S, {{"e2", "0", "0"}, {"0", "e3", "0"}});
    auto v = check_action(t, 6);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->identity, "associativity");
}

TEST(ValidateAction, RejectsBimoduleViolation) {
    auto R = alg("R", {"x"}, {1}, {});
    auto S = alg("S", {"y", "w"}, {1, 1}, {});
    auto v = check_action(table(R, S, {{"y^2", "0"}}), 4);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->identity, "bimodule law");
}

TEST(ValidateAction, RejectsConstantEntries) {
    auto R = alg("R", {"x"}, {1}, {});
    auto S = alg("S", {"y"}, {1}, {});
    auto v = check_action(table(R, S, {{"1"}}), 4);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->identity, "closure in m_S");
}

TEST(SemiFiberProduct, ZeroActionIsFiberProduct) {
    auto R = alg("R", {"x"}, {1}, {"x^2"});
    auto S = alg("S", {"y"}, {1}, {"y^3"});
    auto P0 = semi_fiber_product(validate_action(ActionTable<K>::zero(R, S), 8));
    auto B = fiber_product(R, S).first;
    auto direct = alg("B", {"x", "y"}, {1, 1}, {"x^2", "y^3", "x*y"});
    EXPECT_EQ(P0.A->ideal().groebner(), direct->ideal().groebner());
    EXPECT_EQ(B->ideal().groebner(), direct->ideal().groebner());
    // dim A_e = dim R_e + dim (m_S)_e: 1, 2, 1, 0.
    EXPECT_EQ(dims(P0.A, 4), (std::vector<std::size_t>{1, 2, 1, 0, 0}));
    EXPECT_TRUE(P0.certificate.verdict.is_proved());
    EXPECT_TRUE(P0.retraction.verified);
}

TEST(SemiFiberProduct, TrivialSecondFactor) {
    auto R = alg("R", {"x", "y"}, {1, 1}, {"x*y", "y^3"});
    auto k = alg("k", {}, {}, {});
    auto P0 = semi_fiber_product(validate_action(ActionTable<K>::zero(R, k), 6));
    EXPECT_EQ(dims(P0.A, 6), dims(R, 6));
}

TEST(SemiFiberProduct, MonomialCurveAvatarIsThePlane) {
    const int d = 7;
    auto t = validate_action(monomial_curve_avatar(K(), d), d);
    auto P0 = semi_fiber_product(t);
    for (int e = 0; e <= d; ++e) EXPECT_EQ(P0.A->dim(e), static_cast<std::size_t>(e + 1)) << e;
    EXPECT_TRUE(P0.certificate.verdict.is_proved());
}

TEST(SemiFiberProduct, RejectsUnvalidatedTable) {
    auto R = alg("R", {"x"}, {1}, {});
    EXPECT_THROW(semi_fiber_product(ActionTable<K>::zero(R, R)), InputError);
}

TEST(FiberProduct, Examples) {
    auto X = alg("X", {"x"}, {1}, {});
    auto Y = alg("Y", {"y"}, {1}, {});
    auto [A, ren] = fiber_product(X, Y);
    EXPECT_TRUE(ren.empty());
    EXPECT_EQ(A->ideal().groebner(), alg("A", {"x", "y"}, {1, 1}, {"x*y"})->ideal().groebner());

    auto R = alg("R", {"x", "y"}, {1, 1}, {"x^2*y"});
    auto k = alg("k", {}, {}, {});
    EXPECT_EQ(fiber_product(R, k).first->ideal().groebner(), R->ideal().groebner());
}

TEST(FiberProduct, RenamesClashes) {
    auto X = alg("X", {"x"}, {1}, {"x^2"});
    auto [A, ren] = fiber_product(X, X);
    ASSERT_EQ(ren.size(), 1u);
    EXPECT_EQ(ren[0], "x -> x_1");
    EXPECT_EQ(A->names(), (std::vector<std::string>{"x", "x_1"}));
    EXPECT_EQ(dims(A, 3), (std::vector<std::size_t>{1, 2, 0, 0}));
}

TEST(TrivialExtension, Examples) {
    auto R = alg("R", {"x"}, {1}, {});
    auto A = trivial_extension(R, ModulePresentation<K>::cyclic(R, {in(R, "x")}));
    EXPECT_EQ(A->ideal().groebner(), alg("A", {"x", "e1"}, {1, 1}, {"e1^2", "x*e1"})->ideal().groebner());

    auto Z = trivial_extension(R, ModulePresentation<K>{{}, {}});
    EXPECT_EQ(dims(Z, 5), dims(R, 5));

    auto k = alg("k", {}, {}, {});
    auto D = trivial_extension(k, ModulePresentation<K>{{0}, {}});
    EXPECT_EQ(dims(D, 3), (std::vector<std::size_t>{1, 1, 0, 0}));
}

TEST(TrivialExtension, ModuleSquaresToZero) {
    auto R = alg("R", {"x", "y"}, {1, 1}, {"x*y"});
    std::vector<ModulePresentation<K>> modules = {
        ModulePresentation<K>::residue_field(R),
        ModulePresentation<K>::cyclic(R, {in(R, "x^2")}),
        ModulePresentation<K>{{0, 1}, {{in(R, "y"), R->zero()}, {in(R, "x^2"), in(R, "x")}}},
    };
    for (const auto& M : modules) {
        auto A = trivial_extension(R, M);
        std::vector<P> es;
        for (std::size_t i = R->nvars(); i < A->nvars(); ++i) es.push_back(P::variable(A->ring(), i));
        for (const auto& a : es)
            for (const auto& b : es) EXPECT_TRUE(A->is_zero(a * b));
        // dim (R ⋉ M)_e = dim R_e + dim M_(e-1).
        auto res = minimal_free_resolution(R, M, 1, 6);
        auto hm = homology_dims(res.complex, 0, 6);
        for (int e = 1; e <= 6; ++e) EXPECT_EQ(A->dim(e), R->dim(e) + hm[static_cast<std::size_t>(e - 1)]) << e;
    }
}

TEST(TrivialExtension, RejectsInhomogeneousPresentation) {
    auto R = alg("R", {"x"}, {1}, {});
    ModulePresentation<K> M{{0, 0}, {{in(R, "x"), in(R, "x^2")}}};
    EXPECT_THROW(trivial_extension(R, M), InputError);
}

TEST(TensorAlgebra, Examples) {
    auto X = alg("X", {"x"}, {1}, {"x^2"});
    auto Y = alg("Y", {"y"}, {1}, {"y^2"});
    auto T = tensor_algebra(X, Y, 4);
    EXPECT_EQ(T.A->ideal().groebner(), alg("A", {"x", "y"}, {1, 1}, {"x^2", "y^2"})->ideal().groebner());

    auto k = alg("k", {}, {}, {});
    EXPECT_EQ(dims(tensor_algebra(X, k, 4).A, 4), dims(X, 4));

    auto X1 = alg("X", {"x"}, {1}, {});
    auto Y1 = alg("Y", {"y"}, {1}, {});
    auto P1 = tensor_algebra(X1, Y1, 8);
    EXPECT_TRUE(P1.certificate.verdict.is_proved());
    for (int e = 1; e <= 8; ++e) {
        auto [du, di] = P1.certificate.dims[static_cast<std::size_t>(e - 1)];
        EXPECT_EQ(du, 1u);
        EXPECT_EQ(di, static_cast<std::size_t>(e));
    }
}

TEST(DecompositionVerify, Examples) {
    auto A = alg("A", {"x", "y"}, {1, 1}, {});
    auto c1 = decomposition_verify(A, polys(A, {"x"}), polys(A, {"y"}), 8);
    EXPECT_TRUE(c1.verdict.is_proved());
    for (int e = 1; e <= 8; ++e)
        EXPECT_EQ(c1.dims[static_cast<std::size_t>(e - 1)], (std::pair<std::size_t, std::size_t>{1, e}));

    auto B = alg("B", {"x", "y"}, {1, 1}, {"x*y"});
    EXPECT_TRUE(decomposition_verify(B, polys(B, {"x"}), polys(B, {"y"}), 8).verdict.is_proved());

    auto C = alg("C", {"x"}, {1}, {});
    auto c3 = decomposition_verify(C, polys(C, {"x"}), polys(C, {"x^2"}), 4);
    ASSERT_TRUE(c3.verdict.is_refuted());
    EXPECT_EQ(c3.failing_degree, 2);
    EXPECT_EQ(*c3.witness, in(C, "x^2"));
}

TEST(DecompositionVerify, ReportsMissingPart) {
    auto A = alg("A", {"x", "y"}, {1, 1}, {});
    auto c = decomposition_verify(A, polys(A, {"x"}), polys(A, {"y^2"}), 4);
    ASSERT_TRUE(c.verdict.is_refuted());
    EXPECT_EQ(c.failing_degree, 1);
    EXPECT_EQ(*c.witness, in(A, "y"));
}

TEST(PsiIsomorphism, Examples) {
    auto R = alg("R", {"x"}, {1}, {});
    auto S = alg("S", {"y"}, {1}, {"y^2"});
    auto f = verify_morphism(make_morphism(R, S, {in(S, "y")}));
    auto psi = psi_isomorphism(f, 6);
    EXPECT_TRUE(psi.verdict.is_proved()) << psi.verdict.reason;
    const auto& A = psi.semi.A;
    auto pair = [&](const std::string& s) {
        P img = psi.psi.apply(in(A, s));
        return std::pair{psi.to_R.apply(img), psi.to_S.apply(img)};
    };
    EXPECT_EQ(pair("x"), (std::pair{in(R, "x"), in(S, "y")}));
    EXPECT_EQ(pair("5"), (std::pair{in(R, "5"), in(S, "5")}));

    auto fz = verify_morphism(make_morphism(R, S, {S->zero()}));
    auto psi0 = psi_isomorphism(fz, 6);
    EXPECT_TRUE(psi0.verdict.is_proved());
    const auto& A0 = psi0.semi.A;
    P img = psi0.psi.apply(in(A0, "2 + x + 3*y"));
    EXPECT_EQ(psi0.to_R.apply(img), in(R, "2 + x"));
    EXPECT_EQ(psi0.to_S.apply(img), in(S, "2 + 3*y"));
}

TEST(PsiIsomorphism, InverseRoundTrip) {
    auto R = alg("R", {"x", "z"}, {1, 2}, {"x^3"});
    auto S = alg("S", {"y", "w"}, {1, 1}, {"y^2", "w^2"});
    auto f = verify_morphism(make_morphism(R, S, {in(S, "y + w"), in(S, "y*w")}));
    auto psi = psi_isomorphism(f, 6);
    EXPECT_TRUE(psi.verdict.is_proved()) << psi.verdict.reason;
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        P a = random_in(psi.semi.A, rng, 0, 6);
        EXPECT_EQ(psi.inverse.apply(psi.psi.apply(a)), psi.semi.A->normal_form(a));
    }
}

TEST(UniversalMorphism, Examples) {
    auto R = alg("R", {"x"}, {1}, {});
    auto S = alg("S", {"y"}, {1}, {});
    auto Pp = semi_fiber_product(validate_action(ActionTable<K>::zero(R, S), 6));
    const auto& A = Pp.A;
    // f = id_R into A, g = inclusion of m_S: the identity of A.
    auto phi = universal_morphism(Pp, Pp.embed_R, {in(A, "y")});
    EXPECT_TRUE(same_morphism(phi, identity_morphism(A)));
    // g = 0 gives the retraction onto R.
    auto pi = universal_morphism(Pp, identity_morphism(R), {R->zero()});
    EXPECT_TRUE(same_morphism(pi, Pp.retraction));
    EXPECT_EQ(pi.apply(in(A, "x^2 + y^3")), in(R, "x^2"));
}

TEST(UniversalMorphism, ClassifiesViolations) {
    auto R = alg("R", {"x"}, {1}, {});
    auto S = alg("S", {"y"}, {1}, {"y^2"});
    auto Pp = semi_fiber_product(validate_action(ActionTable<K>::zero(R, S), 6));
    auto T = alg("T", {"t"}, {1}, {});
    auto f = verify_morphism(make_morphism(R, T, {T->zero()}));
    try {
        universal_morphism(Pp, f, {in(T, "t")});
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("multiplicativity"), std::string::npos) << e.what();
    }
    auto Q = semi_fiber_product(validate_action(ActionTable<K>::zero(R, alg("S", {"y"}, {1}, {})), 6));
    auto f2 = verify_morphism(make_morphism(R, T, {in(T, "t")}));
    try {
        universal_morphism(Q, f2, {in(T, "t")});
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("R-linearity"), std::string::npos) << e.what();
    }
}

TEST(UniversalMorphism, FiberProductProjection) {
    auto R = alg("R", {"x"}, {1}, {});
    auto S = alg("S", {"y"}, {1}, {});
    auto Pp = semi_fiber_product(validate_action(ActionTable<K>::zero(R, S), 6));
    auto phi = universal_morphism(Pp, identity_morphism(R), {R->zero()});
    EXPECT_EQ(phi.images, (std::vector<P>{in(R, "x"), R->zero()}));
}

namespace {

struct Fixture {
    std::string label;
    ActionTable<K> table;
};

std::vector<Fixture> action_fixtures() {
    std::vector<Fixture> out;
    {
        auto R = alg("R", {"x"}, {1}, {"x^2"});
        auto S = alg("S", {"y"}, {1}, {"y^3"});
        out.push_back({"zero", validate_action(ActionTable<K>::zero(R, S), 6)});
    }
    {
        auto R = alg("R", {"x", "z"}, {1, 2}, {"x^3"});
        auto S = alg("S", {"y", "w"}, {1, 1}, {"y^2", "w^2"});
        auto f = verify_morphism(make_morphism(R, S, {in(S, "y + w"), in(S, "y*w")}));
        out.push_back({"induced", validate_action(ActionTable<K>::induced(f), 6)});
    }
    out.push_back({"avatar", validate_action(monomial_curve_avatar(K(), 6), 6)});
    {
        auto R = alg("R", {"x"}, {1}, {});
        out.push_back({"module", validate_action(table(R, square_zero3(), {{"e2", "e3", "0"}}), 6)});
    }
    return out;
}

}  // namespace

TEST(SemiFiberRing, RingAxiomsOnRandomTriples) {
    std::mt19937 rng(99);
    for (const auto& fx : action_fixtures()) {
        SemiFiberRing<K> ring(fx.table);
        const auto& R = fx.table.R;
        const auto& S = fx.table.S;
        auto rnd = [&] { return ring.make(random_in(R, rng, 0, 3), random_in(S, rng, 1, 3)); };
        auto one = ring.one();
        for (int i = 0; i < 500; ++i) {
            auto a = rnd(), b = rnd(), c = rnd();
            ASSERT_EQ(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c))) << fx.label;
            ASSERT_EQ(ring.mul(a, b), ring.mul(b, a)) << fx.label;
            ASSERT_EQ(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c))) << fx.label;
            ASSERT_EQ(ring.mul(one, a), a) << fx.label;
        }
    }
}

TEST(SemiFiberRing, PresentationMatchesFormula) {
    std::mt19937 rng(17);
    for (const auto& fx : action_fixtures()) {
        SemiFiberRing<K> ring(fx.table);
        auto Pp = semi_fiber_product(fx.table);
        auto embed = [&](const SemiFiberRing<K>::Element& e) {
            return Pp.A->normal_form(Pp.embed_R.apply(e.r) + Pp.embed_S.apply(e.y));
        };
        for (int i = 0; i < 200; ++i) {
            auto a = ring.make(random_in(fx.table.R, rng, 0, 3), random_in(fx.table.S, rng, 1, 3));
            auto b = ring.make(random_in(fx.table.R, rng, 0, 3), random_in(fx.table.S, rng, 1, 3));
            ASSERT_EQ(embed(ring.mul(a, b)), Pp.A->normal_form(embed(a) * embed(b))) << fx.label;
        }
        EXPECT_TRUE(Pp.certificate.verdict.is_proved()) << fx.label;
        EXPECT_TRUE(Pp.retraction.verified) << fx.label;
    }
}

TEST(SemiFiberRing, ZeroActionDegreewiseIsomorphicToFiberProduct) {
    auto R = alg("R", {"x", "z"}, {1, 1}, {"x*z", "z^2"});
    auto S = alg("S", {"y"}, {2}, {"y^3"});
    auto Pp = semi_fiber_product(validate_action(ActionTable<K>::zero(R, S), 8));
    auto B = fiber_product(R, S).first;
    std::vector<P> fwd, back;
    for (std::size_t i = 0; i < Pp.A->nvars(); ++i) {
        fwd.push_back(P::variable(B->ring(), i));
        back.push_back(P::variable(Pp.A->ring(), i));
    }
    auto phi = verify_morphism(make_morphism(Pp.A, B, fwd));
    auto inv = verify_morphism(make_morphism(B, Pp.A, back));
    EXPECT_TRUE(same_morphism(compose(inv, phi), identity_morphism(Pp.A)));
    for (int e = 0; e <= 8; ++e) {
        Matrix<K> M(K(), B->dim(e), Pp.A->dim(e));
        const auto& basis = Pp.A->basis(e);
        for (std::size_t c = 0; c < basis.size(); ++c)
            M.set_column(c, B->coords(phi.apply(P::monomial(Pp.A->ring(), basis[c], K().one())), e));
        EXPECT_EQ(B->dim(e), Pp.A->dim(e));
        EXPECT_EQ(rank(M), Pp.A->dim(e));
    }
}
