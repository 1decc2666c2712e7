#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lcpforge/numberfield/embedding.hpp"
#include "lcpforge/numberfield/galois.hpp"

using namespace lcpforge;

namespace {

const long double kPi = 3.141592653589793238462643383279502884L;

IntPoly P(const char* text) { return parse_int_poly(text); }

NumberField seven() { return field_new(P("x^3+x^2-2x-1")); }

long double cos_root(long k, long m) { return 2 * std::cos(2 * kPi * k / m); }

// Independent oracle: Newton iteration in long double.
long double newton(long double (*f)(long double), long double (*df)(long double), long double x) {
    for (int i = 0; i < 100; ++i) x -= f(x) / df(x);
    return x;
}

FieldElem random_elem(const NumberField& f, std::mt19937_64& rng, int range = 5) {
    std::uniform_int_distribution<int> num(-range, range), den(1, 3);
    std::vector<Rational> c;
    for (int i = 0; i < f.degree(); ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        c.push_back(q);
    }
    return FieldElem(f, c);
}

// Power basis x^d f(x + 1/x), the inverse of the real-subfield substitution.
IntPoly resubstitute(const IntPoly& f) {
    const int d = f.degree();
    IntPoly x2p1 = P("x^2+1"), out;
    for (int k = 0; k <= d; ++k) {
        IntPoly term = IntPoly::constant(f.coeff(k));
        for (int i = 0; i < k; ++i) term = term * x2p1;
        term = term * IntPoly::monomial(Integer(1), d - k);
        out += term;
    }
    return out;
}

}  // namespace

TEST(Poly, NormalizationDropsTrailingZeros) {
    IntPoly p(std::vector<Integer>{1, 2, 0, 0});
    EXPECT_EQ(p.degree(), 1);
    EXPECT_EQ(p.leading(), 2);
    EXPECT_TRUE(IntPoly(std::vector<Integer>{0, 0}).is_zero());
    EXPECT_EQ(IntPoly().degree(), -1);
    EXPECT_EQ((P("x^2+1") - P("x^2")).degree(), 0);
}

TEST(Poly, ParsePrintRoundTrip) {
    for (const char* s : {"x^3+x^2-2x-1", "x^2+x-1", "-x+1", "x", "7", "x^6+x^4-1"}) EXPECT_EQ(to_string(P(s)), s);
    EXPECT_EQ(P("X^3 + X^2 - 2X - 1"), P("x^3+x^2-2x-1"));
    EXPECT_THROW(P("x^"), Error);
    EXPECT_THROW(P("x/2"), Error);
}

TEST(Poly, RationalCoefficientsAreInLowestTerms) {
    RatPoly p = parse_rat_poly("2/4x+6/3");
    EXPECT_EQ(p.coeff(1), Rational(1, 2));
    EXPECT_EQ(p.coeff(0), Rational(2));
    EXPECT_EQ(p.coeff(1).get_den(), 2);
}

TEST(Poly, DivisionWithRemainderReconstructs) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> c(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> a, b;
        for (int i = 0; i < 7; ++i) a.emplace_back(c(rng));
        for (int i = 0; i < 3; ++i) b.emplace_back(c(rng));
        b.emplace_back(1 + std::abs(c(rng)));
        RatPoly pa(a), pb(b);
        auto [q, r] = divmod(pa, pb);
        EXPECT_EQ(q * pb + r, pa);
        EXPECT_LT(r.degree(), pb.degree());
    }
}

TEST(Poly, SquarefreePartRemovesRepeatedFactors) {
    RatPoly p = to_rat(P("x-1") * P("x-1") * P("x+2"));
    EXPECT_EQ(make_monic(squarefree_part(p)), to_rat(P("x^2+x-2")));
}

TEST(Cyclotomic, SmallCases) {
    EXPECT_EQ(cyclotomic_poly(1), P("x-1"));
    EXPECT_EQ(cyclotomic_poly(4), P("x^2+1"));
    EXPECT_EQ(cyclotomic_poly(7), P("x^6+x^5+x^4+x^3+x^2+x+1"));
}

TEST(Cyclotomic, ProductOverDivisorsIsXnMinusOne) {
    for (long n = 1; n <= 30; ++n) {
        IntPoly prod = IntPoly::constant(Integer(1));
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic_poly(d);
        EXPECT_EQ(prod, IntPoly::monomial(Integer(1), static_cast<int>(n)) - IntPoly::constant(Integer(1))) << n;
        EXPECT_EQ(cyclotomic_poly(n).degree(), euler_phi(n)) << n;
        EXPECT_TRUE(cyclotomic_poly(n).is_monic());
    }
}

TEST(RealSubfield, KnownPolynomials) {
    EXPECT_EQ(real_subfield_minpoly(7), P("x^3+x^2-2x-1"));
    EXPECT_EQ(real_subfield_minpoly(3), P("x+1"));
    EXPECT_EQ(real_subfield_minpoly(5), P("x^2+x-1"));
}

TEST(RealSubfield, RejectsNonOddPrimes) {
    for (long m : {1L, 2L, 4L, 9L, 15L}) EXPECT_THROW(real_subfield_minpoly(m), Error) << m;
}

TEST(RealSubfield, RootsAreTwiceCosines) {
    for (long m : {5L, 7L, 11L, 13L, 17L, 19L}) {
        IntPoly f = real_subfield_minpoly(m);
        ASSERT_EQ(f.degree(), (m - 1) / 2);
        for (long k = 1; k <= (m - 1) / 2; ++k) {
            long double x = cos_root(k, m), v = 0;
            for (int i = f.degree(); i >= 0; --i) v = v * x + f.coeff(i).get_d();
            EXPECT_NEAR(static_cast<double>(v), 0.0, 1e-12) << "m=" << m << " k=" << k;
        }
    }
}

TEST(RealSubfield, ResubstitutionRecoversCyclotomic) {
    for (long m : {3L, 5L, 7L, 11L, 13L, 17L, 23L}) EXPECT_EQ(resubstitute(real_subfield_minpoly(m)), cyclotomic_poly(m)) << m;
}

TEST(Irreducibility, Verdicts) {
    EXPECT_EQ(test_irreducible(P("x^2+1")).verdict, Irreducibility::Irreducible);
    EXPECT_EQ(test_irreducible(P("x^3-x-1")).verdict, Irreducibility::Irreducible);
    EXPECT_EQ(test_irreducible(P("x^2-1")).verdict, Irreducibility::Reducible);
    EXPECT_EQ(test_irreducible(P("x^4+2x^2+1")).verdict, Irreducibility::Reducible);
    EXPECT_EQ(test_irreducible(real_subfield_minpoly(13)).verdict, Irreducibility::Irreducible);
    // Reducible modulo every prime, though irreducible over Q.
    EXPECT_EQ(test_irreducible(P("x^4+1")).verdict, Irreducibility::Inconclusive);
}

TEST(FieldNew, Signatures) {
    NumberField a = field_new(P("x^2+1"));
    EXPECT_EQ(a.degree(), 2);
    EXPECT_EQ(a.s(), 0);
    EXPECT_EQ(a.t(), 1);
    NumberField b = field_new(P("x^3-x-1"));
    EXPECT_EQ(b.s(), 1);
    EXPECT_EQ(b.t(), 1);
    NumberField c = seven();
    EXPECT_EQ(c.s(), 3);
    EXPECT_EQ(c.t(), 0);
    for (const auto& f : {a, b, c}) EXPECT_EQ(f.s() + 2 * f.t(), f.degree());
}

TEST(FieldNew, Errors) {
    auto kind = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidInput;
    };
    EXPECT_EQ(kind([] { field_new(P("x^2-1")); }), ErrorKind::ReduciblePolynomial);
    EXPECT_EQ(kind([] { field_new(P("2x^2+1")); }), ErrorKind::NonMonic);
    EXPECT_EQ(kind([] { field_new(P("x^4+1")); }), ErrorKind::InconclusiveIrreducibility);
    NumberField forced = field_new(P("x^4+1"), true);
    EXPECT_EQ(forced.witness().rfind("forced", 0), 0u);
    NumberField theory = field_new(P("x^4+1"), false, "theory: cyclotomic");
    EXPECT_EQ(theory.witness(), "theory: cyclotomic");
}

TEST(ElemArith, Examples) {
    NumberField f = seven();
    FieldElem a = FieldElem::generator(f);
    FieldElem one = FieldElem::from_rational(f, Rational(1));
    EXPECT_EQ(a * a.inverse(), one);
    EXPECT_EQ(a.pow(3), parse_elem(f, "-x^2+2x+1"));
    EXPECT_EQ(a * a - FieldElem::from_rational(f, Rational(2)), galois_generator(f).image_of_alpha());
    EXPECT_EQ(a.pow(-2) * a.pow(2), one);
    EXPECT_THROW(FieldElem::from_rational(f, Rational(0)).inverse(), Error);
    EXPECT_THROW(one / FieldElem::from_rational(f, Rational(0)), Error);
}

TEST(ElemArith, RingAxiomsOnRandomElements) {
    std::mt19937_64 rng(11);
    for (const char* mp : {"x^3+x^2-2x-1", "x^3-x-1", "x^4-x-1"}) {
        NumberField f = field_new(P(mp));
        for (int trial = 0; trial < 20; ++trial) {
            FieldElem x = random_elem(f, rng), y = random_elem(f, rng), z = random_elem(f, rng);
            EXPECT_EQ(x * y, y * x);
            EXPECT_EQ((x * y) * z, x * (y * z));
            EXPECT_EQ(x * (y + z), x * y + x * z);
            if (!x.is_zero()) EXPECT_EQ((y / x) * x, y);
        }
    }
}

TEST(MinimalPolynomial, Examples) {
    NumberField f = seven();
    FieldElem a = FieldElem::generator(f);
    EXPECT_EQ(minimal_polynomial(FieldElem::from_rational(f, Rational(2))), to_rat(P("x-2")));
    EXPECT_EQ(minimal_polynomial(a), to_rat(P("x^3+x^2-2x-1")));
    FieldElem s = a * a - FieldElem::from_rational(f, Rational(2));
    EXPECT_EQ(minimal_polynomial(s), to_rat(P("x^3+x^2-2x-1")));
    // Oracle: exact evaluation of the defining polynomial at alpha^2 - 2.
    EXPECT_TRUE(eval(P("x^3+x^2-2x-1"), s).is_zero());
}

TEST(MinimalPolynomial, AnnihilatesRandomElements) {
    std::mt19937_64 rng(5);
    for (const char* mp : {"x^3+x^2-2x-1", "x^3-x-1", "x^4-x-1", "x^2+1"}) {
        NumberField f = field_new(P(mp));
        for (int trial = 0; trial < 20; ++trial) {
            FieldElem x = random_elem(f, rng);
            RatPoly m = minimal_polynomial(x);
            EXPECT_TRUE(m.is_monic());
            EXPECT_TRUE(eval(m, x).is_zero()) << to_string(x);
        }
    }
}

TEST(IsUnit, Examples) {
    NumberField f = seven();
    EXPECT_TRUE(is_unit(FieldElem::from_rational(f, Rational(1))));
    EXPECT_TRUE(is_unit(FieldElem::generator(f)));
    EXPECT_FALSE(is_unit(FieldElem::from_rational(f, Rational(2))));
    EXPECT_FALSE(is_unit(FieldElem::from_rational(f, Rational(1, 2))));
    EXPECT_TRUE(is_unit(FieldElem::generator(f).inverse()));
}

TEST(Galois, Examples) {
    NumberField f = seven();
    EXPECT_EQ(galois_generator(f).image_of_alpha(), parse_elem(f, "x^2-2"));
    NumberField lin = field_new(P("x+3"));
    EXPECT_EQ(galois_generator(lin).image_of_alpha(), FieldElem::generator(lin));
    NumberField golden = field_new(P("x^2+x-1"));
    FieldElem s = galois_generator(golden).image_of_alpha();
    EXPECT_EQ(s, parse_elem(golden, "-x-1"));
    EXPECT_TRUE(eval(P("x^2+x-1"), s).is_zero());
}

TEST(Galois, OrbitIsFullAndCyclic) {
    for (long m : {5L, 7L, 11L, 13L}) {
        NumberField f = field_new(real_subfield_minpoly(m), false, "theory: real subfield");
        GaloisMap g = galois_generator(f);
        EXPECT_EQ(minimal_polynomial(g.image_of_alpha()), f.minpoly_q());
        std::vector<FieldElem> orbit = g.orbit();
        ASSERT_EQ(static_cast<int>(orbit.size()), f.degree()) << m;
        for (std::size_t i = 0; i < orbit.size(); ++i)
            for (std::size_t j = i + 1; j < orbit.size(); ++j) EXPECT_FALSE(orbit[i] == orbit[j]);
        FieldElem x = FieldElem::generator(f);
        for (int i = 0; i < f.degree(); ++i) x = g(x);
        EXPECT_EQ(x, FieldElem::generator(f));
    }
}

TEST(Galois, Errors) {
    try {
        galois_generator(field_new(P("x^3-x-1")));
        FAIL() << "expected not-normal";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotNormal);
    }
    try {
        // Q(sqrt 2, sqrt 3): normal with Klein four-group.
        galois_generator(field_new(P("x^4-10x^2+1"), true));
        FAIL() << "expected not-cyclic";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotCyclic);
    }
}

TEST(Embed, Examples) {
    NumberField f = seven();
    EmbeddingSet e = make_embeddings(f, 128);
    for (const auto& v : embed(FieldElem::from_rational(f, Rational(1)), e).real) EXPECT_TRUE(v.contains(Real(1, 192)));
    EmbeddedValues a = embed(FieldElem::generator(f), e);
    ASSERT_EQ(a.real.size(), 3u);
    EXPECT_NEAR(a.real[0].mid().to_double(), static_cast<double>(cos_root(1, 7)), 1e-15);
    EXPECT_NEAR(a.real[1].mid().to_double(), static_cast<double>(cos_root(2, 7)), 1e-15);
    EXPECT_NEAR(a.real[2].mid().to_double(), static_cast<double>(cos_root(3, 7)), 1e-15);

    NumberField g = field_new(P("x^3-x-1"));
    EmbeddedValues b = embed(FieldElem::generator(g), make_embeddings(g, 128));
    long double root = newton([](long double x) { return x * x * x - x - 1; }, [](long double x) { return 3 * x * x - 1; }, 1.5L);
    EXPECT_NEAR(b.real[0].mid().to_double(), static_cast<double>(root), 1e-15);
    EXPECT_NEAR(b.real[0].mid().to_double(), 1.3247179572, 1e-10);
    ASSERT_EQ(b.complex.size(), 1u);
    EXPECT_GT(b.complex[0].im.mid().sign(), 0);
}

TEST(Embed, EnclosuresAreNarrowAndDisjoint) {
    for (const char* mp : {"x^3+x^2-2x-1", "x^3-x-1", "x^5-x-1"}) {
        NumberField f = field_new(P(mp));
        for (long bits : {64L, 128L, 256L}) {
            EmbeddingSet e = make_embeddings(f, bits);
            const Real eps = Real::pow2(-bits, working_prec(bits));
            for (std::size_t i = 0; i < e.real_roots.size(); ++i) {
                EXPECT_LE(e.real_roots[i].width(), eps);
                EXPECT_TRUE(eval(f.minpoly_q(), e.real_roots[i]).contains_zero());
                for (std::size_t j = i + 1; j < e.real_roots.size(); ++j)
                    EXPECT_TRUE(e.real_roots[i].hi() < e.real_roots[j].lo() || e.real_roots[j].hi() < e.real_roots[i].lo());
            }
            for (const auto& c : e.complex_roots) EXPECT_LE(c.radius, eps);
        }
    }
}

TEST(Embed, RespectsMultiplication) {
    std::mt19937_64 rng(3);
    NumberField f = field_new(P("x^3-x-1"));
    EmbeddingSet e = make_embeddings(f, 128);
    for (int trial = 0; trial < 20; ++trial) {
        FieldElem x = random_elem(f, rng), y = random_elem(f, rng);
        EmbeddedValues ex = embed(x, e), ey = embed(y, e), exy = embed(x * y, e);
        Interval prod = ex.real[0] * ey.real[0];
        Real slack = Real::pow2(-100, 192);
        EXPECT_LE(abs(prod.mid() - exy.real[0].mid()), slack * max(Real(1, 192), abs(prod.mid())));
        ComplexInterval cp = ex.complex[0] * ey.complex[0];
        EXPECT_LE(abs(cp.re.mid() - exy.complex[0].re.mid()), slack * max(Real(1, 192), cp.modulus().mid()));
        EXPECT_LE(abs(cp.im.mid() - exy.complex[0].im.mid()), slack * max(Real(1, 192), cp.modulus().mid()));
    }
}

TEST(LogVector, Examples) {
    NumberField g = field_new(P("x^3-x-1"));
    EmbeddingSet e = make_embeddings(g, 128);
    LogVector one = log_vector(FieldElem::from_rational(g, Rational(1)), e);
    for (const auto& x : one.entries) EXPECT_TRUE(x.contains(Real(0, 192)));
    LogVector a = log_vector(FieldElem::generator(g), e);
    ASSERT_EQ(a.entries.size(), 2u);
    // Oracle: the complex pair has modulus sqrt(1 / real root).
    long double root = newton([](long double x) { return x * x * x - x - 1; }, [](long double x) { return 3 * x * x - 1; }, 1.5L);
    EXPECT_NEAR(a.entries[0].mid().to_double(), static_cast<double>(std::log(root)), 1e-15);
    EXPECT_NEAR(a.entries[1].mid().to_double(), static_cast<double>(2 * std::log(std::sqrt(1 / root))), 1e-15);
    EXPECT_NEAR(std::sqrt(1 / static_cast<double>(root)), 0.86883, 1e-5);
    EXPECT_LT(abs(a.sum()), tolerance_for(128, 192));
    EXPECT_THROW(log_vector(FieldElem::from_rational(g, Rational(2)), e), Error);
}

TEST(LogVector, UnitSumsVanish) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> ex(-6, 6);
    for (const char* mp : {"x^3+x^2-2x-1", "x^3-x-1", "x^4-x-1"}) {
        NumberField f = field_new(P(mp));
        FieldElem a = FieldElem::generator(f);
        for (long bits : {64L, 128L, 256L}) {
            EmbeddingSet e = make_embeddings(f, bits);
            for (int trial = 0; trial < 10; ++trial) {
                FieldElem u = a.pow(ex(rng)) * (a - FieldElem::from_rational(f, Rational(1))).pow(ex(rng) * (mp[3] == '3' ? 0 : 1));
                ASSERT_TRUE(is_unit(u));
                EXPECT_LE(abs(log_vector(u, e).sum()), tolerance_for(bits, working_prec(bits))) << mp << " " << to_string(u);
            }
        }
    }
}

TEST(MultiplicativeRank, Examples) {
    NumberField f = seven();
    EmbeddingSet e = make_embeddings(f, 128);
    FieldElem a = FieldElem::generator(f);
    FieldElem s = galois_generator(f).image_of_alpha();
    EXPECT_EQ(multiplicative_rank({FieldElem::from_rational(f, Rational(1))}, e), 0);
    EXPECT_EQ(multiplicative_rank({a, s}, e), 2);
    EXPECT_EQ(multiplicative_rank({a, a * a}, e), 1);
}

TEST(MultiplicativeRank, InvariantUnderInversionAndSpanProducts) {
    NumberField f = field_new(real_subfield_minpoly(11), false, "theory: real subfield");
    EmbeddingSet e = make_embeddings(f, 128);
    std::vector<FieldElem> orbit = galois_generator(f).orbit();
    std::vector<FieldElem> base(orbit.begin(), orbit.begin() + 3);
    const int r = multiplicative_rank(base, e);
    EXPECT_EQ(r, 3);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> ex(-3, 3), pick(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<FieldElem> v = base;
        int i = pick(rng);
        v[i] = v[i].inverse();
        EXPECT_EQ(multiplicative_rank(v, e), r);
        v[i] = v[i] * v[(i + 1) % 3].pow(ex(rng));
        EXPECT_EQ(multiplicative_rank(v, e), r);
        v.push_back(v[0].pow(ex(rng)) * v[1].pow(ex(rng)));
        EXPECT_EQ(multiplicative_rank(v, e), r);
    }
}

TEST(MultiplicativeRank, NeverExceedsDirichletBound) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> ex(-4, 4);
    for (const char* mp : {"x^3+x^2-2x-1", "x^3-x-1", "x^4-x-1"}) {
        NumberField f = field_new(P(mp));
        EmbeddingSet e = make_embeddings(f, 128);
        FieldElem a = FieldElem::generator(f);
        FieldElem b = a - FieldElem::from_rational(f, Rational(1));
        if (!is_unit(b)) b = a + FieldElem::from_rational(f, Rational(1));
        std::vector<FieldElem> units;
        for (int i = 0; i < 5; ++i) {
            FieldElem u = a.pow(ex(rng));
            if (is_unit(b)) u = u * b.pow(ex(rng));
            units.push_back(u);
        }
        EXPECT_LE(multiplicative_rank(units, e), dirichlet_rank_bound(f)) << mp;
    }
}

TEST(DirichletBound, Examples) {
    EXPECT_EQ(dirichlet_rank_bound(seven()), 2);
    EXPECT_EQ(dirichlet_rank_bound(field_new(P("x^3-x-1"))), 1);
    EXPECT_EQ(dirichlet_rank_bound(field_new(P("x^2+1"))), 0);
}

TEST(EscalateDecision, AcceptsAgreeingPairAndRejectsFlapping) {
    EXPECT_EQ(escalate_decision(64, [](long) { return 3; }), 3);
    EXPECT_EQ(escalate_decision(64, [](long b) { return b >= 256 ? 2 : static_cast<int>(b); }), 2);
    try {
        escalate_decision(64, [](long b) { return static_cast<int>(b); });
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PrecisionExhausted);
    }
}
