#include "doctest.h"

#include <random>
#include <thread>

#include "qj/cf.hpp"

using namespace qj;

namespace {
const Field& F2 = Field::get(2, 1);
const Field& F3 = Field::get(3, 1);

RealHandle golden(const Field& F) {
    // [0; T, T, T, ...]
    return RealHandle::quadratic(
        CFExpansion(Poly::zero(F), {Poly::monomial(F, 1)}, 1));
}

Poly random_poly(const Field& F, int maxdeg, std::mt19937_64& rng,
                 bool nonzero = false) {
    std::uniform_int_distribution<int> degd(0, maxdeg);
    std::uniform_int_distribution<int> cd(0, F.q() - 1);
    for (;;) {
        std::vector<Fq> c(degd(rng) + 1);
        for (auto& x : c) x = static_cast<Fq>(cd(rng));
        Poly p(F, std::move(c));
        if (!nonzero || !p.is_zero()) return p;
    }
}
} // namespace

TEST_CASE("rational expansion via the Euclidean algorithm") {
    SUBCASE("(T^2+1)/T = [T; T]") {
        RealHandle f = RealHandle::rational(Poly(F2, {1, 0, 1}),
                                            Poly::monomial(F2, 1));
        const CFExpansion& cf = f.cf();
        CHECK(cf.complete);
        CHECK(cf.a0 == Poly::monomial(F2, 1));
        REQUIRE(cf.partials.size() == 1);
        CHECK(cf.partials[0] == Poly::monomial(F2, 1));
        CHECK(cf_classify(cf) == CFClass::rational);
    }
    SUBCASE("a polynomial is [a0]") {
        RealHandle f =
            RealHandle::rational(Poly::monomial(F2, 1), Poly::one(F2));
        CHECK(f.cf().a0 == Poly::monomial(F2, 1));
        CHECK(f.cf().partials.empty());
        CHECK(f.cf().complete);
    }
}

TEST_CASE("quadratic handles return the stored expansion") {
    RealHandle f = golden(F2);
    const CFExpansion& cf = f.cf();
    CHECK(cf_classify(cf) == CFClass::quadratic);
    CHECK(cf.term(0).is_zero());
    CHECK(cf.term(1) == Poly::monomial(F2, 1));
    CHECK(cf.term(17) == Poly::monomial(F2, 1)); // unrolled
}

TEST_CASE("partial quotients of degree 0 are rejected") {
    CHECK_THROWS_AS(
        CFExpansion(Poly::zero(F2), {Poly::one(F2)}, std::nullopt, false),
        domain_error);
}

TEST_CASE("convergent recursions, q = 2, cf = [0; T, T, T]") {
    RealHandle f = golden(F2);
    const ConvergentTable& tab = f.convergents();
    const Poly t = Poly::monomial(F2, 1);
    CHECK(tab.row(0).q == Poly::one(F2));
    CHECK(tab.row(1).q == t);
    CHECK(tab.row(2).q == Poly(F2, {1, 0, 1}));    // T^2+1
    CHECK(tab.row(3).q == Poly::monomial(F2, 3));  // T^3 in char 2
    SUBCASE("dual seeds") {
        CHECK(tab.row(0).qperp.is_zero());         // a0 = 0
        CHECK(tab.row(1).qperp == Poly::one(F2));  // a1*a0 + 1
        CHECK(tab.row(2).qperp == t);
        CHECK(tab.row(3).qperp == Poly(F2, {1, 0, 1}));
    }
    SUBCASE("|q_n| = q^(sum of deg a_i)") {
        for (std::size_t n = 0; n <= 10; ++n) {
            CHECK(tab.row(n).q.degree() == static_cast<int>(n));
            CHECK(tab.degsum(n) == static_cast<int>(n));
        }
    }
}

TEST_CASE("monic normalization of convergents") {
    // q = 3, f = [0; 2T, 2T, ...]: q_n has leading coefficient != 1
    RealHandle f = RealHandle::quadratic(
        CFExpansion(Poly::zero(F3), {Poly(F3, {0, 2})}, 1));
    const ConvergentTable& tab = f.convergents();
    for (std::size_t n = 1; n <= 6; ++n) {
        auto r = tab.row(n);
        CHECK(r.qbar.is_monic());
        CHECK(r.q.scaled(r.c) == r.qbar);
        CHECK(r.qbar.abs() == r.q.abs());
        CHECK(r.qperp.scaled(r.c) == r.qbarperp);
    }
}

TEST_CASE("error formula ||q_n f|| = 1/|q_{n+1}|") {
    RealHandle f = golden(F2);
    const ConvergentTable& tab = f.convergents();
    SUBCASE("all deg a_i = 1: errlog_n = -(n+1)") {
        CHECK(tab.errlog(1) == -2); // q^-2 at n = 1
        CHECK(tab.errlog(0) == -1); // n = 0: -deg a_1
        CHECK(cf_error(tab, 1) == AbsValue::finite(-2));
    }
    SUBCASE("cross-check against the nearest-element norm") {
        LaurentSeries fl = f.laurent(5);
        LaurentSeries tf =
            fl * LaurentSeries::from_poly(Poly::monomial(F2, 1));
        CHECK(tf.nearest_norm().norm == AbsValue::finite(-2)); // ||T f|| = 2^-2
    }
    SUBCASE("rational expansions end: error index past the last term") {
        RealHandle r = RealHandle::rational(Poly(F2, {1, 0, 1}),
                                            Poly::monomial(F2, 1));
        const ConvergentTable& rt = r.convergents();
        CHECK(rt.errlog(0) == -1);
        CHECK_THROWS_AS(rt.errlog(1), domain_error); // needs a_2
    }
}

TEST_CASE("laurent expansion of handles") {
    SUBCASE("golden analog at P = 8: exponents -1, -3, -7") {
        LaurentSeries s = golden(F2).laurent(8);
        CHECK_FALSE(s.exact());
        CHECK(s.floor_log() == -8);
        for (int k = -8; k <= 0; ++k)
            CHECK(s.coeff(k) == ((k == -1 || k == -3 || k == -7) ? 1 : 0));
    }
    SUBCASE("rational (T^2+1)/T is exact at any precision") {
        RealHandle f = RealHandle::rational(Poly(F2, {1, 0, 1}),
                                            Poly::monomial(F2, 1));
        LaurentSeries s = f.laurent(4);
        CHECK(s.exact());
        CHECK(s.coeff(1) == 1);
        CHECK(s.coeff(-1) == 1);
    }
    SUBCASE("P = 0 gives the polynomial part only") {
        LaurentSeries s = golden(F2).laurent(0);
        CHECK_FALSE(s.has_terms());
        CHECK(s.floor_log() == 0);
    }
}

TEST_CASE("certified expansion of truncated series") {
    SUBCASE("re-expansion reproduces the stored quotients") {
        LaurentSeries fl = golden(F2).laurent(12);
        CFExpandResult res = cf_expand_laurent(fl, 100);
        CHECK(res.precision_exhausted); // ran out of floor, not of terms
        CHECK(res.cf.a0.is_zero());
        REQUIRE(res.cf.partials.size() >= 4);
        for (const Poly& a : res.cf.partials)
            CHECK(a == Poly::monomial(F2, 1));
        CHECK(cf_classify(res.cf) == CFClass::undetermined);
    }
    SUBCASE("max_terms is a flag, not an error") {
        LaurentSeries fl = golden(F2).laurent(12);
        CFExpandResult res = cf_expand_laurent(fl, 2);
        CHECK(res.hit_max_terms);
        CHECK(res.cf.partials.size() == 2);
    }
    SUBCASE("exact series terminate") {
        LaurentSeries fl = LaurentSeries::from_rational(
            Poly(F2, {1, 0, 1}), Poly::monomial(F2, 1), 6);
        CFExpandResult res = cf_expand_laurent(fl, 100);
        CHECK(res.cf.complete);
        CHECK(res.cf.partials.size() == 1);
    }
}

TEST_CASE("round trip: rational -> cf -> value") {
    std::mt19937_64 rng(11);
    for (const Field* F : {&F2, &F3}) {
        for (int it = 0; it < 60; ++it) {
            Poly a = random_poly(*F, 8, rng);
            Poly b = random_poly(*F, 8, rng, true);
            RealHandle f = RealHandle::rational(a, b);
            RealHandle back = cf_value(f.cf());
            CHECK(back == f);
        }
    }
}

TEST_CASE("best-approximation identity against the Laurent oracle") {
    // ||q_n f|| * |q_{n+1}| = 1, checked by expanding f and measuring norms
    std::vector<RealHandle> handles = {
        golden(F2),
        RealHandle::quadratic(CFExpansion(
            Poly::zero(F2), {Poly(F2, {0, 1}), Poly(F2, {1, 1, 1})}, 1)),
        RealHandle::quadratic(CFExpansion(
            Poly::monomial(F3, 1), {Poly(F3, {1, 2}), Poly(F3, {0, 0, 1})}, 2)),
    };
    for (const RealHandle& f : handles) {
        const ConvergentTable& tab = f.convergents();
        for (std::size_t n = 0; n <= 10; ++n) {
            const int errlog = tab.errlog(n);
            CHECK(errlog + tab.degsum(n + 1) == 0);
            if (n <= 6) {
                // product floor -P + S_n must reach below errlog
                const int P = tab.degsum(n) - errlog + 2;
                LaurentSeries lf = f.laurent(P);
                LaurentSeries prod =
                    lf * LaurentSeries::from_poly(tab.row(n).q);
                CHECK(prod.nearest_norm().norm == AbsValue::finite(errlog));
            }
        }
    }
}

TEST_CASE("re-expanding a quadratic's series matches its stored quotients") {
    RealHandle f = RealHandle::quadratic(CFExpansion(
        Poly::zero(F2), {Poly(F2, {0, 1}), Poly(F2, {1, 0, 1})}, 1));
    LaurentSeries fl = f.laurent(24);
    CFExpandResult res = cf_expand_laurent(fl, 100);
    REQUIRE(res.cf.partials.size() >= 3);
    CHECK(res.cf.a0 == f.cf().a0);
    for (std::size_t i = 1; i <= res.cf.partials.size(); ++i)
        CHECK(res.cf.term(i) == f.cf().term(i));
}

TEST_CASE("shifted handles") {
    RealHandle f = RealHandle::quadratic(CFExpansion(
        Poly::monomial(F2, 1), {Poly(F2, {0, 1}), Poly(F2, {1, 0, 1})}, 2));
    // f = [T; T | T^2+1]: f_1 = [T; T^2+1 | T^2+1], f_2 purely periodic
    RealHandle f1 = f.shifted(1);
    CHECK(f1.cf().a0 == Poly(F2, {0, 1}));
    CHECK(f1.cf().term(1) == Poly(F2, {1, 0, 1}));
    CHECK(f1.cf().term(2) == Poly(F2, {1, 0, 1}));
    RealHandle f2 = f.shifted(2);
    CHECK(f2.cf().a0 == Poly(F2, {1, 0, 1}));
    CHECK(f2.cf().term(5) == Poly(F2, {1, 0, 1}));
    // consistency: f_1 = 1/(f - a_0)
    LaurentSeries lhs = f1.laurent(6);
    LaurentSeries rhs =
        (f.laurent(14) - LaurentSeries::from_poly(f.cf().a0)).inv(-6);
    CHECK(lhs.agrees_with(rhs));
}

TEST_CASE("concurrent readers share one convergent cache") {
    RealHandle f = golden(F2);
    const ConvergentTable& tab = f.convergents();
    std::vector<std::thread> workers;
    std::atomic<bool> ok{true};
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&] {
            for (std::size_t n = 0; n < 40; ++n)
                if (tab.row(n).q.degree() != static_cast<int>(n)) ok = false;
        });
    for (auto& t : workers) t.join();
    CHECK(ok);
}
