#include "doctest.h"

#include <random>

#include "qj/weyl.hpp"

using namespace qj;

namespace {
const Field& F2 = Field::get(2, 1);

RealHandle golden(const Field& F) {
    return RealHandle::quadratic(
        CFExpansion(Poly::zero(F), {Poly::monomial(F, 1)}, 1));
}
} // namespace

TEST_CASE("character exponent") {
    SUBCASE("c_{-1} = 1 with b = 1 gives exponent 1 at q = 2") {
        LaurentSeries g = LaurentSeries::monomial(F2, -1);
        CHECK(char_exponent(g, Poly::one(F2)) == 1);
    }
    SUBCASE("trivial on A") {
        for (std::uint64_t v = 0; v < 16; ++v) {
            LaurentSeries g = LaurentSeries::from_poly(Poly::decode(F2, v));
            CHECK(char_exponent(g, Poly(F2, {1, 1})) == 0);
        }
    }
    SUBCASE("additive in g") {
        std::mt19937_64 rng(9);
        std::uniform_int_distribution<int> cd(0, 1);
        const Poly b = Poly(F2, {1, 1});
        for (int it = 0; it < 100; ++it) {
            std::vector<Fq> ca(6), cb(6);
            for (auto& x : ca) x = static_cast<Fq>(cd(rng));
            for (auto& x : cb) x = static_cast<Fq>(cd(rng));
            LaurentSeries g = LaurentSeries::from_coeffs(F2, -6, false, ca);
            LaurentSeries h = LaurentSeries::from_coeffs(F2, -6, false, cb);
            CHECK(char_exponent(g + h, b) ==
                  (char_exponent(g, b) + char_exponent(h, b)) % 2);
        }
    }
    SUBCASE("e0(x_ab) = e0(b x_a): exponent(a*g, b) = exponent(g, a*b)") {
        std::mt19937_64 rng(13);
        std::uniform_int_distribution<std::uint64_t> pd(1, 15);
        LaurentSeries fl = golden(F2).laurent(12);
        for (int it = 0; it < 50; ++it) {
            Poly a = Poly::decode(F2, pd(rng));
            Poly b = Poly::decode(F2, pd(rng));
            LaurentSeries ag = fl * LaurentSeries::from_poly(a);
            CHECK(char_exponent(ag, b) == char_exponent(fl, a * b));
        }
    }
    SUBCASE("precision exhaustion surfaces") {
        LaurentSeries g = golden(F2).laurent(2);
        CHECK_THROWS_AS(char_exponent(g, Poly::monomial(F2, 4)),
                        precision_error);
    }
}

TEST_CASE("weyl sums") {
    SUBCASE("f in A: all exponents zero, magnitude 1") {
        RealHandle f = RealHandle::rational(Poly::monomial(F2, 1), Poly::one(F2));
        for (int d : {0, 2, 4}) {
            WeylSum w = weyl_sum(f, Poly(F2, {1, 1}), d);
            CHECK(w.counts[0] == w.total());
            CHECK(w.magnitude == doctest::Approx(1.0));
        }
    }
    SUBCASE("golden analog, b = 1, d = 0: counts {0:1, 1:1}, magnitude 0") {
        WeylSum w = weyl_sum(golden(F2), Poly::one(F2), 0);
        REQUIRE(w.counts.size() == 2);
        CHECK(w.counts[0] == 1);
        CHECK(w.counts[1] == 1);
        CHECK(w.magnitude == doctest::Approx(0.0));
    }
    SUBCASE("golden analog, b = 1, d = 4: balanced histogram, sum 0") {
        WeylSum w = weyl_sum(golden(F2), Poly::one(F2), 4);
        CHECK(w.total() == 32); // q^(d+1)
        CHECK(w.counts[0] == w.counts[1]);
        CHECK(w.magnitude == doctest::Approx(0.0));
    }
    SUBCASE("histogram total is q^(d+1) in every field") {
        for (int q : {2, 3, 4}) {
            const Field& F = Field::get_q(q);
            RealHandle f = RealHandle::quadratic(
                CFExpansion(Poly::zero(F), {Poly::monomial(F, 1)}, 1));
            WeylSum w = weyl_sum(f, Poly::one(F), 3);
            CHECK(w.total() == poly_count_up_to(F, 3));
        }
    }
}

TEST_CASE("telescoping constancy") {
    SUBCASE("golden analog with b = 1: constant value 0 from delta = 0") {
        TelescopingReport r =
            telescoping_check(golden(F2), Poly::one(F2), 6);
        CHECK(r.delta == 0);
        CHECK(r.constant);
        // the d = 0 histogram sums to zero, so all of them do
        CHECK(r.rows[0].counts[0] == r.rows[0].counts[1]);
        for (const TelescopingRow& row : r.rows)
            CHECK(row.magnitude == doctest::Approx(0.0));
    }
    SUBCASE("automatic search finds b = 1 for the golden analog") {
        TelescopingReport r = telescoping_check(golden(F2), std::nullopt, 5);
        CHECK(r.b == Poly::one(F2));
        CHECK(r.constant);
    }
    SUBCASE("irrational corpus handles: exact constancy up to d = 8") {
        std::vector<RealHandle> handles = {
            golden(F2),
            RealHandle::quadratic(CFExpansion(
                Poly::zero(F2), {Poly(F2, {0, 1}), Poly(F2, {1, 1, 1})}, 1)),
            golden(Field::get(3, 1)),
        };
        for (const RealHandle& f : handles) {
            TelescopingReport r = telescoping_check(f, std::nullopt, 8);
            CHECK(r.constant);
            // normalized magnitude decays like q^-(d+1) once the sum is fixed
            for (std::size_t i = 1; i < r.rows.size(); ++i) {
                const double expected =
                    r.rows[0].magnitude /
                    std::pow(static_cast<double>(f.field().q()),
                             static_cast<double>(r.rows[i].d - r.rows[0].d));
                CHECK(r.rows[i].magnitude == doctest::Approx(expected));
            }
        }
    }
    SUBCASE("f in A: no suitable b within the budget") {
        RealHandle f = RealHandle::rational(Poly::monomial(F2, 1), Poly::one(F2));
        CHECK_THROWS_AS(telescoping_check(f, std::nullopt, 6, 3), domain_error);
    }
}
