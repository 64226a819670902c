#include "doctest.h"

#include <random>
#include <set>

#include "qj/poly.hpp"

using namespace qj;

namespace {
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

TEST_CASE("basic arithmetic") {
    const Field& F2 = Field::get(2, 1);
    const Poly t = Poly::monomial(F2, 1);
    const Poly t1 = t + Poly::one(F2);
    CHECK((t1 * t1) == Poly(F2, {1, 0, 1})); // (T+1)^2 = T^2+1 in char 2

    auto [q, r] = Poly(F2, {1, 0, 1}).divmod(t); // T^2+1 = T*T + 1
    CHECK(q == t);
    CHECK(r == Poly::one(F2));

    const Field& F3 = Field::get(3, 1);
    CHECK(Poly(F3, {1, 2}).scaled(2) == Poly(F3, {2, 1})); // 2*(2T+1) = T+2
}

TEST_CASE("absolute value") {
    const Field& F2 = Field::get(2, 1);
    const Poly a = Poly(F2, {0, 1, 0, 1}); // T^3+T
    CHECK(a.abs() == AbsValue::finite(3)); // |a| = q^3
    CHECK(Poly::zero(F2).abs() == AbsValue::zero());
    const Field& F3 = Field::get(3, 1);
    CHECK(Poly::constant(F3, 2).abs() == AbsValue::finite(0)); // units
}

TEST_CASE("absolute value is multiplicative and ultrametric") {
    std::mt19937_64 rng(7);
    for (int q : {2, 3, 4}) {
        const Field& F = Field::get_q(q);
        for (int it = 0; it < 200; ++it) {
            Poly a = random_poly(F, 6, rng, true);
            Poly b = random_poly(F, 6, rng, true);
            CHECK((a * b).abs().log() == a.abs().log() + b.abs().log());
            Poly s = a + b;
            AbsValue bound = std::max(a.abs(), b.abs());
            CHECK(s.abs() <= bound);
            if (a.abs() != b.abs()) CHECK(s.abs() == bound);
        }
    }
}

TEST_CASE("divmod round trip, exhaustive at q = 2 up to degree 6") {
    const Field& F2 = Field::get(2, 1);
    const std::uint64_t n = poly_count_up_to(F2, 6);
    for (std::uint64_t i = 0; i < n; ++i) {
        const Poly a = Poly::decode(F2, i);
        for (std::uint64_t j = 1; j < n; ++j) {
            const Poly b = Poly::decode(F2, j);
            auto [q, r] = a.divmod(b);
            CHECK(q * b + r == a);
            CHECK(r.degree() < b.degree());
        }
    }
}

TEST_CASE("division by zero") {
    const Field& F2 = Field::get(2, 1);
    CHECK_THROWS_AS(Poly::one(F2).divmod(Poly::zero(F2)), domain_error);
}

TEST_CASE("monicize") {
    const Field& F3 = Field::get(3, 1);
    const Poly a = Poly(F3, {1, 2}); // 2T+1
    auto [c, m] = a.monicize();
    CHECK(c == 2);
    CHECK(m == Poly(F3, {2, 1})); // T+2
    CHECK(a.scaled(c) == m);
    CHECK(m.abs() == a.abs());
    SUBCASE("idempotent on monic input") {
        auto [c2, m2] = m.monicize();
        CHECK(c2 == 1);
        CHECK(m2 == m);
    }
    CHECK_THROWS_AS(Poly::zero(F3).monicize(), domain_error);
}

TEST_CASE("evaluation and powers") {
    const Field& F3 = Field::get(3, 1);
    const Poly a = Poly(F3, {1, 1, 1}); // T^2+T+1
    CHECK(a.eval(1) == 0);              // 3 = 0 mod 3
    CHECK(a.eval(2) == 1);              // 4+2+1 = 7 = 1 mod 3
    CHECK(a.pow(3).degree() == 6);
    CHECK(a.pow(0) == Poly::one(F3));
}

TEST_CASE("enumeration counts and determinism") {
    SUBCASE("q=2 monic degree 1") {
        const Field& F2 = Field::get(2, 1);
        std::vector<Poly> got;
        for_each_monic(F2, 1, [&](const Poly& p) { got.push_back(p); });
        REQUIRE(got.size() == 2);
        CHECK(got[0] == Poly(F2, {0, 1})); // T
        CHECK(got[1] == Poly(F2, {1, 1})); // T+1
    }
    SUBCASE("q=2 all deg <= 2 gives q^(d+1) = 8 distinct polynomials") {
        const Field& F2 = Field::get(2, 1);
        std::set<std::uint64_t> seen;
        for_each_poly(F2, 2, [&](const Poly& p) {
            CHECK(p.degree() <= 2);
            seen.insert(p.encode());
        });
        CHECK(seen.size() == 8);
    }
    SUBCASE("q=3 monic degree 2 gives q^d = 9") {
        const Field& F3 = Field::get(3, 1);
        std::set<std::uint64_t> seen;
        for_each_monic(F3, 2, [&](const Poly& p) {
            CHECK(p.degree() == 2);
            CHECK(p.is_monic());
            seen.insert(p.encode());
        });
        CHECK(seen.size() == 9);
    }
}

TEST_CASE("gcd") {
    const Field& F2 = Field::get(2, 1);
    const Poly t = Poly::monomial(F2, 1);
    const Poly a = t * (t + Poly::one(F2));
    const Poly b = t * t;
    CHECK(gcd(a, b) == t);
    CHECK(gcd(a, Poly::zero(F2)) == a); // gcd(a, 0) = a (monic already)
}
