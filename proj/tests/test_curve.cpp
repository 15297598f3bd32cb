#include <doctest.h>

#include <random>

#include "shavis/curve.hpp"
#include "shavis/curve_fp.hpp"
#include "shavis/errors.hpp"

using namespace shavis;

namespace {

CurveQ curve_11a1() { return CurveQ::from_ainvs(0, -1, 1, -10, -20, "11a1"); }

std::mt19937_64 rng(20240817);

Int rnd_int(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return Int(d(rng));
}

CurveQ random_curve() {
    for (;;) {
        try {
            return CurveQ::from_ainvs(rnd_int(-1, 1), rnd_int(-2, 2), rnd_int(-1, 1),
                                      rnd_int(-30, 30), rnd_int(-60, 60));
        } catch (const SingularCurveError&) {
        }
    }
}

Isomorphism random_integral_iso() {
    Isomorphism iso;
    iso.u = 1;
    iso.r = rnd_int(-3, 3);
    iso.s = rnd_int(-3, 3);
    iso.t = rnd_int(-3, 3);
    return iso;
}

Isomorphism random_rational_iso() {
    static const Rat us[] = {Rat(1), Rat(2), Rat(1, 2), Rat(3), Rat(1, 3), Rat(6)};
    std::uniform_int_distribution<int> d(0, 5);
    Isomorphism iso;
    iso.u = us[d(rng)];
    iso.r = Rat(rnd_int(-4, 4)) / rnd_int(1, 3);
    iso.s = Rat(rnd_int(-4, 4)) / rnd_int(1, 3);
    iso.t = Rat(rnd_int(-4, 4)) / rnd_int(1, 3);
    return iso;
}

} // namespace

TEST_CASE("curve construction computes the classical invariants") {
    CurveQ c = CurveQ::from_ainvs(0, 0, 0, -1, 0);
    CHECK(c.disc() == 64);
    CHECK(c.c4() == 48);
    CHECK(c.j_num() == 1728);
    CHECK(c.j_den() == 1);

    CurveQ e = curve_11a1();
    CHECK(e.disc() == Int(-161051));  // -11^5
    CHECK(e.c4() == 496);
    CHECK(e.c6() == 20008);
}

TEST_CASE("singular input is rejected") {
    CHECK_THROWS_AS(CurveQ::from_ainvs(0, 0, 0, 0, 0), SingularCurveError);
    CHECK_THROWS_AS(CurveQ::from_ainvs(1, 0, 0, 0, 0), SingularCurveError);
}

TEST_CASE("b- and c-invariant identities hold on random curves") {
    for (int i = 0; i < 1000; ++i) {
        CurveQ c = random_curve();
        CHECK(4 * c.b8() == c.b2() * c.b6() - c.b4() * c.b4());
        CHECK(c.c4() * c.c4() * c.c4() - c.c6() * c.c6() == 1728 * c.disc());
    }
}

TEST_CASE("transform by the identity is the identity") {
    CurveQ c = curve_11a1();
    CHECK(transform(c, Isomorphism::identity()) == c);
}

TEST_CASE("transform composition round-trips through a non-minimal model") {
    CurveQ c = curve_11a1();
    // scale up by u = 1/2 (disc * 2^12), then back down by u = 2
    CurveQ big = transform(c, Isomorphism::scaling(Rat(1, 2)));
    CHECK(big.disc() == c.disc() * 4096);
    CurveQ back = transform(big, Isomorphism::scaling(Rat(2)));
    CHECK(back == c);
}

TEST_CASE("transform scaling laws for disc, c4, c6") {
    ModelQ m = CurveQ::from_ainvs(0, 0, 0, -1, 0).model();
    Isomorphism iso = Isomorphism::scaling(Rat(2));
    ModelQ out = transform_model(m, iso);
    Rat u12 = Rat(4096);  // 2^12
    CHECK(out.disc() * u12 == m.disc());
    CHECK(out.c4() * Rat(16) == m.c4());
    CHECK(out.c6() * Rat(64) == m.c6());
    // non-integral result must be refused when integrality is demanded
    CHECK_THROWS_AS(transform(CurveQ::from_ainvs(0, 0, 0, -1, 0), iso),
                    NonIntegralResultError);
}

TEST_CASE("transform is functorial on random (curve, iso, iso) triples") {
    for (int i = 0; i < 100; ++i) {
        CurveQ c = random_curve();
        Isomorphism i1 = random_rational_iso();
        Isomorphism i2 = random_rational_iso();
        ModelQ two_steps = transform_model(transform_model(c.model(), i1), i2);
        ModelQ one_step = transform_model(c.model(), i1.compose(i2));
        CHECK(two_steps == one_step);
    }
}

TEST_CASE("iso composition with inverse is the identity") {
    for (int i = 0; i < 50; ++i) {
        Isomorphism iso = random_rational_iso();
        Isomorphism id = iso.compose(iso.inverse());
        CHECK(id == Isomorphism::identity());
    }
}

TEST_CASE("j-invariant is preserved by every transform") {
    for (int i = 0; i < 100; ++i) {
        CurveQ c = random_curve();
        ModelQ out = transform_model(c.model(), random_rational_iso());
        Rat j_out = out.c4() * out.c4() * out.c4() / out.disc();
        CHECK(j_out == c.j_invariant());
    }
}

TEST_CASE("minimal model of 11a1 is 11a1 itself") {
    auto [m, iso] = minimal_model(curve_11a1());
    CHECK(m == curve_11a1());
    CHECK(iso == Isomorphism::identity());
}

TEST_CASE("minimal model recovers 11a1 from a scaled model") {
    CurveQ big = transform(curve_11a1(), Isomorphism::scaling(Rat(1, 2)));
    auto [m, iso] = minimal_model(big);
    CHECK(m == curve_11a1());
    CHECK(iso.u == 2);
}

TEST_CASE("minimal model standard form, disc shrinkage, idempotence") {
    for (int i = 0; i < 50; ++i) {
        CurveQ c = random_curve();
        auto [m, iso] = minimal_model(c);
        CHECK((m.a1() == 0 || m.a1() == 1));
        CHECK((m.a3() == 0 || m.a3() == 1));
        CHECK(m.a2() >= -1);
        CHECK(m.a2() <= 1);
        CHECK(abs(m.disc()) <= abs(c.disc()));
        auto [m2, iso2] = minimal_model(m);
        CHECK(m2 == m);
        CHECK(iso2 == Isomorphism::identity());
        // the returned isomorphism really maps input to output
        CHECK(transform_model(c.model(), iso) == m.model());
    }
}

TEST_CASE("minimal model through a messy rational change of variables") {
    CurveQ c = CurveQ::from_ainvs(1, -1, 1, -3, 3);  // 26b1
    ModelQ moved = transform_model(c.model(), {Rat(1, 6), 4, 3, 7});
    auto [big, iso] = integralize(moved);
    auto [m, back] = minimal_model(big);
    CHECK(m == c);
}

TEST_CASE("reduction mod p sets the singular flag by divisibility") {
    CurveQ e = curve_11a1();
    CHECK_FALSE(reduce_mod_p(e, 7).singular());
    CHECK(reduce_mod_p(e, 11).singular());
    CurveQ c = CurveQ::from_ainvs(0, 0, 0, -1, 0);
    CHECK(reduce_mod_p(c, 2).singular());
}

TEST_CASE("group law: identity, inverses, the F_5 example") {
    CurveQ c = CurveQ::from_ainvs(0, 0, 0, 1, 0);  // y^2 = x^3 + x
    CurveFp E = reduce_mod_p(c, 5);
    auto pts = E.enumerate();
    CHECK(pts.size() == 4);  // O, (0,0), (2,0), (3,0)
    for (const PointFp& P : pts) {
        CHECK(E.add(P, PointFp::zero()) == P);
        CHECK(E.add(P, E.negate(P)) == PointFp::zero());
        // order of every point divides the group order
        CHECK(E.mul(P, (uint64_t)pts.size()) == PointFp::zero());
    }
}

TEST_CASE("group law rejects points off the curve") {
    CurveFp E = reduce_mod_p(curve_11a1(), 7);
    PointFp bogus = PointFp::affine(1, 1);
    if (!E.contains(bogus))
        CHECK_THROWS_AS(E.add(bogus, PointFp::zero()), PointNotOnCurveError);
}

TEST_CASE("group law associativity and commutativity on random triples") {
    const int primes[] = {5, 7, 11, 13, 17, 19, 23};
    int done = 0;
    while (done < 1000) {
        CurveQ c = random_curve();
        std::uniform_int_distribution<int> dp(0, 6);
        Int p(primes[dp(rng)]);
        CurveFp E = reduce_mod_p(c, p);
        if (E.singular()) continue;
        auto pts = E.enumerate();
        std::uniform_int_distribution<size_t> di(0, pts.size() - 1);
        PointFp P = pts[di(rng)], Q = pts[di(rng)], R = pts[di(rng)];
        CHECK(E.add(P, Q) == E.add(Q, P));
        CHECK(E.add(E.add(P, Q), R) == E.add(P, E.add(Q, R)));
        // each point's order divides the brute-force group order
        CHECK(E.mul(P, (uint64_t)pts.size()) == PointFp::zero());
        ++done;
    }
}
