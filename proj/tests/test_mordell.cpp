#include <doctest.h>

#include "shavis/curve.hpp"
#include "shavis/errors.hpp"
#include "shavis/mordell.hpp"
#include "shavis/pointcount.hpp"

using namespace shavis;

namespace {

CurveQ curve_11a1() { return CurveQ::from_ainvs(0, -1, 1, -10, -20, "11a1"); }

bool in_mazur_list(const Int& order, int d1, int d2) {
    if (d1 == 1) return order <= 10 || order == 12;
    if (d1 == 2) return d2 == 2 || d2 == 4 || d2 == 6 || d2 == 8;
    return false;
}

} // namespace

TEST_CASE("torsion of 11a1 is Z/5") {
    TorsionData t = torsion_subgroup(curve_11a1());
    CHECK(t.order == 5);
    CHECK(t.d1 == 1);
    CHECK(t.d2 == 5);
    REQUIRE(t.generators.size() == 1);
    const PointQ& P = t.generators[0];
    CHECK(on_curve(curve_11a1(), P));
    CHECK(mul_point(curve_11a1(), P, 5).infinity);
    CHECK_FALSE(mul_point(curve_11a1(), P, 1).infinity);
}

TEST_CASE("torsion of y^2 = x^3 - x is Z/2 x Z/2") {
    CurveQ c = CurveQ::from_ainvs(0, 0, 0, -1, 0);
    TorsionData t = torsion_subgroup(c);
    CHECK(t.order == 4);
    CHECK(t.d1 == 2);
    CHECK(t.d2 == 2);
    REQUIRE(t.generators.size() == 2);
    for (const PointQ& P : t.generators) {
        CHECK(on_curve(c, P));
        CHECK(mul_point(c, P, 2).infinity);
    }
    CHECK_FALSE(t.generators[0] == t.generators[1]);
}

TEST_CASE("torsion of 37a1 is trivial") {
    TorsionData t = torsion_subgroup(CurveQ::from_ainvs(0, 0, 1, -1, 0));
    CHECK(t.order == 1);
    CHECK(t.generators.empty());
}

TEST_CASE("torsion of the worked pairs") {
    CHECK(torsion_subgroup(CurveQ::from_ainvs(1, 1, 1, -352, -2431)).order == 4);
    CHECK(torsion_subgroup(CurveQ::from_ainvs(1, 0, 0, -607, 5721)).order == 1);
    CHECK(torsion_subgroup(CurveQ::from_ainvs(1, -1, 1, -8109, -279017)).order == 1);
    CHECK(torsion_subgroup(CurveQ::from_ainvs(0, -1, 1, -2, 2)).order == 1);
}

TEST_CASE("larger torsion groups land in Mazur's list with verified generators") {
    struct Fixture {
        std::array<long, 5> a;
        long order;
        int d1, d2;
    };
    const Fixture fixtures[] = {
        {{1, 0, 1, 4, -6}, 6, 1, 6},      // 14a1
        {{1, 1, 1, -10, -10}, 8, 1, 8},   // 15a1
        {{1, -1, 1, -1, -14}, 4, 1, 4},   // 17a1
        {{1, -1, 1, -3, 3}, 7, 1, 7},     // 26b1
        {{0, 1, 0, 4, 4}, 6, 1, 6},       // 20a1
        {{0, -1, 0, -4, 4}, 8, 2, 4},     // 24a1
        {{0, 0, 0, 0, 1}, 6, 1, 6},       // 36a1
    };
    for (const Fixture& f : fixtures) {
        CurveQ c = CurveQ::from_ainvs(f.a[0], f.a[1], f.a[2], f.a[3], f.a[4]);
        TorsionData t = torsion_subgroup(c);
        CHECK(t.order == f.order);
        CHECK(t.d1 == f.d1);
        CHECK(t.d2 == f.d2);
        CHECK(in_mazur_list(t.order, t.d1, t.d2));
        for (const PointQ& P : t.generators) CHECK(on_curve(c, P));
        REQUIRE(!t.generators.empty());
        // the first generator has exact order d2
        const PointQ& G = t.generators[0];
        CHECK(mul_point(c, G, t.d2).infinity);
        for (int q = 2; q <= t.d2; ++q)
            if (t.d2 % q == 0 && (q == 2 || q == 3 || q == 5 || q == 7))
                CHECK_FALSE(mul_point(c, G, t.d2 / q).infinity);
    }
}

TEST_CASE("torsion order divides the good reduction counts up to 100") {
    const CurveQ curves[] = {curve_11a1(), CurveQ::from_ainvs(1, 1, 1, -10, -10),
                             CurveQ::from_ainvs(1, 1, 1, -352, -2431)};
    for (const CurveQ& c : curves) {
        TorsionData t = torsion_subgroup(c);
        for (int64_t p : primes_upto(100)) {
            if (p == 2) continue;
            Int P((long)p);
            if (mpz_divisible_p(c.disc().get_mpz_t(), P.get_mpz_t())) continue;
            Int np = P + 1 - ap_naive(c, P).a_p;
            CHECK(mpz_divisible_p(np.get_mpz_t(), t.order.get_mpz_t()));
        }
    }
}

TEST_CASE("rank bookkeeping: ingestion and provenance") {
    RankSource src;
    src.table_rank = 2;
    RankData r = rank_of(curve_11a1(), src);
    CHECK(r.rank == 2);
    CHECK(r.provenance == RankProvenance::ingested);

    RankSource none;
    CHECK_THROWS_AS(rank_of(curve_11a1(), none), RankUnavailableError);
}

TEST_CASE("analytic rank classification at orders 0 and 1") {
    RankSource src;
    src.allow_analytic = true;
    RankData r0 = rank_of(curve_11a1(), src);
    CHECK(r0.rank == 0);
    CHECK(r0.provenance == RankProvenance::analytic_order_0);

    RankData r1 = rank_of(CurveQ::from_ainvs(0, 0, 1, -1, 0), src);
    CHECK(r1.rank == 1);
    CHECK(r1.provenance == RankProvenance::analytic_order_1);

    // rank-2 curve: w = +1 and L(1) ~ 0, so no analytic claim is made
    CHECK_THROWS_AS(rank_of(CurveQ::from_ainvs(1, 0, 0, -607, 5721), src),
                    RankUnavailableError);
}
