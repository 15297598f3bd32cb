#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "shavis/curve.hpp"
#include "shavis/localdata.hpp"
#include "shavis/pointcount.hpp"

using namespace shavis;

namespace {

CurveQ curve_11a1() { return CurveQ::from_ainvs(0, -1, 1, -10, -20, "11a1"); }
CurveQ curve_37a1() { return CurveQ::from_ainvs(0, 0, 1, -1, 0, "37a1"); }

} // namespace

TEST_CASE("tate at 11 for 11a1: split I5") {
    LocalData d = tate_local(curve_11a1(), 11);
    CHECK(d.kodaira == KodairaType::In(5));
    CHECK(d.f_p == 1);
    CHECK(d.c_p == 5);
    CHECK(d.kind == ReductionKind::split_multiplicative);
    CHECK(d.v_delta == 5);
    CHECK(d.phi_order == 5);
}

TEST_CASE("tate at a good prime") {
    LocalData d = tate_local(curve_11a1(), 7);
    CHECK(d.kodaira == KodairaType::In(0));
    CHECK(d.f_p == 0);
    CHECK(d.c_p == 1);
    CHECK(d.kind == ReductionKind::good);
}

TEST_CASE("tate at 37 for 37a1: nonsplit I1") {
    LocalData d = tate_local(curve_37a1(), 37);
    CHECK(d.kodaira == KodairaType::In(1));
    CHECK(d.f_p == 1);
    CHECK(d.c_p == 1);
    CHECK(d.kind == ReductionKind::nonsplit_multiplicative);
}

TEST_CASE("tate 2-adic additive: y^2 = x^3 - x has type III, f=5 at 2") {
    CurveQ c = CurveQ::from_ainvs(0, 0, 0, -1, 0);
    LocalData d = tate_local(c, 2);
    CHECK(d.kodaira == KodairaType{KodairaKind::III, 0});
    CHECK(d.f_p == 5);
    CHECK(d.c_p == 2);
    CHECK(d.kind == ReductionKind::additive);
    CHECK(conductor(c) == 32);
}

TEST_CASE("tate 3-adic additive: y^2 + y = x^3 has type II at 3") {
    CurveQ c = CurveQ::from_ainvs(0, 0, 1, 0, 0);
    LocalData d = tate_local(c, 3);
    CHECK(d.kodaira == KodairaType{KodairaKind::II, 0});
    CHECK(d.f_p == 3);
    CHECK(d.c_p == 1);
    CHECK(conductor(c) == 27);
}

TEST_CASE("conductors") {
    CHECK(conductor(curve_11a1()) == 11);
    CHECK(conductor(CurveQ::from_ainvs(1, -1, 1, -8109, -279017)) == 2834);
    CHECK(conductor(CurveQ::from_ainvs(1, 0, 0, -607, 5721)) == 2834);
}

TEST_CASE("semistability") {
    auto [ss1, add1] = is_semistable(curve_11a1());
    CHECK(ss1);
    CHECK(add1.empty());
    auto [ss2, add2] = is_semistable(CurveQ::from_ainvs(0, 0, 0, -1, 0));
    CHECK_FALSE(ss2);
    REQUIRE(add2.size() == 1);
    CHECK(add2[0] == 2);
    auto [ss3, add3] = is_semistable(CurveQ::from_ainvs(1, -1, 1, -8109, -279017));
    CHECK(ss3);
}

TEST_CASE("tamagawa products of the worked pairs") {
    CHECK(tamagawa_product(CurveQ::from_ainvs(1, 0, 0, -607, 5721)) == 24);
    CHECK(tamagawa_product(CurveQ::from_ainvs(1, 1, 1, -352, -2431)) == 20);
    CHECK(tamagawa_product(CurveQ::from_ainvs(1, -1, 1, -8109, -279017)) == 1);
    CHECK(tamagawa_product(curve_11a1()) == 5);
}

TEST_CASE("empty product of Tamagawa numbers is 1") {
    CHECK(tamagawa_product(std::vector<LocalData>{}) == 1);
}

TEST_CASE("local data invariant table vs an independent route") {
    // For multiplicative primes: split <=> a_p = +1 by counting points, and
    // c_p follows from v(disc) alone.  Two code paths, one assertion.
    std::ifstream f(std::string(SHAVIS_DATA_DIR) + "/curves_conductor_le200.txt");
    REQUIRE(f.good());
    std::string line;
    int tested = 0;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::string cond, cls, num, ainvs, rank, tor;
        is >> cond >> cls >> num >> ainvs >> rank >> tor;
        std::istringstream bs(ainvs.substr(1, ainvs.size() - 2));
        std::vector<Int> a;
        std::string t;
        while (std::getline(bs, t, ',')) a.push_back(Int(t));
        CurveQ c = CurveQ::from_ainvs(a[0], a[1], a[2], a[3], a[4]);
        for (const LocalData& d : local_data(c)) {
            if (d.kind == ReductionKind::good || d.kind == ReductionKind::additive)
                continue;
            INFO("curve ", cond + cls + num, " at p=", d.p.get_str());
            int v = valuation(c.disc(), d.p);
            CHECK(d.v_delta == v);
            CHECK(d.f_p == 1);
            CHECK(d.kodaira == KodairaType::In(v));
            // independent split detection: the smooth locus of the reduction
            // has p-1 points for split nodes and p+1 for nonsplit ones
            if (d.p <= 250) {
                uint64_t p = d.p.get_ui();
                auto red = [&](const Int& z) { return mod_floor(z, d.p).get_ui(); };
                uint64_t a1 = red(c.a1()), a2 = red(c.a2()), a3 = red(c.a3()),
                         a4 = red(c.a4()), a6 = red(c.a6());
                int64_t smooth = 1;  // infinity
                for (uint64_t x = 0; x < p; ++x)
                    for (uint64_t y = 0; y < p; ++y) {
                        uint64_t F = (y * y + a1 * x * y + a3 * y + 6 * p * p * p -
                                      x * x * x - a2 * x * x - a4 * x - a6) % p;
                        if (F != 0) continue;
                        uint64_t Fx = (a1 * y + 6 * p * p * p - 3 * x * x -
                                       2 * a2 * x - a4) % p;
                        uint64_t Fy = (2 * y + a1 * x + a3) % p;
                        if (Fx != 0 || Fy != 0) ++smooth;
                    }
                int64_t expect = d.kind == ReductionKind::split_multiplicative
                                     ? (int64_t)p - 1
                                     : (int64_t)p + 1;
                CHECK(smooth == expect);
            }
            if (d.kind == ReductionKind::split_multiplicative)
                CHECK(d.c_p == v);
            else
                CHECK(d.c_p == (v % 2 == 0 ? 2 : 1));
            CHECK(mpz_divisible_p(d.phi_order.get_mpz_t(), d.c_p.get_mpz_t()));
            ++tested;
        }
    }
    CHECK(tested > 50);
}

TEST_CASE("conductor exponent bounds") {
    // f_p <= 2 for p >= 5; f_p <= 8 at 2; f_p <= 5 at 3
    const CurveQ curves[] = {
        CurveQ::from_ainvs(0, 0, 0, -1, 0),   CurveQ::from_ainvs(0, 0, 1, 0, 0),
        CurveQ::from_ainvs(0, 0, 0, 4, 0),    CurveQ::from_ainvs(0, 0, 0, 0, 1),
        CurveQ::from_ainvs(0, -1, 0, -4, 4),  CurveQ::from_ainvs(0, -1, 1, -7, 10),
        CurveQ::from_ainvs(1, -1, 0, -2, -1), CurveQ::from_ainvs(0, 1, 1, -9, -15),
    };
    for (const CurveQ& c : curves) {
        for (const LocalData& d : local_data(c)) {
            if (d.p == 2) CHECK(d.f_p <= 8);
            else if (d.p == 3) CHECK(d.f_p <= 5);
            else CHECK(d.f_p <= 2);
        }
    }
}

TEST_CASE("conductor divides the minimal discriminant with equal radical") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 25; ++i) {
        CurveQ c = [&] {
            for (;;) {
                try {
                    std::uniform_int_distribution<int> d4(-20, 20), d6(-40, 40),
                        d1(0, 1), d2(-1, 1);
                    return CurveQ::from_ainvs(d1(rng), d2(rng), d1(rng), d4(rng),
                                              d6(rng));
                } catch (const SingularCurveError&) {
                }
            }
        }();
        auto [m, iso] = minimal_model(c);
        Int N = conductor(m);
        CHECK(mpz_divisible_p(m.disc().get_mpz_t(), N.get_mpz_t()));
        Factorization fn = factorize(N), fd = factorize(m.disc());
        std::vector<Int> rn, rd;
        for (auto& [p, e] : fn) rn.push_back(p);
        for (auto& [p, e] : fd) rd.push_back(p);
        CHECK(rn == rd);
    }
}

TEST_CASE("tate output is invariant under integral changes of variables") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> dr(-3, 3);
    const CurveQ curves[] = {curve_11a1(), CurveQ::from_ainvs(0, 0, 0, -1, 0),
                             CurveQ::from_ainvs(0, -1, 0, -4, 4)};
    for (const CurveQ& c : curves) {
        Factorization fac = factorize(c.disc());
        for (int i = 0; i < 17; ++i) {
            Isomorphism iso;
            iso.u = 1;
            iso.r = dr(rng);
            iso.s = dr(rng);
            iso.t = dr(rng);
            CurveQ moved = transform(c, iso);
            for (const auto& [p, e] : fac) {
                LocalData d0 = tate_local(c, p);
                LocalData d1 = tate_local(moved, p);
                CHECK(d0.kodaira == d1.kodaira);
                CHECK(d0.f_p == d1.f_p);
                CHECK(d0.c_p == d1.c_p);
                CHECK(d0.kind == d1.kind);
            }
        }
    }
}
