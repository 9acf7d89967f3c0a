#include "doctest.h"
#include "oracles.hpp"
#include "uhg/families.hpp"

using namespace uhg;

namespace {

const Field EX = Field::exact();

Coefficient q(const char* s) { return Coefficient::parse(s, EX); }

UnifiedParams exact_base() {
    UnifiedParams p;
    p.lnA = q("0");
    p.lnB = q("1");
    p.lnC = q("1");
    return p;
}

}  // namespace

TEST_CASE("unified polynomials at pinned rational points") {
    UnifiedParams p = exact_base();
    p.r = 1;
    p.k = 0;
    p.m = 2;
    p.alphas = {q("1/3")};
    p.x = q("2/3");
    p.y = q("-1/4");
    const char* w1[] = {"3",        "7/2",        "29/6",   "107/9",
                        "4927/108", "136963/648", "2232827/1944"};
    for (int n = 0; n <= 6; ++n) CHECK(unified_poly(p, n).str() == w1[n]);

    p.r = 2;
    p.k = 1;
    p.alphas = {q("1/3"), q("-2/5")};
    const char* w2[] = {"0",        "0",             "15/7",
                        "555/98",   "3625/343",      "1026850/21609",
                        "193912375/605052"};
    for (int n = 0; n <= 6; ++n) CHECK(unified_poly(p, n).str() == w2[n]);

    p.r = 1;
    p.k = 1;
    p.m = 3;
    p.alphas = {q("-1")};
    p.x = q("1/2");
    p.y = q("1/3");
    const char* w3[] = {"0", "1/2", "0", "-3/8", "4", "25/32", "-15"};
    for (int n = 0; n <= 6; ++n) CHECK(unified_poly(p, n).str() == w3[n]);
}

TEST_CASE("numbers specialization ignores the arguments") {
    UnifiedParams p = exact_base();
    p.r = 1;
    p.k = 1;
    p.m = 2;
    p.alphas = {q("-1")};
    p.x = q("5/7");  // must not leak into the numbers
    p.y = q("-3");
    auto gold = oracles::genocchi(9);
    for (int n = 0; n <= 9; ++n) {
        // the alpha = -1, k = 1 reduction halves the Genocchi numbers
        mpq_class want = gold[static_cast<size_t>(n)] / 2;
        CHECK(unified_numbers(p, n).rat() == want);
    }
}

TEST_CASE("k = 2 squares the shift and the sign survives") {
    UnifiedParams p = exact_base();
    p.r = 1;
    p.k = 2;
    p.m = 2;
    p.alphas = {q("3")};
    p.x = q("0");
    p.y = q("0");
    // (-1) t^2 2^{-1} / (3 e^t - 1): degrees below rk vanish
    CHECK(unified_poly(p, 0).is_zero());
    CHECK(unified_poly(p, 1).is_zero());
    // -t^2/2 * (1/2 - 3t/4 + ...) so f_2 = -1/4, f_3 = 3/8
    CHECK(unified_poly(p, 2).str() == "-1/2");
    CHECK(unified_poly(p, 3).str() == "9/4");
}

TEST_CASE("reference families against independent recurrences") {
    auto bern = oracles::bernoulli(9);
    for (int n = 0; n <= 9; ++n)
        CHECK(reference_family(RefFamily::Bernoulli, 1, q("1"), q("0"), n).rat() ==
              bern[static_cast<size_t>(n)]);

    auto gen = oracles::genocchi(9);
    for (int n = 0; n <= 9; ++n)
        CHECK(reference_family(RefFamily::Genocchi, 1, q("1"), q("0"), n).rat() ==
              gen[static_cast<size_t>(n)]);

    // 2 e^{t/2} / (e^t + 1) generates E_n / 2^n
    auto eul = oracles::euler_numbers(8);
    for (int n = 0; n <= 8; ++n) {
        mpq_class want = eul[static_cast<size_t>(n)];
        want /= mpq_class(mpz_class(1) << n);
        CHECK(reference_family(RefFamily::Euler, 1, q("1"), q("1/2"), n).rat() ==
              want);
    }
}

TEST_CASE("reference families at pinned points") {
    const char* bern[] = {"0", "0", "8", "54", "435", "16125/4"};
    for (int n = 0; n <= 5; ++n)
        CHECK(reference_family(RefFamily::Bernoulli, 2, q("1/2"), q("1/4"), n)
                  .str() == bern[n]);
    const char* gen[] = {"-2", "1/3", "1/9", "-2/27", "-13/405", "10/243"};
    for (int n = 0; n <= 5; ++n)
        CHECK(reference_family(RefFamily::Genocchi, 1, q("-1"), q("1/3"), n)
                  .str() == gen[n]);
    const char* eul[] = {"8/27", "-16/27", "80/81", "-272/243", "-16/243",
                         "2768/729"};
    for (int n = 0; n <= 5; ++n)
        CHECK(reference_family(RefFamily::Euler, 3, q("2"), q("0"), n).str() ==
              eul[n]);
}

TEST_CASE("euler family rejects lambda = -1") {
    CHECK_THROWS_AS(reference_family(RefFamily::Euler, 1, q("-1"), q("0"), 2),
                    SingularDenominator);
}

TEST_CASE("family guards") {
    UnifiedParams p = exact_base();
    p.r = 1;
    p.k = 0;
    p.alphas = {q("1")};
    p.x = q("0");
    p.y = q("0");
    CHECK_THROWS_AS(unified_poly(p, 2), UsageError);  // alpha = 1 degenerate
    p.alphas = {q("1/2"), q("1/3")};
    CHECK_THROWS_AS(unified_poly(p, 2), UsageError);  // wrong count
}

TEST_CASE("higher-order hermite values") {
    CHECK(gen_hermite({3, 2, q("1/2"), q("1/3")}).str() == "9/8");
    CHECK(hermite_kampe(3, q("1/2"), q("1/3"), q("1")).str() == "9/8");
    // H_{4,3}(x,y) = x^4 + 24xy at x=2, y=-1/2
    CHECK(gen_hermite({4, 3, q("2"), q("-1/2")}).str() == "-8");
}

TEST_CASE("homogeneous weights satisfy the defining sum") {
    auto h = homogeneous_weights({q("1/3")}, 4, EX);
    CHECK(h[4].str() == "1/81");
    auto h2 = homogeneous_weights({q("1/2"), q("-1/3")}, 3, EX);
    // h_2 = a^2 + ab + b^2, h_3 = a^3 + a^2 b + a b^2 + b^3
    CHECK(h2[2].str() == "7/36");
    CHECK(h2[3].str() == "13/216");
}

TEST_CASE("lattice route matches the series route") {
    const Field fl = Field::floating(256);
    auto d = [&](const char* s) { return Coefficient::parse(s, fl); };
    UnifiedParams p;
    p.r = 2;
    p.k = 0;
    p.m = 2;
    p.lnA = d("0");
    p.lnB = Coefficient::one(fl);
    p.lnC = Coefficient::one(fl);
    p.alphas = {d("0.3"), d("0.6")};
    p.x = d("0.7");
    p.y = d("0.4");
    for (int n = 0; n <= 4; ++n) {
        Coefficient a = unified_poly(p, n);
        Coefficient b = explicit_lattice(p, n, d("1e-30"));
        CHECK((a - b).abs() < d("1e-25"));
    }
    p.alphas = {d("0.3"), d("1.1")};
    CHECK_THROWS_AS(explicit_lattice(p, 2, d("1e-30")), DivergentSum);
}

TEST_CASE("reduced lattice sum reports its truncation") {
    const Field fl = Field::floating(256);
    auto d = [&](const char* s) { return Coefficient::parse(s, fl); };
    int terms = 0;
    Coefficient tail = Coefficient::zero(fl);
    Coefficient v = reduced_lattice_sum({d("0.5")}, 0, 2, d("0"), d("0"),
                                        d("1e-20"), fl, 0, &terms, &tail);
    CHECK((v - d("2")).abs() < d("1e-19"));  // geometric sum of 2^-s
    CHECK(terms > 40);
    CHECK(tail < d("1e-20"));
}
