#pragma once

// Classical number sequences grown from their own recurrences, kept free of
// any series machinery so they can referee it.

#include <gmpxx.h>

#include <vector>

namespace oracles {

inline mpz_class binom(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// G_0 = 0, G_1 = 1, G_n = -1/2 sum_{k<n} C(n,k) G_k
inline std::vector<mpq_class> genocchi(int nmax) {
    std::vector<mpq_class> g{0, 1};
    for (int n = 2; n <= nmax; ++n) {
        mpq_class acc = 0;
        for (int k = 0; k < n; ++k)
            acc += mpq_class(binom(static_cast<unsigned>(n),
                                   static_cast<unsigned>(k))) *
                   g[static_cast<size_t>(k)];
        g.push_back(acc / -2);
    }
    g.resize(static_cast<size_t>(nmax) + 1);
    return g;
}

// B_0 = 1, B_n = -1/(n+1) sum_{k<n} C(n+1,k) B_k
inline std::vector<mpq_class> bernoulli(int nmax) {
    std::vector<mpq_class> b{1};
    for (int n = 1; n <= nmax; ++n) {
        mpq_class acc = 0;
        for (int k = 0; k < n; ++k)
            acc += mpq_class(binom(static_cast<unsigned>(n + 1),
                                   static_cast<unsigned>(k))) *
                   b[static_cast<size_t>(k)];
        b.push_back(acc / mpq_class(-(n + 1)));
    }
    return b;
}

// E_0 = 1, sum_{k even, k<=n} C(n,k) E_k = 0 for even n; odd-index entries 0
inline std::vector<mpq_class> euler_numbers(int nmax) {
    std::vector<mpq_class> e{1};
    for (int n = 1; n <= nmax; ++n) {
        if (n % 2 == 1) {
            e.push_back(0);
            continue;
        }
        mpq_class acc = 0;
        for (int k = 0; k < n; k += 2)
            acc += mpq_class(binom(static_cast<unsigned>(n),
                                   static_cast<unsigned>(k))) *
                   e[static_cast<size_t>(k)];
        e.push_back(-acc);
    }
    return e;
}

}  // namespace oracles
