#pragma once

// Slow, obviously-correct reference computations used only by the tests.
// Everything is enumerated draw by draw in long double and information terms
// come from entropy sums (H(A)+H(B)-H(A,B)), a different route from the
// library's log-ratio kernels.

#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

namespace oracle {

using Real = long double;

struct World {
    std::vector<double> prior;
    std::vector<std::vector<double>> obs;
};

inline World w1() { return {{0.5, 0.5}, {{0.9, 0.1}, {0.1, 0.9}}}; }

inline World w2()
{
    return {{0.5, 0.3, 0.2}, {{0.7, 0.2, 0.1}, {0.1, 0.7, 0.2}, {0.3, 0.3, 0.4}}};
}

inline std::size_t ipow(std::size_t b, std::size_t e)
{
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

// digits of index in base k, most significant first
inline std::vector<std::size_t> digits(std::size_t index, std::size_t len, std::size_t k)
{
    std::vector<std::size_t> d(len);
    for (std::size_t i = len; i-- > 0;) {
        d[i] = index % k;
        index /= k;
    }
    return d;
}

inline Real seq_prob(const World& w, std::size_t phi, const std::vector<std::size_t>& xs)
{
    Real p = 1;
    for (auto x : xs) p *= static_cast<Real>(w.obs[phi][x]);
    return p;
}

// p(phi, past, future) as a flat [phi][p][f] array.
struct Joint {
    std::size_t k_phi, np, nf;
    std::vector<Real> v;
    Real operator()(std::size_t a, std::size_t p, std::size_t f) const
    {
        return v[(a * np + p) * nf + f];
    }
};

inline Joint joint(const World& w, std::size_t n, std::size_t m)
{
    const std::size_t kx = w.obs[0].size();
    Joint j{w.prior.size(), ipow(kx, n), ipow(kx, m), {}};
    j.v.resize(j.k_phi * j.np * j.nf);
    for (std::size_t a = 0; a < j.k_phi; ++a)
        for (std::size_t p = 0; p < j.np; ++p)
            for (std::size_t f = 0; f < j.nf; ++f)
                j.v[(a * j.np + p) * j.nf + f] = static_cast<Real>(w.prior[a]) *
                                                 seq_prob(w, a, digits(p, n, kx)) *
                                                 seq_prob(w, a, digits(f, m, kx));
    return j;
}

inline Real entropy_of(const std::map<std::vector<std::size_t>, Real>& dist)
{
    Real h = 0;
    for (const auto& [key, p] : dist)
        if (p > 0) h -= p * std::log(p);
    return h;
}

// Channel given as rows c[p][t]. Entropies of every marginal of (phi, P, F, T)
// selected by a bitmask (1=phi, 2=P, 4=F, 8=T).
struct Entropies {
    std::map<int, Real> h;
    Real operator[](int mask) const { return h.at(mask); }
};

inline Entropies entropies(const Joint& j, const std::vector<std::vector<double>>& c)
{
    std::map<int, std::map<std::vector<std::size_t>, Real>> marg;
    const std::size_t kt = c[0].size();
    for (std::size_t a = 0; a < j.k_phi; ++a)
        for (std::size_t p = 0; p < j.np; ++p)
            for (std::size_t f = 0; f < j.nf; ++f)
                for (std::size_t t = 0; t < kt; ++t) {
                    const Real mass = j(a, p, f) * static_cast<Real>(c[p][t]);
                    const std::size_t vals[4] = {a, p, f, t};
                    for (int mask = 1; mask < 16; ++mask) {
                        std::vector<std::size_t> key;
                        for (int b = 0; b < 4; ++b)
                            if (mask & (1 << b)) key.push_back(vals[b]);
                        marg[mask][key] += mass;
                    }
                }
    Entropies e;
    e.h[0] = 0;
    for (auto& [mask, dist] : marg) e.h[mask] = entropy_of(dist);
    return e;
}

enum : int { PHI = 1, P = 2, F = 4, T = 8 };

inline Real mi(const Entropies& e, int a, int b) { return e[a] + e[b] - e[a | b]; }

inline Real cmi(const Entropies& e, int a, int b, int given)
{
    return e[a | given] + e[b | given] - e[a | b | given] - e[given];
}

struct Terms {
    Real i_tp, i_tf, cmi_tp_given_f, cmi_tf_given_p;
};

inline Terms terms(const World& w, std::size_t n, std::size_t m,
                   const std::vector<std::vector<double>>& c)
{
    const auto e = entropies(joint(w, n, m), c);
    return {mi(e, T, P), mi(e, T, F), cmi(e, T, P, F), cmi(e, T, F, P)};
}

inline std::vector<std::vector<double>> identity(std::size_t n)
{
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) c[i][i] = 1.0;
    return c;
}

} // namespace oracle
