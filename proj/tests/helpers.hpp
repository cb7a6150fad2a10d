#pragma once

#include <random>

#include "msk/qexp.hpp"

namespace msk::test {

// Deterministic random series on small lattices. Exact backend only; leading
// coefficient forced nonzero when a unit is requested.
struct SeriesGen {
    std::mt19937_64 rng;

    explicit SeriesGen(unsigned long seed) : rng(seed) {}

    Rat small_rat(bool nonzero = false) {
        std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
        long n = num(rng);
        while (nonzero && n == 0) n = num(rng);
        return rat_of(n, den(rng));
    }

    // A random series with the given leading exponent, branch_den from a small
    // menu, and roughly `len` known coefficients.
    QExpR series(long len = 14, std::optional<Rat> lead = std::nullopt) {
        std::uniform_int_distribution<int> den_pick(0, 4);
        const int dens[] = {1, 2, 3, 4, 6};
        const int den = dens[den_pick(rng)];
        long lead_units;
        if (lead) {
            lead_units = rat_floor_scaled(*lead, den);
            if (Rat(lead_units) != *lead * den) lead_units = rat_floor_scaled(*lead, 1) * den;
        } else {
            std::uniform_int_distribution<long> lu(-6, 6);
            lead_units = lu(rng);
        }
        std::vector<Rat> cs;
        cs.push_back(small_rat(true));
        for (long i = 1; i < len; ++i) cs.push_back(small_rat());
        return QExpR::from_coeffs(den, lead_units, std::move(cs), lead_units + len);
    }

    // 1 + O(t), suitable for roots and log1.
    QExpR unit_series(long len = 14) {
        std::uniform_int_distribution<int> den_pick(0, 2);
        const int dens[] = {1, 2, 3};
        const int den = dens[den_pick(rng)];
        std::vector<Rat> cs;
        cs.push_back(Rat(1));
        for (long i = 1; i < len; ++i) cs.push_back(small_rat());
        return QExpR::from_coeffs(den, 0, std::move(cs), len);
    }
};

inline Rat common_order(const QExpR& a, const QExpR& b) {
    return std::min(a.order_q(), b.order_q());
}

inline bool series_equal(const QExpR& a, const QExpR& b) {
    return eq_to_order(a, b, common_order(a, b)).equal;
}

}  // namespace msk::test
