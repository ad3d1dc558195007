#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "fricke/ints.hpp"

namespace fricke {

// CRT of a single value from (residue, prime) pairs; symmetric-range representative.
inline Int crt_combine(const std::vector<std::pair<Int, Int>>& residues) {
    Int x = 0, M = 1;
    std::vector<Int> used;
    for (const auto& [r, p] : residues) {
        for (const auto& q : used)
            if (q == p) throw std::invalid_argument("crt_combine: duplicate prime");
        used.push_back(p);
        // Garner step: x += M * ((r - x) / M mod p)
        Int minv;
        if (mpz_invert(minv.get_mpz_t(), M.get_mpz_t(), p.get_mpz_t()) == 0)
            throw std::invalid_argument("crt_combine: moduli not coprime");
        Int t = ((r - x) * minv) % p;
        if (t < 0) t += p;
        x += M * t;
        M *= p;
    }
    return symmetric_lift(x, M);
}

// Accumulates per-monomial residues across independent prime runs. Reconstruction
// targets the symmetric range; completeness requires ln(modulus) to exceed the
// height bound plus margin. Keys missing from a run count as residue 0 and are
// cross-checked at lift time (a mismatch flags a degenerate prime run).
template <class Key>
struct CrtAccumulator {
    double bound_nats = 0.0;
    Int modulus = 1;
    std::map<Key, Int> value;  // CRT-combined value modulo `modulus`
    std::vector<u64> primes;

    explicit CrtAccumulator(double bound) : bound_nats(bound) {}

    void add_prime_run(const std::map<Key, u64>& vals, u64 p) {
        for (u64 q : primes)
            if (q == p) throw std::invalid_argument("CrtAccumulator: duplicate prime");
        Int P(static_cast<unsigned long>(p));
        Int minv;
        if (mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), P.get_mpz_t()) == 0)
            throw std::invalid_argument("CrtAccumulator: moduli not coprime");
        // keys from either side
        std::map<Key, u64> merged = vals;
        for (const auto& [k, v] : value) merged.emplace(k, 0);
        for (const auto& [k, r] : merged) {
            u64 rv = 0;
            auto it = vals.find(k);
            if (it != vals.end()) rv = it->second;
            Int x = value.count(k) ? value[k] : Int(0);
            Int t = ((Int(static_cast<unsigned long>(rv)) - x) * minv) % P;
            if (t < 0) t += P;
            value[k] = x + modulus * t;
        }
        modulus *= P;
        primes.push_back(p);
    }

    bool complete(double margin_nats = 0.0) const {
        return ln_abs(modulus) > bound_nats + std::log(2.0) + margin_nats;
    }

    // Symmetric lift of every accumulated monomial. A coefficient beyond the
    // height bound means some prime run disagreed with the others (e.g. a
    // monomial silently missing from one run's support): flag it instead of
    // returning garbage.
    std::map<Key, Int> lift_symmetric(const std::vector<std::map<Key, u64>>& runs) const {
        std::map<Key, Int> out;
        for (const auto& [k, v] : value) {
            Int lifted = symmetric_lift(v, modulus);
            if (lifted != 0 && ln_abs(lifted) > bound_nats + 1.0)
                throw std::runtime_error(
                    "CrtAccumulator: coefficient exceeds height bound (inconsistent monomial "
                    "support / degenerate prime run)");
            for (std::size_t i = 0; i < runs.size(); ++i) {
                u64 p = primes[i];
                u64 expect = 0;
                auto it = runs[i].find(k);
                if (it != runs[i].end()) expect = it->second;
                if (mod_u64(lifted, p) != expect)
                    throw std::runtime_error("CrtAccumulator: residue bookkeeping mismatch");
            }
            if (lifted != 0) out.emplace(k, lifted);
        }
        return out;
    }
};

}  // namespace fricke
