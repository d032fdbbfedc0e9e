#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "catext/errors.hpp"

namespace catext {

using Int = boost::multiprecision::cpp_int;

struct FGAbelianGroup; // defined in smith.hpp

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Prime field F_p with elements stored reduced in [0, p).
struct GF {
    std::uint32_t p;

    using Elem = std::uint32_t;
    using Homology = std::size_t; // a cohomology group is just a dimension

    explicit GF(std::uint32_t prime) : p(prime) {
        if (!is_prime(prime)) throw Error("GF: modulus " + std::to_string(prime) + " is not prime");
    }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    bool is_zero(Elem a) const { return a == 0; }
    Elem add(Elem a, Elem b) const { return (a + b) % p; }
    Elem sub(Elem a, Elem b) const { return (a + p - b) % p; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>((std::uint64_t(a) * b) % p);
    }
    Elem inv(Elem a) const {
        if (a == 0) throw Error("GF: division by zero");
        // extended Euclid on signed 64-bit; p fits easily
        std::int64_t t = 0, newt = 1, r = p, newr = a;
        while (newr != 0) {
            const std::int64_t q = r / newr;
            t -= q * newt;
            std::swap(t, newt);
            r -= q * newr;
            std::swap(r, newr);
        }
        if (t < 0) t += p;
        return static_cast<Elem>(t);
    }
    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<Elem>(r);
    }
    bool operator==(const GF&) const = default;
};

// The ring of integers with arbitrary-precision entries.
struct ZZ {
    using Elem = Int;
    using Homology = FGAbelianGroup;

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem from_int(long long v) const { return Elem(v); }
    bool operator==(const ZZ&) const = default;
};

} // namespace catext
