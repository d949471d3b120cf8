#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace framelab {

// Arbitrary-precision integers and rationals. Counts in this library outgrow
// 64 bits already at moderate dimensions, so every public counting function
// returns Int.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// q is not a prime power.
struct NotPrimePower : Error { using Error::Error; };
// q outside the supported table range.
struct UnsupportedSize : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
// An enumeration or matrix build would exceed the configured budget.
struct InstanceTooLarge : Error { using Error::Error; };
// A quantity that should be independent of the representative pair is not.
struct ClassNotConstant : Error { using Error::Error; };
// A relative-position class that cannot occur for these parameters.
struct UndefinedClass : Error { using Error::Error; };
struct NotCollapsible : Error { using Error::Error; };
// Both modular ranks disagreed with the certified total; bad prime pair.
struct PrimeCollision : Error { using Error::Error; };
struct InvalidRadicalDim : Error { using Error::Error; };
struct NotAChain : Error { using Error::Error; };
struct DegenerateMember : Error { using Error::Error; };
struct LinkDisconnected : Error { using Error::Error; };

inline Int pow_int(const Int& base, unsigned e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

// (-1)^k
inline int sign_pow(unsigned k) { return (k & 1u) ? -1 : 1; }

inline Int exact_div(const Int& a, const Int& b) {
    Int q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0)
        throw Error("exact_div: " + a.str() + " not divisible by " + b.str());
    return q;
}

inline Int binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) r = exact_div(r * (n - i), Int(i + 1));
    return r;
}

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace framelab
