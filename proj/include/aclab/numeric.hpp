#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace aclab {

// All lattice arithmetic is exact: integers are GMP bignums, scalars on the
// multiplicative group are GMP rationals. No floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a structural invariant fails (two routes to the same quantity
// disagree, a certified rank is off, ...). Distinct from bad user input.
struct invariant_error : error {
    explicit invariant_error(const std::string& what) : error(what) {}
};

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw error("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

// Canonical "num/den" form used by every serializer in the project.
inline std::string rat_str(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "num/den" or a bare integer string.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return make_rat(Int(s), Int(1));
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw error("parse_rat: malformed rational '" + s + "'");
    }
}

// Floor of sqrt for nonnegative n.
inline Int isqrt(const Int& n) {
    if (n < 0) throw error("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Exact k-th root if it exists in Z.
inline std::optional<Int> exact_root(const Int& n, unsigned long k) {
    Int r;
    int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    if (!exact) return std::nullopt;
    return r;
}

// Exact k-th root in Q* if it exists (used when solving multiplicative
// linear systems over G_m).
inline std::optional<Rat> exact_root(const Rat& q, unsigned long k) {
    if (q == 0) throw error("exact_root: zero has no place in G_m");
    Rat base = q;
    bool neg = base < 0;
    if (neg) {
        if (k % 2 == 0) return std::nullopt;
        base = -base;
    }
    auto num = exact_root(Int(base.get_num()), k);
    auto den = exact_root(Int(base.get_den()), k);
    if (!num || !den) return std::nullopt;
    Rat r = make_rat(*num, *den);
    return neg ? Rat(-r) : r;
}

}  // namespace aclab
