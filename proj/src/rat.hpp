#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace tripack {

// Exact rational arithmetic. GMP keeps values in lowest terms with a
// positive denominator, which is exactly the representation the file
// formats and certificates assume.
using Rat = mpq_class;
using Int = mpz_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

// Contract check. Not assert(): it must survive NDEBUG builds.
inline void require(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
}

Rat rat_parse(const std::string& s);
std::string rat_str(const Rat& r);

Int rat_floor(const Rat& r);
Int rat_ceil(const Rat& r);

inline bool rat_is_int(const Rat& r) { return r.get_den() == 1; }

// r - floor(r), in [0, 1)
Rat rat_mod1(const Rat& r);

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}
// True iff r is stored in lowest terms with positive denominator, the form
// every GMP rational operation assumes.
bool rat_canonical(const Rat& r);

}  // namespace tripack
