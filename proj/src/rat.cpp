#include "rat.hpp"

namespace tripack {

Rat rat_parse(const std::string& s) {
    if (s.empty()) fail("empty rational");
    // Accept "p" and "p/q" with optional leading minus. mpq_class accepts
    // whitespace and other bases; be stricter here since this parses
    // command-line flags and certificate fields.
    size_t slash = s.find('/');
    auto check_int = [&](size_t from, size_t to) {
        if (from >= to) fail("bad rational: " + s);
        size_t i = from;
        if (s[i] == '-') i++;
        if (i >= to) fail("bad rational: " + s);
        for (; i < to; i++)
            if (s[i] < '0' || s[i] > '9') fail("bad rational: " + s);
    };
    if (slash == std::string::npos) {
        check_int(0, s.size());
    } else {
        check_int(0, slash);
        check_int(slash + 1, s.size());
    }
    Rat r;
    if (r.set_str(s, 10) != 0) fail("bad rational: " + s);
    require(r.get_den() != 0, "zero denominator: " + s);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Int rat_ceil(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rat rat_mod1(const Rat& r) {
    Rat f = r - Rat(rat_floor(r));
    return f;
}

}  // namespace tripack

namespace tripack {

bool rat_canonical(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return mpz_cmp(c.get_num_mpz_t(), r.get_num_mpz_t()) == 0 &&
           mpz_cmp(c.get_den_mpz_t(), r.get_den_mpz_t()) == 0;
}

}  // namespace tripack
