#pragma once

#include <gmpxx.h>

#include <string>

namespace loom {

// Exact rational coefficients. mpq_class already maintains the invariants we
// need (reduced, positive denominator), so the library uses it directly and
// only adds the "p/q" string form used by every JSON surface.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long n, long d = 1) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q);

// Parses "p", "-p" or "p/q" in base 10. Throws invalid_input_error on junk
// or a zero denominator.
Rational rational_from_string(const std::string& s);

bool is_integer(const Rational& q);

} // namespace loom
