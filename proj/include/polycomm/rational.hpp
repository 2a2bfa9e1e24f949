#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace polycomm {

// Exact rational scalar. mpq_class keeps gcd(num,den)=1 and den>0 after
// canonicalization; every constructor used here canonicalizes.
using Rat = mpq_class;

using VecQ = std::vector<Rat>;

// mpq_class(n, d) does not reduce; this does. Use it whenever n, d are not
// known to be coprime.
inline Rat frac(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q", "n", or a decimal string like "-0.85" (exactly, base 10).
// Throws std::invalid_argument on malformed input.
Rat parse_rat(const std::string& text);

// Canonical text form: "n" for integers, "p/q" otherwise.
std::string rat_str(const Rat& value);

double rat_double(const Rat& value);

int rat_sign(const Rat& value);

bool lex_less(const VecQ& a, const VecQ& b);

// Scales a vector by the positive rational that makes all entries coprime
// integers. Zero vectors are left untouched.
void make_primitive(VecQ& v);

// Same but scales (v, tail...) jointly; used for facet rows where the bound
// participates in the gcd.
void make_primitive_joint(VecQ& v, Rat& tail);

Rat dot(const VecQ& a, const VecQ& b);

// FNV-style hash over the canonical string form; used only for dedup maps.
std::uint64_t hash_vec(const VecQ& v);

struct VecQLess {
    bool operator()(const VecQ& a, const VecQ& b) const { return lex_less(a, b); }
};

}  // namespace polycomm
