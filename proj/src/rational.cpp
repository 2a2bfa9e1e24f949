#include "polycomm/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace polycomm {

Rat parse_rat(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpz_class num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        Rat r(num, den);
        r.canonicalize();
        return r;
    }

    auto dotpos = s.find('.');
    if (dotpos != std::string::npos) {
        std::string digits = s.substr(0, dotpos) + s.substr(dotpos + 1);
        std::size_t frac_len = s.size() - dotpos - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("bad decimal literal: " + text);
        mpz_class num;
        if (num.set_str(digits, 10) != 0)
            throw std::invalid_argument("bad decimal literal: " + text);
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        Rat r(num, den);
        r.canonicalize();
        return r;
    }

    mpz_class num;
    if (num.set_str(s, 10) != 0) throw std::invalid_argument("bad integer literal: " + text);
    return Rat(num);
}

std::string rat_str(const Rat& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double rat_double(const Rat& value) { return value.get_d(); }

int rat_sign(const Rat& value) { return sgn(value); }

bool lex_less(const VecQ& a, const VecQ& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

void make_primitive(VecQ& v) {
    Rat unused(0);
    make_primitive_joint(v, unused);
}

void make_primitive_joint(VecQ& v, Rat& tail) {
    mpz_class num_gcd = 0, den_lcm = 1;
    auto absorb = [&](const Rat& x) {
        if (x == 0) return;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    };
    for (const Rat& x : v) absorb(x);
    absorb(tail);
    if (num_gcd == 0) return;
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    for (Rat& x : v) {
        x *= scale;
        x.canonicalize();
    }
    tail *= scale;
    tail.canonicalize();
}

Rat dot(const VecQ& a, const VecQ& b) {
    Rat acc(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
    return acc;
}

std::uint64_t hash_vec(const VecQ& v) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (char c : s) {
            h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
            h *= 1099511628211ull;
        }
        h ^= 0x2f;
        h *= 1099511628211ull;
    };
    for (const Rat& x : v) mix(rat_str(x));
    return h;
}

}  // namespace polycomm
