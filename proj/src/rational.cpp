#include "distrange/rational.hpp"

#include <cctype>

#include "distrange/errors.hpp"

namespace distrange {

Rational make_rational(long p, long q) {
    if (q == 0) throw InvariantError("rational: zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("rational: empty string");
    std::string::size_type slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::string::size_type k = (s[0] == '-') ? 1 : 0;
        if (k == s.size()) return false;
        for (; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
        return true;
    };
    if (!is_int(num) || !is_int(den))
        throw ParseError("rational: malformed \"" + text + "\" (expected p or p/q)");
    mpz_class n(num), d(den);
    if (d == 0) throw ParseError("rational: zero denominator in \"" + text + "\"");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool is_canonical(const Rational& r) {
    if (r.get_den() <= 0) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return g == 1;
}

} // namespace distrange
