#include "lefkit/rational.hpp"

#include "lefkit/errors.hpp"

#include <cctype>
#include <ostream>

namespace lefkit {

Rat::Rat(long num, long den) {
    if (den == 0) throw ContractError("Rat: zero denominator");
    v_ = mpq_class(static_cast<signed long>(num), static_cast<signed long>(den));
    v_.canonicalize();
}

Rat::Rat(mpq_class v) : v_(std::move(v)) {
    if (sgn(v_.get_den()) == 0) throw ContractError("Rat: zero denominator");
    v_.canonicalize();
}

namespace {

bool valid_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rat Rat::parse(const std::string& s) {
    const auto slash = s.find('/');
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? std::string("1") : s.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den))
        throw ContractError("Rat: malformed rational literal '" + s + "'");
    mpq_class v{mpz_class(num), mpz_class(den)};
    if (sgn(v.get_den()) == 0)
        throw ContractError("Rat: zero denominator in '" + s + "'");
    v.canonicalize();
    return Rat(std::move(v));
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::abs() const {
    Rat r = *this;
    if (r.sign() < 0) r = -r;
    return r;
}

Rat Rat::operator-() const {
    Rat r;
    r.v_ = -v_;
    return r;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw ContractError("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

} // namespace lefkit
