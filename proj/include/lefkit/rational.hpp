#pragma once

#include <gmpxx.h>
#include <string>
#include <iosfwd>

namespace lefkit {

/// Exact rational scalar. Stored in lowest terms with positive denominator;
/// every arithmetic operation is exact. No floating point anywhere.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(int n) : v_(n) {}
    Rat(long n) : v_(static_cast<signed long>(n)) {}
    Rat(long num, long den);
    explicit Rat(mpq_class v);

    /// Parse "a/b" or "a" with optional leading '-'. Throws ContractError on
    /// malformed input or zero denominator.
    static Rat parse(const std::string& s);

    /// Canonical rendering: "a/b", or "a" when the denominator is 1.
    std::string str() const;

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    Rat abs() const;

    Rat operator-() const;
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

} // namespace lefkit
