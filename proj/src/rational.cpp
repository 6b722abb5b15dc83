#include "cmccp/rational.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cmccp {

namespace mp = boost::multiprecision;

double ratio_to_double(const Count& num, const Count& den) {
    if (den.is_zero()) throw std::domain_error("ratio_to_double: zero denominator");
    if (num.is_zero()) return 0.0;
    const bool negative = (num.sign() < 0) != (den.sign() < 0);
    const Count n = mp::abs(num);
    const Count d = mp::abs(den);

    // Scale so that the integer quotient carries 55 or 56 significant bits,
    // then round the surplus bits to nearest-even with the remainder as sticky bit.
    const long shift = 55 - (static_cast<long>(mp::msb(n)) - static_cast<long>(mp::msb(d)));
    Count scaled_n = n;
    Count scaled_d = d;
    if (shift >= 0) {
        scaled_n <<= static_cast<unsigned>(shift);
    } else {
        scaled_d <<= static_cast<unsigned>(-shift);
    }
    Count q;
    Count r;
    mp::divide_qr(scaled_n, scaled_d, q, r);

    const unsigned drop = static_cast<unsigned>(mp::msb(q)) - 52;
    std::uint64_t mantissa = static_cast<std::uint64_t>(q >> drop);
    const std::uint64_t rem = static_cast<std::uint64_t>(q & ((Count(1) << drop) - 1));
    const std::uint64_t half = std::uint64_t{1} << (drop - 1);
    const bool sticky = !r.is_zero();
    if (rem > half || (rem == half && (sticky || (mantissa & 1U)))) {
        ++mantissa;
    }
    const double value =
        std::ldexp(static_cast<double>(mantissa), static_cast<int>(drop) - static_cast<int>(shift));
    return negative ? -value : value;
}

Rational::Rational(const Count& numerator, const Count& denominator) {
    if (denominator.is_zero()) throw std::domain_error("Rational: zero denominator");
    value_ = mp::cpp_rational(numerator, denominator);
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= rhs.value_;
    return *this;
}

double Rational::to_double() const { return ratio_to_double(numerator(), denominator()); }

std::string Rational::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    const Count den = r.denominator();
    os << r.numerator();
    if (den != 1) os << '/' << den;
    return os;
}

Probability::Probability(Rational value) : exact_(std::move(value)) {
    if (exact_.sign() < 0 || exact_ > Rational(1)) {
        throw std::invalid_argument("Probability outside [0,1]: " + exact_.str());
    }
    float_view_ = exact_.to_double();
}

}  // namespace cmccp
