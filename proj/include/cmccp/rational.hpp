#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace cmccp {

/// Arbitrary-precision non-negative (by convention) integer used for every count.
using Count = boost::multiprecision::cpp_int;

/// Round-to-nearest-even conversion of num/den to double. den must be non-zero.
double ratio_to_double(const Count& num, const Count& den);

/// Exact rational number, always kept in lowest terms.
///
/// Thin value wrapper around cpp_rational. The wrapper exists so that it can
/// be used as an Eigen scalar; Boost's own Eigen adaptor does not build
/// against Eigen 3.4 in C++20 mode.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : value_(value) {}  // NOLINT(implicit)
    Rational(const Count& value) : value_(value) {}  // NOLINT(implicit)
    Rational(const Count& numerator, const Count& denominator);
    explicit Rational(boost::multiprecision::cpp_rational value) : value_(std::move(value)) {}

    Count numerator() const { return boost::multiprecision::numerator(value_); }
    Count denominator() const { return boost::multiprecision::denominator(value_); }
    const boost::multiprecision::cpp_rational& raw() const { return value_; }

    double to_double() const;
    bool is_zero() const { return value_.is_zero(); }
    int sign() const { return value_.sign(); }

    /// "n/d", or just "n" when the denominator is one.
    std::string str() const;

    Rational operator-() const { return Rational(boost::multiprecision::cpp_rational(-value_)); }
    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ > b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    boost::multiprecision::cpp_rational value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Absolute value, for Eigen's numext and for tests.
inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// A probability held exactly, with its float view fixed at construction.
class Probability {
public:
    Probability() : exact_(0), float_view_(0.0) {}
    /// Throws std::invalid_argument unless 0 <= value <= 1.
    explicit Probability(Rational value);
    Probability(const Count& numerator, const Count& denominator)
        : Probability(Rational(numerator, denominator)) {}

    const Rational& exact() const { return exact_; }
    Count numerator() const { return exact_.numerator(); }
    Count denominator() const { return exact_.denominator(); }
    double float_view() const { return float_view_; }

    friend bool operator==(const Probability& a, const Probability& b) { return a.exact_ == b.exact_; }

private:
    Rational exact_;
    double float_view_;
};

/// Converts an exact rational into the working scalar of a templated routine.
template <class Scalar>
Scalar scalar_from(const Rational& r);

template <>
inline double scalar_from<double>(const Rational& r) { return r.to_double(); }

template <>
inline Rational scalar_from<Rational>(const Rational& r) { return r; }

inline double to_double(double x) { return x; }
inline double to_double(const Rational& r) { return r.to_double(); }

}  // namespace cmccp

namespace Eigen {

template <>
struct NumTraits<cmccp::Rational> : GenericNumTraits<cmccp::Rational> {
    using Real = cmccp::Rational;
    using NonInteger = cmccp::Rational;
    using Literal = cmccp::Rational;
    using Nested = cmccp::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 64
    };
    static cmccp::Rational epsilon() { return cmccp::Rational(0); }
    static cmccp::Rational dummy_precision() { return cmccp::Rational(0); }
    static int digits10() { return 0; }
};

}  // namespace Eigen
