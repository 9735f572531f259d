#include "poset_kraft/rational.hpp"

#include <array>
#include <charconv>

namespace poset_kraft {

std::string format_fraction(const ExactRational& value) {
    return boost::multiprecision::numerator(value).str() + "/" +
           boost::multiprecision::denominator(value).str();
}

std::string format_decimal(const ExactRational& value) {
    const double approx = value.convert_to<double>();
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), approx);
    return std::string(buf.data(), end);
}

BigInt factorial(unsigned n) {
    BigInt out = 1;
    for (unsigned i = 2; i <= n; ++i) out *= i;
    return out;
}

BigInt falling_factorial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt out = 1;
    for (unsigned i = 0; i < k; ++i) out *= (n - i);
    return out;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    return falling_factorial(n, k) / factorial(k);
}

}  // namespace poset_kraft
