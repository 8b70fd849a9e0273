#include "tubealg/phase.hpp"

#include "tubealg/error.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>

namespace tubealg {

namespace {

using Wide = __int128;

Phase reduce(Wide num, Wide den)
{
    if (den <= 0) throw InputError("phase denominator must be positive");
    num %= den;
    if (num < 0) num += den;
    Wide a = num, b = den;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    Wide g = a == 0 ? den : a;
    num /= g;
    den /= g;
    if (den > INT64_MAX) throw std::overflow_error("phase denominator overflow");
    return Phase(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Phase::Phase(std::int64_t num, std::int64_t den)
{
    if (den <= 0) throw InputError("phase denominator must be positive");
    std::int64_t r = num % den;
    if (r < 0) r += den;
    std::int64_t g = std::gcd(r, den);
    num_ = r / g;
    den_ = den / g;
}

Phase Phase::inverse() const
{
    return num_ == 0 ? Phase{} : Phase(den_ - num_, den_);
}

Phase Phase::pow(std::int64_t k) const
{
    return reduce(static_cast<Wide>(num_) * k, den_);
}

Phase Phase::principal_sqrt() const
{
    return reduce(num_, static_cast<Wide>(den_) * 2);
}

std::complex<double> Phase::to_complex() const
{
    if (num_ == 0) return {1.0, 0.0};
    // Exact values on the axes keep small cases free of rounding noise.
    if (den_ == 2) return {-1.0, 0.0};
    if (den_ == 4) return num_ == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
    double angle = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
    return std::polar(1.0, angle);
}

std::string Phase::to_string() const
{
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Phase Phase::parse(std::string_view text)
{
    auto parse_int = [&](std::string_view s) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw InputError("malformed phase '" + std::string(text) + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Phase(parse_int(text), 1);
    return Phase(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Phase& Phase::operator*=(Phase const& other)
{
    if (other.num_ == 0) return *this;
    if (num_ == 0) return *this = other;
    if (den_ == other.den_) {
        std::int64_t num = num_ + other.num_;
        if (num >= den_) num -= den_;
        return *this = Phase(num, den_);
    }
    Wide num = static_cast<Wide>(num_) * other.den_ + static_cast<Wide>(other.num_) * den_;
    Wide den = static_cast<Wide>(den_) * other.den_;
    *this = reduce(num, den);
    return *this;
}

std::ostream& operator<<(std::ostream& os, Phase const& p)
{
    return os << p.to_string();
}

}  // namespace tubealg
