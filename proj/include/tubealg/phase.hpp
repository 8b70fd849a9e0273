#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tubealg {

/// A point of the unit circle exp(2*pi*i*q), stored exactly as a reduced
/// rational exponent q with 0 <= q < 1. Multiplication of phases is addition
/// of exponents mod 1.
class Phase {
public:
    constexpr Phase() = default;

    /// exp(2*pi*i*num/den); any integer num, den > 0.
    Phase(std::int64_t num, std::int64_t den);

    static Phase neutral() { return Phase{}; }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_neutral() const { return num_ == 0; }

    Phase inverse() const;
    Phase conj() const { return inverse(); }
    Phase pow(std::int64_t k) const;

    /// Square root with exponent q/2 for the representative q in [0, 1).
    Phase principal_sqrt() const;

    std::complex<double> to_complex() const;

    /// Reduced "num/den"; the neutral phase prints as "0/1".
    std::string to_string() const;
    static Phase parse(std::string_view text);

    Phase& operator*=(Phase const& other);
    friend Phase operator*(Phase lhs, Phase const& rhs) { return lhs *= rhs; }
    friend Phase operator/(Phase lhs, Phase const& rhs) { return lhs *= rhs.inverse(); }

    friend bool operator==(Phase const&, Phase const&) = default;
    friend auto operator<=>(Phase const&, Phase const&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Phase phase_mul(Phase const& p, Phase const& q) { return p * q; }
inline Phase principal_sqrt(Phase const& p) { return p.principal_sqrt(); }
inline std::complex<double> to_complex(Phase const& p) { return p.to_complex(); }

std::ostream& operator<<(std::ostream& os, Phase const& p);

}  // namespace tubealg

template <>
struct std::hash<tubealg::Phase> {
    std::size_t operator()(tubealg::Phase const& p) const noexcept
    {
        return std::hash<std::int64_t>{}(p.num()) * 1000003u ^ std::hash<std::int64_t>{}(p.den());
    }
};
