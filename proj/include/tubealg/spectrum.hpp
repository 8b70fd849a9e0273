#pragma once

#include "tubealg/tube_algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tubealg {

inline constexpr std::uint64_t default_spectrum_seed = 0x7475626531ULL;

/// Dimension of the center, by two routes.
///
/// The float route is the nullity of the stacked commutator system
/// [e_i, e_a] over all basis pairs. When every structure constant is an exact
/// phase, the same system is reduced modulo two primes p = 1 (mod N) with N the
/// common denominator, and the smaller of the two nullities is the exact value.
struct CenterDimension {
    std::size_t value = 0;
    std::size_t float_nullity = 0;
    std::optional<std::size_t> exact_nullity;
    std::vector<std::uint64_t> primes;
    bool agree = true;  // float and exact routes give the same answer
};

CenterDimension center_dimension_report(TubeAlgebra const& t, double tolerance = 1e-8);
std::size_t center_dimension(TubeAlgebra const& t, double tolerance = 1e-8);

/// Center dimension of the sub-algebra spanned by the given basis indices,
/// which must be closed under multiplication.
CenterDimension center_dimension_report(TubeAlgebra const& t, std::vector<std::size_t> const& block,
                                        double tolerance = 1e-8);

struct ClassSpectrum {
    std::vector<Element> conjugacy_class;
    std::string label;  // label of the least element
    std::size_t algebra_dim = 0;
    std::size_t center_dim = 0;
    std::vector<std::size_t> block_dims;  // sorted ascending
};

struct WedderburnReport {
    std::size_t algebra_dim = 0;
    std::size_t center_dim = 0;
    std::vector<std::size_t> block_dims;  // sorted ascending
    std::vector<ClassSpectrum> per_class;
    bool commutative = false;
    bool exact_center = false;  // center dimensions certified by the modular route
    std::uint64_t seed = 0;
    std::size_t reseeds = 0;
};

/// Splits each Fell block by the spectrum of a random Hermitian central
/// element. Throws Unsupported without an involution and std::runtime_error
/// when the spectrum stays degenerate after three reseeds.
WedderburnReport wedderburn(TubeAlgebra const& t, std::uint64_t seed = default_spectrum_seed,
                            double tolerance = 1e-8);

struct ClassDelta {
    std::string label;
    std::size_t center_dim_1 = 0, center_dim_2 = 0;
    std::vector<std::size_t> block_dims_1, block_dims_2;
};

struct SpectrumComparison {
    bool equal_center = false;
    bool equal_blocks = false;
    std::size_t center_dim_1 = 0, center_dim_2 = 0;
    std::vector<ClassDelta> deltas;  // classes whose spectra differ
};

SpectrumComparison compare_spectra(WedderburnReport const& a, WedderburnReport const& b);
SpectrumComparison compare_spectra(TubeAlgebra const& a, TubeAlgebra const& b,
                                   std::uint64_t seed = default_spectrum_seed);

}  // namespace tubealg
