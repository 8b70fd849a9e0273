#include "tubealg/spectrum.hpp"

#include "tubealg/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace tubealg {

namespace {

using CMatrix = Eigen::MatrixXcd;

std::vector<std::size_t> all_indices(TubeAlgebra const& t)
{
    std::vector<std::size_t> out(t.dim());
    std::iota(out.begin(), out.end(), 0);
    return out;
}

std::unordered_map<std::size_t, std::size_t> local_index(std::vector<std::size_t> const& block)
{
    std::unordered_map<std::size_t, std::size_t> out;
    for (std::size_t i = 0; i < block.size(); ++i) out[block[i]] = i;
    return out;
}

// The unit is found by solving u.e_i = e_i = e_i.u; twisting by a
// non-normalized cocycle moves it off the identity arrows.
void require_unit(TubeAlgebra const& t, double tolerance)
{
    auto n = static_cast<Eigen::Index>(t.dim());
    CMatrix a = CMatrix::Zero(2 * n * n, n);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            for (auto const& term : t.product(static_cast<std::size_t>(k), static_cast<std::size_t>(i)))
                a(i * n + static_cast<Eigen::Index>(term.index), k) += term.value;
            for (auto const& term : t.product(static_cast<std::size_t>(i), static_cast<std::size_t>(k)))
                a(n * n + i * n + static_cast<Eigen::Index>(term.index), k) += term.value;
        }
        rhs(i * n + i) = 1;
        rhs(n * n + i * n + i) = 1;
    }
    Eigen::VectorXcd u = a.colPivHouseholderQr().solve(rhs);
    double residual = (a * u - rhs).cwiseAbs().maxCoeff();
    if (!(residual <= tolerance)) throw ValidationError("non-unital algebra: unit synthesis failed");
}

// Commutator system: column i holds the coordinates of [e_i, e_a] for every a,
// stacked over a. Its null space is the center.
CMatrix commutator_matrix(TubeAlgebra const& t, std::vector<std::size_t> const& block)
{
    auto local = local_index(block);
    std::size_t n = block.size();
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < n; ++a) {
            auto row = [&](std::size_t idx) { return static_cast<Eigen::Index>(a * n + local.at(idx)); };
            for (auto const& term : t.product(block[i], block[a])) m(row(term.index), static_cast<Eigen::Index>(i)) += term.value;
            for (auto const& term : t.product(block[a], block[i])) m(row(term.index), static_cast<Eigen::Index>(i)) -= term.value;
        }
    return m;
}

struct FloatNullSpace {
    std::size_t nullity = 0;
    CMatrix basis;  // columns span the null space
};

FloatNullSpace float_null_space(CMatrix const& m, double tolerance)
{
    FloatNullSpace out;
    if (m.cols() == 0) return out;
    Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    auto const& sv = svd.singularValues();
    double cutoff = tolerance * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    out.nullity = static_cast<std::size_t>(m.cols() - rank);
    out.basis = svd.matrixV().rightCols(m.cols() - rank);
    return out;
}

// ---- modular route -------------------------------------------------------

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p)
{
    u64 r = 1;
    for (a %= p; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

bool is_prime(u64 n)
{
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r && composite; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> prime_factors(u64 n)
{
    std::vector<u64> out;
    for (u64 q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) out.push_back(n);
    return out;
}

// A primitive N-th root of unity modulo p, where N divides p - 1.
u64 root_of_unity(u64 n, u64 p)
{
    auto factors = prime_factors(n);
    for (u64 g = 2; g < p; ++g) {
        u64 z = powmod(g, (p - 1) / n, p);
        bool primitive = true;
        for (u64 q : factors) primitive = primitive && powmod(z, n / q, p) != 1;
        if (primitive) return z;
    }
    throw std::logic_error("no primitive root of unity modulo " + std::to_string(p));
}

std::vector<u64> primes_one_mod(u64 n, std::size_t count)
{
    std::vector<u64> out;
    u64 start = (u64{1} << 30) / n + 1;
    for (u64 m = start; out.size() < count; ++m)
        if (is_prime(m * n + 1)) out.push_back(m * n + 1);
    return out;
}

std::optional<u64> common_denominator(TubeAlgebra const& t, std::vector<std::size_t> const& block)
{
    if (!t.exact()) return std::nullopt;
    u64 n = 1;
    for (auto i : block)
        for (auto j : block)
            for (auto const& term : t.product(i, j)) {
                n = std::lcm(n, static_cast<u64>(term.phase.den()));
                if (n > (u64{1} << 20)) return std::nullopt;
            }
    return n;
}

std::size_t modular_nullity(TubeAlgebra const& t, std::vector<std::size_t> const& block, u64 den, u64 p)
{
    u64 zeta = root_of_unity(den, p);
    std::vector<u64> powers(den);
    powers[0] = 1;
    for (u64 k = 1; k < den; ++k) powers[k] = mulmod(powers[k - 1], zeta, p);
    auto value = [&](Phase const& ph) { return powers[static_cast<u64>(ph.num()) * (den / static_cast<u64>(ph.den()))]; };

    auto local = local_index(block);
    std::size_t n = block.size();
    // Echelon basis of the row space, kept reduced so each new row costs O(rank * n).
    std::vector<std::vector<u64>> pivots_rows;
    std::vector<std::size_t> pivot_cols;
    std::vector<std::vector<u64>> rows(n, std::vector<u64>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (auto& r : rows) std::fill(r.begin(), r.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto const& term : t.product(block[i], block[a])) {
                auto& x = rows[local.at(term.index)][i];
                x = (x + value(term.phase)) % p;
            }
            for (auto const& term : t.product(block[a], block[i])) {
                auto& x = rows[local.at(term.index)][i];
                x = (x + p - value(term.phase)) % p;
            }
        }
        for (auto& row : rows) {
            for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
                u64 f = row[pivot_cols[k]];
                if (f == 0) continue;
                auto const& pr = pivots_rows[k];
                for (std::size_t c = 0; c < n; ++c)
                    if (pr[c]) row[c] = (row[c] + p - mulmod(f, pr[c], p)) % p;
            }
            auto lead = std::find_if(row.begin(), row.end(), [](u64 x) { return x != 0; });
            if (lead == row.end()) continue;
            std::size_t col = static_cast<std::size_t>(lead - row.begin());
            u64 inv = powmod(*lead, p - 2, p);
            for (auto& x : row) x = mulmod(x, inv, p);
            for (std::size_t k = 0; k < pivots_rows.size(); ++k) {
                u64 f = pivots_rows[k][col];
                if (f == 0) continue;
                for (std::size_t c = 0; c < n; ++c)
                    if (row[c]) pivots_rows[k][c] = (pivots_rows[k][c] + p - mulmod(f, row[c], p)) % p;
            }
            pivots_rows.push_back(row);
            pivot_cols.push_back(col);
            if (pivot_cols.size() == n) return 0;
        }
    }
    return n - pivot_cols.size();
}

CenterDimension center_report(TubeAlgebra const& t, std::vector<std::size_t> const& block, double tolerance,
                              FloatNullSpace* null_space)
{
    CenterDimension rep;
    auto ns = float_null_space(commutator_matrix(t, block), tolerance);
    rep.float_nullity = ns.nullity;
    rep.value = ns.nullity;
    if (auto den = common_denominator(t, block)) {
        // Reduction mod a prime can only lose rank, so each modular nullity bounds the true one from above.
        std::size_t best = block.size();
        for (u64 p : primes_one_mod(*den, 2)) {
            rep.primes.push_back(p);
            best = std::min(best, modular_nullity(t, block, *den, p));
        }
        rep.exact_nullity = best;
        rep.value = best;
        rep.agree = best == ns.nullity;
    }
    if (null_space) *null_space = std::move(ns);
    return rep;
}

// ---- Wedderburn ----------------------------------------------------------

std::vector<std::size_t> cluster_sizes(Eigen::VectorXd const& ev, double tolerance)
{
    std::vector<std::size_t> out;
    if (ev.size() == 0) return out;
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    out.push_back(1);
    for (Eigen::Index k = 1; k < ev.size(); ++k) {
        if (ev(k) - ev(k - 1) > tolerance * scale)
            out.push_back(1);
        else
            ++out.back();
    }
    return out;
}

std::optional<std::size_t> exact_sqrt(std::size_t n)
{
    auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (r * r == n) return r;
    return std::nullopt;
}

struct BlockResult {
    CenterDimension center;
    std::vector<std::size_t> block_dims;
    std::size_t reseeds = 0;
};

BlockResult analyse_block(TubeAlgebra const& t, std::vector<std::size_t> const& block, u64 seed, double tolerance)
{
    BlockResult out;
    FloatNullSpace ns;
    out.center = center_report(t, block, tolerance, &ns);
    if (!out.center.agree)
        throw std::runtime_error("center dimension: float nullity " + std::to_string(out.center.float_nullity) +
                                 " disagrees with exact nullity " + std::to_string(*out.center.exact_nullity));
    std::size_t n = block.size();
    auto N = static_cast<Eigen::Index>(n);
    auto local = local_index(block);

    auto to_full = [&](Eigen::VectorXcd const& v) {
        Vector full(t.dim());
        for (std::size_t i = 0; i < n; ++i) full[block[i]] = v(static_cast<Eigen::Index>(i));
        return full;
    };

    // Gram matrix of the trace inner product <x, y> = tau(x^# y).
    CMatrix gram(N, N);
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = t.involute(t.basis_vector(block[i]));
        for (std::size_t j = 0; j < n; ++j)
            gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t.trace(t.multiply(xi, t.basis_vector(block[j])));
    }
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success) throw ValidationError("trace form is not positive definite; algebra is not a C*-algebra");
    CMatrix L = llt.matrixL();
    CMatrix L_adj_inv = L.adjoint().triangularView<Eigen::Upper>().solve(CMatrix::Identity(N, N));

    for (std::size_t attempt = 0; attempt <= 3; ++attempt) {
        std::mt19937_64 rng(seed + attempt);
        std::normal_distribution<double> normal;
        Eigen::VectorXcd z = Eigen::VectorXcd::Zero(N);
        for (Eigen::Index c = 0; c < ns.basis.cols(); ++c) z += Complex(normal(rng), normal(rng)) * ns.basis.col(c);
        auto zf = to_full(z);
        auto zs = t.involute(zf);
        Vector h(t.dim());
        for (std::size_t k = 0; k < t.dim(); ++k) h[k] = zf[k] + zs[k];

        CMatrix m = CMatrix::Zero(N, N);
        for (std::size_t i = 0; i < n; ++i) {
            auto col = t.multiply(h, t.basis_vector(block[i]));
            for (std::size_t r = 0; r < t.dim(); ++r)
                if (col[r] != Complex(0)) m(static_cast<Eigen::Index>(local.at(r)), static_cast<Eigen::Index>(i)) = col[r];
        }
        // L_h is self-adjoint for the trace form, so L^* M L^{-*} is Hermitian.
        CMatrix herm = L.adjoint() * m * L_adj_inv;
        herm = (herm + herm.adjoint()).eval() * 0.5;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");

        auto sizes = cluster_sizes(es.eigenvalues(), 1e3 * tolerance);
        bool ok = sizes.size() == out.center.value;
        std::vector<std::size_t> dims;
        for (auto s : sizes) {
            auto d = exact_sqrt(s);
            ok = ok && d.has_value();
            if (d) dims.push_back(*d);
        }
        if (ok) {
            std::sort(dims.begin(), dims.end());
            out.block_dims = std::move(dims);
            out.reseeds = attempt;
            return out;
        }
    }
    throw std::runtime_error("wedderburn: spectrum of the random central element stayed degenerate after 3 reseeds; "
                             "use the exact center dimension instead");
}

}  // namespace

CenterDimension center_dimension_report(TubeAlgebra const& t, std::vector<std::size_t> const& block, double tolerance)
{
    return center_report(t, block, tolerance, nullptr);
}

CenterDimension center_dimension_report(TubeAlgebra const& t, double tolerance)
{
    require_unit(t, 1e-9);
    return center_dimension_report(t, all_indices(t), tolerance);
}

std::size_t center_dimension(TubeAlgebra const& t, double tolerance)
{
    auto rep = center_dimension_report(t, tolerance);
    if (!rep.agree)
        throw std::runtime_error("center dimension: float nullity " + std::to_string(rep.float_nullity) +
                                 " disagrees with exact nullity " + std::to_string(*rep.exact_nullity));
    return rep.value;
}

WedderburnReport wedderburn(TubeAlgebra const& t, std::uint64_t seed, double tolerance)
{
    if (!t.has_involution()) throw Unsupported("wedderburn needs the involution (rigidity data)");
    require_unit(t, 1e-9);

    auto blocks = t.fell_blocks();
    auto classes = conjugacy_classes(*t.grading_group());
    std::vector<std::future<BlockResult>> jobs;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        jobs.push_back(std::async(std::launch::async, analyse_block, std::cref(t), std::cref(blocks[b]),
                                  seed + 0x9e3779b97f4a7c15ULL * (b + 1), tolerance));

    WedderburnReport rep;
    rep.algebra_dim = t.dim();
    rep.seed = seed;
    rep.exact_center = true;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        auto res = jobs[b].get();
        ClassSpectrum cs;
        cs.conjugacy_class = classes[b];
        cs.label = t.grading_group()->label(classes[b].front());
        cs.algebra_dim = blocks[b].size();
        cs.center_dim = res.center.value;
        cs.block_dims = res.block_dims;
        rep.center_dim += cs.center_dim;
        rep.block_dims.insert(rep.block_dims.end(), cs.block_dims.begin(), cs.block_dims.end());
        rep.exact_center = rep.exact_center && res.center.exact_nullity.has_value();
        rep.reseeds += res.reseeds;
        rep.per_class.push_back(std::move(cs));
    }
    std::sort(rep.block_dims.begin(), rep.block_dims.end());
    rep.commutative = rep.center_dim == rep.algebra_dim;

    std::size_t sum = 0;
    for (auto d : rep.block_dims) sum += d * d;
    if (sum != rep.algebra_dim || rep.block_dims.size() != rep.center_dim)
        throw std::logic_error("wedderburn: block dimensions do not account for the algebra");
    return rep;
}

SpectrumComparison compare_spectra(WedderburnReport const& a, WedderburnReport const& b)
{
    SpectrumComparison out;
    out.center_dim_1 = a.center_dim;
    out.center_dim_2 = b.center_dim;
    out.equal_center = a.center_dim == b.center_dim;
    out.equal_blocks = a.block_dims == b.block_dims;
    std::size_t n = std::max(a.per_class.size(), b.per_class.size());
    for (std::size_t i = 0; i < n; ++i) {
        ClassDelta d;
        if (i < a.per_class.size()) {
            d.label = a.per_class[i].label;
            d.center_dim_1 = a.per_class[i].center_dim;
            d.block_dims_1 = a.per_class[i].block_dims;
        }
        if (i < b.per_class.size()) {
            if (d.label.empty()) d.label = b.per_class[i].label;
            d.center_dim_2 = b.per_class[i].center_dim;
            d.block_dims_2 = b.per_class[i].block_dims;
        }
        if (d.center_dim_1 != d.center_dim_2 || d.block_dims_1 != d.block_dims_2) out.deltas.push_back(std::move(d));
    }
    return out;
}

SpectrumComparison compare_spectra(TubeAlgebra const& a, TubeAlgebra const& b, std::uint64_t seed)
{
    return compare_spectra(wedderburn(a, seed), wedderburn(b, seed));
}

}  // namespace tubealg
