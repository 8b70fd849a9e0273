#include "tubealg/action_groupoid.hpp"

#include "tubealg/error.hpp"

#include <array>
#include <stdexcept>

namespace tubealg {

namespace {

void require_normalized_cocycle(GroupCochain const& omega)
{
    if (omega.degree() != 3) throw ValidationError("expected a 3-cochain, got degree " + std::to_string(omega.degree()));
    if (!omega.is_normalized()) throw ValidationError("3-cochain is not normalized");
    auto check = is_cocycle(omega);
    if (!check.ok) {
        std::string w;
        for (auto x : check.witness) w += (w.empty() ? "" : ",") + omega.group()->label(x);
        throw ValidationError("3-cochain is not a cocycle: coboundary at (" + w + ") is " + check.value.to_string());
    }
}

}  // namespace

EquivariantCochain induce_Psi(GroupCochain const& omega)
{
    require_normalized_cocycle(omega);
    auto const& g = *omega.group();
    EquivariantCochain out(omega.group(), 2);
    for (Element s = 0; s < g.order(); ++s)
        for (Element t = 0; t < g.order(); ++t)
            for (Element x = 0; x < g.order(); ++x) {
                Element y = g.conj(g.inv(s), x);  // s^-1 x s
                Element z = g.conj(g.inv(t), y);  // t^-1 s^-1 x s t
                Phase v = omega.at({x, s, t}) * omega.at({s, y, t}).conj() * omega.at({s, t, z});
                out.set(std::array{s, t}, x, v);
            }
    return out;
}

GroupoidCochain induce_psi(GroupCochain const& omega)
{
    require_normalized_cocycle(omega);
    ActionGroupoid G(omega.group());
    return GroupoidCochain::from_function(G, 2, [&](std::span<Arrow const> p) {
        Arrow g1 = p[0], g2 = p[1];
        return omega.at({G.codom(g1), g1.s, g2.s}) * omega.at({g1.s, g1.dom, g2.s}).conj() *
               omega.at({g1.s, g2.s, g2.dom});
    });
}

CentralizerCocycle centralizer_cocycle(GroupCochain const& omega, Element a)
{
    auto const& g = *omega.group();
    auto sub = make_subgroup(g, centralizer(g, a));
    auto phi = GroupCochain::from_function(sub.group, 2, [&](std::span<Element const> x) {
        Element s = sub.embedding[x[0]], t = sub.embedding[x[1]];
        return omega.at({a, s, t}) * omega.at({s, a, t}).conj() * omega.at({s, t, a});
    });
    return {std::move(sub), std::move(phi)};
}

NormalizedPsi normalize_psi(GroupoidCochain const& psi)
{
    if (psi.degree() != 2) throw InputError("normalize_psi expects a groupoid 2-cochain");
    auto const& G = psi.groupoid();
    for (std::size_t i = 0; i < G.num_arrows(); ++i) {
        Arrow g = G.arrow(i);
        if (!psi.at({g, G.unit(g.dom)}).is_neutral() || !psi.at({G.unit(G.codom(g)), g}).is_neutral())
            throw ValidationError("psi is not unit-normalized at arrow (" + G.group()->label(g.s) + ", " +
                                  G.group()->label(g.dom) + ")");
    }
    auto xi = GroupoidCochain::from_function(G, 1, [&](std::span<Arrow const> p) {
        return principal_sqrt(psi.at({p[0], G.inverse(p[0])}));
    });
    auto psi_prime = psi * groupoid_coboundary(xi.conj());
    return {std::move(xi), std::move(psi_prime)};
}

CentralizerCocycle isotropy_restriction(GroupoidCochain const& psi, Element a)
{
    auto const& G = psi.groupoid();
    auto sub = make_subgroup(*G.group(), centralizer(*G.group(), a));
    auto phi = GroupCochain::from_function(sub.group, 2, [&](std::span<Element const> x) {
        return psi.at({Arrow{sub.embedding[x[0]], a}, Arrow{sub.embedding[x[1]], a}});
    });
    return {std::move(sub), std::move(phi)};
}

CentralizerCocycle normalized_centralizer_cocycle(GroupCochain const& omega, Element a)
{
    return isotropy_restriction(normalize_psi(induce_psi(omega)).psi_prime, a);
}

CocycleCheck inverse_symmetry_check(GroupoidCochain const& psi)
{
    auto const& G = psi.groupoid();
    for (std::size_t i = 0; i < G.num_arrows(); ++i) {
        Arrow g = G.arrow(i);
        Phase left = psi.at({g, G.inverse(g)});
        Phase right = psi.at({G.inverse(g), g});
        if (left != right) return {false, {g.s, g.dom}, left / right};
    }
    return {};
}

MonadPsi monad_psi_tilde(GroupCochain const& omega)
{
    require_normalized_cocycle(omega);
    auto const& g = *omega.group();
    ActionGroupoid G(omega.group());

    auto tilde = GroupoidCochain::from_function(G, 2, [&](std::span<Arrow const> p) {
        Element s = p[0].s, t = p[1].s;
        Element x = G.codom(p[0]);
        Element si = g.inv(s), ti = g.inv(t);
        Element xs = g.mul(x, s);
        Element xst = g.mul(xs, t);
        return omega.at({x, s, t}) * omega.at({ti, si, xst}).conj() * omega.at({si, xs, t}) *
               omega.at({g.mul(ti, si), s, t}).conj() * omega.at({ti, si, s});
    });

    auto xi0 = GroupoidCochain::from_function(G, 1, [&](std::span<Arrow const> p) {
        return omega.at({g.inv(p[0].s), p[0].s, p[0].dom});
    });
    auto expected = induce_psi(omega) * groupoid_coboundary(xi0.conj());

    CocycleCheck cert;
    G.for_each_composable(2, [&](std::span<Arrow const> p) {
        if (!cert.ok) return;
        Phase a = tilde(p), b = expected(p);
        if (a != b) cert = {false, {p[0].s, p[0].dom, p[1].s, p[1].dom}, a / b};
    });
    if (!cert.ok) throw std::logic_error("monad cochain certificate failed");
    return {std::move(tilde), std::move(cert)};
}

}  // namespace tubealg
