#pragma once

#include "tubealg/cohomology.hpp"

namespace tubealg {

/// Psi[s,t](g) = w(g,s,t) conj(w(s, s^-1 g s, t)) w(s, t, t^-1 s^-1 g s t).
/// Throws ValidationError unless omega is a normalized 3-cocycle.
EquivariantCochain induce_Psi(GroupCochain const& omega);

/// psi(g1, g2) = w(codom g1, s1, s2) conj(w(s1, dom g1, s2)) w(s1, s2, dom g2)
/// for g_i = (s_i, dom g_i). Same validation as induce_Psi.
GroupoidCochain induce_psi(GroupCochain const& omega);

struct CentralizerCocycle {
    Subgroup centralizer;
    GroupCochain phi;  // on centralizer.group, local indices
};

/// phi_a(s,t) = w(a,s,t) conj(w(s,a,t)) w(s,t,a) on C(a).
CentralizerCocycle centralizer_cocycle(GroupCochain const& omega, Element a);

struct NormalizedPsi {
    GroupoidCochain xi;         // xi(g)^2 = psi(g, g^-1)
    GroupoidCochain psi_prime;  // psi * delta(conj xi)
};

/// Throws ValidationError unless psi(g, dom g) = 1 = psi(codom g, g) for all g.
NormalizedPsi normalize_psi(GroupoidCochain const& psi);

/// Restriction of a groupoid 2-cochain to the isotropy group at a.
CentralizerCocycle isotropy_restriction(GroupoidCochain const& psi, Element a);

/// phi'_a: isotropy restriction of normalize_psi(induce_psi(omega)).psi_prime.
CentralizerCocycle normalized_centralizer_cocycle(GroupCochain const& omega, Element a);

/// First arrow g with psi(g, g^-1) != psi(g^-1, g); witness is (s, dom).
CocycleCheck inverse_symmetry_check(GroupoidCochain const& psi);

struct MonadPsi {
    GroupoidCochain psi_tilde;
    /// Equality psi_tilde == psi * delta(conj xi0) on every composable pair.
    CocycleCheck certificate;
};

/// psi~(g1,g2) for g1 = (s, s^-1 g s), g2 = (t, (st)^-1 g st):
///   w(g,s,t) conj(w(t^-1, s^-1, g s t)) w(s^-1, g s, t)
///   conj(w(t^-1 s^-1, s, t)) w(t^-1, s^-1, s)
/// certified against xi0(s, g) = w(s^-1, s, g). A failed certificate throws
/// std::logic_error.
MonadPsi monad_psi_tilde(GroupCochain const& omega);

}  // namespace tubealg
