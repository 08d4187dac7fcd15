"""Automorphism pairs acting on extensions and the Wells-type sequence.

Throughout, the kernel brace I is trivial (a + b = a o b), so the nu family
extracted from an extension is independent of the section, the coefficient
group for cohomology is the centre Z(I) = Ann(I), and the outer classes of
mu and sigma are section-independent.

A pair (phi, theta) of brace automorphisms of H and I turns an extension
E with maps (i, pi) into one with maps (i theta, phi^-1 pi); this is a
right action on equivalence classes.  The stabiliser C of a coupling
consists of the pairs with

    nu_h = theta^-1 nu_{phi(h)} theta          (exactly)
    mu_h = theta^-1 mu_{phi(h)} theta          (modulo inner +-automorphisms)
    sigma_h = theta^-1 sigma_{phi(h)} theta    (modulo inner o-automorphisms)

C also acts on cohomology classes by g -> theta^-1(g(phi x phi)).  For a
fixed extension E, the Wells map sends c in C to the unique cohomology
class h_c with [E]^c = h_c . [E]; it is a derivation for that action, and
the sequence

    0 -> Z1(H, Z(I)) -> Autb_I(E) --rho--> C --omega--> H2(H, Z(I))

is exact: the kernel of rho is the image of the derivation group under
psi(theta)(s(h) o y) = s(h) o theta(h) o y, and the image of rho is the
set-theoretic kernel of omega.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import budget as budget_mod
from .braces import BraceHom, SkewBrace, brace_automorphisms
from .cohomology import (
    CocyclePair,
    CohomologyGroup,
    embed_pair,
    h2N,
    h2_act_triplet,
    pair_add,
    restrict_action,
    z1N,
)
from .errors import (
    ActionNotTransitive,
    InputError,
    NotTrivialCoefficients,
    ValidationError,
)
from .extensions import (
    Extension,
    canonical_section,
    extension_from_triplet,
    extensions_equivalent,
    extract_action,
    extract_triplet,
    sections,
    validate_extension,
)
from .groups import PermGroup, compose, equal_mod, identity_perm, inner_group, invert_perm
from .split import ActionTriple


def _require_trivial_kernel(I: SkewBrace) -> None:
    if not I.is_trivial:
        raise NotTrivialCoefficients("the kernel brace must be trivial (a + b = a o b)")


# --- automorphism pairs ------------------------------------------------------

@dataclass(frozen=True)
class AutPair:
    """A brace automorphism of H paired with one of I."""

    phi: tuple
    theta: tuple

    def sort_key(self) -> tuple:
        return (self.phi, self.theta)


def pair_identity(H: SkewBrace, I: SkewBrace) -> AutPair:
    return AutPair(identity_perm(H.n), identity_perm(I.n))


def pair_mul(p: AutPair, q: AutPair) -> AutPair:
    """Componentwise composition; the extension action is a right action
    for this product: E^(p q) = (E^p)^q on the nose."""
    return AutPair(compose(p.phi, q.phi), compose(p.theta, q.theta))


def pair_inv(p: AutPair) -> AutPair:
    return AutPair(invert_perm(p.phi), invert_perm(p.theta))


def _check_brace_auto(B: SkewBrace, p: Sequence[int], what: str) -> None:
    hom = BraceHom(B, B, tuple(p))
    if not (hom.is_valid() and hom.is_injective()):
        raise InputError(f"{what} is not a brace automorphism")


def pair_act(ext: Extension, pair: AutPair) -> Extension:
    """The extension with injection i o theta and projection phi^-1 o pi."""
    _require_trivial_kernel(ext.I)
    _check_brace_auto(ext.H, pair.phi, "phi")
    _check_brace_auto(ext.I, pair.theta, "theta")
    inj = tuple(ext.inj[pair.theta[y]] for y in range(ext.I.n))
    inv_phi = invert_perm(pair.phi)
    proj = tuple(inv_phi[ext.proj[x]] for x in range(ext.E.n))
    return validate_extension(ext.E, ext.H, ext.I, inj, proj)


# --- the stabiliser of a coupling -------------------------------------------

class StabilizerC:
    """The pairs stabilising a coupling, verified to form a subgroup."""

    def __init__(self, H: SkewBrace, I: SkewBrace, chi: ActionTriple, pairs: Sequence[AutPair]):
        self.H = H
        self.I = I
        self.chi = chi
        self.pairs = tuple(sorted(pairs, key=AutPair.sort_key))
        members = set(self.pairs)
        if pair_identity(H, I) not in members:
            raise ValidationError("stabiliser must contain the identity pair")
        for p in self.pairs:
            if pair_inv(p) not in members:
                raise ValidationError("stabiliser is not closed under inverses")
            for q in self.pairs:
                if pair_mul(p, q) not in members:
                    raise ValidationError("stabiliser is not closed under composition")
        self._members = members

    @property
    def order(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: AutPair) -> bool:
        return pair in self._members

    def __iter__(self):
        return iter(self.pairs)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"StabilizerC(order={self.order})"


def stabilizer_C(
    H: SkewBrace, I: SkewBrace, chi: ActionTriple, budget: Optional[int] = None
) -> StabilizerC:
    """All pairs satisfying the three conjugation conditions.

    nu must match exactly; mu and sigma only up to inner automorphisms of
    (I, +) and (I, o).  The conditions do not depend on which section of
    the coupling produced chi: a section change leaves nu alone and moves
    mu, sigma by inner factors.
    """
    _require_trivial_kernel(I)
    autb_H = brace_automorphisms(H).sorted_elements()
    autb_Iq = brace_automorphisms(I).sorted_elements()
    budget_mod.guard(len(autb_H) * len(autb_Iq), "stabiliser pair sweep", budget)
    inn_add = inner_group(I.add)
    inn_circ = inner_group(I.circ)
    found = []
    for phi in autb_H:
        for theta in autb_Iq:
            inv_theta = invert_perm(theta)
            ok = True
            for h in range(H.n):
                conj_nu = compose(inv_theta, compose(chi.nu[phi[h]], theta))
                if chi.nu[h] != conj_nu:
                    ok = False
                    break
                conj_mu = compose(inv_theta, compose(chi.mu[phi[h]], theta))
                if not equal_mod(inn_add, chi.mu[h], conj_mu):
                    ok = False
                    break
                conj_sigma = compose(inv_theta, compose(chi.sigma[phi[h]], theta))
                if not equal_mod(inn_circ, chi.sigma[h], conj_sigma):
                    ok = False
                    break
            if ok:
                found.append(AutPair(tuple(phi), tuple(theta)))
    return StabilizerC(H, I, chi, found)


# --- action of C on cohomology ----------------------------------------------

def restrict_automorphism(theta: Sequence[int], elems: Sequence[int]) -> tuple:
    """Cut an automorphism of I down to annihilator coordinates."""
    index = {e: j for j, e in enumerate(elems)}
    out = []
    for e in elems:
        img = theta[e]
        if img not in index:
            raise ValidationError(
                "automorphism does not preserve the annihilator", element=e, image=img
            )
        out.append(index[img])
    return tuple(out)


def c_act_on_h2(pair: AutPair, theta_res: Sequence[int], cpair: CocyclePair) -> CocyclePair:
    """Transform a cocycle pair by g -> theta^-1 (g (phi x phi)).

    theta_res is pair.theta already cut down to the coefficient
    coordinates the tables take values in.
    """
    inv_theta = invert_perm(theta_res)
    phi = pair.phi
    nh = len(cpair.g)
    g = tuple(
        tuple(inv_theta[cpair.g[phi[a]][phi[b]]] for b in range(nh)) for a in range(nh)
    )
    f = tuple(
        tuple(inv_theta[cpair.f[phi[a]][phi[b]]] for b in range(nh)) for a in range(nh)
    )
    return CocyclePair(g, f)


# --- automorphisms of the extension ------------------------------------------

def autb_I(ext: Extension) -> PermGroup:
    """Brace automorphisms of E mapping the kernel image into itself."""
    base = brace_automorphisms(ext.E)
    img = set(ext.inj)
    members = [g for g in base.sorted_elements() if all(g[x] in img for x in img)]
    grp = PermGroup(ext.E.n, members)
    if not grp.is_group():
        raise ValidationError("kernel-normalising automorphisms failed to form a group")
    return grp


def rho(ext: Extension) -> List[Tuple[tuple, AutPair]]:
    """Pairs (gamma, (gamma_H, gamma_I)) for every kernel-normalising gamma.

    gamma_I is the restriction to I in I coordinates; gamma_H the induced
    map on H, checked to be well defined (pi gamma = gamma_H pi) and a
    brace automorphism on each side.
    """
    s = canonical_section(ext)
    out = []
    for gamma in autb_I(ext).sorted_elements():
        gamma_I = tuple(ext.into_I(gamma[ext.inj[y]]) for y in range(ext.I.n))
        gamma_H = tuple(ext.proj[gamma[s[h]]] for h in range(ext.H.n))
        for x in range(ext.E.n):
            if ext.proj[gamma[x]] != gamma_H[ext.proj[x]]:
                raise ValidationError(
                    "induced quotient map is not well defined", x=x
                )
        _check_brace_auto(ext.H, gamma_H, "induced quotient automorphism")
        _check_brace_auto(ext.I, gamma_I, "restricted kernel automorphism")
        out.append((gamma, AutPair(gamma_H, gamma_I)))
    return out


# --- the Wells map -----------------------------------------------------------

def _class_fixtures(
    ext: Extension, h2grp: CohomologyGroup, elems: Sequence[int]
) -> List[Extension]:
    t = extract_triplet(ext)
    built = []
    for p in h2grp.representatives:
        shifted = h2_act_triplet(ext.H, ext.I, embed_pair(p, elems), t)
        built.append(extension_from_triplet(ext.H, ext.I, shifted))
    return built


def wells_map(
    ext: Extension,
    C: StabilizerC,
    h2grp: CohomologyGroup,
    elems: Sequence[int],
) -> Dict[AutPair, int]:
    """For each c in C, the index of the unique class h_c with [E]^c = h_c.[E].

    Computed by direct orbit search: the shifted extensions h.[E] are built
    once per representative and matched against [E]^c.  No match means the
    cohomology action missed [E]^c (the transitivity hypothesis fails);
    several matches would contradict freeness.
    """
    shifted = _class_fixtures(ext, h2grp, elems)
    omega: Dict[AutPair, int] = {}
    for c in C:
        acted = pair_act(ext, c)
        hits = [
            k for k, cand in enumerate(shifted) if extensions_equivalent(acted, cand) is not None
        ]
        if not hits:
            raise ActionNotTransitive(
                "no cohomology class matches the pair-acted extension",
                pair=c.sort_key(),
            )
        if len(hits) > 1:
            raise ValidationError(
                "several cohomology classes match one acted extension; freeness fails",
                pair=c.sort_key(),
                matches=hits,
            )
        omega[c] = hits[0]
    return omega


# --- the exact sequence -------------------------------------------------------

def check_nu_section_independence(ext: Extension, cap: int = 64) -> None:
    """Assert the nu family is the same for every section (up to cap many)."""
    s0 = canonical_section(ext)
    nu0 = extract_action(ext, s0).nu
    for s in itertools.islice(sections(ext), cap):
        if extract_action(ext, s).nu != nu0:
            raise ValidationError(
                "nu varies with the section despite trivial kernel", section=s
            )


def psi_automorphism(ext: Extension, theta_I: Sequence[int]) -> tuple:
    """The map s(h) o y -> s(h) o theta(h) o y as a permutation of E."""
    E, I = ext.E, ext.I
    s = canonical_section(ext)
    out = [0] * E.n
    for x in range(E.n):
        h = ext.proj[x]
        y = ext.into_I(E.circ.table[E.circ.inv[s[h]]][x])
        base = E.circ.table[s[h]][ext.inj[theta_I[h]]]
        out[x] = E.circ.table[base][ext.inj[y]]
    return tuple(out)


def verify_exact_sequence(ext: Extension, budget: Optional[int] = None) -> dict:
    """Exhaustively verify the Wells-type exact sequence for one extension.

    Checks, in order: nu is section-independent; the derivation group maps
    bijectively and homomorphically onto the kernel of rho via psi; the
    image of rho lies in the stabiliser and equals the set-theoretic kernel
    of the Wells map; and the Wells map satisfies the derivation law
    omega(c1 c2) = omega(c1)^c2 + omega(c2) for every pair, with the
    cohomology action of C well defined on classes.
    """
    H, I = ext.H, ext.I
    _require_trivial_kernel(I)
    check_nu_section_independence(ext)
    chi = extract_action(ext, canonical_section(ext))
    I_res, chi_res, elems = restrict_action(I, chi)
    if set(elems) != set(I.add.centre()):
        raise ValidationError("annihilator of a trivial brace must be the centre")
    h2grp = h2N(H, I_res, chi_res, budget)
    derivations = z1N(H, I_res, chi_res, budget)
    C = stabilizer_C(H, I, chi, budget)
    pairs_of = rho(ext)
    im_rho = sorted({pair for _, pair in pairs_of}, key=AutPair.sort_key)
    for pair in im_rho:
        if pair not in C:
            raise ValidationError(
                "induced pair falls outside the stabiliser", pair=pair.sort_key()
            )
    ident = pair_identity(H, I)
    ker_rho = sorted(gamma for gamma, pair in pairs_of if pair == ident)

    # psi : derivations -> kernel of rho, bijective and operation-preserving.
    psi_images = []
    for d in derivations:
        theta_I = tuple(elems[v] for v in d.theta)
        psi_images.append(psi_automorphism(ext, theta_I))
    psi_bijective = sorted(psi_images) == list(ker_rho) and len(set(psi_images)) == len(
        psi_images
    )
    if not psi_bijective:
        raise ValidationError(
            "derivations do not biject onto the kernel of rho",
            derivations=len(derivations),
            kernel=len(ker_rho),
        )
    psi_hom = True
    Ia = I_res.add.table
    for i, d1 in enumerate(derivations):
        for d2 in derivations:
            summed = tuple(Ia[a][b] for a, b in zip(d1.theta, d2.theta))
            theta_I = tuple(elems[v] for v in summed)
            if psi_automorphism(ext, theta_I) != compose(psi_images[i], psi_automorphism(
                ext, tuple(elems[v] for v in d2.theta)
            )):
                psi_hom = False
    if not psi_hom:
        raise ValidationError("psi does not convert derivation addition to composition")

    omega = wells_map(ext, C, h2grp, elems)
    if omega[ident] != 0:
        raise ValidationError("identity pair must map to the zero class")
    ker_omega = sorted((c for c, k in omega.items() if k == 0), key=AutPair.sort_key)
    exact = list(ker_omega) == list(im_rho)

    # The C-action on classes is well defined and omega is a derivation.
    reps = h2grp.representatives
    derivation_law = True
    for c2 in C:
        theta_res = restrict_automorphism(c2.theta, elems)
        transformed = {}
        for k, rep in enumerate(reps):
            moved = h2grp.class_of(c_act_on_h2(c2, theta_res, rep))
            transformed[k] = moved
            for b in h2grp.b2:
                other = h2grp.class_of(
                    c_act_on_h2(c2, theta_res, pair_add(I_res, rep, b))
                )
                if other != moved:
                    raise ValidationError(
                        "cohomology action of C is not constant on cosets"
                    )
        for c1 in C:
            lhs = reps[omega[pair_mul(c1, c2)]]
            rhs = h2grp.add(transformed[omega[c1]], reps[omega[c2]])
            if lhs != rhs:
                derivation_law = False
    if not derivation_law:
        raise ValidationError("the Wells map violates the derivation law")

    return {
        "kernel_rho_order": len(ker_rho),
        "z1_order": len(derivations),
        "im_rho_order": len(im_rho),
        "ker_omega_order": len(ker_omega),
        "c_order": C.order,
        "h2_order": h2grp.order,
        "autb_I_order": autb_I(ext).order,
        "exact": exact,
        "psi_bijective": psi_bijective,
        "psi_hom": psi_hom,
        "derivation_law": derivation_law,
        "omega_table": [
            {"phi": list(c.phi), "theta": list(c.theta), "class_index": omega[c]}
            for c in C
        ],
    }
