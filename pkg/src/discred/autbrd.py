"""Automorphisms of a based root datum and their action on the center.

A lattice automorphism T counts when it permutes the simple roots and
its transpose permutes the simple coroots; these are exactly the
distinguished automorphisms, and the outer automorphism classes of the
group.  Since T preserves the root lattice it descends to X^*/ZR and
hence acts on the center; we transport that action through the recorded
SNF presentation, with the left-action convention that T acts on
characters by precomposition with T^{-1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .abgroup import AbHom, torsion_at
from .errors import InternalCheckError, ValidationError
from .exactlin import IntMatrix, inverse_unimodular, solve_integer
from .grouptable import FiniteGroup
from .rootdatum import (BasedRootDatum, CenterData, cartan_pairing,
                        simple_matrix)


@dataclass(frozen=True)
class BRDAutomorphism:
    matrix: IntMatrix
    simple_root_permutation: tuple  # position p of Pi -> position of image

    def compose(self, other: "BRDAutomorphism") -> "BRDAutomorphism":
        perm = tuple(self.simple_root_permutation[p]
                     for p in other.simple_root_permutation)
        return BRDAutomorphism(self.matrix @ other.matrix, perm)

    @classmethod
    def identity(cls, based: BasedRootDatum):
        k = len(based.simple_indices)
        return cls(IntMatrix.identity(based.datum.rank), tuple(range(k)))


@dataclass(frozen=True)
class BrdCheck:
    ok: bool
    witness: str | None
    permutation: tuple | None


def is_brd_automorphism(based: BasedRootDatum, T: IntMatrix) -> BrdCheck:
    """Both conditions: T permutes the simple roots, and the transpose of
    T permutes the simple coroots (compatibly)."""
    rank = based.datum.rank
    if T.rows != rank or T.cols != rank:
        raise ValidationError("automorphism matrix has wrong shape")
    if not T.is_unimodular():
        return BrdCheck(False, f"matrix is not unimodular (det {T.det()})", None)
    simple = list(based.simple_roots)
    perm = []
    for p, a in enumerate(simple):
        img = T.apply(a)
        if img not in simple:
            return BrdCheck(False,
                            f"T maps simple root {a} to {img}, not a simple root",
                            None)
        perm.append(simple.index(img))
    if sorted(perm) != list(range(len(simple))):
        return BrdCheck(False, "T is not injective on the simple roots", None)
    Tt = T.transpose()
    cosimple = list(based.simple_coroots)
    for p, av in enumerate(cosimple):
        img = Tt.apply(av)
        if img not in cosimple:
            return BrdCheck(False,
                            f"transpose of T maps simple coroot {av} to {img}, "
                            f"not a simple coroot", None)
        # compatibility: t(T) must carry the coroot of T(alpha) back to
        # the coroot of alpha
        if img != cosimple[perm.index(p)] and len(set(cosimple)) == len(cosimple):
            return BrdCheck(False,
                            f"coroot permutation incompatible with the root "
                            f"permutation at position {p}", None)
    return BrdCheck(True, None, tuple(perm))


def brd_automorphism(based: BasedRootDatum, T: IntMatrix) -> BRDAutomorphism:
    chk = is_brd_automorphism(based, T)
    if not chk.ok:
        raise ValidationError(f"not a based-root-datum automorphism: {chk.witness}")
    return BRDAutomorphism(T, chk.permutation)


@dataclass(frozen=True)
class DiagramAutomorphisms:
    automorphisms: tuple          # BRDAutomorphism, lexicographic in permutation
    non_lifting: tuple            # diagram symmetries with no lattice lift


def diagram_automorphisms(based: BasedRootDatum) -> DiagramAutomorphisms:
    """All lattice automorphisms induced by Dynkin-diagram symmetries.

    Requires a semisimple datum (simple roots spanning a finite-index
    sublattice); for a datum with torus directions the automorphism group
    is infinite and the caller must supply the images explicitly.
    """
    k = len(based.simple_indices)
    rank = based.datum.rank
    if k != rank:
        raise ValidationError(
            "datum is not semisimple: diagram automorphisms are only "
            "enumerable when the simple roots span a finite-index sublattice")
    pairings = [[cartan_pairing(based, i, j) for j in range(k)] for i in range(k)]
    S = simple_matrix(based)
    St = S.transpose()
    autos = []
    non_lifting = []
    for sigma in itertools.permutations(range(k)):
        if any(pairings[sigma[i]][sigma[j]] != pairings[i][j]
               for i in range(k) for j in range(k)):
            continue
        # lift: T @ S = S_sigma, solved row-by-row as S^t @ T^t = S_sigma^t
        target = [based.simple_roots[sigma[j]] for j in range(k)]
        t_rows = []
        for i in range(rank):
            rhs = tuple(target[j][i] for j in range(k))
            row = solve_integer(St, rhs)
            if row is None:
                t_rows = None
                break
            t_rows.append(row)
        if t_rows is None:
            non_lifting.append(sigma)
            continue
        T = IntMatrix.from_rows(t_rows, cols=rank)
        chk = is_brd_automorphism(based, T)
        if chk.ok:
            autos.append(BRDAutomorphism(T, chk.permutation))
        else:
            non_lifting.append(sigma)
    return DiagramAutomorphisms(tuple(autos), tuple(non_lifting))


def induced_center_action(cd: CenterData, T: BRDAutomorphism, n: int) -> AbHom:
    """Automorphism of Z(G)[n] induced by the distinguished automorphism T.

    T preserves ZR, so it descends to Q = X^*/ZR; characters transform by
    precomposition with the inverse.  Writing characters of order dividing
    n as Z/n-combinations in the presented coordinates, the action matrix
    is the transpose of the presented matrix of T^{-1}, rescaled onto the
    per-coordinate character orders.
    """
    if n < 1:
        raise ValidationError("torsion level must be >= 1")
    tinv = inverse_unimodular(T.matrix)
    p_inv = cd.to_presented @ tinv @ cd.from_presented
    M = p_inv.transpose()
    # character order per presented coordinate
    g = [gcd(d, n) if d >= 1 else n for d in cd.moduli]
    active = [i for i, gi in enumerate(g) if gi > 1]
    tor = torsion_at(cd.group, n)
    if len(active) != tor.ncoords:
        raise InternalCheckError("torsion coordinate bookkeeping mismatch")
    rows = []
    for i in active:
        row = []
        for j in active:
            e = (M[i, j] * (n // g[j])) % n
            if e % (n // g[i]):
                raise InternalCheckError(
                    "induced action does not preserve the torsion subgroup")
            row.append((e // (n // g[i])) % g[i])
        rows.append(tuple(row))
    return AbHom(tor, tor, IntMatrix.from_rows(rows, cols=tor.ncoords)
                 if rows else IntMatrix.from_rows([], cols=0))


@dataclass(frozen=True)
class AdHom:
    """Homomorphism from a finite group into the distinguished
    automorphisms, one image per group element."""
    gamma: FiniteGroup
    images: tuple  # BRDAutomorphism per element index


def trivial_ad(based: BasedRootDatum, gamma: FiniteGroup) -> AdHom:
    ident = BRDAutomorphism.identity(based)
    return AdHom(gamma, tuple(ident for _ in range(gamma.order)))


def ad_from_generator_images(based: BasedRootDatum, gamma: FiniteGroup,
                             generator_matrices) -> AdHom:
    """Extend generator images along the BFS words of ``from_generators``."""
    if gamma.generator_words is None:
        raise ValidationError(
            "gamma carries no generator words; supply one matrix per element")
    gens = [brd_automorphism(based, IntMatrix.from_rows(m, cols=based.datum.rank))
            for m in generator_matrices]
    images = []
    for word in gamma.generator_words:
        img = BRDAutomorphism.identity(based)
        for gi in word:
            if gi >= len(gens):
                raise ValidationError("fewer matrices than gamma generators")
            img = img.compose(gens[gi])
        images.append(img)
    return AdHom(gamma, tuple(images))


def ad_from_element_images(based: BasedRootDatum, gamma: FiniteGroup,
                           matrices) -> AdHom:
    if len(matrices) != gamma.order:
        raise ValidationError("need exactly one matrix per gamma element")
    images = tuple(brd_automorphism(based,
                                    IntMatrix.from_rows(m, cols=based.datum.rank))
                   for m in matrices)
    return AdHom(gamma, images)


def validate_ad(based: BasedRootDatum, ad: AdHom):
    """None when ad is a homomorphism into the distinguished
    automorphisms, else a message with a witness."""
    gamma = ad.gamma
    if len(ad.images) != gamma.order:
        return "images are not total on gamma"
    for i, im in enumerate(ad.images):
        chk = is_brd_automorphism(based, im.matrix)
        if not chk.ok:
            return f"image of element {i} fails: {chk.witness}"
    ident = ad.images[gamma.identity].matrix
    if ident.entries != IntMatrix.identity(based.datum.rank).entries:
        return "image of the identity is not the identity matrix"
    for x in range(gamma.order):
        for y in range(gamma.order):
            lhs = ad.images[x].matrix @ ad.images[y].matrix
            rhs = ad.images[gamma.mul(x, y)].matrix
            if lhs.entries != rhs.entries:
                return (f"homomorphism property fails at pair ({x}, {y}): "
                        f"Ad(x)Ad(y) != Ad(xy)")
    return None


def require_valid_ad(based: BasedRootDatum, ad: AdHom):
    msg = validate_ad(based, ad)
    if msg is not None:
        raise ValidationError(msg)
