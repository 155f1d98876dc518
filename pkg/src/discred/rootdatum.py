"""Root data, reflections, Weyl groups, Dynkin diagrams, and centers.

A root datum is the combinatorial stand-in for a connected reductive
group: two dual lattices (character and cocharacter, both Z^rank with
the dot product as pairing) plus matching lists of roots and coroots.
Degenerate data with no roots are legal and model tori.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abgroup import DiagonalizableGroup, FGAbelianGroup
from .errors import BudgetExceededError, InternalCheckError, ValidationError
from .exactlin import (IntMatrix, cokernel_presentation, column_lattice_basis,
                       kernel_basis, solve_integer)


@dataclass(frozen=True)
class RootDatum:
    rank: int
    roots: tuple      # tuple of integer vectors in X^* coordinates
    coroots: tuple    # tuple of integer vectors in X_* coordinates, bijective

    def __post_init__(self):
        object.__setattr__(self, "roots",
                           tuple(tuple(int(x) for x in r) for r in self.roots))
        object.__setattr__(self, "coroots",
                           tuple(tuple(int(x) for x in r) for r in self.coroots))

    @property
    def nroots(self):
        return len(self.roots)

    def pairing(self, coroot, root):
        return sum(a * b for a, b in zip(coroot, root))


@dataclass(frozen=True)
class BasedRootDatum:
    datum: RootDatum
    simple_indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "simple_indices",
                           tuple(int(i) for i in self.simple_indices))

    @property
    def simple_roots(self):
        return tuple(self.datum.roots[i] for i in self.simple_indices)

    @property
    def simple_coroots(self):
        return tuple(self.datum.coroots[i] for i in self.simple_indices)


@dataclass(frozen=True)
class WeylGroup:
    """All elements as matrices on X^*, in BFS order from the identity."""
    elements: tuple
    generators: tuple

    @property
    def order(self):
        return len(self.elements)


@dataclass(frozen=True)
class DynkinDiagram:
    vertices: tuple   # simple-root indices into the datum's root list
    edges: tuple      # (i, j, <alpha_j^v, alpha_i>, <alpha_i^v, alpha_j>) with i < j
                      # positions i, j index into ``vertices``


def validate(datum: RootDatum):
    """None when every root-datum axiom holds, else a message naming the
    first violated axiom and a witness."""
    if len(datum.roots) != len(datum.coroots):
        return "roots and coroots are not bijective (length mismatch)"
    seen = set()
    for k, (b, bv) in enumerate(zip(datum.roots, datum.coroots)):
        if len(b) != datum.rank or len(bv) != datum.rank:
            return f"root/coroot {k} has wrong length for rank {datum.rank}"
        if b in seen:
            return f"duplicate root {b}"
        seen.add(b)
        if datum.pairing(bv, b) != 2:
            return (f"pairing <coroot, root> != 2 for pair {k}: "
                    f"<{bv}, {b}> = {datum.pairing(bv, b)}")
    root_set = set(datum.roots)
    coroot_set = set(datum.coroots)
    for k in range(datum.nroots):
        s = reflection(datum, k)
        for b in datum.roots:
            if s.apply(b) not in root_set:
                return (f"reflection at root {k} does not permute the roots "
                        f"(image of {b} is {s.apply(b)})")
        sv = coreflection(datum, k)
        for bv in datum.coroots:
            if sv.apply(bv) not in coroot_set:
                return (f"coreflection at root {k} does not permute the "
                        f"coroots (image of {bv} is {sv.apply(bv)})")
    return None


def require_valid(datum: RootDatum):
    msg = validate(datum)
    if msg is not None:
        raise ValidationError(msg)


def validate_based(based: BasedRootDatum):
    """None when the based-datum invariants hold, else a message."""
    msg = validate(based.datum)
    if msg is not None:
        return msg
    idx = based.simple_indices
    if len(set(idx)) != len(idx) or any(i < 0 or i >= based.datum.nroots
                                        for i in idx):
        return "simple_indices is not a subset of the root indices"
    S = simple_matrix(based)
    if len(idx) > 0:
        # linear independence: the simple-root matrix must have full column rank
        if len(kernel_basis(S)) > 0:
            return "simple roots are linearly dependent"
    for k, b in enumerate(based.datum.roots):
        coeffs = express_in_simple(based, b)
        if coeffs is None:
            return f"root {b} is not an integer combination of the simple roots"
        if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
            return f"root {b} is neither positive nor negative (coeffs {coeffs})"
    return None


def require_valid_based(based: BasedRootDatum):
    msg = validate_based(based)
    if msg is not None:
        raise ValidationError(msg)


def simple_matrix(based: BasedRootDatum) -> IntMatrix:
    """rank x (number of simple roots) matrix with simple roots as columns."""
    rank = based.datum.rank
    cols = based.simple_roots
    return IntMatrix(rank, len(cols),
                     tuple(tuple(c[i] for c in cols) for i in range(rank)))


def express_in_simple(based: BasedRootDatum, root):
    """Integer coefficients of ``root`` in the simple roots, or None."""
    return solve_integer(simple_matrix(based), root)


def reflection(datum: RootDatum, root_index: int) -> IntMatrix:
    """s_beta on X^*: lambda -> lambda - <beta^v, lambda> beta."""
    if not 0 <= root_index < datum.nroots:
        raise ValidationError("root index out of range")
    b = datum.roots[root_index]
    bv = datum.coroots[root_index]
    n = datum.rank
    return IntMatrix(n, n, tuple(tuple(int(i == j) - b[i] * bv[j]
                                       for j in range(n)) for i in range(n)))


def coreflection(datum: RootDatum, root_index: int) -> IntMatrix:
    """s_{beta^v} on X_*: ell -> ell - <ell, beta> beta^v.

    Equals the inverse transpose (= transpose, both are involutions) of
    ``reflection`` at the same root.
    """
    if not 0 <= root_index < datum.nroots:
        raise ValidationError("root index out of range")
    b = datum.roots[root_index]
    bv = datum.coroots[root_index]
    n = datum.rank
    return IntMatrix(n, n, tuple(tuple(int(i == j) - bv[i] * b[j]
                                       for j in range(n)) for i in range(n)))


def weyl_generate(based: BasedRootDatum, cap: int = 100000) -> WeylGroup:
    """BFS closure of the simple reflections, deterministic element order."""
    n = based.datum.rank
    gens = tuple(reflection(based.datum, i) for i in based.simple_indices)
    ident = IntMatrix.identity(n)
    elems = [ident]
    seen = {ident.entries: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                p = w @ g
                if p.entries not in seen:
                    if len(elems) >= cap:
                        raise BudgetExceededError(
                            f"Weyl closure exceeds cap {cap}")
                    seen[p.entries] = len(elems)
                    elems.append(p)
                    nxt.append(p)
        frontier = nxt
    return WeylGroup(tuple(elems), gens)


def positive_roots(based: BasedRootDatum):
    """The positive system R+ determined by the base."""
    pos = []
    for b in based.datum.roots:
        coeffs = express_in_simple(based, b)
        if coeffs is None:
            raise ValidationError(f"root {b} not in the simple-root lattice")
        if all(c >= 0 for c in coeffs) and any(c > 0 for c in coeffs):
            pos.append(b)
    return tuple(pos)


@dataclass(frozen=True)
class PositiveSystem:
    roots: tuple       # sorted tuple of root vectors
    weyl_element: IntMatrix


def positive_systems(datum: RootDatum, weyl: WeylGroup, based: BasedRootDatum):
    """Orbit of R+(base) under W, with the unique w carrying the base
    system onto each.  Asserts that w -> w.R+ is a bijection."""
    base_pos = positive_roots(based)
    systems = {}
    for w in weyl.elements:
        img = tuple(sorted(w.apply(b) for b in base_pos))
        if img in systems:
            raise InternalCheckError(
                "two Weyl elements map the base system to the same positive "
                "system (simple transitivity fails)")
        systems[img] = w
    return [PositiveSystem(s, systems[s]) for s in sorted(systems)]


def dynkin(based: BasedRootDatum) -> DynkinDiagram:
    """Dynkin diagram on the simple roots; an edge joins two distinct
    vertices iff their pairing is nonzero, and carries both pairings."""
    k = len(based.simple_indices)
    roots = based.simple_roots
    coroots = based.simple_coroots
    edges = []
    for i in range(k):
        for j in range(i + 1, k):
            down = based.datum.pairing(coroots[j], roots[i])
            up = based.datum.pairing(coroots[i], roots[j])
            if (down != 0) != (up != 0):
                raise ValidationError(
                    f"asymmetric vanishing of pairings between simple roots "
                    f"{i} and {j}")
            if down != 0:
                edges.append((i, j, down, up))
    return DynkinDiagram(tuple(based.simple_indices), tuple(edges))


def cartan_pairing(based: BasedRootDatum, i: int, j: int) -> int:
    """<alpha_i^v, alpha_j> on simple positions i, j."""
    return based.datum.pairing(based.simple_coroots[i], based.simple_roots[j])


@dataclass(frozen=True)
class CenterData:
    """Z(G) = Hom(X^*/ZR, C*) together with the SNF presentation of
    X^*/ZR used to transport automorphism actions exactly.

    ``moduli`` has one entry per presented coordinate of X^*/ZR: d >= 1
    for torsion (1 = trivial), 0 for free.  ``to_presented`` maps standard
    X^* coordinates to presented coordinates.
    """
    group: DiagonalizableGroup
    to_presented: IntMatrix
    from_presented: IntMatrix
    moduli: tuple


def center_data(datum: RootDatum) -> CenterData:
    rank = datum.rank
    rel = IntMatrix.from_rows(list(datum.roots), cols=rank)
    pres = cokernel_presentation(rel)
    fin = FGAbelianGroup(0, pres.invariant_factors)
    group = DiagonalizableGroup(torus_rank=pres.free_rank, finite_part=fin)
    return CenterData(group=group,
                      to_presented=pres.to_presented,
                      from_presented=pres.from_presented,
                      moduli=pres.moduli)


def center(datum: RootDatum) -> DiagonalizableGroup:
    """Z(G) as a diagonalizable group: m torus factors plus the finite
    part read off the SNF of the root relations."""
    return center_data(datum).group


@dataclass(frozen=True)
class AlmostProduct:
    sublattice_1: tuple   # basis of X^*(H/Z(G)) = the root lattice ZR
    sublattice_2: tuple   # basis of {lambda : <alpha^v, lambda> = 0 for all alpha}
    index: int


def almost_product_check(datum: RootDatum) -> AlmostProduct:
    """The finite-index sublattice ZR x (coroot-perp) of X^*; raises when
    the direct sum does not have finite index (invalid datum)."""
    rank = datum.rank
    if datum.nroots:
        root_cols = IntMatrix(rank, datum.nroots,
                              tuple(tuple(r[i] for r in datum.roots)
                                    for i in range(rank)))
        basis1 = column_lattice_basis(root_cols)
        coroot_rows = IntMatrix.from_rows(list(datum.coroots), cols=rank)
        basis2 = kernel_basis(coroot_rows)
    else:
        basis1 = []
        basis2 = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    combined = basis1 + basis2
    if len(combined) != rank:
        raise ValidationError(
            f"rank mismatch: ZR has rank {len(basis1)} and the coroot-perp "
            f"lattice rank {len(basis2)}, sum != {rank}")
    M = IntMatrix(rank, rank, tuple(tuple(v[i] for v in combined)
                                    for i in range(rank)))
    d = M.det()
    if d == 0:
        raise ValidationError("sublattices do not span a finite-index subgroup")
    return AlmostProduct(tuple(basis1), tuple(basis2), abs(d))
