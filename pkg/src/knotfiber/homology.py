"""Twisted group homology engines.

Covers exactly what the torus-fibration computations need: invariants and
coinvariants, cyclic groups, the rank-two peripheral subgroup generated by a
commuting meridian/longitude pair, Fox-calculus H^1, and the Mayer-Vietoris
assembly for torus-knot amalgams.  A presentation-complex engine (Fox
derivatives of a one-relator aspherical presentation) provides the same
groups by an independent route and the chain maps used for gluing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .presentation import Presentation, Word, evaluate_word
from .zlattice import (AbMorphism, FgAbGroup, IntMatrix, PresentedAb,
                       cokernel, hstack_all, intersect_kernels, kernel_basis,
                       smith_normal_form, solve_matrix, vstack_all)


@dataclass(frozen=True)
class RepModule:
    """A lattice with a group action given on generators."""

    rank: int
    actions: tuple[IntMatrix, ...]

    def __post_init__(self):
        for g in self.actions:
            if g.rows != self.rank or g.cols != self.rank:
                raise ValueError("action matrix has wrong size")
            if g.det() not in (1, -1):
                raise ValueError("action matrix is not invertible over Z")

    @classmethod
    def trivial(cls, rank: int, ngens: int) -> "RepModule":
        return cls(rank, tuple(IntMatrix.identity(rank) for _ in range(ngens)))


@dataclass(frozen=True)
class AmbiguousExtension:
    """Unresolved extension 0 -> subgroup -> H -> quotient -> 0."""

    subgroup: FgAbGroup
    quotient: FgAbGroup
    candidates: tuple[FgAbGroup, ...]

    def __str__(self) -> str:
        return (f"ambiguous extension of {self.quotient} by {self.subgroup}; "
                "candidates " + ", ".join(str(c) for c in self.candidates))


TableEntry = Union[FgAbGroup, AmbiguousExtension]


@dataclass(frozen=True)
class HomologyTable:
    """Groups per degree, degrees beyond the listed range trivial."""

    entries: tuple[TableEntry, ...]

    def degree(self, p: int) -> TableEntry:
        if 0 <= p < len(self.entries):
            return self.entries[p]
        return FgAbGroup.trivial()

    def top_degree(self) -> int:
        return len(self.entries) - 1

    def is_determinate(self) -> bool:
        return all(isinstance(e, FgAbGroup) for e in self.entries)

    def betti(self) -> tuple[int, ...]:
        if not self.is_determinate():
            raise ValueError("table contains ambiguous entries")
        return tuple(e.free_rank for e in self.entries)

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * b for p, b in enumerate(self.betti()))

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def coinvariants(module: RepModule) -> FgAbGroup:
    """Largest quotient with trivial action: Lambda / <g v - v>."""
    diffs = [g - IntMatrix.identity(module.rank) for g in module.actions]
    return cokernel(hstack_all(diffs, rows=module.rank))


def invariants(module: RepModule) -> FgAbGroup:
    """Largest submodule with trivial action (always free)."""
    return FgAbGroup.free(invariant_basis(module).cols)


def invariant_basis(module: RepModule) -> IntMatrix:
    diffs = [g - IntMatrix.identity(module.rank) for g in module.actions]
    return intersect_kernels(diffs, module.rank)


def cyclic_homology(g: IntMatrix, n: int) -> FgAbGroup:
    """Homology of an infinite cyclic group acting through g.

    Degree 0 is the coinvariants, degree 1 the invariants, everything
    higher vanishes.
    """
    if g.rows != g.cols:
        raise ValueError("action matrix must be square")
    if n < 0:
        raise ValueError("negative degree")
    ident = IntMatrix.identity(g.rows)
    if n == 0:
        return cokernel(g - ident)
    if n == 1:
        return FgAbGroup.free(kernel_basis(g - ident).cols)
    return FgAbGroup.trivial()


def _check_commuting(m: IntMatrix, l: IntMatrix) -> None:
    if m * l != l * m:
        raise ValueError("matrices do not commute")


def peripheral_homology(m: IntMatrix, l: IntMatrix) -> HomologyTable:
    """Homology of Z^2 acting on a lattice through the commuting pair (m, l).

    Degree 0 is the coinvariants of the pair and degree 2 the simultaneous
    invariants.  Degree 1 is computed by Fox calculus for the one-relator
    presentation <m, l | [m, l]>: a derivation assigns (mu, lambda) with
    (m - 1)lambda = (l - 1)mu, and principal derivations are the image of
    kappa -> ((m - 1)kappa, (l - 1)kappa).
    """
    _check_commuting(m, l)
    r = m.rows
    ident = IntMatrix.identity(r)
    dm, dl = m - ident, l - ident
    h0 = cokernel(dm.hstack(dl))
    h2 = FgAbGroup.free(intersect_kernels([dm, dl], r).cols)
    # derivations: (l-1)mu - (m-1)lambda = 0 on stacked (mu; lambda)
    system = dl.hstack(-dm)
    K = kernel_basis(system)
    principal = dm.vstack(dl)
    X = solve_matrix(K, principal)
    if X is None:
        raise AssertionError("principal derivations must be derivations")
    h1 = cokernel(X)
    return HomologyTable((h0, h1, h2))


def fox_coefficients(assignment: Sequence[IntMatrix], w: Word,
                     ngens: int) -> list[IntMatrix]:
    """Fox derivative of a word, evaluated: coefficient matrix per generator.

    d(uv) = du + u dv and d(g^-1) = -g^-1 dg, with u acting through the
    assignment.
    """
    r = assignment[0].rows if assignment else 0
    coeffs = [IntMatrix.zero(r, r) for _ in range(ngens)]
    prefix = IntMatrix.identity(r)
    inverses: dict[int, IntMatrix] = {}
    for g, e in w:
        if e == 1:
            coeffs[g] = coeffs[g] + prefix
            prefix = prefix * assignment[g]
        else:
            if g not in inverses:
                inverses[g] = assignment[g].inverse()
            prefix = prefix * inverses[g]
            coeffs[g] = coeffs[g] - prefix
    return coeffs


def h1_fox(P: Presentation, module: RepModule) -> FgAbGroup:
    """First cohomology by Fox calculus: derivations modulo principal ones.

    The module actions must satisfy the relations of the presentation.
    """
    n = len(P.generators)
    if len(module.actions) != n:
        raise ValueError("module needs one action matrix per generator")
    r = module.rank
    ident = IntMatrix.identity(r)
    blocks = []
    for left, right in P.relations:
        cl = fox_coefficients(module.actions, left, n)
        cr = fox_coefficients(module.actions, right, n)
        row = hstack_all([cl[g] - cr[g] for g in range(n)], rows=r)
        blocks.append(row)
    system = vstack_all(blocks, cols=r * n) if blocks else IntMatrix.zero(0, r * n)
    K = kernel_basis(system)
    principal = vstack_all([g - ident for g in module.actions], cols=r)
    X = solve_matrix(K, principal)
    if X is None:
        raise AssertionError("module actions do not satisfy the relations")
    return cokernel(X)


# ---------------------------------------------------------------------------
# Presentation 2-complex engine (aspherical one-relator presentations)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexCells:
    """Homology of a presentation 2-complex with local coefficients, with
    presented groups and the bases needed to push chain maps around.

    For an aspherical presentation (torus-knot groups, the peripheral
    Z^2) these are the group homology in degrees 0..2.
    """

    module_rank: int
    d1: IntMatrix           # C1 = Lambda^n -> C0 = Lambda
    d2: IntMatrix           # C2 = Lambda^k -> C1
    h0: PresentedAb
    h1: PresentedAb
    h1_basis: IntMatrix     # columns: cycle basis of ker d1 in C1
    h2: PresentedAb
    h2_basis: IntMatrix     # columns: basis of ker d2 in C2

    def table(self) -> HomologyTable:
        return HomologyTable((self.h0.group(), self.h1.group(), self.h2.group()))


def presentation_cells(P: Presentation, module: RepModule) -> ComplexCells:
    """Chain-level homology of the presentation 2-complex of P with
    coefficients in the module.

    d2 columns are the evaluated Fox derivatives of the relators
    left * right^-1; d1 is built from the generator actions minus one.
    """
    from .presentation import concat_words, invert_word
    n = len(P.generators)
    r = module.rank
    ident = IntMatrix.identity(r)
    d1 = hstack_all([g - ident for g in module.actions], rows=r)
    cols = []
    for left, right in P.relations:
        relator = concat_words(left, invert_word(right))
        coeffs = fox_coefficients(module.actions, relator, n)
        cols.append(vstack_all(coeffs, cols=r))
    d2 = hstack_all(cols, rows=r * n) if cols else IntMatrix.zero(r * n, 0)
    if not (d1 * d2).is_zero():
        raise ValueError("actions do not satisfy the presentation relations")
    h0 = PresentedAb(r, d1)
    K = kernel_basis(d1)
    X = solve_matrix(K, d2)
    if X is None:
        raise AssertionError("relator boundaries must be cycles")
    h1 = PresentedAb(K.cols, X)
    K2 = kernel_basis(d2)
    h2 = PresentedAb.free(K2.cols)
    return ComplexCells(r, d1, d2, h0, h1, K, h2, K2)


@dataclass(frozen=True)
class CellMap:
    """Chain map between two presentation complexes, descended to homology."""

    h0: AbMorphism
    h1: AbMorphism
    h2: AbMorphism


def cell_map_from_chain(src: ComplexCells, dst: ComplexCells,
                        f0: IntMatrix, f1: IntMatrix,
                        f2: IntMatrix) -> CellMap:
    """Descend a chain map (f0, f1, f2) to the homology presentations.

    Commuting squares are verified exactly; failure indicates a wrong
    chain-level construction.
    """
    if dst.d1 * f1 != f0 * src.d1:
        raise AssertionError("chain map fails to commute in degree 1")
    if dst.d2 * f2 != f1 * src.d2:
        raise AssertionError("chain map fails to commute in degree 2")
    m0 = AbMorphism(src.h0, dst.h0, f0)
    lifted = solve_matrix(dst.h1_basis, f1 * src.h1_basis)
    if lifted is None:
        raise AssertionError("image of a cycle is not a cycle")
    m1 = AbMorphism(src.h1, dst.h1, lifted)
    lifted2 = solve_matrix(dst.h2_basis, f2 * src.h2_basis)
    if lifted2 is None:
        raise AssertionError("image of a 2-cycle is not a 2-cycle")
    m2 = AbMorphism(src.h2, dst.h2, lifted2)
    return CellMap(m0, m1, m2)


# ---------------------------------------------------------------------------
# Mayer-Vietoris for torus-knot amalgams
# ---------------------------------------------------------------------------


def norm_matrix(g: IntMatrix, n: int) -> IntMatrix:
    """I + g + ... + g^(n-1)."""
    out = IntMatrix.identity(g.rows)
    acc = IntMatrix.identity(g.rows)
    for _ in range(n - 1):
        acc = acc * g
        out = out + acc
    return out


def _extension_entry(sub: FgAbGroup, quot: FgAbGroup) -> TableEntry:
    """Resolve 0 -> sub -> H -> quot -> 0 when it provably splits."""
    if sub.is_trivial():
        return quot
    if quot.is_trivial():
        return sub
    if quot.is_free():
        return sub.direct_sum(quot)
    return AmbiguousExtension(sub, quot, (sub.direct_sum(quot),))


def amalgam_homology(gx: IntMatrix, gy: IntMatrix, p: int, q: int) -> HomologyTable:
    """Homology of <x> *_{x^p = y^q} <y> acting through gx, gy, degrees 0..3.

    Assembled from the cyclic pieces: on coinvariants the natural quotient
    maps, on invariants the norm (transfer) maps for the index-p and
    index-q inclusions of the amalgamating subgroup.
    """
    if gx.rows != gy.rows or gx.cols != gy.cols or gx.rows != gx.cols:
        raise ValueError("actions must be square of equal size")
    if gx.pow(p) != gy.pow(q):
        raise ValueError(f"amalgam condition gx^{p} = gy^{q} fails")
    r = gx.rows
    ident = IntMatrix.identity(r)
    ga = gx.pow(p)

    h0_a = PresentedAb(r, ga - ident)
    h0_x = PresentedAb(r, gx - ident)
    h0_y = PresentedAb(r, gy - ident)
    psi0 = AbMorphism(h0_a, h0_x.direct_sum(h0_y),
                      IntMatrix.identity(r).vstack(-IntMatrix.identity(r)))

    ka = kernel_basis(ga - ident)
    kx = kernel_basis(gx - ident)
    ky = kernel_basis(gy - ident)
    nx = solve_matrix(kx, norm_matrix(gx, p) * ka)
    ny = solve_matrix(ky, norm_matrix(gy, q) * ka)
    if nx is None or ny is None:
        raise AssertionError("norm of an invariant must be invariant")
    psi1 = AbMorphism(PresentedAb.free(ka.cols),
                      PresentedAb.free(kx.cols + ky.cols),
                      nx.vstack(-ny))

    h0 = psi0.cokernel()
    h1 = _extension_entry(psi1.cokernel(), psi0.kernel())
    h2 = psi1.kernel()
    return HomologyTable((h0, h1, h2, FgAbGroup.trivial()))
