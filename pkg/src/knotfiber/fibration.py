"""Topology of the torus fibrations attached to a monodromy representation:
Leray pages over the knot complement, the three pieces of the total space
(generic part, singular part, their intersection), the Mayer-Vietoris
gluing with labeled generators, Smale classification of the resulting
simply connected 5-manifolds, and the 6-dimensional totals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Union

from .homology import (AmbiguousExtension, CellMap, ComplexCells,
                       HomologyTable, RepModule, TableEntry,
                       amalgam_homology, cell_map_from_chain, coinvariants,
                       fox_coefficients, peripheral_homology,
                       presentation_cells)
from .mrep import MRep, ImageClass, block_splitting, classify_image
from .presentation import (Presentation, Word, concat_words, evaluate_word,
                           invert_word, word_from_powers)
from .transvection import exterior_power, is_transvection
from .zlattice import (AbMorphism, FgAbGroup, IntMatrix, PresentedAb,
                       cokernel, hom_is_zero, hstack_all, kernel_basis,
                       smith_normal_form, solve_matrix, vstack_all)


class FibrationError(ValueError):
    """Unsupported input shape for the topology pipeline."""


class IndeterminateResult(FibrationError):
    """A spectral-sequence degeneration could not be certified."""


class GluingAmbiguous(FibrationError):
    """The gluing produced an extension the rules cannot resolve."""


class InadmissibleTorsion(ValueError):
    """H2 torsion that no simply connected spin 5-manifold can carry."""


# ---------------------------------------------------------------------------
# Leray pages
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class E2Page:
    """Second page of the fibration's homology spectral sequence: row q is
    the knot-group homology with coefficients in the q-th exterior power of
    the monodromy."""

    fiber_dim: int
    grid: dict[tuple[int, int], TableEntry]

    def entry(self, p: int, q: int) -> TableEntry:
        return self.grid.get((p, q), FgAbGroup.trivial())

    def row(self, q: int) -> tuple[TableEntry, ...]:
        return tuple(self.entry(p, q) for p in range(4))

    def antidiagonal(self, n: int) -> list[TableEntry]:
        return [self.entry(p, n - p) for p in range(4)
                if 0 <= n - p <= self.fiber_dim]


def _require_amalgam(r: MRep) -> tuple[int, int]:
    pq = r.presentation.amalgam
    if pq is None:
        raise FibrationError(
            "topology pipeline needs a torus-knot amalgam presentation")
    return pq


def _block_matrices(r: MRep) -> tuple[IntMatrix, IntMatrix]:
    """Upper-left 2x2 blocks of the generator images after splitting off the
    common fixed direction."""
    split = block_splitting(list(r.assignment))
    if split is None:
        raise FibrationError(
            "representation is not conjugate into the 2x2 block form")
    _, blocks = split
    return blocks[0], blocks[1]


def _module_rows(r: MRep, fiber_dim: int) -> list[RepModule]:
    """Coefficient module for each grid row."""
    if fiber_dim == 2:
        bx, by = _block_matrices(r)
        one = IntMatrix.identity(1)
        det_row = IntMatrix(1, 1, [bx.det()])
        return [RepModule(1, (one, one)),
                RepModule(2, (bx, by)),
                RepModule(1, (det_row, IntMatrix(1, 1, [by.det()])))]
    if fiber_dim == 3:
        mx, my = r.assignment
        return [RepModule(exterior_power(mx, q).rows,
                          (exterior_power(mx, q), exterior_power(my, q)))
                for q in range(4)]
    raise FibrationError("fiber dimension must be 2 or 3")


def leray_e2(r: MRep, fiber_dim: int) -> E2Page:
    """Assemble the page from the amalgam homology of each exterior power."""
    p, q = _require_amalgam(r)
    grid: dict[tuple[int, int], TableEntry] = {}
    for row_q, module in enumerate(_module_rows(r, fiber_dim)):
        table = amalgam_homology(module.actions[0], module.actions[1], p, q)
        for col in range(4):
            entry = table.degree(col)
            if not (isinstance(entry, FgAbGroup) and entry.is_trivial()):
                grid[(col, row_q)] = entry
    return E2Page(fiber_dim, grid)


def _differential_annihilator(q: int, r: int) -> int:
    """Fiberwise multiplication by k scales row q by k^q, so a differential
    out of row q into row q+r-1 is killed by gcd_k k^q (k^(r-1) - 1)."""
    g = 0
    for k in range(2, 7):
        g = gcd(g, k ** q * (k ** (r - 1) - 1))
    return g


def certify_degeneration(page: E2Page) -> list[str]:
    """Certificates that every higher differential vanishes.

    A differential is certified zero when its source or target is trivial,
    or when the fiberwise-multiplication action (available because these
    bundles are linear, with a section) forces it to take values in torsion
    the target does not have.  Raises IndeterminateResult otherwise.
    """
    notes = []
    for r in (2, 3):
        for (p, q) in list(page.grid):
            p2, q2 = p - r, q + r - 1
            if not (0 <= p2 and q2 <= page.fiber_dim):
                continue
            src = page.entry(p, q)
            tgt = page.entry(p2, q2)
            if not isinstance(src, FgAbGroup) or not isinstance(tgt, FgAbGroup):
                raise IndeterminateResult(
                    f"ambiguous entry at ({p},{q}) blocks the certificate")
            if src.is_trivial() or tgt.is_trivial():
                continue
            g = _differential_annihilator(q, r)
            if hom_is_zero(src, tgt.exponent_annihilates(g)):
                notes.append(
                    f"d{r} at ({p},{q}) killed by multiplication weight {g}")
                continue
            raise IndeterminateResult(
                f"d{r}: ({p},{q}) -> ({p2},{q2}) not certified zero")
    return notes


def _total_from_page(page: E2Page, top: int) -> HomologyTable:
    entries = []
    for n in range(top + 1):
        acc = FgAbGroup.trivial()
        for e in page.antidiagonal(n):
            if isinstance(e, AmbiguousExtension):
                raise IndeterminateResult("ambiguous page entry")
            acc = acc.direct_sum(e)
        entries.append(acc)
    return HomologyTable(tuple(entries))


def homology_Y0(r: MRep) -> HomologyTable:
    """Homology of the generic part (the torus bundle over the knot
    complement): total of the certified-degenerate page, degrees 0..5."""
    page = leray_e2(r, 2)
    certify_degeneration(page)
    return _total_from_page(page, 5)


def homology_Y1(m: IntMatrix, l: IntMatrix) -> HomologyTable:
    """Homology of the singular part, a bundle over a circle whose fiber is
    the pinched torus.

    The fiber has one homology class in each degree 0, 1, 2; the longitude
    acts trivially except on degree 1, where it acts through the quotient
    of the lattice by the vanishing-cycle direction.  The Mayer-Vietoris
    over two arcs of the circle splits, giving
    H_p = ker(psi_{p-1}) + coker(psi_p) with psi_p = (a - b, a - mu_p b).
    """
    if m.rows != 2 or m.cols != 2:
        raise FibrationError("expected 2x2 block matrices")
    if m * l != l * m:
        raise FibrationError("meridian and longitude images must commute")
    if not is_transvection(_embed3(m)):
        raise FibrationError("meridian block is not a transvection")
    mu = [1, _quotient_action(m, l)[0], 1]
    kers, cokers = [], []
    for p in range(3):
        psi = IntMatrix.from_rows([[1, -1], [1, -mu[p]]])
        kers.append(FgAbGroup.free(kernel_basis(psi).cols))
        cokers.append(cokernel(psi))
    entries = []
    for p in range(6):
        low = cokers[p] if p < 3 else FgAbGroup.trivial()
        high = kers[p - 1] if 1 <= p <= 3 else FgAbGroup.trivial()
        entries.append(low.direct_sum(high))
    return HomologyTable(tuple(entries))


def _embed3(b: IntMatrix) -> IntMatrix:
    return IntMatrix(3, 3, [b[0, 0], b[0, 1], 0,
                            b[1, 0], b[1, 1], 0,
                            0, 0, 1])


def _quotient_action(m: IntMatrix, l: IntMatrix) -> tuple[int, IntMatrix, IntMatrix]:
    """Action of l on the rank-one quotient lattice Z^2 / im(m - 1).

    Returns (mu, proj, section) with proj * l = mu * proj and
    proj * section = 1.
    """
    d = m - IntMatrix.identity(2)
    snf = smith_normal_form(d)
    if snf.rank() != 1 or snf.D[0, 0] != 1:
        raise FibrationError("meridian block must have primitive rank-one m - 1")
    proj = IntMatrix(1, 2, list(snf.U.row(1)))
    uinv = snf.U.inverse()
    section = IntMatrix(2, 1, [uinv[0, 1], uinv[1, 1]])
    mu = (proj * l * section)[0, 0]
    if mu not in (1, -1):
        raise AssertionError("longitude action on the quotient must be +-1")
    return mu, proj, section


def homology_boundary(m: IntMatrix, l: IntMatrix) -> HomologyTable:
    """Homology of the piece intersection, a torus bundle over the
    peripheral two-torus: total of the certified page whose twisted row is
    the peripheral homology."""
    if m * l != l * m:
        raise FibrationError("meridian and longitude images must commute")
    torus_row = (FgAbGroup.free(1), FgAbGroup.free(2), FgAbGroup.free(1))
    middle = peripheral_homology(m, l)
    grid: dict[tuple[int, int], TableEntry] = {}
    for p in range(3):
        for q in (0, 2):
            if not torus_row[p].is_trivial():
                grid[(p, q)] = torus_row[p]
        e = middle.degree(p)
        if not (isinstance(e, FgAbGroup) and e.is_trivial()):
            grid[(p, 1)] = e
    page = E2Page(2, grid)
    certify_degeneration(page)
    return _total_from_page(page, 5)


# ---------------------------------------------------------------------------
# Gluing
# ---------------------------------------------------------------------------


PERIPHERAL_PRESENTATION = Presentation(
    ("m", "l"),
    ((word_from_powers((0, 1), (1, 1)), word_from_powers((1, 1), (0, 1))),))

CIRCLE_PRESENTATION = Presentation(("l",))


@dataclass(frozen=True)
class LabeledCell:
    piece: str
    degree: int
    bidegree: tuple[int, int]
    label: str
    group: PresentedAb


@dataclass(frozen=True)
class GluingLabels:
    """Named summands of the three piece tables, cell by cell."""

    cells: tuple[LabeledCell, ...]

    def for_piece(self, piece: str) -> list[LabeledCell]:
        return [c for c in self.cells if c.piece == piece]


@dataclass(frozen=True)
class ManifoldId:
    name: str
    ascii_name: str
    kind: str  # "s2xs3" | "connected-sum" | "other"
    h2: FgAbGroup


@dataclass
class GlueResult:
    table: HomologyTable
    manifold: Optional[ManifoldId]
    pieces: dict[str, HomologyTable]
    page: E2Page
    labels: GluingLabels
    warnings: list[str] = field(default_factory=list)


def _lambda_conjugate_relator(rho_x: IntMatrix, rho_y: IntMatrix,
                              w_m: Word, p: int, q: int,
                              evaluate) -> IntMatrix:
    """Coefficient of the pushed peripheral 2-cell on the amalgam 2-cell.

    The peripheral relator [m, l] freely reduces to [w_m, x^p]; writing it
    as a product of conjugates of the amalgam relator r = x^p y^-q gives
    [a, x^p] = (a r a^-1) [a, y^q] r^-1 and [g, y^q] = (g r^-1 g^-1) r for a
    single letter g = x^(+-1), so the evaluated conjugating coefficients
    accumulate letter by letter.
    """
    r = rho_x.rows
    ident = IntMatrix.identity(r)
    acc = evaluate(w_m) - ident
    prefix = ident
    mats = {1: rho_x, -1: rho_x.inverse()}
    for g, e in w_m:
        if g == 0:
            acc = acc + prefix * (ident - mats[e])
            prefix = prefix * mats[e]
        else:
            prefix = prefix * (rho_y if e == 1 else rho_y.inverse())
    return acc


def _peripheral_to_knot_maps(P: Presentation, module: RepModule,
                             knot_cells: ComplexCells,
                             peri_cells: ComplexCells) -> CellMap:
    """Chain map induced by the inclusion of the peripheral subgroup."""
    p, q = P.amalgam
    w_m = P.meridians[0]
    w_l = P.longitude
    acts = module.actions

    def evaluate(w: Word) -> IntMatrix:
        return evaluate_word(acts, w)

    r = module.rank
    f0 = IntMatrix.identity(r)
    fm = fox_coefficients(acts, w_m, 2)
    fl = fox_coefficients(acts, w_l, 2)
    f1 = (fm[0].hstack(fl[0])).vstack(fm[1].hstack(fl[1]))
    f2 = _lambda_conjugate_relator(acts[0], acts[1], w_m, p, q, evaluate)
    return cell_map_from_chain(peri_cells, knot_cells, f0, f1, f2)


def _peripheral_to_circle_maps(module_actions: tuple[IntMatrix, IntMatrix],
                               coeff: IntMatrix, circle_action: IntMatrix,
                               peri_cells: ComplexCells,
                               circle_cells: ComplexCells) -> CellMap:
    """Chain map collapsing the meridian direction of the peripheral torus
    onto the circle, with a coefficient map onto the singular-fiber row."""
    r = peri_cells.module_rank
    rbar = coeff.rows
    f0 = coeff
    f1 = IntMatrix.zero(rbar, r).hstack(coeff)
    f2 = IntMatrix.zero(0, r)
    return cell_map_from_chain(peri_cells, circle_cells, f0, f1, f2)


def _fiber_modules(bm: IntMatrix, bl: IntMatrix):
    """Pinched-fiber coefficient data per fiber degree: (rank, action,
    coefficient map from the torus row)."""
    mu1, proj, _ = _quotient_action(bm, bl)
    one = IntMatrix.identity(1)
    return [
        (1, one, one),                       # degree 0
        (1, IntMatrix(1, 1, [mu1]), proj),   # degree 1: quotient lattice
        (1, one, one),                       # degree 2: orientation class
    ]


def _cell_label(piece: str, p: int, q: int) -> str:
    if piece == "Y0":
        base = {0: "σ*[pt]", 1: "σ*[μ]"}
        if q == 0:
            return base.get(p, f"σ*H{p}(base)")
        if q == 2:
            return "[F]" if p == 0 else f"[F]·σ*H{p}(base)"
        return f"H{p}(G,ρ)"
    if piece == "Y1":
        if q == 0:
            return "σ*[pt]" if p == 0 else "σ*[λ]"
        if q == 2:
            return "[F₀]" if p == 0 else "[F₀]·σ*[λ]"
        return f"H{p}(S¹,H₁F₀)"
    base = {0: "σ*[pt]", 1: "σ*[μ],σ*[λ]", 2: "σ*[T]"}
    if q == 0:
        return base[p]
    if q == 2:
        return "[F]" if p == 0 else ("[F]·σ*[T]" if p == 2
                                     else "[F]·σ*[μ],[F]·σ*[λ]")
    return f"H{p}(G',ρ)"


def glue_total_detailed(r: MRep) -> GlueResult:
    """The full gluing pipeline for a block representation on a torus-knot
    amalgam presentation.

    The three pieces are computed cell by cell with presented groups; the
    Mayer-Vietoris comparison maps are induced by explicit chain maps
    (peripheral inclusion into the knot group, and collapse onto the
    circle direction for the singular piece), so the torsion bookkeeping
    the tables need is computed rather than guessed.  The result is
    validated against the simple-connectivity criterion, Euler
    characteristic zero, Poincare duality, and Smale admissibility.
    """
    pq = _require_amalgam(r)
    p, q = pq
    cls = classify_image(r)
    if cls is not ImageClass.SL2Z_BLOCK:
        raise FibrationError(
            f"gluing labels are only defined for block representations; "
            f"this one is {cls.value}")
    page = leray_e2(r, 2)
    notes = certify_degeneration(page)
    warnings = list(notes)

    bx, by = _block_matrices(r)
    bm = evaluate_word((bx, by), r.presentation.meridians[0])
    bl = evaluate_word((bx, by), r.presentation.longitude)
    if not is_transvection(_embed3(bm)):
        raise FibrationError("meridian block is not a transvection")

    one = IntMatrix.identity(1)
    knot_modules = [RepModule(1, (one, one)), RepModule(2, (bx, by)),
                    RepModule(1, (one, one))]
    peri_modules = [RepModule(1, (one, one)), RepModule(2, (bm, bl)),
                    RepModule(1, (one, one))]
    fiber_data = _fiber_modules(bm, bl)

    knot_cells = [presentation_cells(r.presentation, mod) for mod in knot_modules]
    peri_cells = [presentation_cells(PERIPHERAL_PRESENTATION, mod)
                  for mod in peri_modules]
    circle_cells = [presentation_cells(
        CIRCLE_PRESENTATION, RepModule(rank, (action,)))
        for rank, action, _ in fiber_data]

    to_knot = [_peripheral_to_knot_maps(r.presentation, peri_modules[qq],
                                        knot_cells[qq], peri_cells[qq])
               for qq in range(3)]
    to_circle = [_peripheral_to_circle_maps(
        (bm, bl), fiber_data[qq][2], fiber_data[qq][1],
        peri_cells[qq], circle_cells[qq]) for qq in range(3)]

    def homology_of(cells: ComplexCells, deg: int) -> PresentedAb:
        return (cells.h0, cells.h1, cells.h2)[deg]

    def map_of(cm: CellMap, deg: int) -> AbMorphism:
        return (cm.h0, cm.h1, cm.h2)[deg]

    # collect labeled cells per total degree
    label_cells: list[LabeledCell] = []
    y0_cells: dict[int, list[tuple[int, int, PresentedAb]]] = {}
    y1_cells: dict[int, list[tuple[int, int, PresentedAb]]] = {}
    bd_cells: dict[int, list[tuple[int, int, PresentedAb]]] = {}
    for qq in range(3):
        for pp in range(3):
            n = pp + qq
            for piece, cells_list, store in (
                    ("Y0", knot_cells, y0_cells),
                    ("boundary", peri_cells, bd_cells)):
                grp = homology_of(cells_list[qq], pp)
                if not grp.group().is_trivial():
                    store.setdefault(n, []).append((pp, qq, grp))
                    label_cells.append(LabeledCell(
                        piece, n, (pp, qq), _cell_label(piece, pp, qq), grp))
            if pp <= 1:
                grp = homology_of(circle_cells[qq], pp)
                if not grp.group().is_trivial():
                    y1_cells.setdefault(n, []).append((pp, qq, grp))
                    label_cells.append(LabeledCell(
                        "Y1", n, (pp, qq), _cell_label("Y1", pp, qq), grp))

    def direct_sum(cells: list[tuple[int, int, PresentedAb]]) -> PresentedAb:
        out = PresentedAb.trivial()
        for _, _, g in cells:
            out = out.direct_sum(g)
        return out

    psi: dict[int, AbMorphism] = {}
    for n in range(5):
        src_cells = bd_cells.get(n, [])
        dst_cells = y0_cells.get(n, []) + y1_cells.get(n, [])
        n_y0 = len(y0_cells.get(n, []))
        src = direct_sum(src_cells)
        dst = direct_sum(dst_cells)
        rows = []
        for pos, (dp, dq, dgrp) in enumerate(dst_cells):
            row_blocks = []
            for (sp, sq, sgrp) in src_cells:
                blk = None
                if pos < n_y0:
                    if (dp, dq) == (sp, sq):
                        blk = map_of(to_knot[sq], sp).matrix
                else:
                    if (dp, dq) == (sp, sq) and sp <= 1:
                        blk = -map_of(to_circle[sq], sp).matrix
                if blk is None:
                    blk = IntMatrix.zero(dgrp.ngens, sgrp.ngens)
                row_blocks.append(blk)
            rows.append(hstack_all(row_blocks, rows=dgrp.ngens))
        matrix = vstack_all(rows, cols=src.ngens) if rows else \
            IntMatrix.zero(0, src.ngens)
        psi[n] = AbMorphism(src, dst, matrix)

    # read off the glued homology
    entries: list[TableEntry] = []
    for n in range(6):
        if n <= 4:
            sub = psi[n].cokernel()
        else:
            sub = FgAbGroup.trivial()
        if 1 <= n <= 5:
            quot = psi[n - 1].kernel()
        else:
            quot = FgAbGroup.trivial()
        if sub.is_trivial():
            entries.append(quot)
        elif quot.is_trivial():
            entries.append(sub)
        elif quot.is_free():
            entries.append(sub.direct_sum(quot))
        else:
            entries.append(AmbiguousExtension(sub, quot,
                                              (sub.direct_sum(quot),)))

    # resolution rule for an ambiguous H2: Smale admissibility filter
    h2 = entries[2]
    if isinstance(h2, AmbiguousExtension):
        admissible = [c for c in h2.candidates if _smale_admissible(c)]
        if len(admissible) == 1:
            entries[2] = admissible[0]
            warnings.append("H2 extension resolved by Smale admissibility")
        else:
            raise GluingAmbiguous(str(h2))
    for n, e in enumerate(entries):
        if isinstance(e, AmbiguousExtension):
            raise GluingAmbiguous(f"H{n}: {e}")

    table = HomologyTable(tuple(entries))
    pieces = {
        "Y0": _total_from_page(page, 5),
        "Y1": homology_Y1(bm, bl),
        "boundary": homology_boundary(bm, bl),
    }
    _validate_glued(table, r, warnings)
    manifold = smale_classify(table.degree(2))
    return GlueResult(table, manifold, pieces, page,
                      GluingLabels(tuple(label_cells)), warnings)


def _validate_glued(table: HomologyTable, r: MRep, warnings: list[str]) -> None:
    betti = table.betti()
    if table.degree(0) != FgAbGroup.free(1):
        raise GluingAmbiguous("glued H0 is not Z")
    if table.degree(5) != FgAbGroup.free(1):
        raise GluingAmbiguous("glued H5 is not Z")
    if table.euler_characteristic() != 0:
        raise GluingAmbiguous("glued table has nonzero Euler characteristic")
    if any(betti[i] != betti[5 - i] for i in range(6)):
        raise GluingAmbiguous("glued table violates Poincare duality")
    sc = pi1_simply_connected(r, fiber_dim=2)
    h1_zero = table.degree(1).is_trivial()
    if sc != h1_zero:
        raise GluingAmbiguous(
            "glued H1 contradicts the simple-connectivity criterion")


def glue_total(r: MRep) -> tuple[HomologyTable, ManifoldId]:
    res = glue_total_detailed(r)
    return res.table, res.manifold


def pi1_simply_connected(r: MRep, fiber_dim: int = 2) -> bool:
    """Coinvariants of the monodromy module vanish, which forces the total
    space to be simply connected."""
    if fiber_dim == 2:
        bx, by = _block_matrices(r)
        module = RepModule(2, (bx, by))
    elif fiber_dim == 3:
        module = RepModule(3, tuple(r.assignment))
    else:
        raise FibrationError("fiber dimension must be 2 or 3")
    return coinvariants(module).is_trivial()


def _smale_admissible(h2: FgAbGroup) -> bool:
    tor = h2.torsion
    if len(tor) % 2 != 0:
        return False
    return all(tor[i] == tor[i + 1] for i in range(0, len(tor), 2))


def smale_classify(h2: FgAbGroup) -> ManifoldId:
    """Name the simply connected closed spin 5-manifold with the given
    second homology; the torsion must split as two isomorphic halves."""
    if not _smale_admissible(h2):
        raise InadmissibleTorsion(
            f"H2 = {h2} has no T + T torsion splitting; no simply connected "
            "spin 5-manifold carries it")
    k = h2.free_rank
    if h2.is_free():
        if k == 0:
            return ManifoldId("S⁵", "S^5", "other", h2)
        if k == 1:
            return ManifoldId("S²×S³", "S^2 x S^3", "s2xs3", h2)
        return ManifoldId(f"#{k}(S²×S³)", f"#{k}(S^2 x S^3)",
                          "connected-sum", h2)
    return ManifoldId(f"5-manifold with H₂ = {h2.unicode()}",
                      f"5-manifold with H2 = {h2.ascii()}", "other", h2)


# ---------------------------------------------------------------------------
# Six-dimensional totals
# ---------------------------------------------------------------------------


def t3_total(y: HomologyTable, mode: str) -> HomologyTable:
    """Homology of the 6-manifold total space over the 5-manifold table.

    "product" crosses with a circle (Kunneth); "circle_bundle" is the Gysin
    sequence of a circle bundle with primitive Euler class, supported for
    torsion-free simply connected tables where every connecting map is
    determined by the primitivity of the class.
    """
    for e in y.entries:
        if not isinstance(e, FgAbGroup) or not e.is_free():
            raise FibrationError("total-space homology needs a torsion-free base table")
    b = [y.degree(p).free_rank for p in range(6)]
    if mode == "product":
        return HomologyTable(tuple(
            FgAbGroup.free(b[p] if p < 6 else 0).direct_sum(
                FgAbGroup.free(b[p - 1] if 1 <= p <= 6 else 0))
            for p in range(7)))
    if mode == "circle_bundle":
        if b[0] != 1 or b[5] != 1 or b[1] != 0 or b[4] != 0:
            raise FibrationError(
                "circle-bundle totals need a closed simply connected "
                "torsion-free table")
        if b[2] < 1:
            raise FibrationError("primitive Euler class needs rank H2 >= 1")
        # rank of capping with the primitive Euler class per degree
        r = [0] * 8
        r[2] = 1            # onto H0
        r[5] = 1            # fundamental class caps to a primitive H3 class
        bb = b + [0, 0]
        out = []
        for k in range(7):
            co = bb[k - 1] - r[k + 1] if k >= 1 else 0
            ke = bb[k] - r[k] if k <= 5 else 0
            out.append(FgAbGroup.free(co + ke))
        return HomologyTable(tuple(out))
    raise FibrationError(f"unknown total mode {mode!r}")


@dataclass(frozen=True)
class InvariantReport:
    euler_characteristic: int
    betti: tuple[int, ...]
    poincare_duality: bool
    pi1_trivial: bool
    orientable: str
    w2: str
    pontryagin: str

    @classmethod
    def for_result(cls, res: GlueResult, r: MRep) -> "InvariantReport":
        betti = res.table.betti()
        return cls(
            euler_characteristic=res.table.euler_characteristic(),
            betti=betti,
            poincare_duality=all(betti[i] == betti[5 - i] for i in range(6)),
            pi1_trivial=res.table.degree(1).is_trivial(),
            orientable="true (theorem: block monodromy preserves orientation)",
            w2="0 (theorem: the complement of the critical set is parallelizable)",
            pontryagin=("p1 is c * [critical locus] for an undetermined "
                        "integer constant c"),
        )


def report_invariants(r: MRep) -> InvariantReport:
    """Invariant summary of the glued 5-manifold."""
    res = glue_total_detailed(r)
    return InvariantReport.for_result(res, r)
