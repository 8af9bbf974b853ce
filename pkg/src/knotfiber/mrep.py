"""Monodromy representations of knot groups into SL(3,Z) whose meridians
land in the conjugacy class of the standard transvection.

The solver follows the transvection-pair propagation method: fix the image
of the first meridian to the standard transvection, push pairs through the
conjugation relations, and enumerate whatever stays free inside the bound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .presentation import Presentation, Word, evaluate_word, is_wirtinger, \
    torus_knot_presentation
from .transvection import (NotATransvection, TransvectionPair, STANDARD_PAIR,
                           STANDARD_TRANSVECTION, conjugate_transvection,
                           conjugator_to_standard, decompose_transvection,
                           dot, is_transvection, make_transvection)
from .zlattice import IntMatrix, intersect_kernels, smith_normal_form, vec_gcd


class SolverError(ValueError):
    """Presentation shape not supported by the requested solver."""


class InadmissibleTorusKnot(ValueError):
    """Torus knot parameters admitting no non-trivial representation."""


@dataclass(frozen=True)
class ValidityReport:
    failed_relations: tuple[int, ...]
    failed_meridians: tuple[int, ...]
    messages: tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.failed_relations and not self.failed_meridians


def check_mrep(P: Presentation, assignment: Sequence[IntMatrix]) -> ValidityReport:
    """Check all relations and the transvection condition on every meridian."""
    bad_rel = []
    messages = []
    for idx, (left, right) in enumerate(P.relations):
        if evaluate_word(assignment, left) != evaluate_word(assignment, right):
            bad_rel.append(idx)
            messages.append(
                f"relation {P.word_str(left)} = {P.word_str(right)} fails")
    bad_mer = []
    for idx, w in enumerate(P.meridians):
        img = evaluate_word(assignment, w)
        if not is_transvection(img):
            bad_mer.append(idx)
            messages.append(
                f"meridian {P.word_str(w)} does not map into the transvection class")
    return ValidityReport(tuple(bad_rel), tuple(bad_mer), tuple(messages))


@dataclass(frozen=True)
class MRep:
    """A homomorphism satisfying the meridian transvection condition."""

    presentation: Presentation
    assignment: tuple[IntMatrix, ...]

    def __post_init__(self):
        report = check_mrep(self.presentation, self.assignment)
        if not report.valid:
            raise ValueError("invalid representation: " + "; ".join(report.messages))
        object.__setattr__(self, "_cache", {})

    def image_of(self, w: Word) -> IntMatrix:
        return evaluate_word(self.assignment, w)

    def meridian_pairs(self) -> tuple[TransvectionPair, ...]:
        if "pairs" not in self._cache:
            self._cache["pairs"] = tuple(
                decompose_transvection(self.image_of(w))
                for w in self.presentation.meridians)
        return self._cache["pairs"]

    def normalized(self) -> tuple[IntMatrix, tuple[IntMatrix, ...]]:
        """(N, assignment conjugated by N) with the first meridian mapped to
        the standard transvection."""
        if "norm" not in self._cache:
            N = conjugator_to_standard(decompose_transvection(
                self.image_of(self.presentation.meridians[0])))
            Ninv = N.inverse()
            self._cache["norm"] = (N, tuple(Ninv * M * N for M in self.assignment))
        return self._cache["norm"]

    def conjugated(self, C: IntMatrix) -> "MRep":
        Cinv = C.inverse()
        return MRep(self.presentation,
                    tuple(Cinv * M * C for M in self.assignment))

    def key(self) -> tuple:
        """Deterministic sort key (flattened matrix entries)."""
        return tuple(e for M in self.assignment for e in M.entries)


def trivial_mrep(P: Presentation) -> MRep:
    """The representation through the abelianization, meridians to the
    standard transvection."""
    from .presentation import abelianization
    group, images = abelianization(P)
    if group.free_rank != 1 or group.torsion:
        raise SolverError("trivial M-representation needs abelianization Z")
    return MRep(P, tuple(STANDARD_TRANSVECTION.pow(img[0]) for img in images))


# ---------------------------------------------------------------------------
# Wirtinger solver
# ---------------------------------------------------------------------------


def _primitive_part(v) -> tuple[int, ...]:
    g = vec_gcd(v)
    return tuple(x // g for x in v)


def enumerate_pairs(bound: int) -> list[TransvectionPair]:
    """All canonical transvection pairs with entries in [-bound, bound]."""
    if bound < 1:
        return []
    rng = range(-bound, bound + 1)
    etas = []
    for a in rng:
        for b in rng:
            for c in rng:
                v = (a, b, c)
                if vec_gcd(v) != 1:
                    continue
                if next(x for x in v if x) < 0:
                    continue
                etas.append(v)
    pairs = []
    for eta in etas:
        for a in rng:
            for b in rng:
                for c in rng:
                    xi = (a, b, c)
                    if dot(eta, xi) != 0 or vec_gcd(xi) != 1:
                        continue
                    pairs.append(TransvectionPair(eta, xi))
    return pairs


def _within(pair: TransvectionPair, bound: int) -> bool:
    return all(abs(x) <= bound for x in pair.eta + pair.xi)


def _middle_candidates(b: TransvectionPair, c: TransvectionPair, bound: int,
                       pool: list[TransvectionPair]) -> list[TransvectionPair]:
    """Candidates a with a^-1 b a = c (as transvections), entries within bound.

    Derived from the conjugation formula: eta_c - eta_b must be parallel to
    eta_a and xi_c - xi_b parallel to xi_a, with degenerate cases enumerated
    from the pool.  Every candidate is verified exactly by the caller.
    """
    out = []
    seen = set()

    def consider(eta, xi):
        try:
            p = TransvectionPair.canonical(eta, xi)
        except NotATransvection:
            return
        if p not in seen and _within(p, bound):
            seen.add(p)
            out.append(p)

    rng = range(-bound, bound + 1)
    for sign in (1, -1):
        tce = tuple(sign * x for x in c.eta)
        tcx = tuple(sign * x for x in c.xi)
        d = tuple(p - q for p, q in zip(tce, b.eta))
        e = tuple(p - q for p, q in zip(tcx, b.xi))
        d0 = all(x == 0 for x in d)
        e0 = all(x == 0 for x in e)
        if not d0 and not e0:
            pd = _primitive_part(d)
            pe = _primitive_part(e)
            for s1 in (1, -1):
                for s2 in (1, -1):
                    consider(tuple(s1 * x for x in pd), tuple(s2 * x for x in pe))
        elif not d0:
            pd = _primitive_part(d)
            for s1 in (1, -1):
                eta = tuple(s1 * x for x in pd)
                for a in rng:
                    for bb in rng:
                        for cc in rng:
                            xi = (a, bb, cc)
                            if dot(eta, xi) == 0 and vec_gcd(xi) == 1 \
                                    and dot(b.xi, eta) == 0:
                                consider(eta, xi)
        elif not e0:
            pe = _primitive_part(e)
            for s2 in (1, -1):
                xi = tuple(s2 * x for x in pe)
                if dot(xi, b.eta) != 0:
                    continue
                for a in rng:
                    for bb in rng:
                        for cc in rng:
                            eta = (a, bb, cc)
                            if dot(eta, xi) == 0 and vec_gcd(eta) == 1:
                                consider(eta, xi)
        else:
            # b and c coincide (up to sign): a must commute; scan the pool
            for p in pool:
                if dot(p.xi, b.eta) == 0 and dot(b.xi, p.eta) == 0:
                    consider(p.eta, p.xi)
    return out


def solve_mreps_wirtinger(P: Presentation, bound: int) -> list[MRep]:
    """All M-homomorphisms with the first meridian normalized to the
    standard transvection and every meridian pair's entries in
    [-bound, bound], found by pair propagation through the relations.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    if not is_wirtinger(P):
        raise SolverError("every relation must have the shape a^-1 b a = c")
    n = len(P.generators)
    meridian_gens = {w[0][0] for w in P.meridians if len(w) == 1 and w[0][1] == 1}
    if meridian_gens != set(range(n)):
        raise SolverError("every generator must be a designated meridian")

    triples = []
    for left, right in P.relations:
        a, b = left[0][0], left[1][0]
        c = right[0][0]
        triples.append((a, b, c))

    pool = enumerate_pairs(bound)
    solutions: dict[tuple, dict[int, TransvectionPair]] = {}

    def propagate(pairs: dict[int, TransvectionPair]) -> Optional[dict[int, TransvectionPair]]:
        """Forward-propagate known pairs; None on contradiction."""
        pairs = dict(pairs)
        progress = True
        while progress:
            progress = False
            for a, b, c in triples:
                ka, kb, kc = a in pairs, b in pairs, c in pairs
                if ka and kb:
                    derived = conjugate_transvection(pairs[b], pairs[a])
                    if kc:
                        if pairs[c] != derived:
                            return None
                    else:
                        pairs[c] = derived
                        progress = True
                elif ka and kc:
                    derived = conjugate_transvection(pairs[c],
                                                     pairs[a].inverse_pair())
                    pairs[b] = derived
                    progress = True
        return pairs

    def complete(pairs: dict[int, TransvectionPair]) -> None:
        pairs = propagate(pairs)
        if pairs is None:
            return
        if len(pairs) == n:
            if not all(_within(p, bound) for p in pairs.values()):
                return
            key = tuple(pairs[i] for i in range(n))
            solutions.setdefault(key, pairs)
            return
        # prefer a relation with b, c known and a unknown: small candidate set
        for a, b, c in triples:
            if a not in pairs and b in pairs and c in pairs:
                for cand in _middle_candidates(pairs[b], pairs[c], bound, pool):
                    if conjugate_transvection(pairs[b], cand) == pairs[c]:
                        complete({**pairs, a: cand})
                return
        # otherwise branch on the unknown generator touching the most relations
        unknown = [g for g in range(n) if g not in pairs]
        weight = {g: sum(g in t for t in triples) for g in unknown}
        g = max(unknown, key=lambda x: (weight[x], -x))
        for cand in pool:
            complete({**pairs, g: cand})

    first = min(meridian_gens)
    if bound >= 1:
        complete({first: STANDARD_PAIR})

    reps = []
    for key in sorted(solutions, key=lambda k: tuple(p.eta + p.xi for p in k)):
        pairs = solutions[key]
        assignment = tuple(make_transvection(pairs[i]) for i in range(n))
        report = check_mrep(P, assignment)
        if report.valid:
            reps.append(MRep(P, assignment))
    return reps


# ---------------------------------------------------------------------------
# Conjugacy
# ---------------------------------------------------------------------------


class ImageClass(enum.Enum):
    CYCLIC = "cyclic"
    SL2Z_BLOCK = "sl2z-block"
    OTHER = "other"


def block_splitting(matrices: Sequence[IntMatrix]) -> Optional[tuple[IntMatrix, list[IntMatrix]]]:
    """Simultaneous conjugation into the upper-left 2x2 block, if possible.

    Returns (C, blocks) with C^-1 M C of block shape for every input M and
    blocks the list of 2x2 upper-left corners, or None.  Needs a common
    primitive fixed vector v and a common transpose-fixed vector w pairing
    to <v, w> = +-1 (so the lattice splits as the invariant plane plus Zv).
    """
    if not matrices:
        return None
    ident = IntMatrix.identity(3)
    fixed = intersect_kernels([M - ident for M in matrices], 3)
    cofixed = intersect_kernels([M.transpose() - ident for M in matrices], 3)
    if fixed.cols == 0 or cofixed.cols == 0:
        return None
    e3 = (0, 0, 1)

    def contains(basis: IntMatrix, v) -> bool:
        from .zlattice import solve_integer
        return solve_integer(basis, v) is not None

    if contains(fixed, e3) and contains(cofixed, e3):
        C = ident
    else:
        pairing = fixed.transpose() * cofixed
        snf = smith_normal_form(pairing)
        if snf.rank() == 0 or abs(snf.D[0, 0]) != 1:
            return None
        a = snf.U.row(0)
        b = snf.V.col(0)
        v = fixed.apply([a[i] for i in range(fixed.cols)])
        w = cofixed.apply([b[i] for i in range(cofixed.cols)])
        from .zlattice import kernel_basis
        plane = kernel_basis(IntMatrix(1, 3, list(w)))
        C = IntMatrix(3, 3, [plane[i, 0] for i in range(3)]
                      + [plane[i, 1] for i in range(3)] + list(v))
        C = C.transpose()  # columns b1, b2, v
        if C.det() == -1:
            C = IntMatrix(3, 3, [
                -C[i, 0] if j == 0 else C[i, j]
                for i in range(3) for j in range(3)])
    Cinv = C.inverse()
    blocks = []
    for M in matrices:
        B = Cinv * M * C
        if (B[2, 0], B[2, 1], B[0, 2], B[1, 2], B[2, 2]) != (0, 0, 0, 0, 1):
            return None
        blocks.append(IntMatrix(2, 2, [B[0, 0], B[0, 1], B[1, 0], B[1, 1]]))
    return C, blocks


def classify_image(r: MRep) -> ImageClass:
    """Cyclic (abelian image), SL2Z-block (invariant vector and plane
    splitting the lattice), or Other."""
    if "image_class" in r._cache:
        return r._cache["image_class"]
    ms = list(r.assignment)
    if all(ms[i] * ms[j] == ms[j] * ms[i]
           for i in range(len(ms)) for j in range(i + 1, len(ms))):
        cls = ImageClass.CYCLIC
    elif block_splitting(ms) is not None:
        cls = ImageClass.SL2Z_BLOCK
    else:
        cls = ImageClass.OTHER
    r._cache["image_class"] = cls
    return cls


@dataclass(frozen=True)
class ConjugacyResult:
    witness: Optional[IntMatrix]
    certified_distinct: bool
    reason: str


def _commutant_basis(a1: Sequence[IntMatrix], a2: Sequence[IntMatrix]) -> IntMatrix:
    """Basis of the lattice {X : a1[i] X = X a2[i] for all i} (vectorized)."""
    blocks = []
    for M1, M2 in zip(a1, a2):
        rows = []
        for i in range(3):
            for j in range(3):
                row = [0] * 9
                for k in range(3):
                    row[3 * k + j] += M1[i, k]
                    row[3 * i + k] -= M2[k, j]
                rows.append(row)
        blocks.append(IntMatrix.from_rows(rows))
    from .zlattice import vstack_all, kernel_basis
    return kernel_basis(vstack_all(blocks))


def conjugation_invariants(r: MRep) -> tuple:
    """Conjugation-invariant fingerprint: image class plus traces of the
    generator images and of all products of two generator images."""
    if "invariants" not in r._cache:
        asg = r.assignment
        n = len(asg)
        tr1 = tuple(M.trace() for M in asg)
        tr2 = tuple((asg[i] * asg[j]).trace()
                    for i in range(n) for j in range(i, n))
        r._cache["invariants"] = (classify_image(r).value, tr1, tr2)
    return r._cache["invariants"]


def conjugacy_status(r1: MRep, r2: MRep, bound: int) -> ConjugacyResult:
    """Bounded conjugacy search with invariant-based distinctness.

    Both representations are first normalized so their first meridian maps
    to the standard transvection (any conjugator then lies in the integer
    commutant lattice, which is computed exactly); the bound limits the
    coefficient box searched for a determinant-one combination.
    """
    if r1.presentation is not r2.presentation \
            and r1.presentation != r2.presentation:
        raise ValueError("representations live on different presentations")
    if conjugation_invariants(r1) != conjugation_invariants(r2):
        return ConjugacyResult(None, True, "conjugation invariants differ")
    n1, a1 = r1.normalized()
    n2, a2 = r2.normalized()
    n2i = n2.inverse()
    if a1 == a2:
        return ConjugacyResult(n1 * n2i, False, "identical after normalization")
    K = _commutant_basis(a1, a2)
    if K.cols == 0:
        return ConjugacyResult(None, True, "intertwiner space is zero")
    box = max(bound, 2)
    coeffs = [0] * K.cols

    def combos(idx: int):
        if idx == K.cols:
            yield tuple(coeffs)
            return
        for v in range(-box, box + 1):
            coeffs[idx] = v
            yield from combos(idx + 1)

    for combo in combos(0):
        if all(c == 0 for c in combo):
            continue
        vec = [sum(combo[j] * K[i, j] for j in range(K.cols)) for i in range(9)]
        X = IntMatrix(3, 3, vec)
        d = X.det()
        if d == 1:
            return ConjugacyResult(n1 * X * n2i, False, "intertwiner found")
        if d == -1:
            return ConjugacyResult(n1 * (-X) * n2i, False, "intertwiner found")
    return ConjugacyResult(None, False, f"no witness within bound {bound}")


def are_conjugate(r1: MRep, r2: MRep, bound: int) -> Optional[IntMatrix]:
    """Witness C with C^-1 r1(g) C = r2(g) for all generators, or None.

    None means inconclusive unless an invariant separates the inputs; use
    conjugacy_status for the distinction.
    """
    return conjugacy_status(r1, r2, bound).witness


# ---------------------------------------------------------------------------
# Torus knots: admissibility and lifting
# ---------------------------------------------------------------------------


def torus_admissible(p: int, q: int) -> Optional[tuple[int, int, bool]]:
    """Normalized (P, Q, swapped) with 2|P and 3|Q, or None if the knot
    group admits only the trivial representation."""
    if gcd(p, q) != 1 or p < 2 or q < 2:
        return None
    if p % 2 == 0 and q % 3 == 0:
        return (p, q, False)
    if q % 2 == 0 and p % 3 == 0:
        return (q, p, True)
    return None


def lift_torus_knot(base: MRep, p: int, q: int) -> MRep:
    """Transport a representation of the (2,3) or (4,3) torus knot group to
    the (p,q) one, choosing the exponent signs that keep the meridian in
    the transvection class.
    """
    adm = torus_admissible(p, q)
    if adm is None:
        raise InadmissibleTorusKnot(
            f"t({p},{q}) has only the trivial representation")
    P_, Q_, swapped = adm
    two_power = 0
    t = P_
    while t % 2 == 0:
        t //= 2
        two_power += 1
    base_am = base.presentation.amalgam
    expected = (2, 3) if two_power == 1 else (4, 3)
    if base_am != expected:
        raise ValueError(
            f"lift to t({p},{q}) needs a base on the t{expected} presentation")
    target = torus_knot_presentation(p, q)
    bx, by = base.assignment
    candidates = []
    for s in (1, -1):
        for t_ in (1, -1):
            if swapped:
                assignment = (by.pow(s), bx.pow(t_))
            else:
                assignment = (bx.pow(s), by.pow(t_))
            rep_ok = (evaluate_word(assignment, target.relations[0][0])
                      == evaluate_word(assignment, target.relations[0][1]))
            if not rep_ok:
                continue
            mer = evaluate_word(assignment, target.meridians[0])
            if is_transvection(mer):
                candidates.append((mer == STANDARD_TRANSVECTION, s, t_, assignment))
    if not candidates:
        raise InadmissibleTorusKnot(
            f"no exponent choice lifts the base representation to t({p},{q})")
    candidates.sort(key=lambda c: (not c[0], c[1] != 1, c[2] != 1))
    return MRep(target, candidates[0][3])


_BLOCK_BASE_23 = (IntMatrix(3, 3, [0, 1, 0, -1, 0, 0, 0, 0, 1]),
                  IntMatrix(3, 3, [1, 1, 0, -1, 0, 0, 0, 0, 1]))
_BLOCK_BASE_43 = (IntMatrix(3, 3, [0, 1, 0, -1, 0, 0, 0, 0, 1]),
                  IntMatrix(3, 3, [0, 1, 0, -1, -1, 0, 0, 0, 1]))


def sl2z_torus_mrep(p: int, q: int) -> MRep:
    """The unique non-trivial representation with block image on the (p,q)
    torus-knot group, built from the (2,3) or (4,3) base and lifted."""
    adm = torus_admissible(p, q)
    if adm is None:
        raise InadmissibleTorusKnot(
            f"t({p},{q}) has only the trivial representation")
    P_, Q_, _ = adm
    two_power = 0
    t = P_
    while t % 2 == 0:
        t //= 2
        two_power += 1
    if two_power == 1:
        base = MRep(torus_knot_presentation(2, 3), _BLOCK_BASE_23)
    else:
        base = MRep(torus_knot_presentation(4, 3), _BLOCK_BASE_43)
    if (p, q) == (2, 3) or (p, q) == (4, 3):
        return base
    return lift_torus_knot(base, p, q)


# ---------------------------------------------------------------------------
# Conjugacy families
# ---------------------------------------------------------------------------


@dataclass
class Family:
    representative: MRep
    members: list[MRep]
    image_class: ImageClass
    witnesses: dict[int, IntMatrix] = field(default_factory=dict)
    # witnesses[i]: C with C^-1 members[i] C = representative


def _rep_key(r: MRep) -> tuple:
    """Canonical order: smallest multiset of pair weights first, then
    lexicographic on the pair vectors in generator order."""
    pairs = r.meridian_pairs()
    weights = tuple(sorted(sum(abs(x) for x in p.eta + p.xi) for p in pairs))
    flat = tuple(x for p in pairs for x in p.eta + p.xi)
    return (weights, flat)


def classify_families(reps: Sequence[MRep], bound: int) -> list[Family]:
    """Group representations into conjugacy families by bounded witness
    search, picking the structurally simplest member as representative.

    Representations are bucketed by conjugation invariants first, so the
    witness search only runs between plausible pairs.
    """
    families: list[Family] = []
    by_invariant: dict[tuple, list[Family]] = {}
    search_bound = max(2 * bound + 2, 4)
    for r in sorted(reps, key=_rep_key):
        inv = conjugation_invariants(r)
        placed = False
        for fam in by_invariant.get(inv, []):
            status = conjugacy_status(r, fam.representative, search_bound)
            if status.witness is not None:
                fam.witnesses[len(fam.members)] = status.witness
                fam.members.append(r)
                placed = True
                break
        if not placed:
            fam = Family(r, [r], classify_image(r), {})
            families.append(fam)
            by_invariant.setdefault(inv, []).append(fam)
    return families
