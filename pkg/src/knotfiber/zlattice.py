"""Exact integer linear algebra: Smith normal form, kernels, cokernels,
and finitely generated abelian groups.

All arithmetic is done with Python ints, so there is no overflow at any
magnitude.  Matrices are immutable; every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


class IntMatrix:
    """Dense matrix of arbitrary-precision integers, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[int]):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        entries = tuple(map(int, entries))
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # -- construction ------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(r, c, [e for row in rows for e in row])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def column(cls, v: Sequence[int]) -> "IntMatrix":
        return cls(len(v), 1, list(v))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        n = len(diag)
        return cls(n, n, [diag[i] if i == j else 0
                          for i in range(n) for j in range(n)])

    # -- access ------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def column_vectors(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    # -- algebra -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [k * a for a in self.entries])

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        n, m, k = self.rows, other.cols, self.cols
        a, b = self.entries, other.entries
        out = [0] * (n * m)
        for i in range(n):
            arow = a[i * k:(i + 1) * k]
            for t in range(k):
                av = arow[t]
                if av:
                    brow = b[t * m:(t + 1) * m]
                    base = i * m
                    for j in range(m):
                        out[base + j] += av * brow[j]
        return IntMatrix(n, m, out)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(self.row(i)[j] * v[j] for j in range(self.cols))
                     for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         [self[i, j] for j in range(self.cols)
                          for i in range(self.rows)])

    def trace(self) -> int:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum(self[i, i] for i in range(self.rows))

    def pow(self, k: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        if k < 0:
            return self.inverse().pow(-k)
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def inverse(self) -> "IntMatrix":
        """Inverse of a unimodular matrix (det = +-1); exact over Z."""
        d = self.det()
        if d not in (1, -1):
            raise ValueError("matrix is not invertible over Z")
        n = self.rows
        # adjugate via cofactors; matrices here are small (<= 6x6)
        cof = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [[self[r, c] for c in range(n) if c != j]
                         for r in range(n) if r != i]
                md = IntMatrix.from_rows(minor).det() if n > 1 else 1
                cof[i][j] = (-1) ** (i + j) * md
        adj = IntMatrix.from_rows(cof).transpose()
        return adj if d == 1 else -adj

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        rows = [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)]
        return IntMatrix(self.rows, self.cols + other.cols,
                         [e for row in rows for e in row])

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return IntMatrix(self.rows + other.rows, self.cols,
                         self.entries + other.entries)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def __repr__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"IntMatrix({self.rows}x{self.cols})"
        return "IntMatrix(" + "; ".join(
            " ".join(str(e) for e in self.row(i)) for i in range(self.rows)) + ")"

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


def hstack_all(mats: Sequence[IntMatrix], rows: Optional[int] = None) -> IntMatrix:
    """Concatenate matrices side by side; `rows` disambiguates the empty case."""
    if not mats:
        if rows is None:
            raise ValueError("hstack_all of empty sequence needs explicit rows")
        return IntMatrix.zero(rows, 0)
    out = mats[0]
    for m in mats[1:]:
        out = out.hstack(m)
    return out


def vstack_all(mats: Sequence[IntMatrix], cols: Optional[int] = None) -> IntMatrix:
    if not mats:
        if cols is None:
            raise ValueError("vstack_all of empty sequence needs explicit cols")
        return IntMatrix.zero(0, cols)
    out = mats[0]
    for m in mats[1:]:
        out = out.vstack(m)
    return out


@dataclass(frozen=True)
class FgAbGroup:
    """Finitely generated abelian group: free rank plus torsion coefficients
    in divisibility order (each t_i > 1 and t_i | t_{i+1})."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        tor = tuple(int(t) for t in self.torsion)
        for t in tor:
            if t <= 1:
                raise ValueError("torsion coefficients must be > 1")
        for a, b in zip(tor, tor[1:]):
            if b % a != 0:
                raise ValueError("torsion coefficients must form a divisor chain")
        object.__setattr__(self, "torsion", tor)

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank, ())

    @classmethod
    def from_divisors(cls, divisors: Iterable[int]) -> "FgAbGroup":
        """Build from arbitrary cyclic orders (0 = infinite), normalizing."""
        rank = 0
        tors: list[int] = []
        for d in divisors:
            d = abs(int(d))
            if d == 0:
                rank += 1
            elif d > 1:
                tors.append(d)
        return cls(rank, tuple(_divisor_chain(tors)))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def exponent_annihilates(self, g: int) -> "FgAbGroup":
        """The subgroup of elements killed by g (the g-torsion subgroup)."""
        if g == 0:
            return self
        tors = [gcd(t, g) for t in self.torsion]
        return FgAbGroup.from_divisors(tors)

    def direct_sum(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_divisors(
            [0] * (self.free_rank + other.free_rank)
            + list(self.torsion) + list(other.torsion))

    def unicode(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("ℤ")
        elif self.free_rank > 1:
            parts.append("ℤ" + _superscript(self.free_rank))
        parts.extend(f"ℤ/{t}" for t in self.torsion)
        return "⊕".join(parts) if parts else "0"

    def ascii(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return "+".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.ascii()


def _superscript(n: int) -> str:
    sup = "⁰¹²³⁴⁵⁶⁷⁸⁹"
    return "".join(sup[int(c)] for c in str(n))


def _divisor_chain(torsions: list[int]) -> list[int]:
    """Normalize a list of cyclic torsion orders into a divisor chain."""
    tors = [t for t in torsions if t > 1]
    # repeatedly replace pairs (a, b) by (gcd, lcm) until chained
    changed = True
    while changed:
        changed = False
        tors.sort()
        for i in range(len(tors)):
            for j in range(i + 1, len(tors)):
                a, b = tors[i], tors[j]
                if b % a != 0:
                    g = gcd(a, b)
                    l = a * b // g
                    tors[i], tors[j] = g, l
                    changed = True
        tors = [t for t in tors if t > 1]
    return tors


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D diagonal, nonnegative,
    divisibility-ordered with trailing zeros."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(n))

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)


def _smith_engine(M: IntMatrix, track_u: bool, track_v: bool):
    """Shared elimination core; returns (diag_matrix_rows, u_rows, v_rows)."""
    rows, cols = M.rows, M.cols
    a = M.to_rows()
    u = IntMatrix.identity(rows).to_rows() if track_u else None
    v = IntMatrix.identity(cols).to_rows() if track_v else None

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        if track_u:
            u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(rows):
            a[r][i] -= q * a[r][j]
        if track_v:
            for r in range(cols):
                v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track_u:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        if track_v:
            for r in range(cols):
                v[r][i], v[r][j] = v[r][j], v[r][i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if track_u:
            u[i] = [-x for x in u[i]]

    t = 0
    n = min(rows, cols)
    while t < n:
        # locate minimal-absolute-value nonzero pivot in the submatrix
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        # clear row and column t
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:  # remainder smaller than pivot: swap up
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # enforce divisibility of the remaining block by the pivot
        p = a[t][t]
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # fold offending row into row t, redo
            continue
        if p < 0:
            negate_row(t)
        t += 1

    return a, u, v


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transform tracking.

    Pivoting picks the nonzero entry of minimal absolute value, which keeps
    intermediate entries small in practice.
    """
    rows, cols = M.rows, M.cols
    a, u, v = _smith_engine(M, True, True)
    return SmithDecomposition(IntMatrix.from_rows(u) if rows else IntMatrix.zero(0, 0),
                              IntMatrix.from_rows(a) if rows else IntMatrix.zero(0, cols),
                              IntMatrix.from_rows(v) if cols else IntMatrix.zero(0, 0))


def rank(M: IntMatrix) -> int:
    a, _, _ = _smith_engine(M, False, False)
    n = min(M.rows, M.cols)
    return sum(1 for i in range(n) if a[i][i] != 0)


def cokernel(M: IntMatrix) -> FgAbGroup:
    """The group Z^rows / (column span of M)."""
    a, _, _ = _smith_engine(M, False, False)
    n = min(M.rows, M.cols)
    diag = [a[i][i] for i in range(n)]
    r = sum(1 for d in diag if d != 0)
    return FgAbGroup.from_divisors(
        [d for d in diag if d > 1] + [0] * (M.rows - r))


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel {v : Mv = 0}."""
    a, _, v = _smith_engine(M, False, True)
    n = min(M.rows, M.cols)
    r = sum(1 for i in range(n) if a[i][i] != 0)
    # kernel = V * span(e_r, ..., e_{cols-1})
    return IntMatrix(M.cols, M.cols - r,
                     [v[i][j] for i in range(M.cols)
                      for j in range(r, M.cols)])


def intersect_kernels(Ms: Sequence[IntMatrix],
                      ambient_dim: Optional[int] = None) -> IntMatrix:
    """Basis of the simultaneous integer kernel of all matrices.

    The empty intersection is all of Z^ambient_dim (dimension required then).
    """
    if not Ms:
        if ambient_dim is None:
            raise ValueError("ambient dimension required for empty intersection")
        return IntMatrix.identity(ambient_dim)
    dim = Ms[0].cols
    for m in Ms:
        if m.cols != dim:
            raise ValueError("column count mismatch in intersect_kernels")
    return kernel_basis(vstack_all(list(Ms)))


def solve_integer(M: IntMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Some integer solution x of Mx = b, or None if there is none."""
    if len(b) != M.rows:
        raise ValueError("right-hand side length mismatch")
    snf = smith_normal_form(M)
    c = snf.U.apply(b)
    diag = snf.diagonal()
    r = snf.rank()
    y = [0] * M.cols
    for i in range(M.rows):
        d = diag[i] if i < len(diag) else 0
        if i < r:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
        elif c[i] != 0:
            return None
    return snf.V.apply(y)


def solve_matrix(M: IntMatrix, B: IntMatrix) -> Optional[IntMatrix]:
    """Some integer X with M X = B, or None (computed columnwise)."""
    if B.rows != M.rows:
        raise ValueError("shape mismatch in solve_matrix")
    snf = smith_normal_form(M)
    diag = snf.diagonal()
    r = snf.rank()
    xcols = []
    for j in range(B.cols):
        c = snf.U.apply(B.col(j))
        y = [0] * M.cols
        ok = True
        for i in range(M.rows):
            d = diag[i] if i < len(diag) else 0
            if i < r:
                if c[i] % d != 0:
                    ok = False
                    break
                y[i] = c[i] // d
            elif c[i] != 0:
                ok = False
                break
        if not ok:
            return None
        xcols.append(snf.V.apply(y))
    return IntMatrix(M.cols, B.cols,
                     [xcols[j][i] for i in range(M.cols) for j in range(B.cols)])


def column_space_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of the lattice spanned by the columns of M."""
    snf = smith_normal_form(M)
    r = snf.rank()
    uinv = snf.U.inverse()
    cols = []
    for i in range(r):
        d = snf.D[i, i]
        cols.append(tuple(d * uinv[j, i] for j in range(M.rows)))
    return IntMatrix(M.rows, r,
                     [c[i] for i in range(M.rows) for c in cols])


@dataclass(frozen=True)
class PresentedAb:
    """Finitely presented abelian group: Z^ngens modulo the column span of
    `rels` (an ngens x k matrix).  The workhorse behind every homology value.
    """

    ngens: int
    rels: IntMatrix

    def __post_init__(self):
        if self.rels.rows != self.ngens:
            raise ValueError("relation matrix must have ngens rows")

    @classmethod
    def free(cls, n: int) -> "PresentedAb":
        return cls(n, IntMatrix.zero(n, 0))

    @classmethod
    def trivial(cls) -> "PresentedAb":
        return cls(0, IntMatrix.zero(0, 0))

    def group(self) -> FgAbGroup:
        return cokernel(self.rels)

    def direct_sum(self, other: "PresentedAb") -> "PresentedAb":
        top = self.rels.hstack(IntMatrix.zero(self.ngens, other.rels.cols))
        bot = IntMatrix.zero(other.ngens, self.rels.cols).hstack(other.rels)
        return PresentedAb(self.ngens + other.ngens, top.vstack(bot))


@dataclass(frozen=True)
class AbMorphism:
    """Morphism of finitely presented abelian groups, given on generators."""

    src: PresentedAb
    dst: PresentedAb
    matrix: IntMatrix  # dst.ngens x src.ngens

    def __post_init__(self):
        if self.matrix.rows != self.dst.ngens or self.matrix.cols != self.src.ngens:
            raise ValueError("morphism matrix shape mismatch")
        # well-definedness: F * rels_src must lie in the span of rels_dst
        if self.src.rels.cols:
            image = self.matrix * self.src.rels
            if solve_matrix(self.dst.rels, image) is None:
                raise ValueError("matrix does not descend to the quotients")

    def cokernel_presentation(self) -> PresentedAb:
        return PresentedAb(self.dst.ngens, self.dst.rels.hstack(self.matrix))

    def cokernel(self) -> FgAbGroup:
        return self.cokernel_presentation().group()

    def kernel_presentation(self) -> tuple[PresentedAb, IntMatrix]:
        """Kernel as a presented group plus its generator lift into src.

        Returns (K, B) where B's columns generate the sublattice
        L = {v : F v in span(dst.rels)} and K presents L / span(src.rels).
        """
        stacked = self.matrix.hstack(-self.dst.rels)
        sols = kernel_basis(stacked)  # columns: (v; w)
        vpart = IntMatrix(self.src.ngens, sols.cols,
                          [sols[i, j] for i in range(self.src.ngens)
                           for j in range(sols.cols)])
        B = column_space_basis(vpart)
        # src relations lie in L; express them in the basis B
        if self.src.rels.cols:
            X = solve_matrix(B, self.src.rels)
            if X is None:
                raise AssertionError("src relations must lie in the kernel lattice")
        else:
            X = IntMatrix.zero(B.cols, 0)
        return PresentedAb(B.cols, X), B

    def kernel(self) -> FgAbGroup:
        return self.kernel_presentation()[0].group()


def quotient_group(lattice_basis: IntMatrix, sublattice_gens: IntMatrix) -> FgAbGroup:
    """Group L / S for S a sublattice of L (both given by generating columns)."""
    B = column_space_basis(lattice_basis)
    if sublattice_gens.cols == 0:
        return FgAbGroup.free(B.cols)
    X = solve_matrix(B, sublattice_gens)
    if X is None:
        raise ValueError("sublattice generators do not lie in the lattice")
    return cokernel(X)


def hom_is_zero(src: FgAbGroup, dst: FgAbGroup) -> bool:
    """True when Hom(src, dst) = 0."""
    if dst.is_trivial() or src.is_trivial():
        return True
    if src.free_rank > 0:
        return False
    return all(gcd(s, t) == 1 for s in src.torsion for t in dst.torsion)
