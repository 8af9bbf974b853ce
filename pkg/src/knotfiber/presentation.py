"""Finitely presented knot group machinery: words, presentations, a small
text format, built-in torus-knot presentations with peripheral structure,
word evaluation and abelianization.

Word evaluation multiplies matrices in the written order of the word under
the left action, so a presentation homomorphism sends a word w1 w2 to
rho(w1) * rho(w2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .zlattice import FgAbGroup, IntMatrix, cokernel, smith_normal_form

# A word is a tuple of (generator index, exponent) with exponent +1 or -1.
Word = tuple[tuple[int, int], ...]


class PresentationError(ValueError):
    """Malformed presentation text or data."""

    def __init__(self, message: str, line: Optional[int] = None,
                 col: Optional[int] = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {col}" if col is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.col = col


def word_from_powers(*powers: tuple[int, int]) -> Word:
    """Build a word from (generator, exponent) syllables with any exponents."""
    letters: list[tuple[int, int]] = []
    for g, e in powers:
        s = 1 if e > 0 else -1
        letters.extend((g, s) for _ in range(abs(e)))
    return tuple(letters)


def invert_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def concat_words(*ws: Word) -> Word:
    out: list[tuple[int, int]] = []
    for w in ws:
        out.extend(w)
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    """Finitely presented group with designated peripheral structure.

    relations are (left, right) pairs of words meaning left = right.
    meridians are words (single letters for Wirtinger presentations).
    """

    generators: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...] = ()
    meridians: tuple[Word, ...] = ()
    longitude: Optional[Word] = None
    amalgam: Optional[tuple[int, int]] = None

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise PresentationError("duplicate generator names")
        for left, right in self.relations:
            for w in (left, right):
                self._check_word(w)
        for w in self.meridians:
            self._check_word(w)
        if self.longitude is not None:
            self._check_word(self.longitude)
        if self.amalgam is not None:
            p, q = self.amalgam
            if n != 2 or len(self.relations) != 1:
                raise PresentationError(
                    "amalgam marker requires two generators and one relation")
            if gcd(p, q) != 1:
                raise PresentationError("amalgam exponents must be coprime")

    def _check_word(self, w: Word) -> None:
        for g, e in w:
            if not (0 <= g < len(self.generators)):
                raise PresentationError(f"generator index {g} out of range")
            if e not in (1, -1):
                raise PresentationError(f"letter exponent {e} must be +-1")

    def generator_index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise PresentationError(f"undeclared generator {name!r}") from None

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        i = 0
        while i < len(w):
            g, e = w[i]
            j = i
            while j < len(w) and w[j] == (g, e):
                j += 1
            count = (j - i) * e
            name = self.generators[g]
            parts.append(name if count == 1 else f"{name}^{count}")
            i = j
        return " ".join(parts)


def is_wirtinger(P: Presentation) -> bool:
    """True when every relation has the conjugation shape a^-1 b a = c."""
    for left, right in P.relations:
        if len(right) != 1 or right[0][1] != 1:
            return False
        if len(left) != 3:
            return False
        (a1, e1), (b, e2), (a2, e3) = left
        if not (e1 == -1 and e2 == 1 and e3 == 1 and a1 == a2):
            return False
    return True


def evaluate_word(assignment: Sequence[IntMatrix], w: Word) -> IntMatrix:
    """Product of the assigned matrices in written word order (left action).

    The empty word evaluates to the identity of the common matrix size.
    """
    if not assignment:
        raise ValueError("empty assignment")
    n = assignment[0].rows
    out = IntMatrix.identity(n)
    inverses: dict[int, IntMatrix] = {}
    for g, e in w:
        if g >= len(assignment):
            raise ValueError(f"no matrix assigned to generator {g}")
        if e == 1:
            out = out * assignment[g]
        else:
            if g not in inverses:
                inverses[g] = assignment[g].inverse()
            out = out * inverses[g]
    return out


def torus_knot_presentation(p: int, q: int) -> Presentation:
    """The two-generator presentation <x, y | x^p = y^q> of a torus knot
    group, with meridian and longitude words attached.

    The meridian is m = x^-u y^v for the minimal nonnegative (u, v) with
    p*v - q*u = 1 (x abelianizes to q and y to p, so m has degree 1); the
    longitude is l = x^p m^(-p*q).
    """
    if p < 2 or q < 2:
        raise PresentationError("torus knot parameters must be >= 2")
    if gcd(p, q) != 1:
        raise PresentationError(f"({p},{q}) are not coprime")
    v = pow(p, -1, q)
    u = (p * v - 1) // q
    X, Y = 0, 1
    meridian = word_from_powers((X, -u), (Y, v))
    longitude = concat_words(word_from_powers((X, p)),
                             invert_word(word_from_powers(*[(X, -u), (Y, v)] * (p * q))))
    return Presentation(
        generators=("x", "y"),
        relations=((word_from_powers((X, p)), word_from_powers((Y, q))),),
        meridians=(meridian,),
        longitude=longitude,
        amalgam=(p, q),
    )


def abelianization(P: Presentation) -> tuple[FgAbGroup, list[tuple[int, ...]]]:
    """Abelianized group and the images of the generators.

    Images are coordinates (torsion classes first, then free coordinates)
    in the canonical decomposition; for knot groups this is a single integer
    coordinate, normalized so the first nonzero generator image is positive.
    """
    n = len(P.generators)
    cols = []
    for left, right in P.relations:
        col = [0] * n
        for g, e in left:
            col[g] += e
        for g, e in right:
            col[g] -= e
        cols.append(col)
    R = IntMatrix(n, len(cols), [col[i] for i in range(n) for col in cols])
    group = cokernel(R)
    snf = smith_normal_form(R)
    diag = snf.diagonal()
    r = sum(1 for d in diag if d != 0)
    # class of v in the quotient: coordinates of U*v beyond the killed part
    tor_idx = [i for i in range(r) if diag[i] > 1]
    free_idx = list(range(r, n))
    images = []
    for g in range(n):
        coords = snf.U.col(g)  # U * e_g
        tors = tuple(coords[i] % diag[i] for i in tor_idx)
        free = tuple(coords[i] for i in free_idx)
        images.append(tors + free)
    # normalize the sign of each free coordinate
    ntor = len(tor_idx)
    for k in range(ntor, ntor + len(free_idx)):
        lead = next((img[k] for img in images if img[k] != 0), 0)
        if lead < 0:
            images = [img[:k] + (-img[k],) + img[k + 1:] for img in images]
    return group, images


def abelian_image_of_word(P: Presentation, images: list[tuple[int, ...]],
                          w: Word) -> tuple[int, ...]:
    """Image of a word in the abelianization, given generator images."""
    if not images:
        return ()
    total = [0] * len(images[0])
    for g, e in w:
        for k, c in enumerate(images[g]):
            total[k] += e * c
    return tuple(total)


# ---------------------------------------------------------------------------
# Text format
#
#   gens: g1 g2 g3
#   rel: g1^-1 g2 g1 = g3
#   meridians: g1 g2 g3
#   longitude: g3 g2 g1 g3 g2 g1^-5
#   torus: 2 3
#
# '#' starts a comment; every non-empty line must be one of the keyed forms.
# ---------------------------------------------------------------------------


def _parse_word(P_gens: list[str], text: str, line_no: int, col0: int) -> Word:
    letters: list[tuple[int, int]] = []
    cursor = 0
    for token in text.split():
        pos = col0 + text.index(token, cursor)
        cursor = text.index(token, cursor) + len(token)
        name, sep, exp = token.partition("^")
        if name == "1" and not sep:
            continue
        if name not in P_gens:
            raise PresentationError(f"undeclared generator {name!r}",
                                    line_no, pos)
        try:
            e = int(exp) if sep else 1
        except ValueError:
            raise PresentationError(f"malformed exponent in {token!r}",
                                    line_no, pos) from None
        if e == 0:
            continue
        g = P_gens.index(name)
        s = 1 if e > 0 else -1
        letters.extend((g, s) for _ in range(abs(e)))
    return tuple(letters)


def parse_presentation(text: str) -> Presentation:
    """Parse the documented presentation format; rejects trailing garbage."""
    gens: Optional[list[str]] = None
    relations: list[tuple[Word, Word]] = []
    meridians: list[Word] = []
    longitude: Optional[Word] = None
    amalgam: Optional[tuple[int, int]] = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise PresentationError(f"expected 'key: ...', got {line.strip()!r}",
                                    line_no, 1)
        key = key.strip()
        body = rest.strip()
        col0 = len(line) - len(rest) + 1
        if key == "gens":
            if gens is not None:
                raise PresentationError("duplicate gens line", line_no)
            gens = body.split()
            if not gens:
                raise PresentationError("empty generator list", line_no)
            for name in gens:
                if "^" in name or "=" in name or name == "1":
                    raise PresentationError(f"bad generator name {name!r}", line_no)
            continue
        if gens is None:
            raise PresentationError("gens line must come first", line_no)
        if key == "rel":
            left_text, eq, right_text = body.partition("=")
            if not eq:
                raise PresentationError("relation needs '='", line_no, col0)
            left = _parse_word(gens, left_text.strip(), line_no, col0)
            right = _parse_word(gens, right_text.strip(), line_no,
                                col0 + len(left_text) + 1)
            relations.append((left, right))
        elif key == "meridians":
            for name in body.split():
                meridians.append(_parse_word(gens, name, line_no, col0))
        elif key == "longitude":
            if longitude is not None:
                raise PresentationError("duplicate longitude line", line_no)
            longitude = _parse_word(gens, body, line_no, col0)
        elif key == "torus":
            parts = body.split()
            if len(parts) != 2:
                raise PresentationError("torus: expects two integers", line_no)
            try:
                amalgam = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise PresentationError("torus: expects two integers",
                                        line_no) from None
        else:
            raise PresentationError(f"unknown key {key!r}", line_no, 1)

    if gens is None:
        raise PresentationError("missing gens line")
    return Presentation(tuple(gens), tuple(relations), tuple(meridians),
                        longitude, amalgam)
