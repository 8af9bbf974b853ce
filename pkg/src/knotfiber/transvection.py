"""The conjugacy class of the standard transvection in SL(3,Z).

A transvection here is a matrix Id + eta * xi^T with eta, xi primitive
integer 3-vectors satisfying <eta, xi> = 0.  The pair (eta, xi) determines
the matrix and is determined by it up to a common sign; we canonicalize so
the first nonzero entry of eta is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .zlattice import IntMatrix, vec_gcd, xgcd

Vec3 = tuple[int, int, int]


class NotATransvection(ValueError):
    """Raised when a matrix is not of the form Id + eta*xi^T as above."""


def dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def cross(u: Vec3, v: Vec3) -> Vec3:
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def is_primitive(v) -> bool:
    return vec_gcd(v) == 1


@dataclass(frozen=True)
class TransvectionPair:
    """Primitive orthogonal pair (eta, xi), sign-canonicalized."""

    eta: Vec3
    xi: Vec3

    def __post_init__(self):
        eta = tuple(int(x) for x in self.eta)
        xi = tuple(int(x) for x in self.xi)
        if len(eta) != 3 or len(xi) != 3:
            raise NotATransvection("vectors must have length 3")
        if not is_primitive(eta) or not is_primitive(xi):
            raise NotATransvection(f"pair ({eta}, {xi}) is not primitive")
        if dot(eta, xi) != 0:
            raise NotATransvection(f"pair ({eta}, {xi}) is not orthogonal")
        first = next(x for x in eta if x != 0)
        if first < 0:
            raise NotATransvection(
                f"pair ({eta}, {xi}) violates the sign convention; "
                "use TransvectionPair.canonical")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "xi", xi)

    @classmethod
    def canonical(cls, eta, xi) -> "TransvectionPair":
        """Build the pair, flipping the common sign if needed."""
        eta = tuple(int(x) for x in eta)
        xi = tuple(int(x) for x in xi)
        first = next((x for x in eta if x != 0), 0)
        if first < 0:
            eta = tuple(-x for x in eta)
            xi = tuple(-x for x in xi)
        return cls(eta, xi)

    def inverse_pair(self) -> "TransvectionPair":
        """Pair of the inverse matrix: (Id + eta xi^T)^-1 = Id - eta xi^T."""
        return TransvectionPair.canonical(tuple(-x for x in self.eta), self.xi)


STANDARD_PAIR = TransvectionPair((1, 0, 0), (0, 1, 0))


def make_transvection(pair: TransvectionPair) -> IntMatrix:
    """The matrix Id + eta * xi^T."""
    eta, xi = pair.eta, pair.xi
    return IntMatrix(3, 3, [
        (1 if i == j else 0) + eta[i] * xi[j]
        for i in range(3) for j in range(3)])


STANDARD_TRANSVECTION = make_transvection(STANDARD_PAIR)


def decompose_transvection(M: IntMatrix) -> TransvectionPair:
    """Recover the canonical pair from a transvection matrix.

    Raises NotATransvection when M - Id does not have the required rank-1
    primitive form or the trace is wrong.
    """
    if M.rows != 3 or M.cols != 3:
        raise NotATransvection("expected a 3x3 matrix")
    if M.det() != 1:
        raise NotATransvection("determinant is not 1")
    if M.trace() != 3:
        raise NotATransvection("trace is not 3")
    N = M - IntMatrix.identity(3)
    if N.is_zero():
        raise NotATransvection("identity matrix has rank(M - Id) = 0")
    # N = eta * xi^T: any nonzero column is a multiple of eta
    jc = next(j for j in range(3) if any(N[i, j] for i in range(3)))
    col = [N[i, jc] for i in range(3)]
    g = vec_gcd(col)
    eta = tuple(c // g for c in col)
    i0 = next(i for i in range(3) if eta[i] != 0)
    if any(N[i0, j] % eta[i0] for j in range(3)):
        raise NotATransvection("M - Id does not factor integrally")
    xi = tuple(N[i0, j] // eta[i0] for j in range(3))
    pair = TransvectionPair.canonical(eta, xi)
    if make_transvection(pair) != M:
        raise NotATransvection("M - Id is not rank one")
    return pair


def is_transvection(M: IntMatrix) -> bool:
    try:
        decompose_transvection(M)
        return True
    except NotATransvection:
        return False


def _solve_dot_one(xi: Vec3) -> Vec3:
    """Deterministic rho with <rho, xi> = 1, via the extended-gcd chain."""
    g12, a, b = xgcd(xi[0], xi[1])
    _, s, t = xgcd(g12, xi[2])
    return (a * s, b * s, t)


def conjugator_to_standard(pair: TransvectionPair) -> IntMatrix:
    """M in SL(3,Z) with M^-1 * (Id + eta xi^T) * M = standard transvection.

    Constructed as M = (eta, rho, sigma) with <rho, xi> = 1,
    kappa = eta x rho, <sigma~, kappa> = 1, sigma = sigma~ - <sigma~, xi> rho.
    """
    eta, xi = pair.eta, pair.xi
    rho = _solve_dot_one(xi)
    kappa = cross(eta, rho)
    sigma_t = _solve_dot_one(kappa)
    m = dot(sigma_t, xi)
    sigma = tuple(s - m * r for s, r in zip(sigma_t, rho))
    M = IntMatrix(3, 3, [eta[0], rho[0], sigma[0],
                         eta[1], rho[1], sigma[1],
                         eta[2], rho[2], sigma[2]])
    assert M.det() == 1
    return M


def conjugate_transvection(target: TransvectionPair,
                           by: TransvectionPair) -> TransvectionPair:
    """Pair of M^-1 * T * M for T, M the transvections of the two pairs.

    Uses the closed form (eta~ - <xi, eta~> eta, xi~ + <xi~, eta> xi).
    """
    eta, xi = by.eta, by.xi
    teta, txi = target.eta, target.xi
    new_eta = tuple(a - dot(xi, teta) * b for a, b in zip(teta, eta))
    new_xi = tuple(a + dot(txi, eta) * b for a, b in zip(txi, xi))
    return TransvectionPair.canonical(new_eta, new_xi)


_WEDGE_BASIS = tuple(combinations(range(3), 2))  # (e1^e2, e1^e3, e2^e3)


def exterior_power(M: IntMatrix, q: int) -> IntMatrix:
    """Action of M on the q-th exterior power of Z^3.

    The basis of the second exterior power is ordered e1^e2, e1^e3, e2^e3;
    entry ((i,j),(k,l)) is the 2x2 minor M[i,k]M[j,l] - M[i,l]M[j,k].
    """
    if M.rows != 3 or M.cols != 3:
        raise ValueError("expected a 3x3 matrix")
    if q == 0:
        return IntMatrix.identity(1)
    if q == 1:
        return M
    if q == 2:
        entries = []
        for (i, j) in _WEDGE_BASIS:
            for (k, l) in _WEDGE_BASIS:
                entries.append(M[i, k] * M[j, l] - M[i, l] * M[j, k])
        return IntMatrix(3, 3, entries)
    if q == 3:
        return IntMatrix(1, 1, [M.det()])
    raise ValueError(f"exterior power degree {q} out of range 0..3")
