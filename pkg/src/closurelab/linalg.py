"""Exact rational scalars, vectors, and matrices.

Every number in the toolkit is a ``fractions.Fraction``: arbitrary
precision, always in lowest terms with positive denominator, no rounding
anywhere.  Vectors are tuples of Fractions and matrices are tuples of
row vectors; both are immutable, so all operations are pure functions.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import ContractViolation, ParseError

Rational = Fraction
Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]
QVector = Vector
QMatrix = Matrix

RationalLike = Union[Fraction, int, str]

_RATIONAL_TOKEN = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or decimal-free "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        token = value.strip()
        if not _RATIONAL_TOKEN.match(token):
            raise ParseError(f"not a rational token (expected 'p' or 'p/q'): {value!r}")
        return Fraction(token)
    raise ContractViolation(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialize as "p" or "p/q", never a decimal."""
    return str(q)


def vector(entries: Iterable[RationalLike]) -> Vector:
    return tuple(rational(e) for e in entries)


def matrix(rows: Iterable[Iterable[RationalLike]]) -> Matrix:
    out = tuple(vector(row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise ContractViolation("matrix rows have unequal lengths")
    return out


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, j: int) -> Vector:
    if not 0 <= j < n:
        raise ContractViolation(f"unit vector index {j} out of range for dimension {n}")
    return tuple(Fraction(1 if i == j else 0) for i in range(n))


def check_dim(v: Sequence, n: int, what: str = "vector") -> None:
    if len(v) != n:
        raise ContractViolation(f"{what} has length {len(v)}, expected {n}")


def dot(u: Vector, v: Vector) -> Fraction:
    check_dim(v, len(u))
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Vector, v: Vector) -> Vector:
    check_dim(v, len(u))
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    check_dim(v, len(u))
    return tuple(a - b for a, b in zip(u, v))


def scale(c: RationalLike, v: Vector) -> Vector:
    c = rational(c)
    return tuple(c * a for a in v)


def neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def is_zero(v: Vector) -> bool:
    return all(a == 0 for a in v)


def mat_vec(m: Matrix, x: Vector) -> Vector:
    return tuple(dot(row, x) for row in m)


def vec_mat(y: Vector, m: Matrix) -> Vector:
    check_dim(y, len(m))
    if not m:
        return ()
    n = len(m[0])
    return tuple(sum((y[i] * m[i][j] for i in range(len(m))), Fraction(0)) for j in range(n))


def transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def primitive(v: Vector) -> Vector:
    """Scale by the unique positive rational that makes the entries coprime
    integers.  The zero vector is returned unchanged."""
    if is_zero(v):
        return tuple(Fraction(0) for _ in v)
    common = lcm(*(a.denominator for a in v)) if v else 1
    ints = [a.numerator * (common // a.denominator) for a in v]
    g = gcd(*ints)
    return tuple(Fraction(a // g) for a in ints)


def parallel(u: Vector, v: Vector) -> bool:
    """True when u = c*v for some c > 0 (identical primitive forms)."""
    return primitive(u) == primitive(v)


def rank(rows: Sequence[Vector]) -> int:
    """Exact rank by fraction-free-enough Gaussian elimination."""
    work = [list(r) for r in rows if not is_zero(r)]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pr = work[r]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                f = work[i][col] / pr[col]
                work[i] = [a - f * b for a, b in zip(work[i], pr)]
        r += 1
        if r == len(work):
            break
    return r


def solve_square(m: Matrix, b: Vector) -> Vector | None:
    """Solve m x = b for square m; None when m is singular."""
    n = len(m)
    if n == 0:
        return ()
    check_dim(b, n)
    aug = [list(row) + [rhs] for row, rhs in zip(m, b)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pr = aug[col]
        inv = 1 / pr[col]
        aug[col] = [a * inv for a in pr]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b2 for a, b2 in zip(aug[i], aug[col])]
    return tuple(aug[i][n] for i in range(n))


def format_vector(v: Vector) -> str:
    return " ".join(format_rational(a) for a in v)


def parse_vector(text: str, expected_len: int | None = None, line: int = 0) -> Vector:
    tokens = text.split()
    out = []
    col = 1
    for tok in tokens:
        if not _RATIONAL_TOKEN.match(tok):
            raise ParseError(f"not a rational token: {tok!r}", line, col)
        out.append(Fraction(tok))
        col += len(tok) + 1
    v = tuple(out)
    if expected_len is not None and len(v) != expected_len:
        raise ParseError(f"expected {expected_len} rational tokens, found {len(v)}", line, 1)
    return v
