"""Frequency matrices of endomorphisms and exact integer linear algebra.

For an endomorphism ``φ`` of ``A_n⁺`` with ordered alphabet ``a_1 .. a_n``:

* ``F1(φ)[i][j] = |φ(a_i)|_{a_j}`` (incidence matrix),
* ``F2(φ)[i][j] = |φ(a_i)|_{w_j}`` with ``w_j`` the ``j``-th two-letter word in
  lexicographic order (``w_{r*n+s} = a_r a_s``, zero based),
* ``T2(φ)`` sends ``a_r a_s`` to ``a_t a_u`` where ``a_t`` ends ``φ(a_r)`` and
  ``a_u`` starts ``φ(a_s)``,
* ``I2(φ) = [[F1, F2], [0, T2]]``, a square matrix of size ``n + n²``.

``I2`` reverses composition: ``I2(ψ∘φ) = I2(φ) I2(ψ)``.  All arithmetic is on
Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .substitution import Substitution
from .words import Alphabet, Word

__all__ = [
    "IntMatrix",
    "FrequencyBundle",
    "frequency_matrix",
    "boundary_matrix",
    "i2",
    "InvertibilityReport",
    "invertibility_report",
    "family_substitution",
    "format_blocks",
]


class IntMatrix:
    """Immutable dense matrix of Python integers."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have positive dimensions")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def block(cls, blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        rows = []
        for brow in blocks:
            for i in range(brow[0].nrows):
                rows.append([x for b in brow for x in b.rows[i]])
        return cls(rows)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "IntMatrix":
        return IntMatrix(r[c0:c1] for r in self.rows[r0:r1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        return IntMatrix([sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows)

    def __pow__(self, k: int) -> "IntMatrix":
        if self.nrows != self.ncols or k < 0:
            raise ValueError("power of a non-square matrix or negative exponent")
        result, base = IntMatrix.identity(self.nrows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows))

    def mod(self, p: int) -> "IntMatrix":
        return IntMatrix([x % p for x in r] for r in self.rows)

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    def row_sums(self) -> list:
        return [sum(r) for r in self.rows]

    def is_positive(self) -> bool:
        return all(x > 0 for r in self.rows for x in r)

    def is_permutation(self) -> bool:
        if self.nrows != self.ncols:
            return False
        if any(x not in (0, 1) for r in self.rows for x in r):
            return False
        return all(sum(r) == 1 for r in self.rows) and all(
            sum(c) == 1 for c in zip(*self.rows)
        )

    def det(self) -> int:
        """Determinant by Bareiss fraction-free elimination."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        n = self.nrows
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    # exact division is the Bareiss invariant
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def rank_mod(self, p: int) -> int:
        return len(_row_reduce_mod(self.rows, p)[1])

    def is_invertible_mod(self, p: int) -> bool:
        return self.nrows == self.ncols and self.rank_mod(p) == self.nrows

    def inverse_mod(self, p: int) -> "IntMatrix":
        """Inverse over the prime field ``Z/pZ`` by Gauss-Jordan elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        reduced, pivots = _row_reduce_mod(aug, p, ncols=n)
        if len(pivots) != n:
            raise ZeroDivisionError(f"matrix is singular mod {p}")
        return IntMatrix(r[n:] for r in reduced)

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"

    def __str__(self) -> str:
        return format_blocks(self)


def _row_reduce_mod(rows, p: int, ncols: Optional[int] = None):
    """Reduced row echelon form mod ``p``; pivots searched in the first ``ncols`` columns."""
    a = [[x % p for x in r] for r in rows]
    m = len(a)
    width = len(a[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(width):
        pivot = next((i for i in range(r, m) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def _require_endomorphism(phi: Substitution) -> None:
    if not phi.is_endomorphism:
        raise ValueError("frequency matrices are defined for endomorphisms")


def frequency_matrix(phi: Substitution, k: int) -> IntMatrix:
    """``F_k(φ)`` for ``k`` in ``{1, 2}``."""
    _require_endomorphism(phi)
    n = phi.domain.size
    if k == 1:
        rows = []
        for s in phi._img:
            r = [0] * n
            for a in s:
                r[a] += 1
            rows.append(r)
        return IntMatrix(rows)
    if k == 2:
        rows = []
        for s in phi._img:
            r = [0] * (n * n)
            for a, b in zip(s, s[1:]):
                r[a * n + b] += 1
            rows.append(r)
        return IntMatrix(rows)
    raise ValueError("only k = 1 and k = 2 are supported")


def boundary_matrix(phi: Substitution) -> IntMatrix:
    """``T2(φ)``: the 0/1 row-monomial matrix of boundary two-letter factors."""
    _require_endomorphism(phi)
    n = phi.domain.size
    firsts, lasts = phi.first_letters(), phi.last_letters()
    rows = []
    for r in range(n):
        for s in range(n):
            row = [0] * (n * n)
            row[lasts[r] * n + firsts[s]] = 1
            rows.append(row)
    return IntMatrix(rows)


@dataclass(frozen=True)
class FrequencyBundle:
    n: int
    f1: IntMatrix
    f2: IntMatrix
    t2: IntMatrix
    i2: IntMatrix

    @property
    def m(self) -> int:
        return self.n + self.n * self.n

    def render(self) -> str:
        n = self.n
        return format_blocks(self.i2, row_splits=[n], col_splits=[n])


def i2(phi: Substitution) -> FrequencyBundle:
    """Assemble ``F1``, ``F2``, ``T2`` and the block matrix ``I2``."""
    n = phi.domain.size
    f1 = frequency_matrix(phi, 1)
    f2 = frequency_matrix(phi, 2)
    t2 = boundary_matrix(phi)
    full = IntMatrix.block([[f1, f2], [IntMatrix.zeros(n * n, n), t2]])
    return FrequencyBundle(n=n, f1=f1, f2=f2, t2=t2, i2=full)


@dataclass(frozen=True)
class InvertibilityReport:
    det_f1: int
    t2_is_permutation: bool
    det_i2: int
    unimodular: bool
    i2_invertible_mod: dict = field(default_factory=dict)
    f1_invertible_mod: dict = field(default_factory=dict)

    @property
    def integer_invertible(self) -> bool:
        return abs(self.det_i2) == 1

    def as_dict(self) -> dict:
        return {
            "det_f1": self.det_f1,
            "t2_is_permutation": self.t2_is_permutation,
            "det_i2": self.det_i2,
            "unimodular": self.unimodular,
            "integer_invertible": self.integer_invertible,
            "i2_invertible_mod": {str(p): v for p, v in sorted(self.i2_invertible_mod.items())},
            "f1_invertible_mod": {str(p): v for p, v in sorted(self.f1_invertible_mod.items())},
        }


def invertibility_report(phi: Substitution, primes: Iterable[int] = (2, 3, 5)) -> InvertibilityReport:
    bundle = i2(phi)
    i2_mod, f1_mod = {}, {}
    for p in primes:
        i2_mod[p] = bundle.i2.is_invertible_mod(p)
        f1_mod[p] = bundle.f1.is_invertible_mod(p)
    det_f1 = bundle.f1.det()
    return InvertibilityReport(
        det_f1=det_f1,
        t2_is_permutation=bundle.t2.is_permutation(),
        det_i2=bundle.i2.det(),
        unimodular=abs(det_f1) == 1,
        i2_invertible_mod=i2_mod,
        f1_invertible_mod=f1_mod,
    )


def family_substitution(kind: str, n: int, alphabet: Optional[Alphabet] = None) -> Substitution:
    """The generator families over ``a1 .. an``.

    ``sigma``:  ``a1 ↦ a1 a2 … an`` and ``ai ↦ ai ai … an a1 … a(i-1)``.
    ``sigma_prime``: ``a1 ↦ a1 a2`` and ``ai ↦ a1 ai a2``.
    """
    if n < 2:
        raise ValueError("the families are defined for n >= 2")
    if alphabet is None:
        alphabet = Alphabet.indexed(n)
    elif alphabet.size != n:
        raise ValueError("alphabet size does not match n")
    letters = range(n)
    if kind == "sigma":
        images = [tuple(letters)]
        for i in range(1, n):
            images.append((i,) + tuple(range(i, n)) + tuple(range(i)))
    elif kind == "sigma_prime":
        images = [(0, 1)] + [(0, i, 1) for i in range(1, n)]
    else:
        raise ValueError(f"unknown family {kind!r}")
    return Substitution(alphabet, alphabet, [Word(alphabet, s) for s in images])


def format_blocks(
    m: IntMatrix, row_splits: Sequence[int] = (), col_splits: Sequence[int] = ()
) -> str:
    """Plain-text rendering with ``|`` and ``-`` separators at the given splits."""
    width = max(len(str(x)) for r in m.rows for x in r)
    col_splits = set(col_splits)
    row_splits = set(row_splits)
    lines = []
    for i, r in enumerate(m.rows):
        if i in row_splits:
            lines.append(_rule(m.ncols, width, col_splits))
        cells = []
        for j, x in enumerate(r):
            if j in col_splits:
                cells.append("|")
            cells.append(str(x).rjust(width))
        lines.append(" ".join(cells))
    return "\n".join(lines)


def _rule(ncols: int, width: int, col_splits: set) -> str:
    parts = []
    for j in range(ncols):
        if j in col_splits:
            parts.append("+")
        parts.append("-" * width)
    return "-".join(parts)
