"""Exact-rational quadratic forms: signature, duality, standard model.

A form is held as its symmetric Fraction matrix J with Q(v) = v J v^T for
row vectors v. Diagonalization, signatures and duals are computed over the
rationals; only the scaling step of the standard-model conjugation touches
floating point.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from . import exact
from .errors import DimensionMismatch, NonSymmetricMatrix, SingularForm

_BUILTIN_STANDARD = re.compile(r"^Q0:(\d+),(\d+)$")


@dataclass(frozen=True, order=True)
class Signature:
    """Counts of positive and negative squares in a real diagonalization."""

    p: int
    q: int

    @property
    def n(self) -> int:
        return self.p + self.q

    def oriented(self) -> tuple["Signature", bool]:
        """Return the p >= q ordering and whether a negation was needed."""
        if self.q > self.p:
            return Signature(self.q, self.p), True
        return self, False

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class QuadraticForm:
    """Non-degenerate quadratic form with an exact rational matrix."""

    J: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.J)
        object.__setattr__(self, "J", rows)
        n = len(rows)
        if n < 2 or any(len(r) != n for r in rows):
            raise DimensionMismatch(f"need a square matrix of dimension >= 2, got {n} rows")
        if not exact.is_symmetric([list(r) for r in rows]):
            raise NonSymmetricMatrix("form matrix must be exactly symmetric")

    @classmethod
    def from_rows(cls, rows) -> "QuadraticForm":
        return cls(tuple(tuple(exact.parse_rational(x) for x in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.J)

    @cached_property
    def J_float(self) -> np.ndarray:
        return exact.to_float(self.J_exact)

    @property
    def J_exact(self) -> exact.Matrix:
        return [list(row) for row in self.J]

    @cached_property
    def _diagonalization(self) -> tuple[exact.Matrix, list[Fraction]]:
        s, d = exact.congruence_diagonalize(self.J_exact)
        if any(x == 0 for x in d):
            raise SingularForm("form matrix has determinant zero")
        return s, d

    @cached_property
    def signature(self) -> Signature:
        _, d = self._diagonalization
        return Signature(sum(1 for x in d if x > 0), sum(1 for x in d if x < 0))

    def oriented(self) -> tuple["QuadraticForm", bool]:
        """Negate the form if it has more negative than positive squares."""
        sig = self.signature
        if sig.q > sig.p:
            return QuadraticForm(tuple(tuple(-x for x in row) for row in self.J)), True
        return self, False

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for row in self.J for x in row)

    def evaluate_exact(self, v) -> Fraction:
        """Q(v) for a rational vector, exact."""
        vv = [exact.parse_rational(x) for x in v]
        if len(vv) != self.n:
            raise DimensionMismatch(f"expected length {self.n}, got {len(vv)}")
        total = Fraction(0)
        for i in range(self.n):
            for j in range(self.n):
                total += vv[i] * self.J[i][j] * vv[j]
        return total

    def evaluate(self, v) -> float:
        """Q(v) for a real vector, Neumaier-compensated over the n^2 terms."""
        x = np.asarray(v, dtype=float)
        if x.shape != (self.n,):
            raise DimensionMismatch(f"expected length {self.n}, got {x.shape}")
        J = self.J_float
        total = 0.0
        comp = 0.0
        for i in range(self.n):
            for j in range(self.n):
                term = x[i] * J[i, j] * x[j]
                t = total + term
                if abs(total) >= abs(term):
                    comp += (total - t) + term
                else:
                    comp += (term - t) + total
                total = t
        return total + comp

    def dual(self) -> "QuadraticForm":
        """Form whose matrix is the exact inverse of J."""
        self._diagonalization  # surfaces SingularForm before inverting
        return QuadraticForm(tuple(tuple(row) for row in exact.inverse(self.J_exact)))

    def normalizer(self) -> "StandardNormalizer":
        return normalize_to_standard(self)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "J": [[exact.format_rational(x) for x in row] for row in self.J],
        }


@dataclass(frozen=True)
class StandardNormalizer:
    """Real change of basis R with R J R^T = diag(1,...,1,-1,...,-1)."""

    R: np.ndarray
    R_inv: np.ndarray
    signature: Signature
    residual: float

    @property
    def J0(self) -> np.ndarray:
        return standard_matrix(self.signature.p, self.signature.q)


def standard_matrix(p: int, q: int) -> np.ndarray:
    """diag(1,...,1,-1,...,-1) with p plus-ones then q minus-ones."""
    return np.diag(np.concatenate([np.ones(p), -np.ones(q)]))


def signature(form: QuadraticForm) -> Signature:
    return form.signature


def dual(form: QuadraticForm) -> QuadraticForm:
    return form.dual()


def normalize_to_standard(form: QuadraticForm) -> StandardNormalizer:
    """Exact diagonalization, then float scaling and sign-sorted reordering."""
    s, d = form._diagonalization
    sig = form.signature
    order = [i for i, x in enumerate(d) if x > 0] + [i for i, x in enumerate(d) if x < 0]
    scale = [1.0 / math.sqrt(abs(float(x))) for x in d]
    s_f = exact.to_float(s)
    r = np.array([scale[i] * s_f[i] for i in order])
    # R^-1 = S^-1 diag(1/scale) P^T, assembled from the exact inverse of S
    s_inv_f = exact.to_float(exact.inverse(s))
    r_inv = np.array([s_inv_f[:, i] / scale[i] for i in order]).T
    j0 = standard_matrix(sig.p, sig.q)
    residual = float(np.max(np.abs(r @ form.J_float @ r.T - j0)))
    if residual > 1e-10:
        raise ArithmeticError(f"normalizer residual {residual:.3e} exceeds 1e-10")
    return StandardNormalizer(R=r, R_inv=r_inv, signature=sig, residual=residual)


def standard_form(p: int, q: int) -> QuadraticForm:
    """Sum of p squares minus sum of q squares."""
    if p < 0 or q < 0 or p + q < 2:
        raise DimensionMismatch("need p + q >= 2")
    diag = [Fraction(1)] * p + [Fraction(-1)] * q
    return QuadraticForm(tuple(tuple(Fraction(int(i == j)) * diag[i] for j in range(p + q)) for i in range(p + q)))


def determinant_form() -> QuadraticForm:
    """The 2x2-determinant form on (a, b, c, d): a*d - b*c. Signature (2,2)."""
    h = Fraction(1, 2)
    rows = [
        [0, 0, 0, h],
        [0, 0, -h, 0],
        [0, -h, 0, 0],
        [h, 0, 0, 0],
    ]
    return QuadraticForm.from_rows(rows)


def form_from_json(obj: dict) -> QuadraticForm:
    n = int(obj["n"])
    rows = obj["J"]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DimensionMismatch(f"J must be {n}x{n}")
    return QuadraticForm.from_rows(rows)


def load_form(ref: str | Path) -> QuadraticForm:
    """Resolve a form reference: "Q0:p,q", "Q1", or a JSON file path."""
    s = str(ref)
    m = _BUILTIN_STANDARD.match(s)
    if m:
        return standard_form(int(m.group(1)), int(m.group(2)))
    if s == "Q1":
        return determinant_form()
    path = Path(s)
    if not path.exists():
        raise FileNotFoundError(f"unknown form reference {s!r} (not a builtin, file missing)")
    with open(path) as fh:
        return form_from_json(json.load(fh))
