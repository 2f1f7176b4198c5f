"""Critical-exponent calculus keyed by the signature of an indefinite form.

Everything here is exact rational arithmetic: integrability bounds for the
orthogonal group, the even-integer transfer rule, the mean-ergodic exponent,
the critical decay exponent and its upper bound, and the norm-ball volume
exponent. No floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .errors import UnsupportedSignature
from .forms import Signature

# signatures where the general integrability table is replaced by a sharper value
_TWO_P_MINUS_ONE = {(5, 2), (4, 3), (6, 3)}

# signatures whose mean-ergodic exponent does not come from the even-integer rule
TEMPERED_SIGNATURES = {(2, 1), (2, 2)}


def _check(sig: Signature) -> Signature:
    if sig.q < 1 or sig.p < sig.q:
        raise UnsupportedSignature(f"need p >= q >= 1, got {sig}")
    if sig.n < 3:
        raise UnsupportedSignature(f"need p + q >= 3, got {sig}")
    return sig


def spectral_gap_bound(sig: Signature) -> int:
    """Bound on the matrix-coefficient integrability exponent of the group."""
    _check(sig)
    p, q, n = sig.p, sig.q, sig.n
    if q == 1:
        return 2 * (n - 2)
    if (p, q) == (2, 2):
        return 2
    if (p, q) == (3, 2):
        return 4
    if (p, q) in {(4, 2), (3, 3)}:
        return 6
    if (p, q) in _TWO_P_MINUS_ONE:
        return 2 * (p - 1)
    return n - 2


def even_transfer_integer(sig: Signature) -> int:
    """Smallest even integer >= half the integrability bound."""
    bound = spectral_gap_bound(sig)
    l = (bound + 1) // 2
    return l if l % 2 == 0 else l + 1


def mean_ergodic_exponent(sig: Signature) -> Fraction:
    """Exponent governing operator-norm decay of ball averages."""
    _check(sig)
    p, q, n = sig.p, sig.q, sig.n
    if q == 1:
        return Fraction(1, 2 * (n - 2))
    if (p, q) == (2, 2):
        return Fraction(1, 2)
    if (p, q) in {(4, 2), (3, 3)}:
        return Fraction(1, 8)
    if (p, q) == (6, 3):
        return Fraction(1, 12)
    return Fraction(1, 2 * even_transfer_integer(sig))


def mean_ergodic_closed_form(n: int) -> Fraction:
    """Closed form of the generic-case exponent as a function of n mod 4."""
    if n < 5:
        raise UnsupportedSignature(f"closed form needs n >= 5, got n={n}")
    return [Fraction(1, n), Fraction(1, n - 1), Fraction(1, n - 2), Fraction(1, n + 1)][n % 4]


def critical_exponent(sig: Signature) -> Fraction:
    """Decay exponent for the shifted-form inequality: 2 * kappa1 * q * (p-1)."""
    _check(sig)
    return 2 * mean_ergodic_exponent(sig) * sig.q * (sig.p - 1)


def critical_exponent_upper(sig: Signature) -> Fraction:
    """No mean-ergodic exponent above this is attainable. Needs p >= 3.

    For p == q the bound is a strict supremum (open from above).
    """
    _check(sig)
    if sig.p < 3:
        raise UnsupportedSignature(f"upper bound defined for p >= 3 only, got {sig}")
    if sig.p > sig.q:
        return Fraction(1, sig.p - 1)
    return Fraction(1, sig.p)


def volume_exponent(sig: Signature) -> int:
    """Polynomial growth exponent of norm-ball volume: q * (p - 1)."""
    _check(sig)
    return sig.q * (sig.p - 1)


@dataclass(frozen=True)
class ExponentProfile:
    """All exponents attached to one signature."""

    signature: Signature
    n: int
    spectral_gap_bound: int
    transfer_l: int | None  # None where an override bypasses the even-integer rule
    mean_ergodic: Fraction
    critical: Fraction
    critical_upper: Fraction | None  # defined for p >= 3 only
    critical_upper_strict: bool
    volume_exponent: int
    log_volume_marker: None  # unknown; only estimated empirically, never asserted
    tempered: bool

    def to_json_dict(self) -> dict:
        return {
            "signature": [self.signature.p, self.signature.q],
            "n": self.n,
            "spectral_gap_bound": exact.format_rational(Fraction(self.spectral_gap_bound)),
            "transfer_l": self.transfer_l,
            "mean_ergodic_exponent": exact.format_rational(self.mean_ergodic),
            "critical_exponent": exact.format_rational(self.critical),
            "critical_exponent_upper": (
                None if self.critical_upper is None else exact.format_rational(self.critical_upper)
            ),
            "critical_upper_strict": self.critical_upper_strict,
            "volume_exponent": self.volume_exponent,
            "log_volume_exponent": None,
            "tempered": self.tempered,
        }


def profile(sig: Signature) -> ExponentProfile:
    _check(sig)
    p, q = sig.p, sig.q
    overridden = q == 1 or (p, q) == (2, 2)
    upper = critical_exponent_upper(sig) if p >= 3 else None
    return ExponentProfile(
        signature=sig,
        n=sig.n,
        spectral_gap_bound=spectral_gap_bound(sig),
        transfer_l=None if overridden else even_transfer_integer(sig),
        mean_ergodic=mean_ergodic_exponent(sig),
        critical=critical_exponent(sig),
        critical_upper=upper,
        critical_upper_strict=(p == q and upper is not None),
        volume_exponent=volume_exponent(sig),
        log_volume_marker=None,
        tempered=(p, q) in TEMPERED_SIGNATURES,
    )
