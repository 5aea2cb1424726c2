"""The three model families and their graded irreducible data.

Every model exposes the same per-irreducible record (:class:`IrrData`):
classical dimension ``n``, quantum dimension ``d``, the sup norm of the
character, and the length of the label.  Parameters are normalised to exact
rationals on construction, so ``n`` and ``d`` are exact for every label.

Family conventions
------------------
* ``DrinfeldJimboModel(lie_type, rank, q)`` — labels are dominant weights;
  ``n`` is the Weyl dimension, ``d`` the quantum dimension, and the character
  sup norm equals ``n`` (coamenability of the deformation; recorded as an
  assumption, not derived here).
* ``FreeOrthogonalModel(N, Nq)`` — labels are nonnegative integers with
  ``n_k = f_k(N)`` and ``d_k = f_k(Nq)``; Kac exactly when ``Nq == N``.
* ``QuantumAutomorphismModel(dimB, d1)`` — labels are nonnegative integers
  with ``n_k = g_k(dimB)`` and ``d_k = g_k(d1 + 1)``.  The parameter ``d1``
  is the quantum dimension of the level-1 irreducible, so the level-1 data is
  ``(n_1, d_1) = (dimB - 1, d1)`` and the model is Kac exactly when
  ``d1 == dimB - 1``.  (The polynomial arguments are the points where
  ``g_1`` takes the level-1 dimensions: ``g_1(dimB) = dimB - 1`` and
  ``g_1(d1 + 1) = d1``.)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .chebyshev import chebyshev_f, chebyshev_g
from .exact import as_fraction
from .rootsys import InvalidRootSystemError, RootSystem, build_root_system

__all__ = [
    "InvalidModelError",
    "IrrData",
    "QuantumGroupModel",
    "DrinfeldJimboModel",
    "FreeOrthogonalModel",
    "QuantumAutomorphismModel",
    "parse_model_spec",
    "construct_model",
]


class InvalidModelError(ValueError):
    def __init__(self, message: str, code: str = "bad-model"):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class IrrData:
    """Data of one irreducible: dimensions, character sup norm, length."""

    label: object
    n: int
    d: Fraction
    chi_sup: int
    length: int


class QuantumGroupModel:
    """Common surface of the three families; immutable after construction."""

    family: str

    def is_kac(self) -> bool:
        raise NotImplementedError

    def irr_data(self, label) -> IrrData:
        raise NotImplementedError

    def enumerate_level(self, k: int) -> list:
        """All labels of length ``k``, in a fixed deterministic order."""
        raise NotImplementedError

    def trivial_label(self):
        raise NotImplementedError

    def spec_string(self) -> str:
        raise NotImplementedError

    def level_data(self, k: int) -> list[IrrData]:
        return [self.irr_data(label) for label in self.enumerate_level(k)]

    def __repr__(self):
        return f"{type(self).__name__}({self.spec_string()!r})"


def _check_length(k: int) -> int:
    if int(k) != k or k < 0:
        raise ValueError(f"length must be a nonnegative integer, got {k}")
    return int(k)


class DrinfeldJimboModel(QuantumGroupModel):
    family = "drinfeld-jimbo"

    def __init__(self, lie_type: str, rank: int, q):
        try:
            self.root_system: RootSystem = build_root_system(lie_type, rank)
        except InvalidRootSystemError as exc:
            raise InvalidModelError(str(exc), code=exc.code) from exc
        q = as_fraction(q)
        if not (0 < q < 1):
            raise InvalidModelError(
                f"deformation parameter must satisfy 0 < q < 1, got {q}",
                code="q-out-of-range",
            )
        self.lie_type = self.root_system.lie_type
        self.rank = self.root_system.rank
        self.q = q

    def is_kac(self) -> bool:
        # a genuine deformation (0 < q < 1) is never of Kac type
        return False

    def irr_data(self, label) -> IrrData:
        mu = tuple(int(c) for c in label)
        rs = self.root_system
        n = rs.weyl_dimension(mu)
        d = rs.quantum_dimension_product(mu, self.q)
        return IrrData(label=mu, n=n, d=d, chi_sup=n, length=sum(mu))

    def enumerate_level(self, k: int) -> list[tuple[int, ...]]:
        k = _check_length(k)
        return list(_compositions_desc(k, self.rank))

    def trivial_label(self):
        return (0,) * self.rank

    def spec_string(self) -> str:
        return f"djq:{self.lie_type}{self.rank}:{self.q}"


def _compositions_desc(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` slots, descending lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions_desc(total - first, parts - 1):
            yield (first,) + rest


class FreeOrthogonalModel(QuantumGroupModel):
    family = "free-orthogonal"

    def __init__(self, N: int, Nq):
        if int(N) != N or N < 2:
            raise InvalidModelError(
                f"N must be an integer >= 2, got {N}", code="bad-n"
            )
        Nq = as_fraction(Nq)
        if Nq < N:
            raise InvalidModelError(
                f"Nq >= N is required (Nq = N is the Kac case); got Nq={Nq} < N={N}",
                code="nq-below-n",
            )
        self.N = int(N)
        self.Nq = Nq

    def is_kac(self) -> bool:
        return self.Nq == self.N

    def irr_data(self, label) -> IrrData:
        k = _check_length(label)
        n = int(chebyshev_f(k, self.N))
        d = chebyshev_f(k, self.Nq)
        return IrrData(label=k, n=n, d=d, chi_sup=k + 1, length=k)

    def enumerate_level(self, k: int) -> list[int]:
        return [_check_length(k)]

    def trivial_label(self):
        return 0

    def spec_string(self) -> str:
        return f"oplus:{self.N}:{self.Nq}"


class QuantumAutomorphismModel(QuantumGroupModel):
    family = "quantum-automorphism"

    def __init__(self, dimB: int, d1):
        if int(dimB) != dimB or dimB < 4:
            raise InvalidModelError(
                f"dimB must be an integer >= 4, got {dimB}", code="bad-dimb"
            )
        d1 = as_fraction(d1)
        self.dimB = int(dimB)
        self.n1 = self.dimB - 1
        if d1 < self.n1:
            raise InvalidModelError(
                f"d1 >= dimB - 1 is required (d1 = dimB - 1 is the Kac case); "
                f"got d1={d1} < {self.n1}",
                code="d1-below-minimum",
            )
        self.d1 = d1

    def is_kac(self) -> bool:
        return self.d1 == self.n1

    def irr_data(self, label) -> IrrData:
        k = _check_length(label)
        n = int(chebyshev_g(k, self.dimB))
        d = chebyshev_g(k, self.d1 + 1)
        return IrrData(label=k, n=n, d=d, chi_sup=2 * k + 1, length=k)

    def enumerate_level(self, k: int) -> list[int]:
        return [_check_length(k)]

    def trivial_label(self):
        return 0

    def spec_string(self) -> str:
        return f"aut:{self.dimB}:{self.d1}"


_DJQ_RE = re.compile(r"^djq:([A-Ga-g])(\d+):(.+)$")
_OPLUS_RE = re.compile(r"^oplus:(\d+):(.+)$")
_AUT_RE = re.compile(r"^aut:(\d+):(.+)$")


def _parse_number(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidModelError(
            f"cannot parse {text!r} as a decimal or num/den rational",
            code="bad-model-spec",
        ) from exc


def parse_model_spec(spec: str) -> QuantumGroupModel:
    """Parse ``djq:<type><rank>:<q>``, ``oplus:<N>:<Nq>`` or ``aut:<dimB>:<d1>``.

    Numeric fields accept decimal literals or ``num/den`` rationals.
    """
    spec = spec.strip()
    m = _DJQ_RE.match(spec)
    if m:
        return DrinfeldJimboModel(m.group(1).upper(), int(m.group(2)), _parse_number(m.group(3)))
    m = _OPLUS_RE.match(spec)
    if m:
        return FreeOrthogonalModel(int(m.group(1)), _parse_number(m.group(2)))
    m = _AUT_RE.match(spec)
    if m:
        return QuantumAutomorphismModel(int(m.group(1)), _parse_number(m.group(2)))
    raise InvalidModelError(
        f"malformed model spec {spec!r}; expected djq:<type><rank>:<q>, "
        "oplus:<N>:<Nq> or aut:<dimB>:<d1>",
        code="bad-model-spec",
    )


def construct_model(spec) -> QuantumGroupModel:
    """Build a model from a spec string, or pass a model through unchanged."""
    if isinstance(spec, QuantumGroupModel):
        return spec
    if isinstance(spec, str):
        return parse_model_spec(spec)
    raise InvalidModelError(f"cannot construct a model from {spec!r}")
