"""Exact exterior algebra on a fixed frame, with the transverse symplectic
structure: musical isomorphisms, the pairing on forms and the symplectic star.

Indices are 0-based internally.  Indices ``0..p-1`` are leafwise directions,
``p..m-1`` span the transverse bundle.  Keys of a graded element are
strictly increasing index tuples; zero coefficients are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Iterable, Iterator, Mapping

from . import linalg

Key = tuple[int, ...]


@dataclass(frozen=True)
class Frame:
    """A frame of ``m = p + 2n`` directions, leafwise ones first."""

    p: int
    n: int
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.p < 0 or self.n < 0:
            raise ValueError("p and n must be non-negative")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i + 1}" for i in range(self.m)))
        else:
            object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) != self.m:
            raise ValueError(f"expected {self.m} basis names, got {len(self.names)}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")

    @property
    def m(self) -> int:
        return self.p + 2 * self.n

    @property
    def leaf_indices(self) -> range:
        return range(self.p)

    @property
    def transverse_indices(self) -> range:
        return range(self.p, self.m)

    def keys(self, degree: int) -> list[Key]:
        if degree < 0 or degree > self.m:
            return []
        return list(combinations(range(self.m), degree))

    def transverse_keys(self, degree: int) -> list[Key]:
        if degree < 0 or degree > 2 * self.n:
            return []
        return list(combinations(self.transverse_indices, degree))

    def covector(self, i: int) -> "Form":
        return Form(self, 1, {(i,): 1})

    def vector(self, i: int) -> "Multivector":
        return Multivector(self, 1, {(i,): 1})


def canonical(key: Iterable[int]) -> tuple[int, Key] | None:
    """Sort ``key`` and return ``(sign, sorted_key)``; None if an index repeats."""
    items = list(key)
    if len(set(items)) != len(items):
        return None
    sign = 1
    # insertion sort keeps track of the permutation parity
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


def _merge_sign(a: Key, b: Key) -> int:
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return -1 if inversions % 2 else 1


class _Graded:
    """Sparse homogeneous element of an exterior algebra over ``frame``."""

    __slots__ = ("frame", "degree", "coeffs")
    _star_suffix = ""

    def __init__(self, frame: Frame, degree: int, coeffs: Mapping[Iterable[int], object] | None = None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        table: dict[Key, Fraction] = {}
        for raw, value in (coeffs or {}).items():
            c = Fraction(value)
            if not c:
                continue
            norm = canonical(raw)
            if norm is None:
                continue
            sign, key = norm
            if len(key) != degree:
                raise ValueError(f"key {raw} does not have degree {degree}")
            if key and (key[0] < 0 or key[-1] >= frame.m):
                raise ValueError(f"index out of range in {raw}")
            table[key] = table.get(key, Fraction(0)) + sign * c
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", {k: v for k, v in sorted(table.items()) if v})

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def zero(cls, frame: Frame, degree: int):
        return cls(frame, degree)

    @classmethod
    def one(cls, frame: Frame):
        return cls(frame, 0, {(): 1})

    @classmethod
    def _raw(cls, frame: Frame, degree: int, table: dict[Key, Fraction]):
        # trusted constructor: keys already canonical and of the right degree
        obj = object.__new__(cls)
        object.__setattr__(obj, "frame", frame)
        object.__setattr__(obj, "degree", degree)
        object.__setattr__(obj, "coeffs", {k: v for k, v in sorted(table.items()) if v})
        return obj

    def _check(self, other: "_Graded"):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.frame != self.frame:
            raise ValueError("frame mismatch")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            # the zero element is shared by every degree
            if not other.coeffs:
                return self
            if not self.coeffs:
                return other
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        table = dict(self.coeffs)
        for k, v in other.coeffs.items():
            table[k] = table.get(k, Fraction(0)) + v
        return type(self)._raw(self.frame, self.degree, table)

    def __neg__(self):
        return type(self)._raw(self.frame, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, _Graded):
            return NotImplemented
        c = Fraction(scalar)
        return type(self)._raw(self.frame, self.degree, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if self.frame != other.frame:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        if not self.coeffs:
            return hash((type(self).__name__, self.frame))
        return hash((type(self).__name__, self.frame, self.degree, tuple(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(self.coeffs.items())

    def coefficient(self, key: Iterable[int]) -> Fraction:
        norm = canonical(key)
        if norm is None:
            return Fraction(0)
        sign, k = norm
        return sign * self.coeffs.get(k, Fraction(0))

    def is_transverse(self) -> bool:
        p = self.frame.p
        return all(not k or k[0] >= p for k in self.coeffs)

    def support(self) -> set[int]:
        return {i for k in self.coeffs for i in k}

    def label(self, key: Key) -> str:
        if not key:
            return "1"
        return "^".join(self.frame.names[i] + self._star_suffix for i in key)

    def terms(self) -> list[tuple[list[str], Fraction]]:
        return [([self.frame.names[i] for i in k], v) for k, v in self.coeffs.items()]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for key, c in self.coeffs.items():
            mag = abs(c)
            body = self.label(key)
            if not key:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            parts.append(("-" if c < 0 else "+", text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"{type(self).__name__}(deg={self.degree}, {self})"


class Form(_Graded):
    """Exterior form; keys index the dual coframe."""

    __slots__ = ()
    _star_suffix = "*"


class Multivector(_Graded):
    """Multivector; keys index the frame vectors."""

    __slots__ = ()


def wedge(a: _Graded, b: _Graded) -> _Graded:
    """Exterior product of two forms (or two multivectors)."""
    a._check(b)
    table: dict[Key, Fraction] = {}
    for ka, va in a.coeffs.items():
        sa = set(ka)
        for kb, vb in b.coeffs.items():
            if sa.intersection(kb):
                continue
            key = tuple(sorted(ka + kb))
            c = _merge_sign(ka, kb) * va * vb
            table[key] = table.get(key, Fraction(0)) + c
    return type(a)._raw(a.frame, a.degree + b.degree, table)


def wedge_all(items: Iterable[_Graded], frame: Frame, cls=None) -> _Graded:
    cls = cls or Form
    out = cls.one(frame)
    for x in items:
        out = wedge(out, x)
    return out


def _contract_key(vkey: Key, fkey: Key) -> tuple[int, Key] | None:
    sign = 1
    remaining = list(fkey)
    for j in vkey:
        try:
            pos = remaining.index(j)
        except ValueError:
            return None
        if pos % 2:
            sign = -sign
        del remaining[pos]
    return sign, tuple(remaining)


def contract(P: Multivector, phi: Form) -> Form:
    """Interior product ``i(P)phi``.

    For ``P = X_1^...^X_r`` the factors act in order, ``i(X_r)...i(X_1)phi``.
    A multivector of higher degree than the form gives the zero form.
    """
    if not isinstance(P, Multivector) or not isinstance(phi, Form):
        raise TypeError("contract expects (Multivector, Form)")
    if P.frame != phi.frame:
        raise ValueError("frame mismatch")
    degree = phi.degree - P.degree
    if degree < 0:
        return Form.zero(phi.frame, 0)
    table: dict[Key, Fraction] = {}
    for kv, cv in P.coeffs.items():
        for kf, cf in phi.coeffs.items():
            hit = _contract_key(kv, kf)
            if hit is None:
                continue
            sign, key = hit
            table[key] = table.get(key, Fraction(0)) + sign * cv * cf
    return Form._raw(phi.frame, degree, table)


def integrate(phi: Form, model_volume: Form) -> Fraction:
    """Coefficient ``c`` with ``phi = c * model_volume`` for top-degree forms."""
    m = phi.frame.m
    if phi.degree != m or model_volume.degree != m:
        raise ValueError(f"integrate needs forms of top degree {m}")
    top = tuple(range(m))
    vol = model_volume.coefficient(top)
    if not vol:
        raise ValueError("model volume form is zero")
    return phi.coefficient(top) / vol


def _det(mat: list[list[Fraction]]) -> Fraction:
    n = len(mat)
    if n == 0:
        return Fraction(1)
    a = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


@dataclass(frozen=True, eq=False)
class SymplecticStructure:
    """A nondegenerate 2-form on the transverse directions of ``frame``.

    ``omega_matrix[a][b] = omega(e_{p+a}, e_{p+b})``.
    """

    frame: Frame
    omega: Form
    omega_matrix: tuple[tuple[Fraction, ...], ...] = field(init=False)
    omega_inverse: tuple[tuple[Fraction, ...], ...] = field(init=False)
    _cache: dict = field(init=False, repr=False)

    def __post_init__(self):
        frame, omega = self.frame, self.omega
        if not isinstance(omega, Form) or omega.degree != 2:
            raise ValueError("omega must be a 2-form")
        if omega.frame != frame:
            raise ValueError("frame mismatch")
        if not omega.is_transverse():
            raise ValueError("omega does not vanish on leafwise directions (ker omega must contain TF)")
        p, q = frame.p, 2 * frame.n
        W = [[Fraction(0)] * q for _ in range(q)]
        for (i, j), c in omega.coeffs.items():
            W[i - p][j - p] = c
            W[j - p][i - p] = -c
        inv = self._invert(W)
        if inv is None:
            raise ValueError("omega is degenerate on the transverse directions")
        object.__setattr__(self, "omega_matrix", tuple(tuple(r) for r in W))
        object.__setattr__(self, "omega_inverse", tuple(tuple(r) for r in inv))
        object.__setattr__(self, "_cache", {})

    @staticmethod
    def _invert(W):
        q = len(W)
        if q == 0:
            return []
        aug = [list(W[i]) + [Fraction(int(i == j)) for j in range(q)] for i in range(q)]
        reduced, pivots = linalg.rref(aug, 2 * q)
        if tuple(pivots[:q]) != tuple(range(q)):
            return None
        return [row[q:] for row in reduced]

    @property
    def n(self) -> int:
        return self.frame.n

    def _require_transverse(self, x: _Graded, what: str):
        if x.frame != self.frame:
            raise ValueError("frame mismatch")
        if not x.is_transverse():
            raise ValueError(f"{what} needs transverse support; got a leafwise index")

    def _memo(self, name, key, build):
        table = self._cache.setdefault(name, {})
        if key not in table:
            table[key] = build()
        return table[key]

    # musical isomorphisms -------------------------------------------------

    def flat_vector(self, i: int) -> Form:
        p = self.frame.p
        row = self.omega_matrix[i - p]
        return Form(self.frame, 1, {(p + b,): c for b, c in enumerate(row) if c})

    def sharp_covector(self, i: int) -> Multivector:
        p = self.frame.p
        row = self.omega_inverse[i - p]
        return Multivector(self.frame, 1, {(p + a,): c for a, c in enumerate(row) if c})

    def flat(self, P: Multivector) -> Form:
        """``X -> i(X)omega``, extended factorwise to multivectors."""
        if not isinstance(P, Multivector):
            raise TypeError("flat expects a Multivector")
        self._require_transverse(P, "flat")
        out = Form.zero(self.frame, P.degree)
        for key, c in P.coeffs.items():
            img = self._memo("flat", key, lambda: wedge_all(
                (self.flat_vector(i) for i in key), self.frame, Form))
            out = out + c * img
        return out

    def sharp(self, phi: Form) -> Multivector:
        """Inverse of :meth:`flat` in every degree."""
        if not isinstance(phi, Form):
            raise TypeError("sharp expects a Form")
        self._require_transverse(phi, "sharp")
        out = Multivector.zero(self.frame, phi.degree)
        for key, c in phi.coeffs.items():
            img = self._memo("sharp", key, lambda: wedge_all(
                (self.sharp_covector(i) for i in key), self.frame, Multivector))
            out = out + c * img
        return out

    # pairing and star -----------------------------------------------------

    def _gram(self, a: int, b: int) -> Fraction:
        # omega(e^a, e^b) = omega(sharp e^a, sharp e^b) = (W^{-1})_{ba}
        p = self.frame.p
        return self.omega_inverse[b - p][a - p]

    def omega_pair(self, phi: Form, psi: Form) -> Fraction:
        """Bilinear extension of ``det(omega(phi_i, psi_j))`` from decomposables."""
        if phi.degree != psi.degree:
            raise ValueError(f"degree mismatch: {phi.degree} vs {psi.degree}")
        self._require_transverse(phi, "omega_pair")
        self._require_transverse(psi, "omega_pair")
        total = Fraction(0)
        for ka, ca in phi.coeffs.items():
            for kb, cb in psi.coeffs.items():
                g = self._memo("pair", (ka, kb), lambda: _det(
                    [[self._gram(a, b) for b in kb] for a in ka]))
                if g:
                    total += ca * cb * g
        return total

    @property
    def nu(self) -> Form:
        """Transversal volume form ``omega^n / n!``."""
        def build():
            power = wedge_all([self.omega] * self.n, self.frame, Form)
            return Fraction(1, factorial(self.n)) * power
        return self._memo("nu", None, build)

    def star(self, phi: Form) -> Form:
        """Symplectic star ``i(phi^sharp) nu`` on transverse forms."""
        if not isinstance(phi, Form):
            raise TypeError("star expects a Form")
        self._require_transverse(phi, "star")
        if phi.degree > 2 * self.n:
            if not phi:
                return Form.zero(self.frame, 0)
            raise ValueError("degree exceeds transverse dimension")
        table: dict[Key, Fraction] = {}
        for key, c in phi.coeffs.items():
            img = self._memo("star", key, lambda: contract(
                self.sharp(Form(self.frame, len(key), {key: 1})), self.nu))
            for k, v in img.coeffs.items():
                table[k] = table.get(k, Fraction(0)) + c * v
        return Form._raw(self.frame, 2 * self.n - phi.degree, table)

    def scaled(self, c) -> "SymplecticStructure":
        return SymplecticStructure(self.frame, Fraction(c) * self.omega)
