"""Lie-algebra models of transversely symplectic foliations.

A model is a Lie algebra with basis ``e_1..e_m`` whose first ``p`` vectors
span the foliation, together with a 2-form ``omega`` on the remaining
directions.  Forms are left-invariant forms; the exterior derivative is the
Chevalley-Eilenberg differential with ``d(alpha)(X, Y) = -alpha([X, Y])``.
The frame is declared orthonormal, so the characteristic form is
``e_1^* ^ ... ^ e_p^*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping

from . import linalg
from .exterior import (Form, Frame, Multivector, SymplecticStructure, contract,
                       wedge, wedge_all)
from .linalg import DegreeOperator
from . import sl2


class NotIsoparametricError(ValueError):
    """A mean-curvature dependent operator was requested but kappa is not basic."""


class BasicClosureError(RuntimeError):
    """An operator image left the basic complex."""


Brackets = dict[tuple[int, int], dict[int, Fraction]]


def _clean_brackets(brackets: Mapping) -> Brackets:
    out: Brackets = {}
    for (i, j), row in brackets.items():
        if i == j:
            continue
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        target = out.setdefault((i, j), {})
        for k, c in row.items():
            c = sign * Fraction(c)
            target[k] = target.get(k, Fraction(0)) + c
    return {key: {k: c for k, c in sorted(row.items()) if c}
            for key, row in sorted(out.items()) if any(row.values())}


@dataclass(frozen=True, eq=False)
class LieModel:
    """Structure constants plus the foliation split and transverse 2-form.

    ``brackets[(i, j)] = {k: c}`` means ``[e_i, e_j] = sum c e_k`` (0-based,
    ``i < j``).  ``omega`` may be invalid; :func:`validate_model` reports it.
    """

    name: str
    frame: Frame
    brackets: Brackets
    omega: Form
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "brackets", _clean_brackets(self.brackets))
        m = self.frame.m
        for (i, j), row in self.brackets.items():
            if not (0 <= i < m and 0 <= j < m) or any(not 0 <= k < m for k in row):
                raise ValueError(f"bracket index out of range in [{i}, {j}]")
        if self.omega.frame != self.frame or self.omega.degree != 2:
            raise ValueError("omega must be a 2-form on the model frame")

    @property
    def p(self) -> int:
        return self.frame.p

    @property
    def n(self) -> int:
        return self.frame.n

    @property
    def symp(self) -> SymplecticStructure:
        if "symp" not in self._cache:
            self._cache["symp"] = SymplecticStructure(self.frame, self.omega)
        return self._cache["symp"]

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket_vectors(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.bracket(i, j).items():
                    out[k] = out.get(k, Fraction(0)) + a * b * c
        return {k: c for k, c in out.items() if c}

    def scaled(self, c) -> "LieModel":
        """Same algebra with ``omega`` multiplied by ``c``."""
        return LieModel(self.name, self.frame, self.brackets, Fraction(c) * self.omega)

    def d_covector(self, k: int) -> Form:
        """``d e_k^* = -sum_{i<j} c_ij^k e_i^* ^ e_j^*``."""
        table = {(i, j): -row[k] for (i, j), row in self.brackets.items() if k in row}
        return Form(self.frame, 2, table)


def ce_differential(model: LieModel, phi: Form) -> Form:
    """Chevalley-Eilenberg differential of an invariant form."""
    if phi.frame != model.frame:
        raise ValueError("frame mismatch")
    frame = model.frame
    cache = model._cache.setdefault("d", {})
    out = Form.zero(frame, phi.degree + 1)
    for key, c in phi.coeffs.items():
        if key not in cache:
            img = Form.zero(frame, len(key) + 1)
            for t, idx in enumerate(key):
                left = Form(frame, t, {key[:t]: 1})
                right = Form(frame, len(key) - t - 1, {key[t + 1:]: 1})
                term = wedge(wedge(left, model.d_covector(idx)), right)
                img = img + (-1) ** t * term
            cache[key] = img
        out = out + c * cache[key]
    return out


def lie_derivative(model: LieModel, X: Multivector, phi: Form) -> Form:
    """Cartan formula ``theta(X) = d i(X) + i(X) d`` for a vector ``X``."""
    if X.degree != 1:
        raise ValueError("lie_derivative expects a vector")
    out = contract(X, ce_differential(model, phi))
    if phi.degree:
        out = out + ce_differential(model, contract(X, phi))
    return out


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[Check]
    unimodular: bool

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "unimodular": self.unimodular,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def _vec_str(frame: Frame, v: Mapping[int, Fraction]) -> str:
    return " + ".join(f"{c}*{frame.names[k]}" for k, c in sorted(v.items())) or "0"


def validate_model(model: LieModel) -> ValidationReport:
    """Run every structural check on ``model`` and collect the outcomes."""
    frame, m, p = model.frame, model.frame.m, model.p
    checks = []

    bad = []
    for i, j, k in combinations(range(m), 3):
        total: dict[int, Fraction] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = model.bracket_vectors({a: Fraction(1)}, {b: Fraction(1)})
            for idx, val in model.bracket_vectors(inner, {c: Fraction(1)}).items():
                total[idx] = total.get(idx, Fraction(0)) + val
        total = {x: y for x, y in total.items() if y}
        if total:
            bad.append((i + 1, j + 1, k + 1, _vec_str(frame, total)))
    checks.append(Check("jacobi", not bad,
                        "; ".join(f"triple ({a},{b},{c}) gives {s}" for a, b, c, s in bad)))

    leaks = []
    for i, j in combinations(range(p), 2):
        out = {k: c for k, c in model.bracket(i, j).items() if k >= p}
        if out:
            leaks.append(f"[{frame.names[i]},{frame.names[j]}] has transverse part {_vec_str(frame, out)}")
    checks.append(Check("foliation_integrable", not leaks, "; ".join(leaks)))

    kernel = []
    for j in range(p):
        img = contract(frame.vector(j), model.omega)
        if img:
            kernel.append(f"i({frame.names[j]})omega = {img}")
    checks.append(Check("kernel_contains_foliation", not kernel, "; ".join(kernel)))

    if not kernel:
        try:
            SymplecticStructure(frame, model.omega)
            checks.append(Check("omega_nondegenerate", True))
        except ValueError as exc:
            checks.append(Check("omega_nondegenerate", False, str(exc)))
    else:
        checks.append(Check("omega_nondegenerate", False, "skipped: omega not transverse"))

    domega = ce_differential(model, model.omega)
    checks.append(Check("omega_closed", not domega, "" if not domega else f"d omega = {domega}"))

    return ValidationReport(checks, unimodular=not unimodularity_defects(model))


def unimodularity_defects(model: LieModel) -> dict[int, Fraction]:
    m = model.frame.m
    out = {}
    for i in range(m):
        tr = sum((model.bracket(i, k).get(k, Fraction(0)) for k in range(m)), Fraction(0))
        if tr:
            out[i] = tr
    return out


@dataclass(frozen=True, eq=False)
class BasicComplex:
    """Per-degree bases of the invariant basic forms.

    Each basis vector comes from a reduced-echelon kernel computation, so
    it is 1 on its own ``free key`` and 0 on the other free keys; the
    coordinates of a basic form are its coefficients on the free keys.
    """

    model: LieModel
    bases: dict[int, list[Form]]
    free_keys: dict[int, list[tuple[int, ...]]]

    @property
    def dims(self) -> list[int]:
        return [len(self.bases[r]) for r in range(2 * self.model.n + 1)]

    def dim(self, r: int) -> int:
        return len(self.bases.get(r, []))

    def basis(self, r: int) -> list[Form]:
        return self.bases.get(r, [])

    def coords(self, phi: Form) -> list[Fraction]:
        """Coordinates in the degree basis; raises if ``phi`` is not basic."""
        v = self.try_coords(phi)
        if v is None:
            raise BasicClosureError(f"form is not basic: {phi}")
        return v

    def try_coords(self, phi: Form) -> list[Fraction] | None:
        r = phi.degree
        if r not in self.bases:
            return [] if not phi else None
        v = [phi.coeffs.get(k, Fraction(0)) for k in self.free_keys[r]]
        if self.from_coords(r, v) != phi:
            return None
        return v

    def contains(self, phi: Form) -> bool:
        return self.try_coords(phi) is not None

    def from_coords(self, r: int, v) -> Form:
        out = Form.zero(self.model.frame, r)
        for c, b in zip(v, self.basis(r)):
            if c:
                out = out + c * b
        return out


def basic_basis(model: LieModel) -> BasicComplex:
    """Solve ``i(E_j)phi = 0`` and ``theta(E_j)phi = 0`` in every degree."""
    frame = model.frame
    bases, free = {}, {}
    leaf_vectors = [frame.vector(j) for j in frame.leaf_indices]
    for r in range(2 * frame.n + 1):
        keys = frame.keys(r)
        low_keys = frame.keys(r - 1)
        cols = []
        for key in keys:
            phi = Form(frame, r, {key: 1})
            col: list[Fraction] = []
            for X in leaf_vectors:
                if r:
                    ix = contract(X, phi)
                    col += [ix.coeffs.get(k, Fraction(0)) for k in low_keys]
                th = lie_derivative(model, X, phi)
                col += [th.coeffs.get(k, Fraction(0)) for k in keys]
            cols.append(col)
        nrows = len(cols[0]) if cols else 0
        kernel, free_cols = linalg.nullspace_with_free(linalg.columns(cols, nrows), len(keys))
        bases[r] = [Form(frame, r, dict(zip(keys, v))) for v in kernel]
        free[r] = [keys[j] for j in free_cols]
    return BasicComplex(model, bases, free)


@dataclass(frozen=True)
class MeanCurvatureData:
    chi: Form
    kappa: Form
    phi0: Form
    is_basic_kappa: bool
    d_kappa_zero: bool
    rummler_holds: bool
    phi0_filtered: bool


def mean_curvature(model: LieModel, complex: BasicComplex | None = None) -> MeanCurvatureData:
    """Characteristic form, mean curvature and the Rummler remainder."""
    frame, p = model.frame, model.p
    complex = complex or basic_basis(model)
    chi = wedge_all((frame.covector(j) for j in range(p)), frame, Form)
    dchi = ce_differential(model, chi)
    leaves = wedge_all((frame.vector(j) for j in range(p)), frame, Multivector)
    kappa = (-1) ** (p + 1) * contract(leaves, dchi)
    phi0 = dchi + wedge(kappa, chi)
    rummler = dchi == -wedge(kappa, chi) + phi0
    filtered = not contract(leaves, phi0)
    return MeanCurvatureData(
        chi=chi, kappa=kappa, phi0=phi0,
        is_basic_kappa=complex.contains(kappa),
        d_kappa_zero=not ce_differential(model, kappa),
        rummler_holds=rummler, phi0_filtered=filtered)


KIND_SHIFT = {
    "dB": 1, "deltaT": -1, "deltaB": -1, "dKappa": 1, "deltaKappa": -1,
    "L": 2, "Lambda": -2, "A": 0, "thetaKappaSharp": 0,
    "epsilonKappa": 1, "iKappaSharp": -1,
}
KAPPA_KINDS = {"deltaB", "dKappa", "deltaKappa", "thetaKappaSharp", "epsilonKappa", "iKappaSharp"}


class Operators:
    """Form-level operators on the basic complex of a model."""

    def __init__(self, model: LieModel, complex: BasicComplex | None = None,
                 mc: MeanCurvatureData | None = None):
        self.model = model
        self.symp = model.symp
        self.complex = complex or basic_basis(model)
        self.mc = mc or mean_curvature(model, self.complex)
        self._kappa_sharp = None

    @property
    def isoparametric(self) -> bool:
        return self.mc.is_basic_kappa

    def _need_kappa(self):
        if not self.mc.is_basic_kappa:
            raise NotIsoparametricError("not isoparametric: mean curvature form is not basic")

    @property
    def kappa(self) -> Form:
        return self.mc.kappa

    @property
    def kappa_sharp(self) -> Multivector:
        self._need_kappa()
        if self._kappa_sharp is None:
            self._kappa_sharp = self.symp.sharp(self.mc.kappa)
        return self._kappa_sharp

    def d(self, phi: Form) -> Form:
        return ce_differential(self.model, phi)

    def star(self, phi: Form) -> Form:
        return self.symp.star(phi)

    def eps_kappa(self, phi: Form) -> Form:
        self._need_kappa()
        return wedge(self.mc.kappa, phi)

    def i_kappa_sharp(self, phi: Form) -> Form:
        if phi.degree == 0:
            return Form.zero(phi.frame, 0)
        return contract(self.kappa_sharp, phi)

    def delta_T(self, phi: Form) -> Form:
        if phi.degree == 0:
            return Form.zero(phi.frame, 0)
        return (-1) ** phi.degree * self.star(self.d(self.star(phi)))

    def delta_B(self, phi: Form) -> Form:
        if phi.degree == 0:
            return Form.zero(phi.frame, 0)
        s = self.star(phi)
        return (-1) ** phi.degree * self.star(self.d(s) - self.eps_kappa(s))

    def d_kappa(self, phi: Form) -> Form:
        return self.d(phi) - Fraction(1, 2) * self.eps_kappa(phi)

    def delta_kappa(self, phi: Form) -> Form:
        if phi.degree == 0:
            return Form.zero(phi.frame, 0)
        return self.delta_B(phi) + Fraction(1, 2) * self.i_kappa_sharp(phi)

    def theta_kappa_sharp(self, phi: Form) -> Form:
        X = self.kappa_sharp
        out = self.i_kappa_sharp(self.d(phi))
        if phi.degree:
            out = out + self.d(contract(X, phi))
        return out

    def L(self, phi: Form) -> Form:
        return sl2.L(self.symp, phi)

    def Lambda(self, phi: Form) -> Form:
        return sl2.Lambda(self.symp, phi)

    def A(self, phi: Form) -> Form:
        return sl2.A(self.symp, phi)

    def by_kind(self, kind: str) -> Callable[[Form], Form]:
        table = {
            "dB": self.d, "deltaT": self.delta_T, "deltaB": self.delta_B,
            "dKappa": self.d_kappa, "deltaKappa": self.delta_kappa,
            "L": self.L, "Lambda": self.Lambda, "A": self.A,
            "thetaKappaSharp": self.theta_kappa_sharp,
            "epsilonKappa": self.eps_kappa, "iKappaSharp": self.i_kappa_sharp,
        }
        if kind not in table:
            raise ValueError(f"unknown operator kind {kind!r}")
        return table[kind]

    def matrix(self, kind: str, r: int) -> DegreeOperator:
        return operator_matrix(self.complex, self.mc, kind, r, ops=self)


def operator_matrix(complex: BasicComplex, mc: MeanCurvatureData, kind: str, r: int,
                    ops: Operators | None = None) -> DegreeOperator:
    """Exact matrix of ``kind`` from basic ``r``-forms in the complex bases."""
    if kind not in KIND_SHIFT:
        raise ValueError(f"unknown operator kind {kind!r}")
    n = complex.model.n
    if not 0 <= r <= 2 * n:
        raise ValueError(f"degree {r} out of range 0..{2 * n}")
    if kind in KAPPA_KINDS and not mc.is_basic_kappa:
        raise NotIsoparametricError(f"{kind}: not isoparametric (mean curvature form is not basic)")
    ops = ops or Operators(complex.model, complex, mc)
    cache = complex.model._cache.setdefault("matrices", {})
    if (kind, r) in cache:
        return cache[kind, r]
    target = r + KIND_SHIFT[kind]
    fn = ops.by_kind(kind)
    cols = []
    if 0 <= target <= 2 * n:
        for b in complex.basis(r):
            img = fn(b)
            v = complex.try_coords(img)
            if v is None:
                raise BasicClosureError(f"{kind} maps the basic form {b} outside the basic complex")
            cols.append(v)
        tdim = complex.dim(target)
    else:
        cols = [[] for _ in complex.basis(r)]
        tdim = 0
    op = DegreeOperator.from_columns(kind, r, target, cols, tdim)
    cache[kind, r] = op
    return op
