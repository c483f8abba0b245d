"""Lefschetz triple ``(L, Lambda, A)`` and primitive decompositions on the
transverse exterior algebra of a symplectic structure."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .exterior import Form, SymplecticStructure, contract, wedge
from .linalg import DegreeOperator


def L(symp: SymplecticStructure, phi: Form) -> Form:
    """Lefschetz operator ``phi -> omega ^ phi``."""
    symp._require_transverse(phi, "L")
    return wedge(symp.omega, phi)


def Lambda(symp: SymplecticStructure, phi: Form) -> Form:
    """Dual Lefschetz operator ``i(omega^sharp)``; zero below degree 2."""
    symp._require_transverse(phi, "Lambda")
    if phi.degree < 2:
        return Form.zero(phi.frame, 0)
    omega_sharp = symp._memo("omega_sharp", None, lambda: symp.sharp(symp.omega))
    return contract(omega_sharp, phi)


def A(symp: SymplecticStructure, phi: Form) -> Form:
    """Counting operator: multiplies a degree ``r`` form by ``n - r``."""
    return (symp.n - phi.degree) * phi


def L_power(symp: SymplecticStructure, phi: Form, k: int) -> Form:
    for _ in range(k):
        phi = L(symp, phi)
    return phi


def _coords(phi: Form, keys: Sequence) -> list[Fraction]:
    return [phi.coeffs.get(k, Fraction(0)) for k in keys]


def lefschetz_power_matrix(symp: SymplecticStructure, r: int,
                           bases: dict[int, list[Form]] | None = None,
                           coords=None) -> DegreeOperator:
    """Matrix of ``L^r`` from degree ``n - r`` to degree ``n + r``.

    Without ``bases`` the full transverse algebra with its monomial basis is
    used.  With ``bases`` (per-degree lists of forms) and a ``coords``
    function ``coords(form) -> list`` the matrix is taken in those bases.
    """
    n = symp.n
    if not 0 <= r <= n:
        raise ValueError(f"r must lie in 0..{n}, got {r}")
    frame = symp.frame
    if bases is None:
        src_keys = frame.transverse_keys(n - r)
        tgt_keys = frame.transverse_keys(n + r)
        cols = [_coords(L_power(symp, Form(frame, n - r, {k: 1}), r), tgt_keys) for k in src_keys]
        return DegreeOperator.from_columns("L^r", n - r, n + r, cols, len(tgt_keys))
    cols = [coords(L_power(symp, b, r)) for b in bases[n - r]]
    return DegreeOperator.from_columns("L^r", n - r, n + r, cols, len(bases[n + r]))


@dataclass(frozen=True)
class PrimitiveDecomposition:
    """``source = sum_k L^k beta_k`` with every ``beta_k`` primitive."""

    source: Form
    components: tuple[tuple[int, Form], ...]

    def reconstruct(self, symp: SymplecticStructure) -> Form:
        out = Form.zero(self.source.frame, self.source.degree)
        for k, beta in self.components:
            out = out + L_power(symp, beta, k)
        return out


def primitive_basis(symp: SymplecticStructure, s: int) -> list[Form]:
    """Basis of the primitive ``s``-forms (kernel of Lambda); empty for ``s > n``."""
    def build():
        frame = symp.frame
        if s < 0 or s > symp.n:
            return []
        keys = frame.transverse_keys(s)
        if s < 2:
            return [Form(frame, s, {k: 1}) for k in keys]
        low = frame.transverse_keys(s - 2)
        cols = [_coords(Lambda(symp, Form(frame, s, {k: 1})), low) for k in keys]
        rows = linalg.columns(cols, len(low))
        return [Form(frame, s, dict(zip(keys, v))) for v in linalg.nullspace(rows, len(keys))]
    return symp._memo("primitive_basis", s, build)


def primitive_decompose(symp: SymplecticStructure, phi: Form) -> PrimitiveDecomposition:
    """Decompose a homogeneous transverse form into Lefschetz components.

    Solves ``phi = sum_k L^k beta_k`` with ``beta_k`` ranging over primitive
    forms of degree ``r - 2k``, ``max(0, r - n) <= k <= r // 2``.
    """
    symp._require_transverse(phi, "primitive_decompose")
    n, r = symp.n, phi.degree
    frame = symp.frame
    ks = list(range(max(0, r - n), r // 2 + 1))
    target_keys = frame.transverse_keys(r)
    cols, owners = [], []
    for k in ks:
        for beta in primitive_basis(symp, r - 2 * k):
            cols.append(_coords(L_power(symp, beta, k), target_keys))
            owners.append((k, beta))
    rows = linalg.columns(cols, len(target_keys))
    sol = linalg.solve(rows, _coords(phi, target_keys), len(cols))
    if sol is None:
        raise RuntimeError("Lefschetz decomposition system is inconsistent")
    parts: dict[int, Form] = {k: Form.zero(frame, r - 2 * k) for k in ks}
    for c, (k, beta) in zip(sol, owners):
        if c:
            parts[k] = parts[k] + c * beta
    components = tuple((k, parts[k]) for k in ks if parts[k])
    return PrimitiveDecomposition(phi, components)


def is_primitive(symp: SymplecticStructure, phi: Form) -> bool:
    return not Lambda(symp, phi)
