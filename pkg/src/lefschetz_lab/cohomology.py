"""Basic and modified basic cohomology of a model, harmonic spaces, and the
equivalence between hard Lefschetz and harmonic representatives."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .exterior import Form
from .foliated import (BasicClosureError, LieModel, Operators, basic_basis,
                       mean_curvature)
from .linalg import DegreeOperator


class PreconditionError(ValueError):
    """The model does not meet the hypotheses of the requested computation."""


DIFFERENTIALS = {"dB": "dB", "dKappa": "dKappa"}
HARMONIC_PAIRS = {"SB": ("dB", "deltaB"), "ST": ("dB", "deltaT"), "SK": ("dKappa", "deltaKappa")}


@dataclass(frozen=True)
class CohomologyGroup:
    kind: str
    degree: int
    dimension: int
    representatives: tuple[Form, ...]
    kernel_dim: int
    image_dim: int


@dataclass(frozen=True)
class HarmonicSpace:
    kind: str
    degree: int
    basis: tuple[Form, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass
class LefschetzStep:
    r: int
    matrix: DegreeOperator
    source_dim: int
    target_dim: int
    rank: int

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim


@dataclass
class LefschetzReport:
    steps: list[LefschetzStep]
    representatives: dict[int, list[Form | None]]
    condition1: bool
    condition2: bool
    missing: list[tuple[int, int]] = field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        return self.condition1 == self.condition2


class CohomologyEngine:
    """All cohomological computations for one model.

    Matrices are assembled lazily from :class:`Operators`; results are pure
    functions of the model.
    """

    def __init__(self, model: LieModel):
        self.model = model
        self.complex = basic_basis(model)
        self.mc = mean_curvature(model, self.complex)
        self.ops = Operators(model, self.complex, self.mc)
        self.n = model.n

    # ------------------------------------------------------------------

    def matrix(self, kind: str, r: int) -> DegreeOperator:
        return self.ops.matrix(kind, r)

    def _differential(self, kind: str, r: int) -> DegreeOperator | None:
        if r < 0 or r > 2 * self.n:
            return None
        return self.matrix(kind, r)

    def _require_kind(self, kind: str):
        if kind not in DIFFERENTIALS:
            raise ValueError(f"unknown cohomology kind {kind!r}")
        if kind == "dKappa":
            if not self.mc.is_basic_kappa:
                raise PreconditionError("not isoparametric: mean curvature form is not basic")
            if not self.mc.d_kappa_zero:
                raise PreconditionError("d kappa != 0, so d_kappa does not square to zero")

    def check_square_zero(self, kind: str) -> bool:
        for r in range(2 * self.n - 1):
            if not (self.matrix(kind, r + 1) @ self.matrix(kind, r)).is_zero():
                return False
        return True

    def _cocycles_and_boundaries(self, kind: str, r: int):
        dim = self.complex.dim(r)
        D = self._differential(kind, r)
        kernel = linalg.nullspace(D.rows(), dim) if D.target_dim else [
            [Fraction(int(i == j)) for i in range(dim)] for j in range(dim)]
        prev = self._differential(kind, r - 1)
        image = []
        if prev is not None and prev.source_dim:
            image = [list(c) for c in zip(*prev.matrix)] if prev.target_dim else []
        return kernel, image

    def cohomology(self, kind: str, r: int) -> CohomologyGroup:
        """Kernel modulo image with representatives complementing the image."""
        self._require_kind(kind)
        if not self.check_square_zero(kind):
            raise PreconditionError(f"{kind} does not square to zero")
        dim = self.complex.dim(r)
        kernel, image = self._cocycles_and_boundaries(kind, r)
        im_rank = linalg.rank(linalg.columns(image, dim), len(image)) if image else 0
        stacked = image + kernel
        _, pivots = linalg.rref(linalg.columns(stacked, dim), len(stacked)) if stacked and dim else ([], ())
        reps = [self.complex.from_coords(r, stacked[j]) for j in pivots if j >= len(image)]
        return CohomologyGroup(kind, r, len(reps), tuple(reps), len(kernel), im_rank)

    def dims(self, kind: str) -> list[int]:
        return [self.cohomology(kind, r).dimension for r in range(2 * self.n + 1)]

    def class_coordinates(self, group: CohomologyGroup, phi: Form) -> list[Fraction]:
        """Coordinates of the class of the cocycle ``phi`` in ``group``'s representatives."""
        r = group.degree
        D = self._differential(group.kind, r)
        v = self.complex.coords(phi)
        if D.target_dim and any(D.apply(v)):
            raise ValueError(f"form is not {group.kind}-closed")
        if not group.dimension:
            return []
        _, image = self._cocycles_and_boundaries(group.kind, r)
        cols = [self.complex.coords(rep) for rep in group.representatives] + image
        sol = linalg.solve(linalg.columns(cols, len(v)), v, len(cols))
        if sol is None:
            raise RuntimeError("cocycle not in span of representatives and boundaries")
        return sol[:group.dimension]

    # ------------------------------------------------------------------

    def lefschetz_on_cohomology(self, r: int, kind: str = "dKappa") -> LefschetzStep:
        """Matrix of ``[phi] -> [omega^r ^ phi]`` from degree ``n - r`` to ``n + r``."""
        if not 0 <= r <= self.n:
            raise ValueError(f"r must lie in 0..{self.n}, got {r}")
        src = self.cohomology(kind, self.n - r)
        tgt = self.cohomology(kind, self.n + r)
        cols = []
        for rep in src.representatives:
            img = rep
            for _ in range(r):
                img = self.ops.L(img)
            cols.append(self.class_coordinates(tgt, img))
        op = DegreeOperator.from_columns(f"L^{r}", self.n - r, self.n + r, cols, tgt.dimension)
        return LefschetzStep(r, op, src.dimension, tgt.dimension, op.rank)

    def harmonic_space(self, kind: str, r: int) -> HarmonicSpace:
        if kind not in HARMONIC_PAIRS:
            raise ValueError(f"unknown harmonic kind {kind!r}")
        d_kind, delta_kind = HARMONIC_PAIRS[kind]
        dim = self.complex.dim(r)
        rows = self.matrix(d_kind, r).rows() + self.matrix(delta_kind, r).rows()
        basis = linalg.nullspace(rows, dim) if rows else [
            [Fraction(int(i == j)) for i in range(dim)] for j in range(dim)]
        return HarmonicSpace(kind, r, tuple(self.complex.from_coords(r, v) for v in basis))

    def harmonic_lefschetz(self, kind: str, r: int) -> dict:
        """Rank of ``L^r`` between the harmonic spaces of degrees ``n - r`` and ``n + r``."""
        src = self.harmonic_space(kind, self.n - r)
        tgt = self.harmonic_space(kind, self.n + r)
        tdim = self.complex.dim(self.n + r)
        tgt_rows = linalg.columns([self.complex.coords(b) for b in tgt.basis], tdim)
        images = []
        into = True
        for b in src.basis:
            img = b
            for _ in range(r):
                img = self.ops.L(img)
            v = self.complex.coords(img)
            images.append(v)
            if linalg.solve(tgt_rows, v, tgt.dimension) is None:
                into = False
        rank = linalg.rank(linalg.columns(images, tdim), len(images)) if images else 0
        return {"r": r, "source_dim": src.dimension, "target_dim": tgt.dimension,
                "rank": rank, "maps_into": into}

    def harmonic_representative(self, phi: Form) -> Form | None:
        """A form ``phi - d_kappa eta`` killed by ``delta_kappa``, or None."""
        self._require_kind("dKappa")
        r = phi.degree
        v = self.complex.coords(phi)
        D = self.matrix("dKappa", r)
        if D.target_dim and any(D.apply(v)):
            raise ValueError("form is not d_kappa-closed")
        if r == 0:
            return phi
        delta = self.matrix("deltaKappa", r)
        rhs = delta.apply(v)
        if not any(rhs):
            return phi
        dk = self.matrix("dKappa", r - 1)
        system = delta @ dk
        eta = linalg.solve(system.rows(), rhs, system.source_dim)
        if eta is None:
            return None
        return phi - self.complex.from_coords(r, dk.apply(eta))

    # ------------------------------------------------------------------

    def sl2_closure(self) -> dict[str, bool]:
        """Whether star, L and Lambda map basic forms to basic forms."""
        out = {}
        for name, fn in (("star", self.ops.star), ("L", self.ops.L), ("Lambda", self.ops.Lambda)):
            out[name] = all(self.complex.contains(fn(b))
                            for r in range(2 * self.n + 1) for b in self.complex.basis(r))
        return out

    def hard_lefschetz_preconditions(self) -> list[str]:
        problems = []
        if not self.mc.is_basic_kappa:
            problems.append("not isoparametric (not tense for the given metric)")
        elif not self.mc.d_kappa_zero:
            problems.append("d kappa != 0")
        closure = self.sl2_closure()
        bad = [k for k, ok in closure.items() if not ok]
        if bad:
            problems.append("basic forms not closed under " + ", ".join(bad))
        return problems

    def hard_lefschetz_check(self) -> LefschetzReport:
        """Evaluate both sides of the hard Lefschetz / harmonic equivalence."""
        problems = self.hard_lefschetz_preconditions()
        if problems:
            raise PreconditionError("; ".join(problems))
        steps = [self.lefschetz_on_cohomology(r) for r in range(self.n + 1)]
        reps: dict[int, list[Form | None]] = {}
        missing = []
        for r in range(2 * self.n + 1):
            group = self.cohomology("dKappa", r)
            reps[r] = [self.harmonic_representative(c) for c in group.representatives]
            missing += [(r, i) for i, h in enumerate(reps[r]) if h is None]
        return LefschetzReport(steps, reps, condition1=not missing,
                               condition2=all(s.surjective for s in steps), missing=missing)

    def tautness_check(self) -> bool:
        """True iff kappa is d_B-exact in the basic complex."""
        if not self.mc.is_basic_kappa:
            raise PreconditionError("not isoparametric: mean curvature form is not basic")
        kappa = self.complex.coords(self.mc.kappa)
        D = self.matrix("dB", 0)
        return linalg.solve(D.rows(), kappa, D.source_dim) is not None

    def even_betti_check(self) -> dict:
        taut = self.mc.is_basic_kappa and self.tautness_check()
        dims = self.dims("dB")
        entries = [{"degree": 2 * r, "dim": dims[2 * r], "nonzero": dims[2 * r] > 0}
                   for r in range(self.n + 1)]
        return {"taut": taut, "asserted": taut, "entries": entries,
                "holds": all(e["nonzero"] for e in entries) if taut else None}

    def adjointness(self, pair: str = "dB") -> bool:
        """Symplectic adjointness of ``d`` and its codifferential over all basis pairs.

        Both sides are integrals of top-degree forms against nu ^ chi, so the
        check is only meaningful on unimodular models.
        """
        from .exterior import integrate, wedge
        d_kind, delta_kind = {"dB": ("dB", "deltaB"), "dKappa": ("dKappa", "deltaKappa")}[pair]
        d_fn, delta_fn = self.ops.by_kind(d_kind), self.ops.by_kind(delta_kind)
        chi = self.mc.chi
        mu = wedge(self.ops.symp.nu, chi)
        star = self.ops.star
        for r in range(2 * self.n):
            for phi in self.complex.basis(r):
                dphi = d_fn(phi)
                for psi in self.complex.basis(r + 1):
                    lhs = integrate(wedge(wedge(dphi, star(psi)), chi), mu)
                    rhs = integrate(wedge(wedge(phi, star(delta_fn(psi))), chi), mu)
                    if lhs != rhs:
                        return False
        return True
