"""Seeded randomized checks of the operator identities.

Every identity is an exact equality between forms (or scalars).  Inputs are
pseudo-random rational forms: each basis element is kept with probability
1/2 and gets a coefficient uniform on {-3, ..., 3}.  The same seed always
produces the same inputs and the same report.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import sl2
from .exterior import Form, Multivector, _Graded, contract, integrate, wedge
from .foliated import LieModel, Operators, validate_model

COEFFS = tuple(range(-3, 4))


def random_element(cls, frame, keys: Sequence, degree: int, rng: random.Random) -> _Graded:
    table = {}
    for k in keys:
        if rng.random() < 0.5:
            table[k] = rng.choice(COEFFS)
    return cls(frame, degree, table)


def random_combination(basis: Sequence[Form], frame, degree: int, rng: random.Random) -> Form:
    out = Form.zero(frame, degree)
    for b in basis:
        if rng.random() < 0.5:
            out = out + rng.choice(COEFFS) * b
    return out


class Context:
    """Random-input factory and operator bundle for one model."""

    def __init__(self, model: LieModel, ops: Operators | None = None):
        self.model = model
        self.frame = model.frame
        self.n = model.n
        self.ops = ops or Operators(model)
        self.symp = self.ops.symp
        self.complex = self.ops.complex
        self.mc = self.ops.mc
        self.unimodular = validate_model(model).unimodular

    def tform(self, r: int, rng) -> Form:
        return random_element(Form, self.frame, self.frame.transverse_keys(r), r, rng)

    def bform(self, r: int, rng) -> Form:
        return random_combination(self.complex.basis(r), self.frame, r, rng)

    def form(self, r: int, rng) -> Form:
        return random_element(Form, self.frame, self.frame.keys(r), r, rng)

    def tvector(self, rng) -> Multivector:
        return random_element(Multivector, self.frame, self.frame.transverse_keys(1), 1, rng)

    def tmultivector(self, r: int, rng) -> Multivector:
        return random_element(Multivector, self.frame, self.frame.transverse_keys(r), r, rng)


@dataclass(frozen=True)
class Identity:
    name: str
    formula: str
    sample: Callable[[Context, random.Random], tuple]
    holds: Callable[..., bool]
    gate: str | None = None


@dataclass
class IdentityResult:
    name: str
    formula: str
    status: str
    samples: int = 0
    reason: str = ""
    counterexample: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {"name": self.name, "formula": self.formula, "status": self.status,
               "samples": self.samples}
        if self.reason:
            out["reason"] = self.reason
        if self.counterexample:
            out["counterexample"] = self.counterexample
        return out


def _deg(ctx: Context, rng, lo: int = 0, hi: int | None = None) -> int:
    hi = 2 * ctx.n if hi is None else hi
    return rng.randint(lo, max(lo, hi))


def _one_t(lo=0, hi=None):
    def sample(ctx, rng):
        return (ctx.tform(_deg(ctx, rng, lo, hi if hi is None else hi(ctx)), rng),)
    return sample


def _one_b(lo=0, hi=None):
    def sample(ctx, rng):
        return (ctx.bform(_deg(ctx, rng, lo, hi if hi is None else hi(ctx)), rng),)
    return sample


def _pair_t(ctx, rng):
    r = _deg(ctx, rng)
    return ctx.tform(r, rng), ctx.tform(r, rng)


def _pair_t_any(ctx, rng):
    return ctx.tform(_deg(ctx, rng), rng), ctx.tform(_deg(ctx, rng), rng)


def _vector_form(ctx, rng):
    return ctx.tvector(rng), ctx.tform(_deg(ctx, rng, 0, 2 * ctx.n - 1), rng)


def _wedge_adjoint_sample(ctx, rng):
    r = _deg(ctx, rng, 1)
    return ctx.tform(1, rng), ctx.tform(r - 1, rng), ctx.tform(r, rng)


def _adjoint_sample(ctx, rng):
    r = _deg(ctx, rng, 1)
    return ctx.bform(r - 1, rng), ctx.bform(r, rng)


def _multivector_sample(ctx, rng):
    r = _deg(ctx, rng)
    return ctx.tmultivector(r, rng), ctx.tform(r, rng)


def _sign(r: int) -> int:
    return -1 if r % 2 else 1


def _comm(f, g):
    return lambda x: f(g(x)) - g(f(x))


def _anti(f, g):
    return lambda x: f(g(x)) + g(f(x))


def _op_identity(name, formula, lhs, rhs, gate=None, sampler=None):
    """Identity between two operators evaluated on one random basic form."""
    def holds(ctx, phi):
        return lhs(ctx.ops)(phi) == rhs(ctx.ops)(phi)
    return Identity(name, formula, sampler or _one_b(), holds, gate)


def _primitive_criterion(ctx, phi):
    n, r = ctx.n, phi.degree
    symp = ctx.symp
    prim = not sl2.Lambda(symp, phi)
    killed = not sl2.L_power(symp, phi, n - r + 1)
    if prim != killed:
        return False
    for k, beta in sl2.primitive_decompose(symp, phi).components:
        s = beta.degree
        if sl2.L_power(symp, beta, n - s + 1):
            return False
    return True


def _primitive_roundtrip(ctx, phi):
    dec = sl2.primitive_decompose(ctx.symp, phi)
    lo = max(0, phi.degree - ctx.n)
    if any(k < lo or k > phi.degree // 2 for k, _ in dec.components):
        return False
    return dec.reconstruct(ctx.symp) == phi and all(
        not sl2.Lambda(ctx.symp, b) for _, b in dec.components)


def _basic_closure(ctx, phi):
    ops = ctx.ops
    return all(ctx.complex.contains(f(phi)) for f in (ops.d, ops.star, ops.L, ops.Lambda))


def _integral(ctx, a, b):
    chi = ctx.mc.chi
    mu = wedge(ctx.symp.nu, chi)
    return integrate(wedge(wedge(a, ctx.ops.star(b)), chi), mu)


def _pointwise() -> list[Identity]:
    S = lambda ctx: ctx.symp
    return [
        Identity("star_involution", "star(star(phi)) = phi", _one_t(),
                 lambda ctx, phi: S(ctx).star(S(ctx).star(phi)) == phi),
        Identity("star_pairing", "phi ^ star(psi) = omega(phi, psi) nu", _pair_t,
                 lambda ctx, a, b: wedge(a, S(ctx).star(b)) == S(ctx).omega_pair(a, b) * S(ctx).nu),
        Identity("star_of_flat_wedge", "star(X^flat ^ phi) = (-1)^r i(X) star(phi)", _vector_form,
                 lambda ctx, X, phi: S(ctx).star(wedge(S(ctx).flat(X), phi))
                 == _sign(phi.degree) * contract(X, S(ctx).star(phi))),
        Identity("wedge_adjoint", "omega(alpha ^ phi, psi) = -omega(phi, i(alpha^sharp) psi)",
                 _wedge_adjoint_sample,
                 lambda ctx, al, phi, psi: S(ctx).omega_pair(wedge(al, phi), psi)
                 == -S(ctx).omega_pair(phi, contract(S(ctx).sharp(al), psi))),
        Identity("pairing_parity", "omega(phi, psi) = (-1)^r omega(psi, phi)", _pair_t,
                 lambda ctx, a, b: S(ctx).omega_pair(a, b) == _sign(a.degree) * S(ctx).omega_pair(b, a)),
        Identity("interior_pairing", "i(phi^sharp) psi = omega(psi, phi)", _pair_t,
                 lambda ctx, a, b: contract(S(ctx).sharp(a), b).coefficient(()) == S(ctx).omega_pair(b, a)),
        Identity("flat_sharp_inverse", "sharp(flat(P)) = P and flat(sharp(phi)) = phi",
                 _multivector_sample,
                 lambda ctx, P, phi: S(ctx).sharp(S(ctx).flat(P)) == P and S(ctx).flat(S(ctx).sharp(phi)) == phi),
        Identity("graded_commutativity", "phi ^ psi = (-1)^(rs) psi ^ phi", _pair_t_any,
                 lambda ctx, a, b: wedge(a, b) == _sign(a.degree * b.degree) * wedge(b, a)),
        Identity("Lambda_is_star_L_star", "Lambda = star L star", _one_t(),
                 lambda ctx, phi: sl2.Lambda(S(ctx), phi) == S(ctx).star(sl2.L(S(ctx), S(ctx).star(phi)))),
        Identity("L_star_is_star_Lambda", "L star = star Lambda", _one_t(),
                 lambda ctx, phi: sl2.L(S(ctx), S(ctx).star(phi)) == S(ctx).star(sl2.Lambda(S(ctx), phi))),
        Identity("Lambda_adjoint_of_L", "omega(L phi, psi) = omega(phi, Lambda psi)",
                 lambda ctx, rng: (lambda r: (ctx.tform(r, rng), ctx.tform(r + 2, rng)))(
                     _deg(ctx, rng, 0, max(0, 2 * ctx.n - 2))),
                 lambda ctx, a, b: S(ctx).omega_pair(sl2.L(S(ctx), a), b) == S(ctx).omega_pair(a, sl2.Lambda(S(ctx), b))
                 if a.degree + 2 <= 2 * ctx.n else True),
        Identity("sl2_Lambda_L", "[Lambda, L] = A", _one_t(),
                 lambda ctx, phi: _comm(lambda x: sl2.Lambda(S(ctx), x), lambda x: sl2.L(S(ctx), x))(phi)
                 == sl2.A(S(ctx), phi)),
        Identity("sl2_A_L", "[A, L] = -2 L", _one_t(),
                 lambda ctx, phi: _comm(lambda x: sl2.A(S(ctx), x), lambda x: sl2.L(S(ctx), x))(phi)
                 == -2 * sl2.L(S(ctx), phi)),
        Identity("sl2_A_Lambda", "[A, Lambda] = 2 Lambda", _one_t(),
                 lambda ctx, phi: _comm(lambda x: sl2.A(S(ctx), x), lambda x: sl2.Lambda(S(ctx), x))(phi)
                 == 2 * sl2.Lambda(S(ctx), phi)),
        Identity("L_interior", "[L, i(X)] = -eps(X^flat)", _vector_form,
                 lambda ctx, X, phi: sl2.L(S(ctx), contract(X, phi)) - contract(X, sl2.L(S(ctx), phi))
                 == -wedge(S(ctx).flat(X), phi)),
        Identity("Lambda_wedge", "[Lambda, eps(X^flat)] = -i(X)", _vector_form,
                 lambda ctx, X, phi: sl2.Lambda(S(ctx), wedge(S(ctx).flat(X), phi))
                 - wedge(S(ctx).flat(X), sl2.Lambda(S(ctx), phi)) == -contract(X, phi)),
        Identity("primitive_criterion", "Lambda phi = 0 iff L^(n-r+1) phi = 0 (r <= n)",
                 _one_t(0, lambda ctx: ctx.n), _primitive_criterion),
        Identity("primitive_roundtrip", "phi = sum L^k beta_k with Lambda beta_k = 0",
                 _one_t(), _primitive_roundtrip),
    ]


def _model_identities() -> list[Identity]:
    iso, closed, uni = "isoparametric", "d_kappa_zero", "unimodular"
    O = _op_identity
    neg = lambda f: (lambda x: -f(x))
    return [
        Identity("d_squared", "d d = 0 on invariant forms",
                 lambda ctx, rng: (ctx.form(_deg(ctx, rng, 0, ctx.frame.m), rng),),
                 lambda ctx, phi: not ctx.ops.d(ctx.ops.d(phi))),
        Identity("basic_closure", "d, star, L, Lambda preserve basic forms", _one_b(), _basic_closure),
        O("d_Lambda_commutator", "[d_B, Lambda] = delta_T",
          lambda o: _comm(o.d, o.Lambda), lambda o: o.delta_T),
        O("dB_deltaT_anticommute", "d_B delta_T + delta_T d_B = 0",
          lambda o: _anti(o.d, o.delta_T), lambda o: (lambda x: Form.zero(x.frame, 0))),
        O("L_dB_commute", "[L, d_B] = 0", lambda o: _comm(o.L, o.d), lambda o: (lambda x: Form.zero(x.frame, 0))),
        O("Lambda_deltaT_commute", "[Lambda, delta_T] = 0",
          lambda o: _comm(o.Lambda, o.delta_T), lambda o: (lambda x: Form.zero(x.frame, 0))),
        O("L_deltaT", "[L, delta_T] = -d_B", lambda o: _comm(o.L, o.delta_T), lambda o: neg(o.d)),
        O("A_dB", "[A, d_B] = -d_B", lambda o: _comm(o.A, o.d), lambda o: neg(o.d)),
        O("A_deltaB", "[A, delta_B] = delta_B", lambda o: _comm(o.A, o.delta_B), lambda o: o.delta_B, iso),
        O("L_eps_kappa", "[L, eps(kappa)] = 0", lambda o: _comm(o.L, o.eps_kappa),
          lambda o: (lambda x: Form.zero(x.frame, 0)), iso),
        O("Lambda_i_kappa", "[Lambda, i(kappa^sharp)] = 0", lambda o: _comm(o.Lambda, o.i_kappa_sharp),
          lambda o: (lambda x: Form.zero(x.frame, 0)), iso),
        O("deltaB_split", "delta_B = delta_T - i(kappa^sharp)", lambda o: o.delta_B,
          lambda o: (lambda x: o.delta_T(x) - o.i_kappa_sharp(x)), iso),
        O("deltaT_eps_kappa", "delta_T eps(kappa) = -star d_B i(kappa^sharp) star",
          lambda o: (lambda x: o.delta_T(o.eps_kappa(x))),
          lambda o: (lambda x: -o.star(o.d(o.i_kappa_sharp(o.star(x))))), iso),
        O("eps_kappa_deltaT", "eps(kappa) delta_T = -star i(kappa^sharp) d_B star",
          lambda o: (lambda x: o.eps_kappa(o.delta_T(x))),
          lambda o: (lambda x: -o.star(o.i_kappa_sharp(o.d(o.star(x))))), iso),
        O("deltaT_i_kappa_anticommute", "delta_T i(kappa^sharp) + i(kappa^sharp) delta_T = 0",
          lambda o: _anti(o.delta_T, o.i_kappa_sharp), lambda o: (lambda x: Form.zero(x.frame, 0)), closed),
        O("deltaB_squared", "delta_B delta_B = 0", lambda o: (lambda x: o.delta_B(o.delta_B(x))),
          lambda o: (lambda x: Form.zero(x.frame, 0)), closed),
        O("theta_kappa_sharp", "delta_T eps(kappa) + eps(kappa) delta_T = -star theta(kappa^sharp) star",
          lambda o: _anti(o.delta_T, o.eps_kappa),
          lambda o: (lambda x: -o.star(o.theta_kappa_sharp(o.star(x)))), iso),
        O("laplacian_B", "d_B delta_B + delta_B d_B = -theta(kappa^sharp)",
          lambda o: _anti(o.d, o.delta_B), lambda o: neg(o.theta_kappa_sharp), iso),
        O("L_deltaB", "[L, delta_B] = -d_B + eps(kappa)", lambda o: _comm(o.L, o.delta_B),
          lambda o: (lambda x: o.eps_kappa(x) - o.d(x)), iso),
        O("A_dkappa", "[A, d_kappa] = -d_kappa", lambda o: _comm(o.A, o.d_kappa), lambda o: neg(o.d_kappa), iso),
        O("L_deltakappa", "[L, delta_kappa] = -d_kappa", lambda o: _comm(o.L, o.delta_kappa),
          lambda o: neg(o.d_kappa), iso),
        O("A_deltakappa", "[A, delta_kappa] = delta_kappa", lambda o: _comm(o.A, o.delta_kappa),
          lambda o: o.delta_kappa, iso),
        O("dkappa_Lambda", "[d_kappa, Lambda] = delta_kappa", lambda o: _comm(o.d_kappa, o.Lambda),
          lambda o: o.delta_kappa, iso),
        O("L_dkappa", "[L, d_kappa] = 0", lambda o: _comm(o.L, o.d_kappa),
          lambda o: (lambda x: Form.zero(x.frame, 0)), iso),
        O("Lambda_deltakappa", "[Lambda, delta_kappa] = 0", lambda o: _comm(o.Lambda, o.delta_kappa),
          lambda o: (lambda x: Form.zero(x.frame, 0)), iso),
        O("dkappa_squared", "d_kappa d_kappa = 0", lambda o: (lambda x: o.d_kappa(o.d_kappa(x))),
          lambda o: (lambda x: Form.zero(x.frame, 0)), closed),
        O("deltakappa_squared", "delta_kappa delta_kappa = 0",
          lambda o: (lambda x: o.delta_kappa(o.delta_kappa(x))),
          lambda o: (lambda x: Form.zero(x.frame, 0)), closed),
        O("laplacian_kappa", "d_kappa delta_kappa + delta_kappa d_kappa = 0",
          lambda o: _anti(o.d_kappa, o.delta_kappa), lambda o: (lambda x: Form.zero(x.frame, 0)), closed),
        Identity("adjoint_dB", "int omega(d_B phi, psi) mu = int omega(phi, delta_B psi) mu",
                 _adjoint_sample,
                 lambda ctx, phi, psi: _integral(ctx, ctx.ops.d(phi), psi)
                 == _integral(ctx, phi, ctx.ops.delta_B(psi)), uni),
        Identity("adjoint_dkappa", "int omega(d_kappa phi, psi) mu = int omega(phi, delta_kappa psi) mu",
                 _adjoint_sample,
                 lambda ctx, phi, psi: _integral(ctx, ctx.ops.d_kappa(phi), psi)
                 == _integral(ctx, phi, ctx.ops.delta_kappa(psi)), uni),
    ]


POINTWISE = _pointwise()
MODEL = _model_identities()
ALL_IDENTITIES = POINTWISE + MODEL


def gate_reason(ctx: Context, gate: str | None) -> str:
    """Empty string when the gate is open, otherwise why the identity is skipped."""
    if gate is None:
        return ""
    if not ctx.mc.is_basic_kappa:
        return "not isoparametric"
    if gate == "d_kappa_zero" and not ctx.mc.d_kappa_zero:
        return "d kappa != 0"
    if gate == "unimodular" and not ctx.unimodular:
        return "not unimodular"
    return ""


def _drop_term(x: _Graded, key) -> _Graded:
    table = dict(x.coeffs)
    del table[key]
    return type(x)(x.frame, x.degree, table)


def minimize(ctx: Context, identity: Identity, inputs: tuple) -> tuple:
    """Greedily drop terms from the inputs while the identity still fails."""
    current = list(inputs)
    changed = True
    while changed:
        changed = False
        for i, x in enumerate(current):
            for key in list(x.coeffs):
                trial = current[:]
                trial[i] = _drop_term(x, key)
                try:
                    fails = not identity.holds(ctx, *trial)
                except Exception:
                    fails = False
                if fails:
                    current = trial
                    x = trial[i]
                    changed = True
    return tuple(current)


def run_identities(model: LieModel, seed: int = 0, count: int = 100,
                   identities: Sequence[Identity] | None = None,
                   ctx: Context | None = None) -> list[IdentityResult]:
    ctx = ctx or Context(model)
    rng = random.Random(seed)
    results = []
    for ident in identities or ALL_IDENTITIES:
        reason = gate_reason(ctx, ident.gate)
        if reason:
            results.append(IdentityResult(ident.name, ident.formula, "skipped", 0, reason))
            continue
        result = IdentityResult(ident.name, ident.formula, "pass", 0)
        for _ in range(count):
            inputs = ident.sample(ctx, rng)
            result.samples += 1
            if not ident.holds(ctx, *inputs):
                small = minimize(ctx, ident, inputs)
                result.status = "fail"
                result.counterexample = [str(x) for x in small]
                break
        results.append(result)
    return results


def summarize(results: Sequence[IdentityResult]) -> dict:
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in results:
        counts[r.status] += 1
    return counts
