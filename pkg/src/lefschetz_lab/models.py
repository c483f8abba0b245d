"""Built-in Lie-algebra foliation models.

Every model lists its foliation directions first.  Basis labels keep the
customary names of each algebra, so the Heisenberg model is stored in the
order ``(e3, e1, e2)`` with the centre ``e3`` spanning the Reeb flow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exterior import Form, Frame
from .foliated import LieModel


@dataclass(frozen=True)
class ModelCatalogEntry:
    """A model together with the values the full pipeline must reproduce.

    Expected values, by source:

    * heisenberg_contact -- contact flow: kappa = 0 and phi0 = omega are the
      classical contact-flow facts; the cohomology dimensions follow from
      d = 0 on the basic complex.
    * abelian_cosymplectic -- cosymplectic flow: kappa = 0 and phi0 = 0.
    * sol_hyperbolic -- flow on the hyperbolic torus: nontaut with vanishing
      top basic cohomology; the remaining dimensions were computed by hand
      from d e3* = e1* ^ e3*.
    * kt_product -- Kodaira-Thurston nilmanifold times a circle, foliated by
      the circle.  Chosen so that hard Lefschetz fails in degree 1.
    """

    name: str
    model: LieModel
    expected: dict = field(default_factory=dict)
    description: str = ""


def _model(name, p, n, names, brackets, omega_terms):
    frame = Frame(p, n, tuple(names))
    idx = {label: i for i, label in enumerate(names)}
    br = {}
    for (a, b), row in brackets.items():
        br[idx[a], idx[b]] = {idx[k]: Fraction(c) for k, c in row.items()}
    omega = Form(frame, 2, {(idx[a], idx[b]): Fraction(c) for (a, b), c in omega_terms.items()})
    return LieModel(name, frame, br, omega)


def _heisenberg() -> ModelCatalogEntry:
    model = _model("heisenberg_contact", 1, 1, ["e3", "e1", "e2"],
                   {("e1", "e2"): {"e3": 1}},
                   {("e1", "e2"): -1})
    return ModelCatalogEntry(
        "heisenberg_contact", model,
        expected={
            "kappa": {}, "phi0": {("e1", "e2"): Fraction(-1)}, "phi0_equals_omega": True,
            "taut": True, "H_B": [1, 2, 1], "H_kappa": [1, 2, 1],
            "basic_dims": [1, 2, 1], "hard_lefschetz": (True, True),
        },
        description="contact flow of the Heisenberg group; omega = d e3*")


def _abelian() -> ModelCatalogEntry:
    model = _model("abelian_cosymplectic", 1, 1, ["e1", "e2", "e3"], {},
                   {("e2", "e3"): 1})
    return ModelCatalogEntry(
        "abelian_cosymplectic", model,
        expected={
            "kappa": {}, "phi0": {}, "taut": True, "H_B": [1, 2, 1], "H_kappa": [1, 2, 1],
            "basic_dims": [1, 2, 1], "hard_lefschetz": (True, True),
        },
        description="cosymplectic flow on the 3-torus")


def _sol() -> ModelCatalogEntry:
    model = _model("sol_hyperbolic", 1, 1, ["e2", "e1", "e3"],
                   {("e1", "e2"): {"e2": 1}, ("e1", "e3"): {"e3": -1}},
                   {("e1", "e3"): 1})
    return ModelCatalogEntry(
        "sol_hyperbolic", model,
        expected={
            "kappa": {("e1",): Fraction(1)}, "phi0": {}, "taut": False,
            "H_B": [1, 1, 0], "H_kappa": [0, 0, 0],
            "basic_dims": [1, 2, 1], "hard_lefschetz": (True, True),
        },
        description="suspension of a hyperbolic toral automorphism, foliated by the stable direction")


def _kt() -> ModelCatalogEntry:
    model = _model("kt_product", 1, 2, ["e0", "e1", "e2", "e3", "e4"],
                   {("e1", "e2"): {"e4": 1}},
                   {("e1", "e3"): 1, ("e2", "e4"): 1})
    return ModelCatalogEntry(
        "kt_product", model,
        expected={
            "kappa": {}, "phi0": {}, "taut": True,
            "H_B": [1, 3, 4, 3, 1], "H_kappa": [1, 3, 4, 3, 1],
            "basic_dims": [1, 4, 6, 4, 1], "hard_lefschetz": (False, False),
            "lefschetz_rank_r1": 2,
        },
        description="Kodaira-Thurston nilmanifold times a circle, foliated by the circle")


_BUILDERS = {
    "heisenberg_contact": _heisenberg,
    "abelian_cosymplectic": _abelian,
    "sol_hyperbolic": _sol,
    "kt_product": _kt,
}

CATALOG_NAMES = tuple(_BUILDERS)


def get_model(name: str) -> ModelCatalogEntry:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown model {name!r}; choose from {', '.join(CATALOG_NAMES)}") from None
    return builder()
