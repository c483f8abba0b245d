from fractions import Fraction

from lefschetz_lab.exterior import Form


def by_labels(model, terms: dict) -> Form:
    """Form from ``{("e1", "e3"): c}`` using the model's basis labels."""
    names = model.frame.names
    degrees = {len(k) for k in terms} or {0}
    assert len(degrees) == 1
    table = {tuple(names.index(x) for x in k): Fraction(c) for k, c in terms.items()}
    return Form(model.frame, degrees.pop(), table)
