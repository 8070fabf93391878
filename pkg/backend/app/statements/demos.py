"""Counterexample demos: name -> (instance kind, statements exercised)."""

from app.statements import StatementRegistry

DEMOS: dict[str, tuple[str, tuple[str, ...]]] = {
    "qplus-decimation": ("qplus", ("geometric-sum", "finite-decimation", "arbitrary-decimation")),
    "harmonic-closure": ("harmonic", ("harmonic-closure", "harmonic-span")),
    "restricted-order-ideal": ("restricted", ("all-ones", "z-order-ideal")),
    "restricted-prime-not-topprime": (
        "restricted",
        ("f-irreducible", "f-prime", "atoms-topologically-prime", "chi-not-divisor"),
    ),
    "integers-dissociation": ("integers-demo", ("dissociation",)),
    "series-almost-discrete": ("series", ("almost-discrete", "not-discrete")),
    "zh-inverse-not-continuous": ("harmonic", ("z-inverse-continuous",)),
}

# Every cited statement must be registered.
for _kind, _names in DEMOS.values():
    for _name in _names:
        StatementRegistry.get(_name)
