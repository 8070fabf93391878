"""Statements about the monoid operation, the topology and convergent products."""

from app.statements import StatementRegistry

StatementRegistry.register("identity", "the identity is neutral")
StatementRegistry.register("commutative", "the operation is commutative")
StatementRegistry.register("associative", "the operation is associative")
StatementRegistry.register("cancellative", "a*b = a*c implies b = c")
StatementRegistry.register("reduced", "the identity is the only unit")
StatementRegistry.register(
    "hausdorff",
    "distinct elements are separated by a basic neighbourhood",
    counterexamples=("harmonic",),
)
StatementRegistry.register(
    "normal-form", "a product equals the product of its multiset normal form"
)
StatementRegistry.register(
    "finite-decimation",
    "removing finitely many factors keeps a product convergent",
    counterexamples=("restricted",),
)
StatementRegistry.register(
    "arbitrary-decimation",
    "every sub-product of a convergent product converges",
    counterexamples=("qplus", "restricted"),
)
StatementRegistry.register(
    "dissociation",
    "expanding each factor of a convergent product into a convergent product "
    "and merging gives a convergent product with the same limit",
    counterexamples=("integers-demo",),
)
StatementRegistry.register("atoms-irreducible", "the window atoms are irreducible")
StatementRegistry.register(
    "atoms-prime",
    "every atom is prime",
    counterexamples=("restricted",),
)
StatementRegistry.register(
    "atoms-topologically-prime",
    "every atom that divides a convergent product divides one of its factors",
    counterexamples=("restricted",),
)
StatementRegistry.register("prime-irreducible", "a prime element is irreducible")
StatementRegistry.register(
    "topological-irreducibility",
    "an irreducible element is not the limit of a convergent product of other factors",
    counterexamples=("restricted",),
)

# Instance-specific statements
StatementRegistry.register(
    "free-factorial", "pi is a bijection between exponent maps and elements of the free window"
)
StatementRegistry.register(
    "discrete-products", "in a discrete monoid only products with finitely many factors converge"
)
StatementRegistry.register("geometric-sum", "1/2 + 1/4 + 1/8 + ... = 1")
StatementRegistry.register("atomless", "Q+ has no atoms")
StatementRegistry.register("harmonic-closure", "e_0 lies in the closure of {e_1, e_2, ...}")
StatementRegistry.register(
    "harmonic-span",
    "e_0 is the limit of some product of e_1, e_2, ...",
    counterexamples=("harmonic",),
)
StatementRegistry.register(
    "almost-discrete", "every convergent product has finitely many non-identity factors"
)
StatementRegistry.register(
    "not-discrete", "every truncated series is the limit of its polynomial truncations"
)
StatementRegistry.register("all-ones", "the product of all chi_i converges to f = (1, 1, ...)")
StatementRegistry.register("window-atoms", "the atoms in the window are chi_0, ..., chi_{N-1} and f")
StatementRegistry.register(
    "chi-not-divisor", "chi_0 does not divide f although f is the product of all chi_i"
)
StatementRegistry.register("f-irreducible", "f is an atom")
StatementRegistry.register("f-prime", "f is prime for products of at most max_factors factors")
