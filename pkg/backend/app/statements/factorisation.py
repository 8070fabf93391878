"""Statements about the topological factorisation monoid Z(H)."""

from app.statements import StatementRegistry

StatementRegistry.register("z-homomorphism", "pi_bar(f + g) = pi_bar(f) * pi_bar(g)")
StatementRegistry.register(
    "z-order-ideal",
    "Z(H) is an order ideal of N^A(H)",
    counterexamples=("restricted",),
)
StatementRegistry.register(
    "z-divisibility-order",
    "v <= w componentwise iff pi_bar(v) divides pi_bar(w)",
    counterexamples=("restricted",),
)
StatementRegistry.register("z-atoms", "the atoms of Z(H) are the coordinate maps chi(a)")
StatementRegistry.register("z-discrete", "Z(H) is discrete when H is")
StatementRegistry.register(
    "z-inverse-continuous",
    "convergence of pi_bar-images implies convergence in Z(H)",
    counterexamples=("harmonic",),
)
StatementRegistry.register(
    "z-xi-section", "Xi is a section of the factorisation homomorphism of Z(Z(H))"
)
StatementRegistry.register(
    "unique-factorisation",
    "factorisations into atoms are unique up to order",
    counterexamples=("restricted",),
)
StatementRegistry.register(
    "z-unique-factorisation", "Z(H) is topologically prime factorial"
)
StatementRegistry.register(
    "z-equivalence-chain", "in Z(H) atoms, primes and topological primes coincide"
)
