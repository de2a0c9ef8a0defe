"""ramcoh: exact-arithmetic cross-checks for local-field ramification,
p-adic trace estimates, torsion-exponent bookkeeping, integral Lie-algebra
cohomology, Witt vectors, and lattice buildings."""

__version__ = "0.1.0"
