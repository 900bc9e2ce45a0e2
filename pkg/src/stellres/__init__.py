"""Stellar resolution: asynchronous computation by term unification.

Submodules:

* terms: first-order terms, substitutions, unification
* constellations: rays, stars, constellations, canonical forms
* parsing: text and JSON formats
* engine: diagram construction and execution
* mll: multiplicative proof structures, correctness, cut elimination
* encodings: graphs, Horn clauses, flows, tile systems, Turing machines
* realisability: tests, pre-orders, orthogonality, types
* kernel: unification kernel (compiled extension or pure fallback)
"""

__version__ = "0.1.0"

__all__ = [
    "terms",
    "constellations",
    "parsing",
    "engine",
    "mll",
    "encodings",
    "realisability",
    "kernel",
    "__version__",
]
