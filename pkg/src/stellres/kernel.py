"""Kernel backend selection.

Imports the compiled unification kernel when it is available and falls back
to the pure-Python twin otherwise. STELLRES_PURE=1 forces the fallback, which
is how the twins are benchmarked and cross-tested against each other.
"""

import os

if os.environ.get("STELLRES_PURE"):
    from stellres import _kernel_py as _impl
else:
    try:
        from stellres import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from stellres import _kernel_py as _impl

VAR = _impl.VAR
walk = _impl.walk
occurs = _impl.occurs
unify = _impl.unify
resolve = _impl.resolve
solve_eqs = _impl.solve_eqs
walk_tagged = _impl.walk_tagged
occurs_tagged = _impl.occurs_tagged
unify_tagged = _impl.unify_tagged
resolve_tagged = _impl.resolve_tagged
matchable = _impl.matchable
solve_tagged_eqs = _impl.solve_tagged_eqs


def backend_name() -> str:
    return "compiled" if _impl.__name__.endswith("._kernel") else "pure"
