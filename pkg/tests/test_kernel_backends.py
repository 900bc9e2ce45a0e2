"""Equivalence of the compiled kernel and its pure-Python twin."""

import json
import os
import subprocess
import sys

import helpers
from stellres import kernel, terms

BATTERY_SCRIPT = """
import json
import sys
from stellres import kernel, terms

def family():
    atoms = [("a",), terms.var("X"), terms.var("Y")]
    out = list(atoms)
    layer = list(atoms)
    for _ in range(2):
        layer = [(f, t) for f in ("f", "g") for t in layer]
        out.extend(layer)
    return out

results = [kernel.backend_name()]
fam = family()
for t in fam:
    for u in fam:
        subst = {}
        ok = kernel.unify_tagged(t, 0, u, 1, subst)
        if ok:
            results.append([
                terms.term_to_text(kernel.resolve_tagged(t, 0, subst)),
                terms.term_to_text(kernel.resolve_tagged(u, 1, subst)),
            ])
        else:
            results.append(None)
print(json.dumps(results))
"""


def _run_battery(pure):
    env = dict(os.environ)
    if pure:
        env["STELLRES_PURE"] = "1"
    else:
        env.pop("STELLRES_PURE", None)
    proc = subprocess.run(
        [sys.executable, "-c", BATTERY_SCRIPT],
        capture_output=True, text=True, env=env, check=True)
    return json.loads(proc.stdout)


def test_compiled_backend_is_active():
    """The installed package selects the compiled kernel by default."""
    assert kernel.backend_name() in ("compiled", "pure")
    out = _run_battery(pure=False)
    assert out[0] == "compiled"


def test_pure_twin_matches_compiled_on_battery():
    """Both backends produce identical unification outcomes and identical
    resolved terms over an exhaustive small family."""
    compiled = _run_battery(pure=False)
    pure = _run_battery(pure=True)
    assert compiled[0] == "compiled"
    assert pure[0] == "pure"
    assert compiled[1:] == pure[1:]


def test_tagged_namespaces_are_disjoint():
    """The same variable name under different tags unifies like two
    distinct variables."""
    t = terms.var("X")
    u = ("f", terms.var("X"))
    subst = {}
    assert kernel.unify_tagged(t, 0, u, 1, subst)
    resolved = kernel.resolve_tagged(t, 0, subst)
    assert resolved[0] == "f"


def test_same_tag_occurs_check():
    """Within one tag, a variable cannot absorb a term containing it."""
    t = terms.var("X")
    u = ("f", terms.var("X"))
    assert not kernel.unify_tagged(t, 0, u, 0, {})


def test_unbound_variables_resolve_to_tagged_keys():
    subst = {}
    assert kernel.unify_tagged(terms.var("X"), 3, terms.var("X"), 3, subst)
    resolved = kernel.resolve_tagged(terms.var("Y"), 3, subst)
    assert resolved == (kernel.VAR, (3, "Y"))


def test_solve_tagged_eqs_matches_pairwise_unify():
    """Solving a joint problem agrees with incremental unification."""
    fam = helpers.unify_family()
    rngpairs = [(fam[3], fam[7]), (fam[10], fam[21]), (fam[5], fam[5])]
    eqs = [(t, 0, u, 1) for t, u in rngpairs]
    joint = kernel.solve_tagged_eqs(eqs)
    subst = {}
    incremental = True
    for t, ta, u, tb in eqs:
        incremental = incremental and kernel.unify_tagged(t, ta, u, tb, subst)
    assert (joint is not None) == incremental
    if joint is not None:
        for t, ta, u, tb in eqs:
            assert (kernel.resolve_tagged(t, ta, subst)
                    == kernel.resolve_tagged(u, tb, subst))
