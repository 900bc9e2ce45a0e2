"""Pure-Python unification kernel.

Terms are nested tuples: a variable is ("$", key) and an application is
(symbol, arg0, ..., argn) with symbol != "$". Constants are 1-tuples.

Two substitution disciplines are provided:

* plain: a triangular dict mapping variable keys to terms that may mention
  earlier-bound variables; used when the caller manages variable scopes.
* tagged: every variable key is implicitly paired with a tag (a rename
  namespace), so terms from different scopes unify without being copied.
  The dict maps (tag, key) to (term, tag) pairs.

The tagged discipline is what the execution engine runs on: diagram vertices
tag their star's variables, so building a diagram never materialises renamed
terms, and matchability is the two-tag special case.
"""

VAR = "$"


def walk(t, subst):
    """Chase plain bindings until an unbound variable or an application."""
    while t[0] == VAR:
        nxt = subst.get(t[1])
        if nxt is None:
            return t
        t = nxt
    return t


def occurs(key, t, subst):
    stack = [t]
    while stack:
        cur = walk(stack.pop(), subst)
        if cur[0] == VAR:
            if cur[1] == key:
                return True
        elif len(cur) > 1:
            stack.extend(cur[1:])
    return False


def unify(t, u, subst):
    """Extend subst so that t and u become equal; occurs check on.

    Returns True on success (subst extended in place) and False on failure,
    in which case subst may hold a partial extension and must be discarded.
    """
    stack = [(t, u)]
    while stack:
        a, b = stack.pop()
        a = walk(a, subst)
        b = walk(b, subst)
        if a is b:
            continue
        if a[0] == VAR:
            if b[0] == VAR:
                if a[1] == b[1]:
                    continue
                subst[a[1]] = b
                continue
            if occurs(a[1], b, subst):
                return False
            subst[a[1]] = b
            continue
        if b[0] == VAR:
            if occurs(b[1], a, subst):
                return False
            subst[b[1]] = a
            continue
        if a[0] != b[0] or len(a) != len(b):
            return False
        stack.extend(zip(a[1:], b[1:]))
    return True


def resolve(t, subst):
    """Apply a plain triangular substitution all the way down."""
    t = walk(t, subst)
    if t[0] == VAR or len(t) == 1:
        return t
    return (t[0],) + tuple(resolve(arg, subst) for arg in t[1:])


def solve_eqs(eqs):
    """Solve a list of (t, u) pairs; triangular dict or None."""
    subst = {}
    for t, u in eqs:
        if not unify(t, u, subst):
            return None
    return subst


def walk_tagged(t, tag, subst):
    while t[0] == VAR:
        nxt = subst.get((tag, t[1]))
        if nxt is None:
            return t, tag
        t, tag = nxt
    return t, tag


def occurs_tagged(tkey, t, tag, subst):
    stack = [(t, tag)]
    while stack:
        cur, ctag = stack.pop()
        cur, ctag = walk_tagged(cur, ctag, subst)
        if cur[0] == VAR:
            if (ctag, cur[1]) == tkey:
                return True
        elif len(cur) > 1:
            for arg in cur[1:]:
                stack.append((arg, ctag))
    return False


def unify_tagged(t, ta, u, tb, subst):
    """Tagged twin of unify: t lives in namespace ta, u in tb."""
    stack = [(t, ta, u, tb)]
    while stack:
        a, sa, b, sb = stack.pop()
        a, sa = walk_tagged(a, sa, subst)
        b, sb = walk_tagged(b, sb, subst)
        if a is b and sa == sb:
            continue
        if a[0] == VAR:
            if b[0] == VAR:
                if sa == sb and a[1] == b[1]:
                    continue
                subst[(sa, a[1])] = (b, sb)
                continue
            if occurs_tagged((sa, a[1]), b, sb, subst):
                return False
            subst[(sa, a[1])] = (b, sb)
            continue
        if b[0] == VAR:
            if occurs_tagged((sb, b[1]), a, sa, subst):
                return False
            subst[(sb, b[1])] = (a, sa)
            continue
        if a[0] != b[0] or len(a) != len(b):
            return False
        for x, y in zip(a[1:], b[1:]):
            stack.append((x, sa, y, sb))
    return True


def resolve_tagged(t, tag, subst):
    """Resolve fully; unbound variables come out keyed (tag, key)."""
    t, tag = walk_tagged(t, tag, subst)
    if t[0] == VAR:
        return (VAR, (tag, t[1]))
    if len(t) == 1:
        return t
    return (t[0],) + tuple(resolve_tagged(arg, tag, subst) for arg in t[1:])


def matchable(t, u):
    """Do t and u unify once their variables are renamed apart?"""
    return unify_tagged(t, 0, u, 1, {})


def solve_tagged_eqs(eqs):
    """Solve a list of (t, ta, u, tb) quadruples; dict or None."""
    subst = {}
    for t, ta, u, tb in eqs:
        if not unify_tagged(t, ta, u, tb, subst):
            return None
    return subst
