# cython: boundscheck=False, wraparound=False
"""Compiled unification kernel; mirror of _kernel_py (see its docstring).

Same term representation (nested tuples, variables headed by "$") and the
same plain/tagged substitution disciplines. The win over the pure twin comes
from typed locals and C-level list stacks in the walk/unify loops.
"""

VAR = "$"


cpdef object walk(object t, dict subst):
    cdef object nxt
    while (<tuple>t)[0] == VAR:
        nxt = subst.get((<tuple>t)[1])
        if nxt is None:
            return t
        t = nxt
    return t


cpdef bint occurs(object key, object t, dict subst):
    cdef list stack = [t]
    cdef object cur
    cdef tuple tup
    cdef Py_ssize_t i, n
    while stack:
        cur = walk(stack.pop(), subst)
        tup = <tuple>cur
        if tup[0] == VAR:
            if tup[1] == key:
                return True
        else:
            n = len(tup)
            for i in range(1, n):
                stack.append(tup[i])
    return False


cpdef bint unify(object t, object u, dict subst):
    cdef list stack = [(t, u)]
    cdef object a, b
    cdef tuple pair, ta, tb
    cdef Py_ssize_t i, n
    while stack:
        pair = <tuple>stack.pop()
        a = walk(pair[0], subst)
        b = walk(pair[1], subst)
        if a is b:
            continue
        ta = <tuple>a
        tb = <tuple>b
        if ta[0] == VAR:
            if tb[0] == VAR:
                if ta[1] == tb[1]:
                    continue
                subst[ta[1]] = b
                continue
            if occurs(ta[1], b, subst):
                return False
            subst[ta[1]] = b
            continue
        if tb[0] == VAR:
            if occurs(tb[1], a, subst):
                return False
            subst[tb[1]] = a
            continue
        n = len(ta)
        if ta[0] != tb[0] or n != len(tb):
            return False
        for i in range(1, n):
            stack.append((ta[i], tb[i]))
    return True


cpdef object resolve(object t, dict subst):
    cdef tuple tup
    cdef Py_ssize_t i, n
    t = walk(t, subst)
    tup = <tuple>t
    if tup[0] == VAR or len(tup) == 1:
        return t
    n = len(tup)
    out = [tup[0]]
    for i in range(1, n):
        out.append(resolve(tup[i], subst))
    return tuple(out)


def solve_eqs(eqs):
    cdef dict subst = {}
    for t, u in eqs:
        if not unify(t, u, subst):
            return None
    return subst


cpdef tuple walk_tagged(object t, object tag, dict subst):
    cdef object nxt
    while (<tuple>t)[0] == VAR:
        nxt = subst.get((tag, (<tuple>t)[1]))
        if nxt is None:
            return (t, tag)
        t = (<tuple>nxt)[0]
        tag = (<tuple>nxt)[1]
    return (t, tag)


cpdef bint occurs_tagged(object tkey, object t, object tag, dict subst):
    cdef list stack = [(t, tag)]
    cdef object cur, ctag
    cdef tuple walked, tup
    cdef Py_ssize_t i, n
    while stack:
        walked = <tuple>stack.pop()
        walked = walk_tagged(walked[0], walked[1], subst)
        cur = walked[0]
        ctag = walked[1]
        tup = <tuple>cur
        if tup[0] == VAR:
            if (ctag, tup[1]) == tkey:
                return True
        else:
            n = len(tup)
            for i in range(1, n):
                stack.append((tup[i], ctag))
    return False


cpdef bint unify_tagged(object t, object ta, object u, object tb, dict subst):
    cdef list stack = [(t, ta, u, tb)]
    cdef object a, sa, b, sb
    cdef tuple quad, walked, tua, tub
    cdef Py_ssize_t i, n
    while stack:
        quad = <tuple>stack.pop()
        walked = walk_tagged(quad[0], quad[1], subst)
        a = walked[0]
        sa = walked[1]
        walked = walk_tagged(quad[2], quad[3], subst)
        b = walked[0]
        sb = walked[1]
        if a is b and sa == sb:
            continue
        tua = <tuple>a
        tub = <tuple>b
        if tua[0] == VAR:
            if tub[0] == VAR:
                if sa == sb and tua[1] == tub[1]:
                    continue
                subst[(sa, tua[1])] = (b, sb)
                continue
            if occurs_tagged((sa, tua[1]), b, sb, subst):
                return False
            subst[(sa, tua[1])] = (b, sb)
            continue
        if tub[0] == VAR:
            if occurs_tagged((sb, tub[1]), a, sa, subst):
                return False
            subst[(sb, tub[1])] = (a, sa)
            continue
        n = len(tua)
        if tua[0] != tub[0] or n != len(tub):
            return False
        for i in range(1, n):
            stack.append((tua[i], sa, tub[i], sb))
    return True


cpdef object resolve_tagged(object t, object tag, dict subst):
    cdef tuple walked, tup
    cdef Py_ssize_t i, n
    walked = walk_tagged(t, tag, subst)
    t = walked[0]
    tag = walked[1]
    tup = <tuple>t
    if tup[0] == VAR:
        return (VAR, (tag, tup[1]))
    if len(tup) == 1:
        return t
    n = len(tup)
    out = [tup[0]]
    for i in range(1, n):
        out.append(resolve_tagged(tup[i], tag, subst))
    return tuple(out)


cpdef bint matchable(object t, object u):
    return unify_tagged(t, 0, u, 1, {})


def solve_tagged_eqs(eqs):
    cdef dict subst = {}
    for t, ta, u, tb in eqs:
        if not unify_tagged(t, ta, u, tb, subst):
            return None
    return subst
