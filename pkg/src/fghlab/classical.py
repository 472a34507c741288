"""Classical semantics for box-free formulas and the contingency-driven
synthesizers: given a contingent A, build substitutions B_i(r) making
r <-> A(B_1,...,B_n) a tautology, with or without designated parameter
variables that must survive the substitution.
"""

import itertools

from .formula import (
    TOP, Binary, Bot, Box, Neg, Top, Var, conj, disj, land, lor, polarity,
    substitute, variables,
)

TAUTOLOGY = "tautology"
UNSATISFIABLE = "unsatisfiable"
CONTINGENT = "contingent"


class NotBoxFree(ValueError):
    """A classical-only operation received a formula containing []."""


class NotContingent(ValueError):
    """Synthesis requires a contingent formula; got a tautology or an
    unsatisfiable one."""


class ConditionFails(ValueError):
    """Some specialization of the parameter variables is not contingent;
    `witness` maps each parameter variable to the offending bit."""

    def __init__(self, witness):
        super().__init__("specialization not contingent for %r" % (witness,))
        self.witness = witness


def evaluate(f, assignment):
    """Classical truth value of a box-free formula under a total assignment
    (a mapping from variable names to bits)."""
    if isinstance(f, Var):
        if f.name not in assignment:
            raise ValueError("assignment missing variable %r" % f.name)
        return 1 if assignment[f.name] else 0
    if isinstance(f, Top):
        return 1
    if isinstance(f, Bot):
        return 0
    if isinstance(f, Neg):
        return 1 - evaluate(f.sub, assignment)
    if isinstance(f, Box):
        raise NotBoxFree("formula contains []: %r" % (f,))
    a = evaluate(f.left, assignment)
    b = evaluate(f.right, assignment)
    if f.op == "&":
        return a & b
    if f.op == "|":
        return a | b
    if f.op == "->":
        return (1 - a) | b
    return 1 if a == b else 0


def _assignments(names):
    """All assignments over the given names in lexicographic order of the
    bit tuples, names sorted."""
    names = sorted(names)
    for bits in itertools.product((0, 1), repeat=len(names)):
        yield dict(zip(names, bits))


def classify(f):
    """Exhaustive truth-table verdict: tautology, unsatisfiable, contingent."""
    seen_true = False
    seen_false = False
    for a in _assignments(variables(f)):
        if evaluate(f, a):
            seen_true = True
        else:
            seen_false = True
        if seen_true and seen_false:
            return CONTINGENT
    return TAUTOLOGY if seen_true else UNSATISFIABLE


def is_tautology(f):
    return classify(f) == TAUTOLOGY


def _least_assignment(f, value):
    """Lexicographically least assignment (under variable-name order) giving
    f the requested truth value, or None."""
    for a in _assignments(variables(f)):
        if evaluate(f, a) == value:
            return a
    return None


def lemma1_synthesize(a, fresh="r"):
    """For contingent box-free A over p_1..p_n, return the substitution
    {p_i: B_i(r)} with B_i = (r & #t^f(i)) | (!r & #t^g(i)), where f is the
    least satisfying and g the least falsifying assignment. The output is
    re-verified: r <-> A(B_1,...,B_n) must be a tautology.
    """
    if fresh in variables(a):
        raise ValueError("fresh variable %r occurs in the formula" % fresh)
    if classify(a) != CONTINGENT:
        raise NotContingent("formula is not contingent: %r" % (a,))
    sat = _least_assignment(a, 1)
    fal = _least_assignment(a, 0)
    r = Var(fresh)
    out = {}
    for name in sorted(variables(a)):
        out[name] = lor(
            land(r, polarity(TOP, sat[name])),
            land(Neg(r), polarity(TOP, fal[name])),
        )
    _verify_equivalence(a, out, fresh, ())
    return out


def theorem2_condition(a, q_names):
    """Check that every #t/!#t specialization of the parameter variables
    leaves A contingent. Returns (True, None), or (False, g) with g the
    least failing specialization."""
    q_names = sorted(q_names)
    unknown = set(q_names) - variables(a)
    if unknown:
        raise ValueError("parameter variables not in formula: %r"
                         % sorted(unknown))
    for g in _assignments(q_names):
        special = substitute(a, {n: polarity(TOP, g[n]) for n in q_names})
        if classify(special) != CONTINGENT:
            return False, dict(g)
    return True, None


def lemma2_synthesize(a, q_names, fresh="r"):
    """Parameterized synthesis: for A over p-variables and the designated
    q-variables, return {p_i: B_i(r, q_vec)} with
    B_i = OR over all q-specializations f of (C_i^f(r) & Q^f), where C^f is
    the plain synthesis for the specialized formula and Q^f the conjunction
    of q_j^f(j) literals. Requires every specialization to be contingent.
    Verified: r <-> A(B_vec, q_vec) is a tautology over {r} + q-variables.
    """
    q_names = sorted(q_names)
    ok, witness = theorem2_condition(a, q_names)
    if not ok:
        raise ConditionFails(witness)
    if fresh in variables(a):
        raise ValueError("fresh variable %r occurs in the formula" % fresh)
    p_names = sorted(variables(a) - set(q_names))
    if not q_names:
        return lemma1_synthesize(a, fresh)
    branches = []
    for g in _assignments(q_names):
        special = substitute(a, {n: polarity(TOP, g[n]) for n in q_names})
        c = lemma1_synthesize(special, fresh)
        q_literal = conj([polarity(Var(n), g[n]) for n in q_names])
        branches.append((c, q_literal))
    out = {}
    for name in p_names:
        out[name] = disj([land(c[name], q_lit) for c, q_lit in branches])
    _verify_equivalence(a, out, fresh, q_names)
    return out


def _verify_equivalence(a, subst, fresh, q_names):
    """Loud internal check that r <-> A(B_vec[, q_vec]) is a tautology."""
    applied = substitute(a, subst)
    target = Binary("<->", Var(fresh), applied)
    if not is_tautology(target):
        raise RuntimeError(
            "synthesis verification failed for %r with %r" % (a, subst))
