"""Decision procedure for GL with countermodel extraction.

The refutation search looks for a world falsifying the goal. A world is a
truth assignment to the goal's atoms (variables and boxed subformulas); all
assignments compatible with a demand set are enumerated at once through
truth tables packed into big integers, one bit per assignment. Every false
[]B at a world spawns a successor seeded with {!B, []B} plus {[]C, C} for
each true []C; re-asserting []B in the successor is what forces the set of
true boxes to grow strictly along any branch, so search depth is bounded by
the number of distinct boxed subformulas and the extracted tree countermodel
automatically satisfies the []^(cx+1)#f root bound.
"""

import os
from dataclasses import dataclass

import numpy as np

from .formula import (
    BOT, Bot, Box, Neg, Top, Var, box_n, cx, size, subformulas, variables,
)
from .kripke import (
    KripkeModel, battery_arrays, model_forces_at_root, transitive_closure,
    validate_frame,
)

DEFAULT_BUDGET = 10 ** 6
BUDGET_ENV = "FGHLAB_NODE_BUDGET"


class BudgetExceeded(Exception):
    """Expansion budget ran out; explicitly distinct from both verdicts."""

    def __init__(self, budget):
        super().__init__("prover node budget %d exceeded" % budget)
        self.budget = budget


@dataclass(frozen=True)
class ProverTrace:
    """Expansion record of a completed search."""

    expansions: int
    assignments_tried: int
    distinct_goals: int


class Verdict:
    __slots__ = ()


class Proved(Verdict):
    __slots__ = ("trace",)

    def __init__(self, trace):
        self.trace = trace

    def __repr__(self):
        return "Proved(%r)" % (self.trace,)


class Refuted(Verdict):
    __slots__ = ("countermodel",)

    def __init__(self, countermodel):
        self.countermodel = countermodel

    def __repr__(self):
        return "Refuted(%r)" % (self.countermodel,)


def _default_budget():
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        return int(raw)
    return DEFAULT_BUDGET


class _Search:
    """One refutation search; all state is per-call, nothing shared."""

    def __init__(self, goal, budget):
        self.budget = budget
        self.expansions = 0
        self.assignments = 0
        subs = sorted(subformulas(goal), key=lambda g: (size(g), g.key))
        self.atoms = [g for g in subs if isinstance(g, (Var, Box))]
        index = {g.key: i for i, g in enumerate(self.atoms)}
        self.box_atoms = [
            (i, g) for i, g in enumerate(self.atoms) if isinstance(g, Box)
        ]
        self.var_atoms = [
            (i, g) for i, g in enumerate(self.atoms) if isinstance(g, Var)
        ]
        k = len(self.atoms)
        self.width = 1 << k
        self.full = (1 << self.width) - 1
        # column i: the assignments (bit positions) making atom i true
        cols = []
        for i in range(k):
            half = 1 << i
            block = ((1 << half) - 1) << half
            mask = 0
            for start in range(0, self.width, half << 1):
                mask |= block << start
            cols.append(mask)
        self.tables = {}
        for g in subs:
            if isinstance(g, (Var, Box)):
                t = cols[index[g.key]]
            elif isinstance(g, Top):
                t = self.full
            elif isinstance(g, Bot):
                t = 0
            elif isinstance(g, Neg):
                t = self.full ^ self.tables[g.sub.key]
            else:
                a = self.tables[g.left.key]
                b = self.tables[g.right.key]
                if g.op == "&":
                    t = a & b
                elif g.op == "|":
                    t = a | b
                elif g.op == "->":
                    t = (self.full ^ a) | b
                else:
                    t = self.full ^ (a ^ b)
            self.tables[g.key] = t
        self.memo = {}

    def _spend(self):
        if self.expansions + self.assignments > self.budget:
            raise BudgetExceeded(self.budget)

    def find_world(self, demands):
        """A world satisfying the demand set, as (assignment, successors),
        or None. Assignments are scanned in a fixed ascending order."""
        if demands in self.memo:
            return self.memo[demands]
        self.expansions += 1
        self._spend()
        sat = self.full
        for key, bit in demands:
            t = self.tables[key]
            sat &= t if bit else (self.full ^ t)
        result = None
        while sat:
            low = sat & -sat
            idx = low.bit_length() - 1
            sat ^= low
            self.assignments += 1
            self._spend()
            true_boxes = []
            false_boxes = []
            for i, g in self.box_atoms:
                if (idx >> i) & 1:
                    true_boxes.append(g)
                else:
                    false_boxes.append(g)
            seed = []
            for g in true_boxes:
                seed.append((g.key, 1))
                seed.append((g.sub.key, 1))
            children = []
            ok = True
            for fb in false_boxes:
                child = self.find_world(
                    frozenset(seed + [(fb.sub.key, 0), (fb.key, 1)]))
                if child is None:
                    ok = False
                    break
                children.append(child)
            if ok:
                result = (idx, tuple(children))
                break
        self.memo[demands] = result
        return result

    def build_model(self, tree):
        """Expand the (possibly shared) witness tree into a tree model with
        worlds numbered in preorder and the relation transitively closed."""
        worlds = []
        edges = []
        val = {}

        def add(node):
            wid = len(worlds)
            worlds.append(wid)
            idx, children = node
            bits = {g.name: 1 for i, g in self.var_atoms if (idx >> i) & 1}
            if bits:
                val[wid] = bits
            for child in children:
                edges.append((wid, add(child)))
            return wid

        add(tree)
        return KripkeModel(worlds, transitive_closure(edges), 0, val)

    def trace(self):
        return ProverTrace(self.expansions, self.assignments, len(self.memo))


def gl_proves(f, budget=None):
    """Decide whether f is a GL theorem.

    Returns Proved(trace) or Refuted(countermodel); the countermodel is
    re-checked before being returned: it passes frame validation, refutes f
    at the root, and forces []^(cx(f)+1)#f there. Raises BudgetExceeded when
    the configured expansion budget (FGHLAB_NODE_BUDGET, default 10^6) runs
    out before a verdict.
    """
    if budget is None:
        budget = _default_budget()
    search = _Search(f, budget)
    tree = search.find_world(frozenset([(f.key, 0)]))
    if tree is None:
        return Proved(search.trace())
    model = search.build_model(tree)
    bound = box_n(cx(f) + 1, BOT)
    if (validate_frame(model)
            or model_forces_at_root(model, f) != 0
            or model_forces_at_root(model, bound) != 1):
        raise RuntimeError("countermodel failed recheck for %r" % (f,))
    return Refuted(model)


def _battery_eval(g, succ, vals, cache):
    out = cache.get(g.key)
    if out is not None:
        return out
    if isinstance(g, Var):
        out = vals[g.name]
    elif isinstance(g, Top):
        out = np.ones(succ.shape[:2], dtype=bool)
    elif isinstance(g, Bot):
        out = np.zeros(succ.shape[:2], dtype=bool)
    elif isinstance(g, Neg):
        out = ~_battery_eval(g.sub, succ, vals, cache)
    elif isinstance(g, Box):
        sub = _battery_eval(g.sub, succ, vals, cache)
        out = np.all(sub[:, None, :] | ~succ, axis=2)
    else:
        a = _battery_eval(g.left, succ, vals, cache)
        b = _battery_eval(g.right, succ, vals, cache)
        if g.op == "&":
            out = a & b
        elif g.op == "|":
            out = a | b
        elif g.op == "->":
            out = ~a | b
        else:
            out = a == b
    cache[g.key] = out
    return out


def gl_proves_brute(f, max_worlds=4):
    """1 iff f holds at the root of every enumerated model with at most
    max_worlds worlds over vars(f). Exact for formulas small enough that a
    countermodel of that size must exist when any exists; always sound as a
    refuter. Independent of the tableau: evaluation runs over the model
    battery of kripke.enumerate_models.
    """
    names = tuple(sorted(variables(f)))
    _, succ, vals = battery_arrays(max_worlds, names)
    arr = _battery_eval(f, succ, vals, {})
    return 1 if bool(arr[:, 0].all()) else 0
