"""Model-merge constructions with mechanically verified forcing claims.

Three merges are provided. The nontrifling merge hangs a counterexample
model and a reflection model side by side under a fresh root, with a finite
descending chain spliced below the reflection model's root; the chain and
the new root copy that root's valuation. The two-column merge places two
models over a common root that forces every variable, each column padded
with one fresh world copying its column's root valuation. Both return a
certificate listing every forcing claim checked inside the merged model;
constructions abort rather than return a failing certificate.

All merged models use string world ids; inputs are renamed apart before
merging, so callers never need to pre-align id spaces.
"""

from dataclasses import dataclass

from .formula import (
    BOT, TOP, Box, Neg, box_n, conj, cx, diamond_n, land, rf, size,
    subformulas, variables,
)
from .kripke import (
    KripkeModel, forces, model_forces_at_root, transitive_closure,
    validate_frame,
)


class PreconditionFail(ValueError):
    """An input model's root does not force what the merge requires."""


class ClaimFail(Exception):
    """A forcing claim about the merged model failed its check."""

    def __init__(self, world, formula, expected, actual):
        super().__init__(
            "claim failed at world %r: %s expected %d, got %d"
            % (world, formula.key, expected, actual))
        self.world = world
        self.formula = formula
        self.expected = expected
        self.actual = actual


class ImpossibleExtension(ValueError):
    """The model is already deeper than the requested chain target."""


@dataclass(frozen=True)
class MergeCertificate:
    model: KripkeModel
    checked_claims: tuple

    def to_dict(self):
        from .kripke import model_to_dict
        return {
            "model": model_to_dict(self.model),
            "checked_claims": [
                {"world": w, "formula": f.key, "expected": e, "actual": a}
                for w, f, e, a in self.checked_claims
            ],
        }


def _rf_conj(f):
    return conj(sorted(rf(f), key=lambda g: g.key))


def _require_root(m, f, label):
    if validate_frame(m):
        raise PreconditionFail(
            "%s is not a valid frame: %s" % (label, validate_frame(m)[0]))
    if model_forces_at_root(m, f) != 1:
        raise PreconditionFail(
            "root of %s does not force %s" % (label, f.key))


def _rename(m, tag):
    """Map m's worlds to '<tag>1'.. with the root first."""
    ordered = [m.root] + [w for w in m.worlds if w != m.root]
    names = {w: "%s%d" % (tag, j + 1) for j, w in enumerate(ordered)}
    return names


def _pair_rename(m, i):
    ordered = [m.root] + [w for w in m.worlds if w != m.root]
    return {w: "%d,%d" % (i, j + 1) for j, w in enumerate(ordered)}


def _certify(model, claims):
    bad = validate_frame(model)
    if bad:
        raise RuntimeError("merged frame invalid: %s" % bad[0])
    done = []
    for w, f, expected in claims:
        actual = forces(model, w, f)
        if actual != expected:
            raise ClaimFail(w, f, expected, actual)
        done.append((w, f, expected, actual))
    return MergeCertificate(model, tuple(done))


def merge_nontrifling(m, m0, a, chain_len):
    """Merge a root refuting []a -> a out of m (forcing []a & !a) and m0
    (forcing the reflection instances of []a plus []a), with a descending
    chain of chain_len copies of m0's root spliced between.

    The certificate checks both input properties inside the merged model,
    the chain-transfer claims (every chain world agrees with m0's root on
    every subformula of []a), and the new root's [][]a, ![]a and
    <>^chain_len #t facts.
    """
    box_a = Box(a)
    goal_m = land(box_a, Neg(a))
    goal_m0 = land(_rf_conj(box_a), box_a)
    _require_root(m, goal_m, "first model")
    _require_root(m0, goal_m0, "second model")

    na = _rename(m, "a")
    nb = _rename(m0, "b")
    chain = ["r%d" % i for i in range(1, chain_len + 1)]
    root = "rstar"
    worlds = ([root] + [na[w] for w in m.worlds]
              + [nb[w] for w in m0.worlds] + chain)
    edges = [(na[x], na[y]) for x, y in m.rel]
    edges += [(nb[x], nb[y]) for x, y in m0.rel]
    b_root = nb[m0.root]
    for i, w in enumerate(chain):
        edges.append((w, b_root))
        for j in range(i):
            edges.append((w, chain[j]))
    edges.append((root, na[m.root]))
    edges.append((root, b_root))
    edges += [(root, w) for w in chain]

    root_bits = dict(m0.val.get(m0.root, {}))
    val = {na[w]: dict(bits) for w, bits in m.val.items()}
    val.update({nb[w]: dict(bits) for w, bits in m0.val.items()})
    for w in chain + [root]:
        if root_bits:
            val[w] = dict(root_bits)
    merged = KripkeModel(worlds, transitive_closure(edges), root, val)

    claims = [(na[m.root], goal_m, 1), (b_root, goal_m0, 1)]
    subs = sorted(subformulas(box_a), key=lambda g: (size(g), g.key))
    for w in chain:
        for b in subs:
            claims.append((w, b, forces(merged, b_root, b)))
    claims.append((root, Box(box_a), 1))
    claims.append((root, box_a, 0))
    claims.append((root, diamond_n(chain_len, TOP), 1))
    return _certify(merged, claims)


def _two_column(m0, m1, a):
    n0 = _pair_rename(m0, 0)
    n1 = _pair_rename(m1, 1)
    worlds = (["0", "0,0", "1,0"]
              + [n0[w] for w in m0.worlds] + [n1[w] for w in m1.worlds])
    edges = [(n0[x], n0[y]) for x, y in m0.rel]
    edges += [(n1[x], n1[y]) for x, y in m1.rel]
    edges += [("0", w) for w in worlds if w != "0"]
    edges += [("0,0", n0[w]) for w in m0.worlds]
    edges += [("1,0", n1[w]) for w in m1.worlds]

    names = set(variables(a))
    for src in (m0, m1):
        for bits in src.val.values():
            names.update(bits)
    val = {n0[w]: dict(bits) for w, bits in m0.val.items()}
    val.update({n1[w]: dict(bits) for w, bits in m1.val.items()})
    val["0"] = {p: 1 for p in sorted(names)}
    val["0,0"] = dict(m0.val.get(m0.root, {}))
    val["1,0"] = dict(m1.val.get(m1.root, {}))
    return KripkeModel(worlds, transitive_closure(edges), "0", val)


def merge_mt(m0, m1, a):
    """Two-column merge for the box-contingency construction: m0 refutes a
    under the depth bound, m1 forces the reflection instances of ![]a plus
    []a. Certificate re-checks both column-root properties in the merged
    model."""
    goal0 = land(box_n(cx(a) + 1, BOT), Neg(a))
    goal1 = land(_rf_conj(Neg(Box(a))), Box(a))
    _require_root(m0, goal0, "first model")
    _require_root(m1, goal1, "second model")
    merged = _two_column(m0, m1, a)
    return _certify(merged, [("0,1", goal0, 1), ("1,1", goal1, 1)])


def merge_mt4(m0, m1, a, s):
    """Two-column merge with both column roots at exact depth s: they force
    []^(s+1)#f & <>^s#t together with ![]a (left) and []a (right)."""
    depth = land(box_n(s + 1, BOT), diamond_n(s, TOP))
    goal0 = land(depth, Neg(Box(a)))
    goal1 = land(depth, Box(a))
    _require_root(m0, goal0, "first model")
    _require_root(m1, goal1, "second model")
    merged = _two_column(m0, m1, a)
    return _certify(merged, [("0,1", goal0, 1), ("1,1", goal1, 1)])


def chain_extend(m, target_s):
    """Prepend a chain of fresh worlds below m's root so the new root
    forces []^(target_s+1)#f & <>^target_s#t; the chain copies the old
    root's valuation. Unchanged when the root already sits at exact depth
    target_s; ImpossibleExtension when it is deeper than that."""
    if validate_frame(m):
        raise PreconditionFail(
            "not a valid frame: %s" % validate_frame(m)[0])
    k = 1
    while model_forces_at_root(m, box_n(k, BOT)) != 1:
        k += 1
    grow = target_s + 1 - k
    if grow < 0:
        raise ImpossibleExtension(
            "root already forces <>^%d#t, past target %d" % (k - 1, target_s))
    if grow == 0:
        return m
    base = "e"
    existing = set(m.worlds)
    while any(("%s%d" % (base, i)) in existing for i in range(1, grow + 1)):
        base += "e"
    chain = ["%s%d" % (base, i) for i in range(1, grow + 1)]
    worlds = chain[::-1] + list(m.worlds)
    edges = list(m.rel)
    below = list(m.worlds)
    for w in chain:
        edges += [(w, x) for x in below]
        below.append(w)
    root_bits = dict(m.val.get(m.root, {}))
    val = {w: dict(bits) for w, bits in m.val.items()}
    for w in chain:
        if root_bits:
            val[w] = dict(root_bits)
    out = KripkeModel(worlds, transitive_closure(edges), chain[-1], val)
    want = land(box_n(target_s + 1, BOT), diamond_n(target_s, TOP))
    if validate_frame(out) or model_forces_at_root(out, want) != 1:
        raise RuntimeError("chain extension failed verification")
    return out
