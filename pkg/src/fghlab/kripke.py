"""Finite rooted transitive irreflexive Kripke frames with valuations.

The forcing relation here is the semantic ground truth that every decision
procedure and model construction in the package is checked against. Models
are value types: immutable after construction, compared structurally, with
valuations normalized so that absent variables are false.
"""

import itertools
from functools import lru_cache

import numpy as np

from .formula import Binary, Bot, Box, Neg, Top, Var


def transitive_closure(pairs):
    """Least transitive superset of the given pair set (fixpoint)."""
    rel = set(pairs)
    while True:
        extra = {
            (a, d)
            for (a, b) in rel
            for (c, d) in rel
            if b == c and (a, d) not in rel
        }
        if not extra:
            return frozenset(rel)
        rel |= extra


class KripkeModel:
    """worlds: ordered ids; rel: strict accessibility pairs; root; val:
    world -> {variable: bit}. Valuations are normalized to true bits only."""

    __slots__ = ("worlds", "rel", "root", "val", "_succ", "_index")

    def __init__(self, worlds, rel, root, val=None):
        self.worlds = tuple(worlds)
        self.rel = frozenset((a, b) for a, b in rel)
        self.root = root
        norm = {}
        for w, bits in (val or {}).items():
            true = {name: 1 for name, bit in bits.items() if bit}
            if true:
                norm[w] = true
        self.val = norm
        self._index = {w: i for i, w in enumerate(self.worlds)}
        succ = {w: [] for w in self.worlds}
        for a, b in self.rel:
            if a in succ:
                succ[a].append(b)
        self._succ = {
            w: tuple(sorted(vs, key=self._index.get)) for w, vs in succ.items()
        }

    def successors(self, w):
        return self._succ[w]

    def __eq__(self, other):
        return (
            isinstance(other, KripkeModel)
            and frozenset(self.worlds) == frozenset(other.worlds)
            and self.rel == other.rel
            and self.root == other.root
            and self.val == other.val
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((frozenset(self.worlds), self.rel, self.root))

    def __repr__(self):
        return "KripkeModel(worlds=%r, rel=%r, root=%r, val=%r)" % (
            list(self.worlds), sorted(self.rel, key=self._pair_key), self.root,
            self.val)

    def _pair_key(self, pair):
        return (self._index.get(pair[0], -1), self._index.get(pair[1], -1))


def validate_frame(m):
    """List of violated frame invariants, each as a message naming a witness.
    An empty list means the model is a well-formed rooted GL frame."""
    out = []
    if not m.worlds:
        out.append("worlds is empty")
        return out
    wset = set(m.worlds)
    if len(m.worlds) != len(wset):
        out.append("duplicate world ids")
    if m.root not in wset:
        out.append("root %r is not a world" % (m.root,))
    for a, b in sorted(m.rel, key=m._pair_key):
        if a not in wset or b not in wset:
            out.append("relation pair (%r, %r) uses unknown worlds" % (a, b))
    for w in m.worlds:
        if (w, w) in m.rel:
            out.append("reflexive pair (%r, %r)" % (w, w))
    for a, b in sorted(m.rel, key=m._pair_key):
        for c in m._succ.get(b, ()):
            if (a, c) not in m.rel:
                out.append(
                    "transitivity fails: (%r, %r), (%r, %r) but not (%r, %r)"
                    % (a, b, b, c, a, c))
    if m.root in wset:
        for w in m.worlds:
            if w != m.root and (m.root, w) not in m.rel:
                out.append("root does not precede world %r" % (w,))
    for w in m.val:
        if w not in wset:
            out.append("valuation mentions unknown world %r" % (w,))
    return out


def forces(m, w, f):
    """Satisfaction at world w; [] quantifies over rel-successors."""
    if w not in m._index:
        raise ValueError("unknown world %r" % (w,))
    if isinstance(f, Var):
        return m.val.get(w, {}).get(f.name, 0)
    if isinstance(f, Top):
        return 1
    if isinstance(f, Bot):
        return 0
    if isinstance(f, Neg):
        return 1 - forces(m, w, f.sub)
    if isinstance(f, Box):
        return 1 if all(forces(m, v, f.sub) for v in m.successors(w)) else 0
    a = forces(m, w, f.left)
    b = forces(m, w, f.right)
    if f.op == "&":
        return a & b
    if f.op == "|":
        return a | b
    if f.op == "->":
        return (1 - a) | b
    return 1 if a == b else 0


def model_forces_at_root(m, f):
    return forces(m, m.root, f)


def model_valid(m, f):
    """1 iff every world of m forces f."""
    return 1 if all(forces(m, w, f) for w in m.worlds) else 0


def _strict_orders(elements):
    """All transitive irreflexive relations on the given elements, in a
    fixed deterministic order."""
    pairs = [(a, b) for a in elements for b in elements if a != b]
    out = []
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        rel = {p for p, bit in zip(pairs, bits) if bit}
        ok = all(
            (a, d) in rel
            for (a, b) in rel for (c, d) in rel if b == c and a != d
        )
        if ok and all((a, b) not in rel or (b, a) not in rel for a, b in rel):
            out.append(frozenset(rel))
    return sorted(out, key=lambda r: sorted(r))


def _serialize(rel, val_bits, n):
    return (tuple(sorted(rel)), tuple(val_bits[w] for w in range(n)))


def enumerate_models(max_worlds, variables=()):
    """Every rooted transitive irreflexive model with at most max_worlds
    worlds over the given variables, exactly once up to isomorphism fixing
    the root. Worlds are 0..n-1 with root 0, smallest models first."""
    names = tuple(sorted(variables))
    for n in range(1, max_worlds + 1):
        others = list(range(1, n))
        perms = [
            dict(zip(others, image))
            for image in itertools.permutations(others)
        ]
        for upper in _strict_orders(others):
            rel = frozenset(upper | {(0, w) for w in others})
            for bits in itertools.product(
                    itertools.product((0, 1), repeat=len(names)), repeat=n):
                shape = _serialize(rel, bits, n)
                canonical = True
                for pi in perms:
                    mapped_rel = {
                        (pi.get(a, a), pi.get(b, b)) for a, b in rel
                    }
                    mapped_bits = list(bits)
                    for w, img in pi.items():
                        mapped_bits[img] = bits[w]
                    if _serialize(mapped_rel, mapped_bits, n) < shape:
                        canonical = False
                        break
                if not canonical:
                    continue
                val = {
                    w: dict(zip(names, bits[w]))
                    for w in range(n) if any(bits[w])
                }
                yield KripkeModel(range(n), rel, 0, val)


@lru_cache(maxsize=64)
def model_battery(max_worlds, variables=()):
    """Cached tuple of every enumerated model; `variables` must be a tuple."""
    return tuple(enumerate_models(max_worlds, variables))


@lru_cache(maxsize=64)
def battery_arrays(max_worlds, variables=()):
    """Vectorized view of the model battery: (models, succ, vals) with
    succ a bool array of shape (M, max_worlds, max_worlds) where
    succ[k, a, b] says world a sees world b in model k, and vals mapping
    each variable name to a bool array of shape (M, max_worlds). World 0 is
    the root in every model; padding worlds have no edges and false values.
    """
    models = model_battery(max_worlds, variables)
    count = len(models)
    succ = np.zeros((count, max_worlds, max_worlds), dtype=bool)
    vals = {
        name: np.zeros((count, max_worlds), dtype=bool) for name in variables
    }
    for k, m in enumerate(models):
        for a, b in m.rel:
            succ[k, a, b] = True
        for w, bits in m.val.items():
            for name, bit in bits.items():
                if bit and name in vals:
                    vals[name][k, w] = True
    succ.setflags(write=False)
    for arr in vals.values():
        arr.setflags(write=False)
    return models, succ, vals


def model_to_dict(m):
    """JSON-shaped dict with keys worlds/rel/root/val; val keys are strings."""
    return {
        "worlds": list(m.worlds),
        "rel": [list(p) for p in sorted(m.rel, key=m._pair_key)],
        "root": m.root,
        "val": {
            str(w): dict(m.val[w]) for w in m.worlds if w in m.val
        },
    }


def model_from_dict(d):
    """Inverse of model_to_dict; tolerates val keys naming worlds by str()."""
    worlds = d["worlds"]
    by_name = {str(w): w for w in worlds}
    val = {}
    for key, bits in d.get("val", {}).items():
        if key in by_name:
            val[by_name[key]] = {name: int(b) for name, b in bits.items()}
        else:
            raise ValueError("valuation names unknown world %r" % (key,))
    return KripkeModel(
        worlds, [tuple(p) for p in d["rel"]], d["root"], val)
