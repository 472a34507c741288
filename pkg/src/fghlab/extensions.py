"""Deciders for the provability logics layered on top of GL.

Every decision here is a reduction to plain GL theoremhood:

  * GLS (GL plus all reflection instances, closed under modus ponens only)
    proves f iff GL proves the implication from f's reflection instances.
  * The box fragment of GL with omega-many consistency axioms: []a is
    provable iff GL already proves a; ![]a is provable iff GL proves
    <>^(cx(a)+1)#t -> ![]a.
  * GL plus the negated step-collapse axiom !F_s is decided by
    GL |- !F_s -> b. F_s has no variables, so uniform substitution adds
    nothing, and the extension is closed under modus ponens only; this
    reduction is taken as a working assumption and recorded as such.

The nontrifling classifier bundles the characterizations so they can be
cross-checked against each other on every call site that wants it.
"""

from dataclasses import dataclass

from .formula import TOP, Box, Neg, conj, cx, diamond_n, f_s, imp, rf
from .glprover import Proved, gl_proves


def _rf_conj(f):
    return conj(sorted(rf(f), key=lambda g: g.key))


def _proved(f):
    return 1 if isinstance(gl_proves(f), Proved) else 0


def gls_proves(f):
    """1 iff GL proves the reflection-instances implication for f."""
    return _proved(imp(_rf_conj(f), f))


def glw_proves_box(a):
    """1 iff []a is provable under omega-many consistency axioms."""
    return _proved(a)


def glw_proves_negbox(a):
    """1 iff ![]a is provable under omega-many consistency axioms."""
    return _proved(imp(diamond_n(cx(a) + 1, TOP), Neg(Box(a))))


def glnfs_proves(s, b):
    """1 iff GL + {!F_s} proves b, via GL |- !F_s -> b (see module note)."""
    return _proved(imp(Neg(f_s(s)), b))


@dataclass(frozen=True)
class BoundedOutcome:
    """Result of a bounded consistency-ladder search.

    proved with level k means GL |- <>^k#t -> b at the least such k;
    unproved means the ladder was exhausted at level = k_max, which is
    NOT a disproof.
    """

    proved: bool
    level: int

    def to_dict(self):
        return {"proved": self.proved, "level": self.level}


def glw_proves_bounded(b, k_max):
    """Search k = 0..k_max for GL |- <>^k#t -> b; one-sided."""
    for k in range(k_max + 1):
        if _proved(imp(diamond_n(k, TOP), b)):
            return BoundedOutcome(True, k)
    return BoundedOutcome(False, k_max)


@dataclass(frozen=True)
class NontriflingReport:
    """Verdict plus every characterization used to cross-check it.

    char2 drives the verdict: a is nontrifling iff neither []a nor ![]a
    is provable under omega-many consistency axioms. char3 re-derives both
    bits through GLS, char4 through GL + {!F_s} at the least admissible
    s = cx(a)+1, char5 through the raw GL reductions. char1_bounded probes
    [][]a -> []a up the consistency ladder; it can only ever confirm a
    trifling verdict, never refute one.
    """

    verdict: int
    char2: tuple
    char3: tuple
    char4: tuple
    char5: tuple
    char1_bounded: BoundedOutcome

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "char2": {"glw_box": self.char2[0], "glw_negbox": self.char2[1]},
            "char3": {"gls_box": self.char3[0], "gls_negbox": self.char3[1]},
            "char4": {"s_used": self.char4[0], "nfs_box": self.char4[1],
                      "nfs_negbox": self.char4[2]},
            "char5": {"gl_a": self.char5[0],
                      "gl_rf_negbox": self.char5[1]},
            "char1_bounded": self.char1_bounded.to_dict(),
        }


def nontrifling(a):
    """Classify a, reporting all characterizations (see NontriflingReport)."""
    box_a = Box(a)
    glw_box = glw_proves_box(a)
    glw_negbox = glw_proves_negbox(a)
    s = cx(a) + 1
    return NontriflingReport(
        verdict=(1 - glw_box) & (1 - glw_negbox),
        char2=(glw_box, glw_negbox),
        char3=(gls_proves(box_a), gls_proves(Neg(box_a))),
        char4=(s, glnfs_proves(s, box_a), glnfs_proves(s, Neg(box_a))),
        char5=(_proved(a), _proved(imp(_rf_conj(box_a), Neg(box_a)))),
        char1_bounded=glw_proves_bounded(imp(Box(box_a), box_a), cx(a) + 2),
    )
