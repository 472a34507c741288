"""Formula AST, concrete syntax, and structural measures.

The language is classical propositional logic plus one unary modality `[]`.
`<>` is surface syntax only and is desugared to `![]!` while parsing, so a
single canonical AST underlies every structural count.
"""

import random
import re

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")

# Binary connective precedence; unary operators and atoms bind tightest (5).
_PREC = {"<->": 1, "->": 2, "|": 3, "&": 4}


def _wrap(f, minprec):
    if f.prec < minprec:
        return "(" + f.key + ")"
    return f.key


class Formula:
    """Immutable formula node; equality and hashing are structural.

    Every node carries `key`, its canonical printed form, computed once at
    construction. Two nodes are equal iff their keys are equal, which by the
    parser round-trip property coincides with structural equality.
    """

    __slots__ = ("key", "_hash")

    def _finish(self, key):
        self.key = key
        self._hash = hash(key)

    def __eq__(self, other):
        return isinstance(other, Formula) and self.key == other.key

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.key


class Var(Formula):
    __slots__ = ("name",)
    prec = 5

    def __init__(self, name):
        if not _NAME_RE.match(name):
            raise ValueError("invalid variable name: %r" % (name,))
        self.name = name
        self._finish(name)


class Top(Formula):
    __slots__ = ()
    prec = 5

    def __init__(self):
        self._finish("#t")


class Bot(Formula):
    __slots__ = ()
    prec = 5

    def __init__(self):
        self._finish("#f")


class Neg(Formula):
    __slots__ = ("sub",)
    prec = 5

    def __init__(self, sub):
        self.sub = sub
        self._finish("!" + _wrap(sub, 5))


class Box(Formula):
    __slots__ = ("sub",)
    prec = 5

    def __init__(self, sub):
        self.sub = sub
        self._finish("[]" + _wrap(sub, 5))


class Binary(Formula):
    """Binary connective node; op is one of '&', '|', '->', '<->'.

    '->' and '<->' print right-associatively, '&' and '|' left-associatively,
    mirroring the parser, so printing never inserts redundant parentheses.
    """

    __slots__ = ("op", "left", "right")

    def __init__(self, op, left, right):
        if op not in _PREC:
            raise ValueError("unknown connective: %r" % (op,))
        self.op = op
        self.left = left
        self.right = right
        p = _PREC[op]
        if op in ("->", "<->"):
            text = _wrap(left, p + 1) + " " + op + " " + _wrap(right, p)
        else:
            text = _wrap(left, p) + " " + op + " " + _wrap(right, p + 1)
        self._finish(text)

    @property
    def prec(self):
        return _PREC[self.op]


TOP = Top()
BOT = Bot()


def land(a, b):
    return Binary("&", a, b)


def lor(a, b):
    return Binary("|", a, b)


def imp(a, b):
    return Binary("->", a, b)


def iff(a, b):
    return Binary("<->", a, b)


def conj(formulas):
    """Left-folded conjunction; the empty conjunction is #t."""
    formulas = list(formulas)
    if not formulas:
        return TOP
    out = formulas[0]
    for f in formulas[1:]:
        out = land(out, f)
    return out


def disj(formulas):
    """Left-folded disjunction; the empty disjunction is #f."""
    formulas = list(formulas)
    if not formulas:
        return BOT
    out = formulas[0]
    for f in formulas[1:]:
        out = lor(out, f)
    return out


def polarity(f, bit):
    """f under a polarity bit: polarity(f, 1) is f, polarity(f, 0) is !f."""
    if bit not in (0, 1):
        raise ValueError("polarity bit must be 0 or 1")
    return f if bit == 1 else Neg(f)


class FormulaSyntaxError(ValueError):
    """Malformed concrete syntax; `position` is the 0-based character offset."""

    def __init__(self, message, position):
        super().__init__("%s (at offset %d)" % (message, position))
        self.position = position


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "(":
            tokens.append(("(", i))
            i += 1
        elif c == ")":
            tokens.append((")", i))
            i += 1
        elif c == "!":
            tokens.append(("!", i))
            i += 1
        elif c == "&":
            tokens.append(("&", i))
            i += 1
        elif c == "|":
            tokens.append(("|", i))
            i += 1
        elif c == "#":
            if text.startswith("#t", i):
                tokens.append(("#t", i))
            elif text.startswith("#f", i):
                tokens.append(("#f", i))
            else:
                raise FormulaSyntaxError("expected #t or #f", i)
            i += 2
        elif c == "-":
            if text.startswith("->", i):
                tokens.append(("->", i))
                i += 2
            else:
                raise FormulaSyntaxError("expected ->", i)
        elif c == "<":
            if text.startswith("<->", i):
                tokens.append(("<->", i))
                i += 3
            elif text.startswith("<>", i):
                tokens.append(("<>", i))
                i += 2
            else:
                raise FormulaSyntaxError("expected <-> or <>", i)
        elif c == "[":
            if text.startswith("[]", i):
                tokens.append(("[]", i))
                i += 2
            else:
                raise FormulaSyntaxError("expected []", i)
        else:
            m = _IDENT_RE.match(text, i)
            if m is None:
                raise FormulaSyntaxError("unexpected character %r" % c, i)
            tokens.append(("name", i, m.group(0)))
            i = m.end()
    tokens.append(("end", n))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def here(self):
        return self.tokens[self.pos][1]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def iff_level(self):
        left = self.imp_level()
        if self.peek() == "<->":
            self.advance()
            return Binary("<->", left, self.iff_level())
        return left

    def imp_level(self):
        left = self.or_level()
        if self.peek() == "->":
            self.advance()
            return Binary("->", left, self.imp_level())
        return left

    def or_level(self):
        left = self.and_level()
        while self.peek() == "|":
            self.advance()
            left = Binary("|", left, self.and_level())
        return left

    def and_level(self):
        left = self.unary_level()
        while self.peek() == "&":
            self.advance()
            left = Binary("&", left, self.unary_level())
        return left

    def unary_level(self):
        kind = self.peek()
        if kind == "!":
            self.advance()
            return Neg(self.unary_level())
        if kind == "[]":
            self.advance()
            return Box(self.unary_level())
        if kind == "<>":
            self.advance()
            return Neg(Box(Neg(self.unary_level())))
        return self.atom()

    def atom(self):
        kind = self.peek()
        if kind == "name":
            return Var(self.advance()[2])
        if kind == "#t":
            self.advance()
            return TOP
        if kind == "#f":
            self.advance()
            return BOT
        if kind == "(":
            self.advance()
            inner = self.iff_level()
            if self.peek() != ")":
                raise FormulaSyntaxError("expected )", self.here())
            self.advance()
            return inner
        raise FormulaSyntaxError("expected a formula", self.here())


def parse_formula(text):
    """Parse concrete syntax into a Formula.

    Grammar: variables [A-Za-z][A-Za-z0-9_]*, constants #t/#f, operators
    ! & | -> <-> [] <>, parentheses; precedence ! > & > | > -> > <->, with
    -> and <-> right-associative. Raises FormulaSyntaxError on bad input.
    """
    parser = _Parser(_tokenize(text))
    f = parser.iff_level()
    if parser.peek() != "end":
        raise FormulaSyntaxError("unexpected trailing input", parser.here())
    return f


def print_formula(f):
    """Canonical concrete syntax; parse_formula(print_formula(f)) == f."""
    return f.key


def _children(f):
    if isinstance(f, (Neg, Box)):
        return (f.sub,)
    if isinstance(f, Binary):
        return (f.left, f.right)
    return ()


def subformulas(f):
    """The subformula closure of f, including f itself."""
    seen = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        stack.extend(_children(g))
    return seen


def cx(f):
    """Number of distinct boxed subformulas of f."""
    return sum(1 for g in subformulas(f) if isinstance(g, Box))


def rf(f):
    """Reflection instances []B -> B, one per distinct boxed subformula."""
    return {imp(g, g.sub) for g in subformulas(f) if isinstance(g, Box)}


def box_n(n, f):
    """n-fold []; box_n(0, f) is f."""
    for _ in range(n):
        f = Box(f)
    return f


def diamond_n(n, f):
    """n-fold diamond as the abbreviation ![]^n !f; diamond_n(0, f) is f."""
    if n == 0:
        return f
    return Neg(box_n(n, Neg(f)))


def f_s(s):
    """The variable-free height marker []^(s+1)#f -> []^s #f."""
    return imp(box_n(s + 1, BOT), box_n(s, BOT))


def substitute(f, subst):
    """Simultaneous substitution; subst maps variable names to formulas."""
    if isinstance(f, Var):
        return subst.get(f.name, f)
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Neg):
        return Neg(substitute(f.sub, subst))
    if isinstance(f, Box):
        return Box(substitute(f.sub, subst))
    return Binary(f.op, substitute(f.left, subst), substitute(f.right, subst))


def variables(f):
    """Set of variable names occurring in f."""
    return {g.name for g in subformulas(f) if isinstance(g, Var)}


def is_box_free(f):
    return not any(isinstance(g, Box) for g in subformulas(f))


def size(f):
    """Number of AST nodes."""
    total = 0
    stack = [f]
    while stack:
        g = stack.pop()
        total += 1
        stack.extend(_children(g))
    return total


def modal_depth(f):
    """Maximum nesting depth of [] in f."""
    if isinstance(f, Box):
        return 1 + modal_depth(f.sub)
    kids = _children(f)
    if not kids:
        return 0
    return max(modal_depth(g) for g in kids)


_BINOPS = ("&", "|", "->", "<->")


def enumerate_formulas(max_size, names=("p", "q"), max_modal_depth=None,
                       box_free=False):
    """Yield every formula of at most max_size AST nodes over the given
    variables plus #t/#f, smallest sizes first, in a fixed deterministic
    order. Optional caps on modal depth; box_free=True omits [] entirely.
    """
    leaves = [Var(n) for n in sorted(names)] + [TOP, BOT]
    by_size = {1: leaves}
    for f in leaves:
        yield f
    for s in range(2, max_size + 1):
        layer = []
        for g in by_size[s - 1]:
            layer.append(Neg(g))
            if not box_free:
                b = Box(g)
                if max_modal_depth is None or modal_depth(b) <= max_modal_depth:
                    layer.append(b)
        for op in _BINOPS:
            for i in range(1, s - 1):
                right_layer = by_size.get(s - 1 - i, ())
                for left in by_size[i]:
                    for right in right_layer:
                        layer.append(Binary(op, left, right))
        by_size[s] = layer
        for f in layer:
            yield f


def sample_formulas(count, seed=0, names=("p", "q"), max_size=8,
                    max_modal_depth=2, box_free=False):
    """Deterministically sample `count` distinct formulas within the given
    structural bounds, using the seed for reproducible corpora."""
    rng = random.Random(seed)
    leaves = [Var(n) for n in sorted(names)] + [TOP, BOT]

    def build(budget):
        if budget <= 1:
            return rng.choice(leaves)
        roll = rng.random()
        if roll < 0.25:
            return Neg(build(budget - 1))
        if roll < 0.5 and not box_free:
            return Box(build(budget - 1))
        if budget == 2:
            return Neg(build(1))
        split = rng.randint(1, budget - 2)
        op = rng.choice(_BINOPS)
        return Binary(op, build(split), build(budget - 1 - split))

    out = []
    seen = set()
    attempts = 0
    limit = count * 1000
    while len(out) < count:
        attempts += 1
        if attempts > limit:
            raise RuntimeError("sample space too small for requested count")
        f = build(rng.randint(1, max_size))
        if size(f) > max_size:
            continue
        if max_modal_depth is not None and modal_depth(f) > max_modal_depth:
            continue
        if f.key in seen:
            continue
        seen.add(f.key)
        out.append(f)
    return out
