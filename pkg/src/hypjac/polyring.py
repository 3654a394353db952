"""Sparse polynomials over Q in the coefficient generators of the Lax matrix.

Generators for genus g, with doubled degrees:

    a1..ag       a_{j+1/2}, degree 2j+1   (token ``aj`` means a_{j+1/2})
    b1..bg       b_j, degree 2j
    c1..c{g+1}   c_j, degree 2j
    f1..f{2g+1}  f_j, degree 2j

Monomials are dense exponent tuples over that fixed variable order.
Coefficients are ``int`` when integral and ``Fraction`` otherwise.
"""
import re
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from . import kernels
from .errors import GenusMismatch, InvalidParameter, ParseError, UndefinedDerivation

KINDS = ("A", "B", "C", "F")

TOKEN_HELP = (
    "generator tokens: aj = a_{j+1/2} (1<=j<=g), bj (1<=j<=g), "
    "cj (1<=j<=g+1), fj (1<=j<=2g+1); rationals as n or n/d; operators + - * ^ ( )"
)


class GenId(NamedTuple):
    kind: str
    index: int

    @property
    def deg2(self):
        return 2 * self.index + 1 if self.kind == "A" else 2 * self.index

    @property
    def token(self):
        return f"{self.kind.lower()}{self.index}"

    def __repr__(self):
        return self.token


def norm(c):
    """Canonical coefficient: int when integral."""
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    return c


def u_gen(p2):
    """The generator u_p for doubled index p2 = 2p (2 <= p2 <= 2g+1)."""
    return GenId("B", p2 // 2) if p2 % 2 == 0 else GenId("A", (p2 - 1) // 2)


class PolyRing:
    """Variable bookkeeping for one genus."""

    def __init__(self, g):
        if g < 1:
            raise InvalidParameter(f"genus must be >= 1, got {g}")
        self.g = g
        gens = [GenId("A", j) for j in range(1, g + 1)]
        gens += [GenId("B", j) for j in range(1, g + 1)]
        gens += [GenId("C", j) for j in range(1, g + 2)]
        gens += [GenId("F", j) for j in range(1, 2 * g + 2)]
        self.gens = tuple(gens)
        self.nvars = len(gens)
        self.index = {x: i for i, x in enumerate(gens)}
        self.deg2 = tuple(x.deg2 for x in gens)
        self.by_token = {x.token: x for x in gens}
        self.zero_mono = (0,) * self.nvars
        # low/high split of the a,b generators in u-notation
        self.low = tuple(self.index[u_gen(p2)] for p2 in range(2, g + 2))
        self.high = tuple(self.index[u_gen(p2)] for p2 in range(g + 2, 2 * g + 2))
        self.c_slice = tuple(self.index[GenId("C", j)] for j in range(1, g + 2))
        self.f_slice = tuple(self.index[GenId("F", j)] for j in range(1, 2 * g + 2))

    def __repr__(self):
        return f"PolyRing(g={self.g})"

    def gen(self, x):
        if isinstance(x, str):
            x = self.by_token[x]
        e = [0] * self.nvars
        e[self.index[x]] = 1
        return Poly(self, {tuple(e): 1})

    def const(self, c):
        c = norm(Fraction(c))
        return Poly(self, {self.zero_mono: c} if c else {})

    def zero(self):
        return Poly(self, {})

    def mono_deg2(self, m):
        return sum(e * d for e, d in zip(m, self.deg2) if e)

    def high_key(self, m):
        """Order key of the square-free-reduction order on a monomial.

        Compares the degree of the high-generator part first, then the high
        exponents read from the left, where a smaller exponent is larger.
        """
        hd = 0
        for i in self.high:
            if m[i]:
                hd += m[i] * self.deg2[i]
        return (hd, tuple(-m[i] for i in self.high))

    def order_key(self, m):
        """Total order used for canonical printing and basis listings."""
        return (
            self.mono_deg2(m),
            self.high_key(m),
            tuple(m[i] for i in self.low),
            tuple(m[i] for i in self.c_slice),
            tuple(-m[i] for i in self.f_slice),
        )

    def mono_from_sparse(self, items):
        e = [0] * self.nvars
        for kind, idx, exp in items:
            x = GenId(kind.upper(), int(idx))
            if x not in self.index:
                raise InvalidParameter(f"generator {x.token} out of range for g={self.g}")
            e[self.index[x]] += int(exp)
        return tuple(e)

    def mono_to_sparse(self, m):
        return [[x.kind.lower(), x.index, e] for x, e in zip(self.gens, m) if e]


@lru_cache(maxsize=None)
def ring(g):
    return PolyRing(g)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, R, terms):
        self.ring = R
        self.terms = {m: norm(c) for m, c in terms.items() if c}

    @property
    def g(self):
        return self.ring.g

    # --- arithmetic ---
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring.g != self.ring.g:
                raise GenusMismatch(f"genus {self.ring.g} vs {other.ring.g}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for m, c in o.terms.items():
            v = norm(t.get(m, 0) + c)
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return Poly(self.ring, {m: norm(c * other) for m, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = kernels.poly_mul(self.terms, o.terms)
        return Poly(self.ring, {m: norm(c) for m, c in t.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return self * (Fraction(1) / Fraction(c))

    def __pow__(self, n):
        if n < 0:
            raise InvalidParameter("negative power")
        out = self.ring.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Poly) else other
        if o is None:
            return NotImplemented
        return self.ring.g == o.ring.g and self.terms == o.terms

    def __hash__(self):
        return hash((self.ring.g, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # --- structure ---
    def variables(self):
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return {self.ring.gens[i] for i in used}

    def degrees(self):
        return {self.ring.mono_deg2(m) for m in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def deg2(self):
        """Doubled degree of a homogeneous polynomial (None for zero)."""
        d = self.degrees()
        if not d:
            return None
        if len(d) > 1:
            raise InvalidParameter("polynomial is not homogeneous")
        return d.pop()

    def homogeneous_components(self):
        out = {}
        for m, c in self.terms.items():
            out.setdefault(self.ring.mono_deg2(m), {})[m] = c
        return {d: Poly(self.ring, t) for d, t in sorted(out.items())}

    def component(self, d):
        R = self.ring
        return Poly(R, {m: c for m, c in self.terms.items() if R.mono_deg2(m) == d})

    def coeff(self, mono):
        return self.terms.get(mono, 0)

    def constant_term(self):
        return self.terms.get(self.ring.zero_mono, 0)

    def derivative(self, x):
        i = self.ring.index[x]
        t = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                t[mm] = norm(t.get(mm, 0) + c * e)
        return Poly(self.ring, {m: c for m, c in t.items() if c})

    def substitute(self, images):
        """Replace generators by polynomials; ``images`` maps GenId -> Poly."""
        R = self.ring
        idx = {R.index[x]: p for x, p in images.items()}
        powers = {}
        acc = {}
        for m, c in self.terms.items():
            keep = list(m)
            prod = {R.zero_mono: c}
            for i, p in idx.items():
                e = m[i]
                if e:
                    keep[i] = 0
                    key = (i, e)
                    if key not in powers:
                        powers[key] = (p ** e).terms
                    prod = kernels.poly_mul(prod, powers[key])
            kernels.poly_addmul_mono(acc, prod, tuple(keep), 1)
        return Poly(R, {m: norm(c) for m, c in acc.items() if c})

    def evaluate(self, values, zero=0):
        """Evaluate at ``values`` (GenId -> number); missing generators raise."""
        R = self.ring
        vals = {}
        total = zero
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    if i not in vals:
                        vals[i] = values[R.gens[i]]
                    term = term * vals[i] ** e
            total = total + term
        return total

    # --- text / json ---
    def sorted_terms(self):
        key = self.ring.order_key
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def to_text(self):
        if not self.terms:
            return "0"
        R = self.ring
        out = []
        for m, c in self.sorted_terms():
            factors = []
            for x, e in zip(R.gens, m):
                if e:
                    factors.append(x.token if e == 1 else f"{x.token}^{e}")
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = str(a) + "*" + "*".join(factors)
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    __str__ = to_text

    def __repr__(self):
        return f"Poly(g={self.ring.g}: {self.to_text()})"

    def to_json(self):
        R = self.ring
        return {
            "g": R.g,
            "terms": [
                {"mono": R.mono_to_sparse(m), "coeff": str(Fraction(c))}
                for m, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj):
        R = ring(int(obj["g"]))
        t = {}
        for term in obj["terms"]:
            m = R.mono_from_sparse(term["mono"])
            c = norm(t.get(m, 0) + Fraction(term["coeff"]))
            if c:
                t[m] = c
            else:
                t.pop(m, None)
        return cls(R, t)


# --- parsing ---

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([abcf])(\d+)|(\*\*|[-+*^()/]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r}", pos)
        start = m.start(2) if m.group(2) else m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("gen", (m.group(2), int(m.group(3))), start))
        else:
            op = m.group(4)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, R):
        self.toks = _tokenize(text)
        self.i = 0
        self.R = R

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2])
        return p

    def expr(self):
        p = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if t[1] == "+" else p - q
            else:
                return p

    def term(self):
        p = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                p = p * self.unary()
            else:
                return p

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            p = self.unary()
            return -p if t[1] == "-" else p
        return self.power()

    def power(self):
        p = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            n = self.take()
            if n[0] != "num":
                raise ParseError("exponent must be a non-negative integer", n[2])
            p = p ** n[1]
        return p

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise ParseError("expected denominator", d[2])
                if d[1] == 0:
                    raise ParseError("zero denominator", d[2])
                return self.R.const(Fraction(val, d[1]))
            return self.R.const(val)
        if kind == "gen":
            letter, idx = val
            x = GenId(letter.upper(), idx)
            if x not in self.R.index:
                raise ParseError(
                    f"generator {letter}{idx}: index out of range for g={self.R.g}", pos
                )
            return self.R.gen(x)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_poly(text, g):
    """Parse the canonical text form into a Poly of genus ``g``."""
    return _Parser(text, ring(g)).parse()


def poly_arith(x, y, op):
    if x.ring.g != y.ring.g:
        raise GenusMismatch(f"genus {x.ring.g} vs {y.ring.g}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise InvalidParameter(f"unknown operation {op!r}")


# --- derivations ---

class Derivation:
    """A derivation given by its images on generators, extended by Leibniz.

    F-kind generators default to image zero.
    """

    def __init__(self, g, images, label="", doubled_degree_shift=None):
        self.ring = ring(g)
        self.images = dict(images)
        self.label = label
        self.doubled_degree_shift = doubled_degree_shift
        self._idx = {}
        for x, p in self.images.items():
            if not p.is_zero():
                self._idx[self.ring.index[x]] = p.terms

    def image(self, x):
        if x in self.images:
            return self.images[x]
        if x.kind == "F":
            return self.ring.zero()
        raise UndefinedDerivation(f"derivation {self.label!r} has no image for {x.token}")

    def __call__(self, x):
        return apply_derivation(self, x)


def apply_derivation(d, x):
    R = x.ring
    if R.g != d.ring.g:
        raise GenusMismatch(f"genus {R.g} vs {d.ring.g}")
    needed = x.variables()
    for v in needed:
        if v not in d.images and v.kind != "F":
            raise UndefinedDerivation(f"derivation {d.label!r} has no image for {v.token}")
    acc = {}
    idx = d._idx
    for m, c in x.terms.items():
        for i, e in enumerate(m):
            if e and i in idx:
                rest = m[:i] + (e - 1,) + m[i + 1:]
                kernels.poly_addmul_mono(acc, idx[i], rest, c * e)
    return Poly(R, {m: norm(c) for m, c in acc.items() if c})
