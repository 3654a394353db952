"""Truncated Laurent series in s = q^(1/2) with integer coefficients.

Every character in the library lives here.  Exponents are doubled
(``s**n`` is ``q**(n/2)``), so half-integer gradings stay integral.
"""
from math import comb, factorial

from .errors import InexactDivision, InvalidParameter, StructuralError

DEFAULT_TRUNC = 40
DEFAULT_FLOOR = -128


def format_q(exp):
    """``q`` power for a doubled exponent, e.g. 3 -> ``q^(3/2)``."""
    if exp == 0:
        return "1"
    if exp % 2 == 0:
        e = exp // 2
        return "q" if e == 1 else f"q^{e}"
    return f"q^({exp}/2)"


class QSeries:
    """Immutable truncated Laurent series; exponents ``>= trunc`` are unknown."""

    __slots__ = ("_c", "trunc", "floor")

    def __init__(self, coeffs=None, trunc=DEFAULT_TRUNC, floor=DEFAULT_FLOOR):
        c = {}
        for e, v in (coeffs or {}).items():
            e = int(e)
            v = int(v)
            if v and e < trunc:
                if e < floor:
                    raise InvalidParameter(
                        f"exponent {e} below the configured floor {floor}"
                    )
                c[e] = v
        self._c = c
        self.trunc = int(trunc)
        self.floor = floor

    # construction helpers
    @classmethod
    def one(cls, trunc=DEFAULT_TRUNC):
        return cls({0: 1}, trunc)

    @classmethod
    def monomial(cls, exp, coeff=1, trunc=DEFAULT_TRUNC):
        return cls({exp: coeff}, trunc)

    @classmethod
    def zero(cls, trunc=DEFAULT_TRUNC):
        return cls({}, trunc)

    # inspection
    def coeff(self, exp):
        if exp >= self.trunc:
            raise InvalidParameter(f"coefficient of s^{exp} lies outside the window {self.trunc}")
        return self._c.get(exp, 0)

    def __getitem__(self, exp):
        return self.coeff(exp)

    def terms(self):
        return sorted(self._c.items())

    @property
    def min_exp(self):
        """Lowest stored exponent; ``trunc`` for the zero series."""
        return min(self._c) if self._c else self.trunc

    @property
    def max_exp(self):
        return max(self._c) if self._c else None

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.trunc == other.trunc and self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.trunc, tuple(sorted(self._c.items()))))

    def agrees_with(self, other, upto=None):
        """Coefficientwise equality below ``upto`` (default: the common window)."""
        n = min(self.trunc, other.trunc) if upto is None else upto
        if n > min(self.trunc, other.trunc):
            raise InvalidParameter("comparison window exceeds a series window")
        keys = {e for e in self._c if e < n} | {e for e in other._c if e < n}
        return all(self._c.get(e, 0) == other._c.get(e, 0) for e in keys)

    def value_at_one(self):
        """Sum of stored coefficients; meaningful only for a Laurent polynomial
        lying entirely inside the window."""
        return sum(self._c.values())

    # arithmetic
    def truncate(self, n):
        return QSeries(self._c, min(n, self.trunc), self.floor)

    def _other(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, int):
            return QSeries({0: other}, 1 << 62)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for e, v in o._c.items():
            c[e] = c.get(e, 0) + v
        return QSeries(c, min(self.trunc, o.trunc), min(self.floor, o.floor))

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -v for e, v in self._c.items()}, self.trunc, self.floor)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries({e: v * other for e, v in self._c.items()}, self.trunc, self.floor)
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = min(self.trunc + other.min_exp, other.trunc + self.min_exp)
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                if e < trunc:
                    c[e] = c.get(e, 0) + v1 * v2
        return QSeries(c, trunc, min(self.floor, other.floor))

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by ``s**k``."""
        return QSeries({e + k: v for e, v in self._c.items()}, self.trunc + k, self.floor)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = QSeries({0: other}, 1 << 62)
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.is_zero():
            raise InexactDivision("division by a series with no known terms")
        mb = other.min_exp
        lead = other._c[mb]
        ma = self.min_exp
        trunc = min(self.trunc - mb, other.trunc - 2 * mb + ma)
        out = {}
        rem = dict(self._c)
        start = ma - mb
        for n in range(start, trunc):
            r = rem.get(n + mb, 0)
            if r == 0:
                continue
            q, rr = divmod(r, lead)
            if rr:
                raise InexactDivision(f"coefficient {r} of s^{n + mb} not divisible by {lead}")
            out[n] = q
            for e, v in other._c.items():
                k = n + e
                if k < trunc + mb:
                    rem[k] = rem.get(k, 0) - q * v
        return QSeries(out, trunc, min(self.floor, other.floor))

    def __pow__(self, n):
        if n < 0:
            return QSeries.one(self.trunc - n * self.min_exp) / (self ** (-n))
        out = QSeries.one(1 << 62)
        for _ in range(n):
            out = out * self
        return out

    # output
    def to_json(self):
        return {"trunc": self.trunc, "terms": [[e, str(v)] for e, v in self.terms()]}

    @classmethod
    def from_json(cls, obj):
        return cls({int(e): int(v) for e, v in obj["terms"]}, obj["trunc"])

    def report_terms(self):
        """Terms with both the s-exponent and the q-power spelled out."""
        return [{"s_exp": e, "q": format_q(e), "coeff": str(v)} for e, v in self.terms()]

    def __repr__(self):
        if not self._c:
            body = "0"
        else:
            parts = []
            for e, v in self.terms():
                m = format_q(e)
                if m == "1":
                    parts.append(str(v))
                elif v == 1:
                    parts.append(m)
                elif v == -1:
                    parts.append("-" + m)
                else:
                    parts.append(f"{v}*{m}")
            body = " + ".join(parts).replace("+ -", "- ")
        return f"QSeries({body} + O(s^{self.trunc}))"


# --- polynomial helpers (exact, untruncated, ascending coefficient lists) ---

def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdivexact(num, den):
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    dl = len(den) - 1
    if len(num) - 1 < dl:
        if any(num):
            raise InexactDivision("polynomial division leaves a remainder")
        return [0]
    q = [0] * (len(num) - dl)
    for i in range(len(num) - 1, dl - 1, -1):
        c, r = divmod(num[i], den[-1])
        if r:
            raise InexactDivision("polynomial division leaves a remainder")
        q[i - dl] = c
        if c:
            for j, d in enumerate(den):
                num[i - dl + j] -= c * d
    if any(num[:dl]):
        raise InexactDivision("polynomial division leaves a remainder")
    return q


def _bracket_poly(n2):
    """[n2/2] = 1 - s^n2 as an s-polynomial."""
    p = [0] * (n2 + 1)
    p[0] = 1
    p[n2] -= 1
    return p


def _prod(polys):
    out = [1]
    for p in polys:
        out = _pmul(out, p)
    return out


def _int_factorial_poly(k):
    """[k]! = [1][2]...[k] in s."""
    return _prod(_bracket_poly(2 * i) for i in range(1, k + 1))


def _half_factorial_poly(k):
    """[k+1/2]! = [1/2][3/2]...[k+1/2] in s; k = -1 gives 1."""
    return _prod(_bracket_poly(2 * i + 1) for i in range(0, k + 1))


def _series(poly, trunc, shift=0):
    return QSeries({i + shift: v for i, v in enumerate(poly) if v}, trunc)


def _inverse_product(degrees, trunc):
    """prod 1/(1 - s^d) truncated below s^trunc."""
    c = [0] * max(trunc, 1)
    c[0] = 1
    for d in degrees:
        for n in range(d, trunc):
            c[n] += c[n - d]
    return QSeries(dict(enumerate(c)), trunc)


# --- public operations ---

def q_binomial(g, j, trunc=DEFAULT_TRUNC):
    """Gaussian binomial [g]!/([j]![g-j]!) as a polynomial in q (s-doubled)."""
    if trunc < 1:
        raise InvalidParameter("trunc must be >= 1")
    if j < 0 or g < 0 or j > g:
        return QSeries.zero(trunc)
    num = _int_factorial_poly(g)
    den = _pmul(_int_factorial_poly(j), _int_factorial_poly(g - j))
    return _series(_pdivexact(num, den), trunc)


def bracket(n2, trunc=DEFAULT_TRUNC):
    return _series(_bracket_poly(n2), trunc)


def q_factorial(k, trunc=DEFAULT_TRUNC):
    return _series(_int_factorial_poly(k), trunc)


def half_factorial(k, trunc=DEFAULT_TRUNC):
    """[k + 1/2]!"""
    return _series(_half_factorial_poly(k), trunc)


def _check_genus(g):
    if not isinstance(g, int) or g < 1:
        raise InvalidParameter(f"genus must be a positive integer, got {g!r}")


def ch_free(g, trunc=DEFAULT_TRUNC):
    """ch(A) = [1/2] / ([g+1/2]! [g]! [g+1]!)."""
    _check_genus(g)
    num = bracket(1, trunc)
    den = half_factorial(g, trunc) * q_factorial(g, trunc) * q_factorial(g + 1, trunc)
    return num / den


def ch_determinant_ring(g, trunc=DEFAULT_TRUNC):
    """ch(F) = 1/[2g+1]!."""
    _check_genus(g)
    return QSeries.one(trunc) / q_factorial(2 * g + 1, trunc)


def ch_quotient(g, trunc=DEFAULT_TRUNC):
    """ch(A0) from the product over the monomial basis."""
    _check_genus(g)
    low = _inverse_product([1 + j for j in range(1, g + 1)], trunc)
    high = QSeries.one(trunc)
    for k in range(1, g + 1):
        high = high * QSeries({0: 1, g + 1 + k: 1}, trunc)
    return low * high


def ring_characters(g, trunc=DEFAULT_TRUNC):
    """``(ch_A, ch_F, ch_A0)``; raises if ch_A0 * ch_F != ch_A in the window."""
    _check_genus(g)
    ch_a = ch_free(g, trunc)
    ch_f = ch_determinant_ring(g, trunc)
    ch_a0 = ch_quotient(g, trunc)
    if not (ch_a0 * ch_f).agrees_with(ch_a):
        raise StructuralError(f"ch_A0 * ch_F != ch_A for g={g}")
    return ch_a, ch_f, ch_a0


def r_series(g, k, trunc=DEFAULT_TRUNC):
    """R_k = q^(k(k-2g)/2) [2g choose k]; zero outside 0 <= k <= 2g."""
    if k < 0 or k > 2 * g:
        return QSeries.zero(trunc)
    shift = k * (k - 2 * g)
    return q_binomial(2 * g, k, trunc - shift).shift(shift)


def w_character(g, k, trunc=DEFAULT_TRUNC):
    """ch(W^k) = R_k - R_{k-2}."""
    return r_series(g, k, trunc) - r_series(g, k - 2, trunc)


def cochain_character(g, k, trunc=DEFAULT_TRUNC, ch_a0=None):
    """ch(C^k_0) = q^((j^2-g^2)/2) [g choose j] ch(A0) with j = g - k."""
    j = g - k
    shift = j * j - g * g
    work = trunc - shift
    if ch_a0 is None:
        ch_a0 = ch_quotient(g, work)
    return (q_binomial(g, j, work) * ch_a0.truncate(work)).shift(shift).truncate(trunc)


def euler_closed_form(g, trunc=DEFAULT_TRUNC):
    """(-1)^g q^(-g^2/2) [g-1/2]! ch(A0)."""
    work = trunc + g * g
    x = (half_factorial(g - 1, work) * ch_quotient(g, work)).shift(-g * g)
    return (x * (-1) ** g).truncate(trunc)


def euler_closed_form_ratio(g, trunc=DEFAULT_TRUNC):
    """(-1)^g q^(-g^2/2) [2g+1]! [1/2] / ([g+1/2] [g]! [g+1]!), by exact division."""
    num = _pmul(_int_factorial_poly(2 * g + 1), _bracket_poly(1))
    den = _prod([_bracket_poly(2 * g + 1), _int_factorial_poly(g), _int_factorial_poly(g + 1)])
    poly = _pdivexact(num, den)
    return (_series(poly, trunc + g * g) * (-1) ** g).shift(-g * g).truncate(trunc)


def complex_characters(g, k, trunc=DEFAULT_TRUNC):
    """``(ch_Ck0, chi_q, R_k, ch_Wk)`` for the complex C*_0.

    chi_q is computed from the alternating sum of cochain characters and
    from both closed forms; any disagreement raises StructuralError.
    """
    _check_genus(g)
    if not isinstance(k, int) or k < 0 or k > g:
        raise InvalidParameter(f"need 0 <= k <= g, got k={k!r}, g={g}")
    work = trunc + g * g + 2
    ch_a0 = ch_quotient(g, work)
    chs = [cochain_character(g, i, work, ch_a0) for i in range(g + 1)]
    chi_def = QSeries.zero(work)
    for i, c in enumerate(chs):
        chi_def = chi_def + c * (-1) ** i
    chi_def = chi_def.truncate(trunc)
    chi_closed = euler_closed_form(g, trunc)
    chi_ratio = euler_closed_form_ratio(g, trunc)
    if not (chi_def.agrees_with(chi_closed) and chi_def.agrees_with(chi_ratio)):
        raise StructuralError(f"q-Euler characteristic routes disagree for g={g}")
    return chs[k].truncate(trunc), chi_def, r_series(g, k, trunc), w_character(g, k, trunc)


def euler_characteristic(g, trunc=DEFAULT_TRUNC):
    return complex_characters(g, 0, trunc)[1]


def telescoping_check(g, trunc=DEFAULT_TRUNC):
    """The alternating W-character sum against R_g - R_{g-1} and chi_q."""
    _check_genus(g)
    alt = QSeries.zero(trunc)
    for k in range(g + 1):
        alt = alt + w_character(g, k, trunc) * (-1) ** k
    top = (r_series(g, g, trunc) - r_series(g, g - 1, trunc)) * (-1) ** g
    chi = euler_characteristic(g, trunc)
    # ch(D) (R_g - R_{g-1}) q^(g^2/2) = ch(A0)
    work = trunc + g * g
    ch_d = _inverse_product([2 * j - 1 for j in range(1, g + 1)], work)
    lemma = (ch_d * (r_series(g, g, work) - r_series(g, g - 1, work))).shift(g * g)
    return {
        "alternating_w_equals_top_difference": alt.agrees_with(top),
        "top_difference_equals_chi": top.agrees_with(chi),
        "cokernel_identity": lemma.agrees_with(ch_quotient(g, trunc), upto=min(trunc, lemma.trunc)),
    }


def euler_limit(g):
    """lim_{q->1} chi_q = (-1)^g (2g)!/(g!(g+1)!), by two independent routes."""
    _check_genus(g)
    closed = (-1) ** g * (comb(2 * g, g) - comb(2 * g, g - 1))
    assert closed == (-1) ** g * factorial(2 * g) // (factorial(g) * factorial(g + 1))
    num = _pmul(_int_factorial_poly(2 * g + 1), _bracket_poly(1))
    den = _prod([_bracket_poly(2 * g + 1), _int_factorial_poly(g), _int_factorial_poly(g + 1)])
    via_product = (-1) ** g * sum(_pdivexact(num, den))
    if via_product != closed:
        raise StructuralError(f"euler limit routes disagree for g={g}: {closed} vs {via_product}")
    return closed
