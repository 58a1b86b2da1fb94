"""Laurent polynomials over F_p and Z, polynomial matrices, Smith normal form.

A :class:`LaurentPoly` is stored densely as a lowest exponent ``lo`` plus an
ascending coefficient tuple ``c`` whose first and last entries are nonzero.
``p`` is the characteristic: a prime for F_p[t^{+-1}], ``None`` for Z[t^{+-1}].

Smith normal form is computed directly in F_p[t^{+-1}], using the span
(max exponent minus min exponent) as Euclidean function.  Monomials are units
there, so they become pivots without any degree growth.
"""

import math
from functools import reduce

NEG_INF = float("-inf")
MAX_PRIME = 2**31


def _trim(c):
    lo = 0
    hi = len(c)
    while lo < hi and not c[lo]:
        lo += 1
    while hi > lo and not c[hi - 1]:
        hi -= 1
    return lo, c[lo:hi]


class LaurentPoly:
    """Immutable Laurent polynomial in one variable ``t``."""

    __slots__ = ("p", "lo", "c")

    def __init__(self, coeffs=(), lo=0, p=None):
        if p is not None:
            coeffs = [x % p for x in coeffs]
        off, c = _trim(tuple(coeffs))
        self.p = p
        self.c = c
        self.lo = lo + off if c else 0

    @classmethod
    def _raw(cls, c, lo, p):
        # c must already be trimmed and reduced
        obj = object.__new__(cls)
        obj.p = p
        obj.c = c
        obj.lo = lo if c else 0
        return obj

    @classmethod
    def from_dict(cls, terms, p=None):
        terms = {e: v for e, v in terms.items() if (v % p if p else v)}
        if not terms:
            return cls((), 0, p)
        lo = min(terms)
        c = [0] * (max(terms) - lo + 1)
        for e, v in terms.items():
            c[e - lo] = v
        return cls(c, lo, p)

    @classmethod
    def monomial(cls, exp, coeff=1, p=None):
        return cls((coeff,), exp, p)

    @classmethod
    def zero(cls, p=None):
        return cls._raw((), 0, p)

    @classmethod
    def one(cls, p=None):
        return cls._raw((1,), 0, p)

    # -- inspection ---------------------------------------------------------

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    @property
    def hi(self):
        return self.lo + len(self.c) - 1

    def degree(self):
        return lp_degree(self)

    def span(self):
        return len(self.c) - 1

    def leading(self):
        return self.c[-1]

    def trailing(self):
        return self.c[0]

    def to_dict(self):
        return {self.lo + i: v for i, v in enumerate(self.c) if v}

    def is_unit(self):
        if len(self.c) != 1:
            return False
        return self.p is not None or self.c[0] in (1, -1)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly((other,), 0, self.p)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.p == other.p and self.lo == other.lo and self.c == other.c

    def __hash__(self):
        return hash((self.p, self.lo, self.c))

    def __repr__(self):
        field = "Z" if self.p is None else f"F{self.p}"
        return f"LaurentPoly({self}, {field})"

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            v = self.c[i]
            if not v:
                continue
            e = self.lo + i
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and v == 1:
                s = mono
            elif mono and v == -1:
                s = "-" + mono
            else:
                s = f"{v}{'*' + mono if mono else ''}"
            parts.append(s)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            return LaurentPoly((other,), 0, self.p)
        if not isinstance(other, LaurentPoly):
            return None
        if other.p != self.p:
            raise ValueError("mixing polynomials over different coefficient rings")
        return other

    def __neg__(self):
        p = self.p
        if p is None:
            return LaurentPoly._raw(tuple(-x for x in self.c), self.lo, None)
        return LaurentPoly._raw(tuple(-x % p for x in self.c), self.lo, p)

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        if not other.c:
            return self
        if not self.c:
            return other
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = [0] * (hi - lo + 1)
        off = self.lo - lo
        for i, v in enumerate(self.c):
            out[off + i] = v
        off = other.lo - lo
        for i, v in enumerate(other.c):
            out[off + i] += v
        p = self.p
        if p is not None:
            out = [x % p for x in out]
        off, c = _trim(tuple(out))
        return LaurentPoly._raw(c, lo + off, p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.p
            if p is not None:
                other %= p
                if not other:
                    return LaurentPoly.zero(p)
                return LaurentPoly._raw(tuple(x * other % p for x in self.c), self.lo, p)
            if not other:
                return LaurentPoly.zero(None)
            return LaurentPoly._raw(tuple(x * other for x in self.c), self.lo, None)
        other = self._check(other)
        if other is None:
            return NotImplemented
        a, b = self.c, other.c
        if not a or not b:
            return LaurentPoly.zero(self.p)
        if len(a) == 1:
            a, b = b, a
        if len(b) == 1:
            v = b[0]
            out = [x * v for x in a]
        else:
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
        p = self.p
        if p is not None:
            out = [x % p for x in out]
            off, c = _trim(tuple(out))
            return LaurentPoly._raw(c, self.lo + other.lo + off, p)
        return LaurentPoly._raw(tuple(out), self.lo + other.lo, None)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentPoly._raw(self.c, self.lo + k, self.p)

    def invert_variable(self):
        """Substitute t -> t^{-1}."""
        return LaurentPoly._raw(self.c[::-1], -self.hi, self.p) if self.c else self

    def reduce(self, p):
        """Reduce an integer polynomial modulo the prime ``p``."""
        return LaurentPoly(self.c, self.lo, p)

    def __divmod__(self, other):
        """Euclidean division in F_p[t^{+-1}] with respect to the span.

        Both operands are viewed as t^lo times an ordinary polynomial with
        nonzero constant term; the remainder has span strictly below
        ``other.span()``.
        """
        other = self._check(other)
        p = self.p
        if p is None:
            raise ValueError("divmod is only defined over a prime field")
        if not other.c:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.c:
            return LaurentPoly.zero(p), LaurentPoly.zero(p)
        b = other.c
        db = len(b) - 1
        r = list(self.c)
        if len(r) - 1 < db:
            return LaurentPoly.zero(p), self
        inv = pow(b[-1], -1, p)
        q = [0] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            v = r[i]
            if v:
                f = v * inv % p
                q[i - db] = f
                base = i - db
                for j in range(db + 1):
                    r[base + j] = (r[base + j] - f * b[j]) % p
        quot = LaurentPoly(q, self.lo - other.lo, p)
        rem = LaurentPoly(r[:db], self.lo, p)
        return quot, rem

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        """True if ``self`` divides ``other`` in the Laurent ring over F_p."""
        if not self.c:
            return not other.c
        return not divmod(other, self)[1].c

    def to_json(self):
        return {"min_exp": self.lo, "coeffs": list(self.c)}

    @classmethod
    def from_json(cls, obj, p=None):
        return cls(obj["coeffs"], obj["min_exp"], p)


def poly_gcd(a, b):
    """Normalized gcd in F_p[t^{+-1}]."""
    while b.c:
        a, b = b, a % b
    return lp_normalize(a)


def exact_div(a, b):
    """Exact division ``a / b`` in Z[t^{+-1}] or F_p[t^{+-1}].

    Raises ``ArithmeticError`` if the quotient is not a Laurent polynomial.
    """
    if not b.c:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a.c:
        return a
    p = a.p
    r = list(a.c)
    bc = b.c
    db = len(bc) - 1
    if len(r) - 1 < db:
        raise ArithmeticError("inexact polynomial division")
    lead = bc[-1]
    inv = pow(lead, -1, p) if p is not None else None
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        v = r[i]
        if not v:
            continue
        if p is None:
            f, rem = divmod(v, lead)
            if rem:
                raise ArithmeticError("inexact polynomial division")
        else:
            f = v * inv % p
        q[i - db] = f
        base = i - db
        for j in range(db + 1):
            r[base + j] -= f * bc[j]
        if p is not None:
            for j in range(db + 1):
                r[base + j] %= p
    if any(r[:db]):
        raise ArithmeticError("inexact polynomial division")
    return LaurentPoly(q, a.lo - b.lo, p)


def lp_normalize(f):
    """Canonical representative of ``f`` up to units.

    Shifts the lowest exponent to 0.  Over F_p the constant term is scaled to
    1; over Z the sign is flipped so that the top coefficient is positive.
    """
    if not f.c:
        return f
    c = f.c
    p = f.p
    if p is None:
        if c[-1] < 0:
            c = tuple(-x for x in c)
    elif c[0] != 1:
        inv = pow(c[0], -1, p)
        c = tuple(x * inv % p for x in c)
    return LaurentPoly._raw(c, 0, p)


def lp_degree(f):
    """Span of the support; ``-inf`` for the zero polynomial."""
    if not f.c:
        return NEG_INF
    return len(f.c) - 1


def is_monic(f):
    """Canonical form has top coefficient 1 (integer polynomials)."""
    f = lp_normalize(f)
    return bool(f.c) and f.c[-1] == 1


class PolyMatrix:
    """Dense matrix of Laurent polynomials sharing one coefficient ring."""

    def __init__(self, rows, cols, entries=None, p=None):
        self.rows = rows
        self.cols = cols
        self.p = p
        if entries is None:
            z = LaurentPoly.zero(p)
            entries = [[z] * cols for _ in range(rows)]
        else:
            entries = [list(r) for r in entries]
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ValueError("entries do not match the declared shape")
            for r in entries:
                for i, e in enumerate(r):
                    if isinstance(e, int):
                        r[i] = LaurentPoly((e,), 0, p)
                    elif e.p != p:
                        raise ValueError("matrix entries must share the modulus")
        self.entries = entries

    @classmethod
    def from_rows(cls, rows, p=None):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows, p)

    @classmethod
    def identity(cls, n, p=None):
        m = cls(n, n, p=p)
        for i in range(n):
            m.entries[i][i] = LaurentPoly.one(p)
        return m

    @classmethod
    def diag(cls, polys, p=None):
        m = cls(len(polys), len(polys), p=p)
        for i, f in enumerate(polys):
            m.entries[i][i] = f
        return m

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.entries[i][j] = value

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.p == other.p and self.entries == other.entries

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = PolyMatrix(self.rows, other.cols, p=self.p)
        z = LaurentPoly.zero(self.p)
        for i in range(self.rows):
            row = self.entries[i]
            acc = [z] * other.cols
            for k, a in enumerate(row):
                if not a.c:
                    continue
                orow = other.entries[k]
                for j, b in enumerate(orow):
                    if b.c:
                        acc[j] = acc[j] + a * b
            out.entries[i] = acc
        return out

    def is_zero(self):
        return all(not e.c for r in self.entries for e in r)

    def reduce(self, p):
        return PolyMatrix(self.rows, self.cols, [[e.reduce(p) for e in r] for r in self.entries], p)

    def delete_column(self, j):
        return PolyMatrix(self.rows, self.cols - 1,
                          [r[:j] + r[j + 1:] for r in self.entries], self.p)

    def delete_row(self, i):
        return PolyMatrix(self.rows - 1, self.cols,
                          self.entries[:i] + self.entries[i + 1:], self.p)

    def transpose(self):
        return PolyMatrix(self.cols, self.rows,
                          [list(c) for c in zip(*self.entries)] if self.rows else
                          [[] for _ in range(self.cols)], self.p)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, p={self.p})"


class SnfResult:
    """Rank and elementary divisors (canonical, each dividing the next)."""

    def __init__(self, rank, divisors):
        self.rank = rank
        self.divisors = list(divisors)

    def order(self):
        """Product of the elementary divisors, normalized."""
        if not self.divisors:
            return None
        return lp_normalize(reduce(lambda a, b: a * b, self.divisors))

    def __repr__(self):
        return f"SnfResult(rank={self.rank}, divisors={[str(d) for d in self.divisors]})"


def _poly_divmod(a, b):
    # ordinary division in F_p[t]; both operands have non-negative exponents
    p = a.p
    if not a.c:
        return a, a
    r = [0] * a.lo + list(a.c)
    bc = [0] * b.lo + list(b.c)
    db = len(bc) - 1
    if len(r) - 1 < db:
        return LaurentPoly.zero(p), a
    inv = pow(bc[-1], -1, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        v = r[i]
        if v:
            f = v * inv % p
            q[i - db] = f
            base = i - db
            for j in range(db + 1):
                r[base + j] = (r[base + j] - f * bc[j]) % p
    return LaurentPoly(q, 0, p), LaurentPoly(r[:db], 0, p)


def _monic(f):
    if not f.c or f.c[-1] == 1:
        return f
    inv = pow(f.c[-1], -1, f.p)
    return LaurentPoly._raw(tuple(x * inv % f.p for x in f.c), f.lo, f.p)


class _Laurent:
    size = staticmethod(lambda e: len(e.c))
    divmod = staticmethod(divmod)
    normalize = staticmethod(lp_normalize)


class _Ordinary:
    size = staticmethod(lambda e: e.hi + 1)
    divmod = staticmethod(_poly_divmod)
    normalize = staticmethod(_monic)


def _diagonal_pivots(m, ring):
    """Eliminate ``m`` to a diagonal form; returns the nonzero pivots.

    Rows are held as sparse dicts.  Column operations are only needed on the
    pivot row, because the pivot column is cleared first.
    """
    size = ring.size
    div = ring.divmod
    rows = []
    for r in m.entries:
        d = {j: e for j, e in enumerate(r) if e.c}
        if d:
            rows.append(d)
    pivots = []
    while True:
        # pivot: minimal Euclidean size, leftmost column, then topmost row
        best = None
        for ri, row in enumerate(rows):
            for j, e in row.items():
                key = (size(e), j, ri)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, pj, pi = best
        while True:
            piv = rows[pi][pj]
            # clear the pivot column with row operations
            smaller = None
            for ri, row in enumerate(rows):
                if ri == pi:
                    continue
                e = row.get(pj)
                if e is None:
                    continue
                q, rem = div(e, piv)
                for j, v in rows[pi].items():
                    nv = row.get(j)
                    nv = -(q * v) if nv is None else nv - q * v
                    if nv.c:
                        row[j] = nv
                    else:
                        row.pop(j, None)
                if rem.c and (smaller is None or size(rem) < size(rows[smaller][pj])):
                    smaller = ri
            if smaller is not None:
                pi = smaller
                continue
            # clear the pivot row with column operations (only this row is touched)
            prow = rows[pi]
            smaller = None
            for j in list(prow):
                if j == pj:
                    continue
                rem = div(prow[j], piv)[1]
                if rem.c:
                    prow[j] = rem
                    if smaller is None or size(rem) < size(prow[smaller]):
                        smaller = j
                else:
                    del prow[j]
            if smaller is not None:
                pj = smaller
                continue
            break
        pivots.append(rows[pi][pj])
        del rows[pi]
        rows = [r for r in rows if r]
    return [ring.normalize(x) for x in pivots]


def smith_normal_form(m, ring="laurent"):
    """Smith normal form of ``m`` over F_p[t^{+-1}].

    Returns the rank and the chain of canonical elementary divisors, each
    dividing the next.  With ``ring="polynomial"`` the entries are read as
    ordinary polynomials in F_p[t] (t not invertible) and divisors are monic.
    """
    if m.p is None:
        raise ValueError("smith_normal_form requires a prime-field matrix")
    if ring == "laurent":
        r = _Laurent
    elif ring == "polynomial":
        if any(e.c and e.lo < 0 for row in m.entries for e in row):
            raise ValueError("negative exponents in an F_p[t] matrix")
        r = _Ordinary
    else:
        raise ValueError(f"unknown ring {ring!r}")
    d = _diagonal_pivots(m, r)
    # diag(a, b) ~ diag(gcd, lcm) turns any diagonal into the divisor chain
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            a, b = d[i], d[j]
            if not r.divmod(b, a)[1].c:
                continue
            x, y = a, b
            while y.c:
                x, y = y, r.divmod(x, y)[1]
            g = r.normalize(x)
            d[i] = g
            d[j] = r.normalize(exact_div(a * b, g))
    return SnfResult(len(d), d)


def det_int_poly(m):
    """Exact determinant of a square matrix via fraction-free elimination.

    Works over Z[t^{+-1}] (or F_p[t^{+-1}]); the result is normalized.
    """
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    p = m.p
    if n == 0:
        return LaurentPoly.one(p)
    a = [list(r) for r in m.entries]
    sign = 1
    prev = LaurentPoly.one(p)
    for k in range(n - 1):
        if not a[k][k].c:
            for i in range(k + 1, n):
                if a[i][k].c:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero(p)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * akk - aik * a[k][j], prev)
            a[i][k] = LaurentPoly.zero(p)
        prev = akk
    return lp_normalize(a[n - 1][n - 1] * sign)


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))
