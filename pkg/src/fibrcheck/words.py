"""Free-group words, Fox free differential calculus and knot-group presentations.

A word is a tuple of letters ``(generator_index, sign)`` with sign +1 or -1,
always kept freely reduced.  Generator names are interned to indices when a
presentation is loaded; everything downstream works with indices.
"""

import hashlib
import json
import re
from dataclasses import dataclass, field

from .errors import (
    GenusOutOfRange,
    LongitudeNotNullhomologous,
    MalformedToken,
    MissingLongitude,
    RelatorNotBalanced,
    SchemaError,
    UnknownGenerator,
    ZeroExponent,
)

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


class Word(tuple):
    """A freely reduced word; construct with :meth:`reduced`."""

    __slots__ = ()

    @classmethod
    def reduced(cls, letters):
        out = []
        for g, s in letters:
            if out and out[-1][0] == g and out[-1][1] == -s:
                out.pop()
            else:
                out.append((g, s))
        return tuple.__new__(cls, out)

    def __mul__(self, other):
        return word_mul(self, other)

    def inverse(self):
        return word_inverse(self)

    def exponent_sum(self, weights=None):
        """Total weight; ``weights[i]`` defaults to 1 for every generator."""
        if weights is None:
            return sum(s for _, s in self)
        return sum(s * weights[g] for g, s in self)

    def generators_used(self):
        return {g for g, _ in self}

    def __repr__(self):
        return f"Word({list(self)})"


EMPTY = Word.reduced(())


def parse_word(text, generators):
    """Parse whitespace-separated ``ident`` / ``ident^INT`` tokens into a reduced word."""
    index = {name: i for i, name in enumerate(generators)}
    letters = []
    for pos, tok in enumerate(text.split()):
        m = _TOKEN.match(tok)
        if not m:
            raise MalformedToken(pos, tok)
        name, exp = m.group(1), m.group(2)
        if name not in index:
            raise UnknownGenerator(name)
        e = 1 if exp is None else int(exp)
        if e == 0:
            raise ZeroExponent(f"zero exponent in token {tok!r} at position {pos}")
        letters.extend([(index[name], 1 if e > 0 else -1)] * abs(e))
    return Word.reduced(letters)


def render_word(w, generators):
    """Inverse of :func:`parse_word`, collapsing runs into powers."""
    toks = []
    i = 0
    while i < len(w):
        g, s = w[i]
        j = i
        while j < len(w) and w[j] == (g, s):
            j += 1
        e = (j - i) * s
        toks.append(generators[g] if e == 1 else f"{generators[g]}^{e}")
        i = j
    return " ".join(toks)


def word_mul(u, v):
    # only the seam can cancel, since u and v are already reduced
    k = 0
    n = min(len(u), len(v))
    while k < n and u[len(u) - 1 - k][0] == v[k][0] and u[len(u) - 1 - k][1] == -v[k][1]:
        k += 1
    return tuple.__new__(Word, tuple(u[:len(u) - k]) + tuple(v[k:]))


def word_inverse(w):
    return tuple.__new__(Word, tuple((g, -s) for g, s in reversed(w)))


class FreeRingElement:
    """Element of the integral group ring of a free group: ``{Word: coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                self._add(Word.reduced(w), c)

    def _add(self, w, c):
        v = self.terms.get(w, 0) + c
        if v:
            self.terms[w] = v
        else:
            self.terms.pop(w, None)

    @classmethod
    def of_word(cls, w, coeff=1):
        return cls({w: coeff})

    def __add__(self, other):
        out = FreeRingElement()
        out.terms = dict(self.terms)
        for w, c in other.terms.items():
            out._add(w, c)
        return out

    def __neg__(self):
        out = FreeRingElement()
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Word):
            other = FreeRingElement.of_word(other)
        out = FreeRingElement()
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                out._add(word_mul(u, v), a * b)
        return out

    def left_mul(self, w):
        """``w * self`` for a group element ``w``."""
        out = FreeRingElement()
        for v, c in self.terms.items():
            out._add(word_mul(w, v), c)
        return out

    def __eq__(self, other):
        if not isinstance(other, FreeRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"FreeRingElement({self.terms})"


def fox_derivative(w, i):
    """Fox derivative of the word ``w`` with respect to generator ``i``.

    d(x_i)/dx_i = 1, d(x_i^-1)/dx_i = -x_i^-1, and the product rule
    d(uv) = du + u dv give a sum over occurrences of x_i in ``w``.
    """
    out = FreeRingElement()
    prefix = EMPTY
    for g, s in w:
        letter = tuple.__new__(Word, ((g, s),))
        if g == i:
            if s > 0:
                out._add(prefix, 1)
            else:
                out._add(word_mul(prefix, letter), -1)
        prefix = word_mul(prefix, letter)
    return out


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple
    relators: tuple
    longitude: Word = None
    genus: int = None

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise SchemaError("generator identifiers must be unique")
        n = len(self.generators)
        words = list(self.relators) + ([self.longitude] if self.longitude is not None else [])
        for w in words:
            for g, _ in w:
                if not 0 <= g < n:
                    raise UnknownGenerator(g)
        if self.longitude is not None and self.longitude.exponent_sum() != 0:
            raise LongitudeNotNullhomologous(
                f"longitude has exponent sum {self.longitude.exponent_sum()}")
        if self.genus is not None and self.genus < 1:
            raise GenusOutOfRange(f"genus must be >= 1, got {self.genus}")

    @property
    def num_generators(self):
        return len(self.generators)

    def render(self, w):
        return render_word(w, self.generators)

    def to_json(self):
        return {
            "name": self.name,
            "generators": list(self.generators),
            "relators": [self.render(r) for r in self.relators],
            "longitude": None if self.longitude is None else self.render(self.longitude),
            "genus": self.genus,
        }

    def content_hash(self):
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Phi:
    """A homomorphism to Z, given by its values on the generators."""

    values: tuple = field(default=())

    def __post_init__(self):
        if not any(self.values):
            raise ValueError("phi must not be identically zero")

    def __call__(self, w):
        return w.exponent_sum(self.values)

    def __getitem__(self, i):
        return self.values[i]


def _parse_relation(text, gens):
    if text.count("=") != 1:
        raise SchemaError(f"relation must have the form 'lhs = rhs': {text!r}")
    lhs, rhs = text.split("=")
    return word_mul(parse_word(lhs, gens), word_inverse(parse_word(rhs, gens)))


def load_presentation(document):
    """Build a validated :class:`Presentation` from the JSON presentation format.

    ``document`` may be bytes, str or an already decoded dict.
    """
    if isinstance(document, (bytes, bytearray)):
        document = document.decode("utf-8")
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise SchemaError("presentation must be a JSON object")
    gens = document.get("generators")
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise SchemaError("'generators' must be an array of strings")
    for g in gens:
        if not _TOKEN.match(g) or "^" in g:
            raise SchemaError(f"invalid generator identifier {g!r}")
    if len(set(gens)) != len(gens):
        raise SchemaError("generator identifiers must be unique")
    relators = document.get("relators") or []
    relations = document.get("relations") or []
    if not isinstance(relators, list) or not isinstance(relations, list):
        raise SchemaError("'relators' and 'relations' must be arrays")
    if "relators" not in document and "relations" not in document:
        raise SchemaError("presentation needs 'relators' and/or 'relations'")
    words = []
    for r in relators:
        if not isinstance(r, str):
            raise SchemaError("relators must be strings")
        words.append(parse_word(r, gens))
    for r in relations:
        if not isinstance(r, str):
            raise SchemaError("relations must be strings")
        words.append(_parse_relation(r, gens))
    lon = document.get("longitude")
    if lon is not None and not isinstance(lon, str):
        raise SchemaError("'longitude' must be a string or null")
    genus = document.get("genus")
    if genus is not None and (not isinstance(genus, int) or isinstance(genus, bool)):
        raise SchemaError("'genus' must be an integer or null")
    name = document.get("name", "")
    if not isinstance(name, str):
        raise SchemaError("'name' must be a string")
    return Presentation(
        name=name,
        generators=tuple(gens),
        relators=tuple(words),
        longitude=None if lon is None else parse_word(lon, gens),
        genus=genus,
    )


def surgery_presentation(p):
    """Presentation of the 0-surgery: the longitude becomes one more relator."""
    if p.longitude is None:
        raise MissingLongitude(f"presentation {p.name!r} has no longitude")
    return Presentation(p.name, p.generators, p.relators + (p.longitude,), None, p.genus)


def abelianization_phi(p):
    """The class sending every meridian generator to 1.

    Raises :class:`RelatorNotBalanced` if some relator has nonzero exponent
    sum, i.e. the presentation is not in meridian form.
    """
    for k, r in enumerate(p.relators):
        wsum = r.exponent_sum()
        if wsum:
            raise RelatorNotBalanced(k, wsum)
    return Phi(tuple([1] * p.num_generators))
