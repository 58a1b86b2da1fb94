"""Permutation groups S_k / A_k, epimorphism search and kernel divisibility.

Permutations are 0-based image tuples and compose as functions:
``(p * q)(i) == p[q[i]]``.  A homomorphism sends a word to the product of its
letter images in reading order, so ``h(uv) == h(u) * h(v)``.
"""

import itertools
import logging
import math
import re
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DegreeMismatch,
    LimitExceeded,
    MalformedCycle,
    NotSurjective,
    RelatorNotBalanced,
    RepeatedSymbol,
    SymbolOutOfRange,
)
from .words import abelianization_phi

log = logging.getLogger(__name__)

DEFAULT_MAX_HOMS = 10_000


class Permutation(tuple):
    """Bijection of {0, ..., k-1} stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        return tuple.__new__(cls, images)

    @classmethod
    def _trusted(cls, images):
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, k):
        return tuple.__new__(cls, range(k))

    @property
    def degree(self):
        return len(self)

    def __mul__(self, other):
        return perm_compose(self, other)

    def inverse(self):
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return tuple.__new__(Permutation, inv)

    def is_identity(self):
        return all(i == j for i, j in enumerate(self))

    def is_even(self):
        return _parity(self) == 0

    def cycles(self):
        """Nontrivial cycles as lists of 0-based points."""
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen or self[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            out.append(cyc)
        return out

    def cycle_type(self):
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        sep = "" if len(self) <= 9 else " "
        return "".join("(" + sep.join(str(i + 1) for i in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({list(self)})"


def _parity(p):
    return sum(len(c) - 1 for c in Permutation.cycles(p)) % 2


def perm_compose(p, q):
    if len(p) != len(q):
        raise DegreeMismatch(f"cannot compose degree {len(p)} with degree {len(q)}")
    return tuple.__new__(Permutation, tuple(p[i] for i in q))


_CYCLE = re.compile(r"\(([^()]*)\)")


def perm_from_cycles(text, k):
    """Parse disjoint-cycle notation over symbols 1..k.

    ``(c1 c2 ... cm)`` maps c1 -> c2 -> ... -> cm -> c1.  Symbols are separated
    by spaces or commas; for k <= 9 single digits may be juxtaposed.
    """
    text = text.strip()
    images = list(range(k))
    seen = set()
    pos = 0
    for m in _CYCLE.finditer(text):
        if text[pos:m.start()].strip():
            raise MalformedCycle(f"unexpected text {text[pos:m.start()]!r}")
        pos = m.end()
        body = m.group(1).strip()
        if not body:
            continue
        if re.fullmatch(r"\d+", body) and k <= 9:
            syms = [int(ch) for ch in body]
        elif re.fullmatch(r"\d+([\s,]+\d+)*", body):
            syms = [int(s) for s in re.split(r"[\s,]+", body)]
        else:
            raise MalformedCycle(f"bad cycle body {body!r}")
        for s in syms:
            if not 1 <= s <= k:
                raise SymbolOutOfRange(f"symbol {s} outside 1..{k}")
            if s in seen:
                raise RepeatedSymbol(f"symbol {s} repeated")
            seen.add(s)
        for a, b in zip(syms, syms[1:] + syms[:1]):
            images[a - 1] = b - 1
    if text[pos:].strip():
        raise MalformedCycle(f"unexpected text {text[pos:]!r}")
    return Permutation._trusted(tuple(images))


def perm_from_one_line(text, k=None):
    """Parse one-line notation ``(i_1 i_2 ... i_k)``: symbol j maps to i_j (1-based).

    Digits may be juxtaposed when every symbol is a single digit.
    """
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1].strip()
    if re.fullmatch(r"\d+", body):
        syms = [int(ch) for ch in body]
    elif re.fullmatch(r"\d+([\s,]+\d+)*", body):
        syms = [int(s) for s in re.split(r"[\s,]+", body)]
    else:
        raise MalformedCycle(f"bad one-line permutation {text!r}")
    if k is not None and len(syms) != k:
        raise DegreeMismatch(f"{len(syms)} images given for degree {k}")
    n = len(syms)
    for s in syms:
        if not 1 <= s <= n:
            raise SymbolOutOfRange(f"symbol {s} outside 1..{n}")
    if len(set(syms)) != n:
        raise RepeatedSymbol(f"repeated symbol in {text!r}")
    return Permutation._trusted(tuple(s - 1 for s in syms))


@dataclass(frozen=True)
class TargetGroup:
    family: str  # "S" or "A"
    k: int

    def __post_init__(self):
        if self.family not in ("S", "A"):
            raise ValueError(f"unsupported group family {self.family!r}")
        if self.k < 2:
            raise ValueError("degree must be at least 2")

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*([SA])(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse group {text!r} (expected e.g. S5 or A4)")
        return cls(m.group(1), int(m.group(2)))

    @property
    def order(self):
        n = math.factorial(self.k)
        return n if self.family == "S" else n // 2

    @property
    def name(self):
        return f"{self.family}{self.k}"

    def __str__(self):
        return self.name

    def elements(self):
        """All elements, sorted lexicographically by image table."""
        return _elements(self.family, self.k)

    def index_of(self):
        return _element_index(self.family, self.k)

    def contains(self, perm):
        return len(perm) == self.k and (self.family == "S" or _parity(perm) == 0)

    def conjugacy_classes(self):
        """Classes under conjugation by the group itself, each sorted; ordered by representative."""
        return _classes(self.family, self.k)


@lru_cache(maxsize=None)
def _elements(family, k):
    els = [Permutation._trusted(p) for p in itertools.permutations(range(k))]
    if family == "A":
        els = [p for p in els if _parity(p) == 0]
    return tuple(els)


@lru_cache(maxsize=None)
def _element_index(family, k):
    return {g: i for i, g in enumerate(_elements(family, k))}


@lru_cache(maxsize=None)
def _classes(family, k):
    els = _elements(family, k)
    invs = [g.inverse() for g in els]
    remaining = set(els)
    out = []
    for x in els:
        if x not in remaining:
            continue
        cls = {tuple(g[x[gi[j]]] for j in range(k)) for g, gi in zip(els, invs)}
        remaining -= cls
        out.append(tuple(sorted(Permutation._trusted(c) for c in cls)))
    return tuple(out)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism from a presented group to a permutation group."""

    target: TargetGroup
    images: tuple
    surjective: bool = False

    def __call__(self, w):
        return apply_word(self, w)

    def image_table(self):
        return [list(p) for p in self.images]

    def conjugate(self, g):
        """Conjugate every image by ``g``: x -> g x g^-1."""
        gi = g.inverse()
        return GroupHom(self.target, tuple(g * p * gi for p in self.images), self.surjective)


def apply_word(h, w):
    k = h.target.k
    acc = tuple(range(k))
    imgs = h.images
    invs = {}
    for g, s in w:
        if s > 0:
            q = imgs[g]
        else:
            q = invs.get(g)
            if q is None:
                q = invs[g] = imgs[g].inverse()
        acc = tuple(acc[i] for i in q)
    return Permutation._trusted(acc)


def generated_subgroup_order(gens, k, stop_at=None):
    """Order of the subgroup generated by ``gens`` (closure), with optional early exit."""
    ident = tuple(range(k))
    seen = {ident}
    queue = deque([ident])
    gens = [tuple(g) for g in gens if tuple(g) != ident]
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(x[i] for i in g)
            if y not in seen:
                seen.add(y)
                if stop_at is not None and len(seen) >= stop_at:
                    return len(seen)
                queue.append(y)
    return len(seen)


def is_surjective(h):
    n = h.target.order
    return generated_subgroup_order(h.images, h.target.k, stop_at=n) == n


def _canonical(table, centralizer):
    # lexicographically least simultaneous conjugate under the given conjugators
    best = None
    for g, gi in centralizer:
        cand = tuple(tuple(g[x[gi[j]]] for j in range(len(x))) for x in table)
        if best is None or cand < best:
            best = cand
    return best


def _search_plan(relators, n):
    """Generator order and, per step, the relators that become checkable there."""
    order = [0]
    assigned = {0}
    gen_sets = [set(g for g, _ in r) for r in relators]
    while len(order) < n:
        best = None
        for x in range(n):
            if x in assigned:
                continue
            closes = sum(1 for s in gen_sets if x in s and s <= assigned | {x})
            touches = sum(1 for s in gen_sets if x in s and s & assigned)
            key = (-closes, -touches, x)
            if best is None or key < best:
                best = key
        order.append(best[2])
        assigned.add(best[2])
    pos = {x: i for i, x in enumerate(order)}
    checks = [[] for _ in range(n)]
    for r, s in zip(relators, gen_sets):
        step = max((pos[g] for g in s), default=0)
        checks[step].append(r)
    return order, checks


def _run_partition(task):
    """Depth-first search below a fixed choice of the first two generator images."""
    (relators, n, k, order, checks, candidates, first, second,
     centralizer, order_g, deadline, max_homs) = task
    ident = tuple(range(k))
    imgs = [None] * n
    inv = [None] * n
    found = {}
    timed_out = False

    def invert(x):
        out = [0] * k
        for i, j in enumerate(x):
            out[j] = i
        return tuple(out)

    def ok(step):
        for r in checks[step]:
            acc = ident
            for g, s in r:
                q = imgs[g] if s > 0 else inv[g]
                acc = tuple(acc[i] for i in q)
            if acc != ident:
                return False
        return True

    def assign(step, x):
        g = order[step]
        imgs[g] = x
        inv[g] = invert(x)
        return ok(step)

    counter = [0]

    def dfs(step):
        nonlocal timed_out
        if step == n:
            if generated_subgroup_order(imgs, k, stop_at=order_g) == order_g:
                key = _canonical(imgs, centralizer)
                found[key] = True
            return len(found) >= max_homs
        counter[0] += 1
        if deadline is not None and counter[0] % 1024 == 0 and time.monotonic() > deadline:
            timed_out = True
            return True
        for x in candidates:
            if assign(step, x) and dfs(step + 1):
                return True
        return False

    stopped = False
    if deadline is not None and time.monotonic() > deadline:
        return [], False, True
    if assign(0, first) and (n == 1 or assign(1, second)):
        stopped = dfs(min(2, n))
    return sorted(found), stopped and not timed_out and len(found) >= max_homs, timed_out


def enumerate_epimorphisms(p, g, max_homs=DEFAULT_MAX_HOMS, time_limit=None, workers=1,
                           same_class=None):
    """All epimorphisms from the group of ``p`` onto ``g``, up to conjugation in ``g``.

    The first generator's image is fixed to a conjugacy-class representative.
    For meridian presentations (``same_class`` defaults to whether every
    relator is balanced under the all-ones class) every generator image is
    drawn from that same class.  Results are sorted by image table.  If a
    limit is hit, :class:`LimitExceeded` carries the partial list.
    """
    n = p.num_generators
    k = g.k
    if n == 0:
        return []
    if same_class is None:
        try:
            abelianization_phi(p)
            same_class = True
        except RelatorNotBalanced:
            same_class = False
    relators = [tuple(r) for r in p.relators]
    order, checks = _search_plan(relators, n)
    deadline = None if time_limit is None else time.monotonic() + time_limit
    elements = g.elements()
    invs = {x: x.inverse() for x in elements}

    tasks = []
    for cls in g.conjugacy_classes():
        rep = cls[0]
        if rep == tuple(range(k)) and g.order > 1:
            continue
        cands = [tuple(x) for x in (cls if same_class else elements)]
        centralizer = [(tuple(c), tuple(invs[c])) for c in elements if c * rep == rep * c]
        seconds = cands if n > 1 else [None]
        for s in seconds:
            tasks.append((relators, n, k, order, checks, cands, tuple(rep), s,
                          centralizer, g.order, deadline, max_homs))

    if workers and workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_partition, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = []
        seen = set()
        for t in tasks:
            res = _run_partition(t)
            results.append(res)
            seen.update(res[0])
            if res[2] or len(seen) > max_homs:
                break

    tables = sorted({tbl for r in results for tbl in r[0]})
    timed_out = any(r[2] for r in results)
    homs = [GroupHom(g, tuple(Permutation._trusted(x) for x in tbl), True) for tbl in tables]
    for h in homs:
        for r in p.relators:
            if not apply_word(h, r).is_identity():
                raise AssertionError("search returned a non-homomorphism")
    log.debug("%s -> %s: %d epimorphisms up to conjugation", p.name, g, len(homs))
    if timed_out:
        raise LimitExceeded(f"time limit reached after {len(homs)} homomorphisms", homs)
    capped = len(results) < len(tasks) or (any(r[1] for r in results) and len(homs) >= max_homs)
    if capped or len(homs) > max_homs:
        raise LimitExceeded(f"reached max_homs={max_homs}", homs[:max_homs])
    return homs


def div_phi_g(p, h, phi):
    """Divisibility of phi restricted to the kernel of ``h``.

    Breadth-first spanning tree of the Cayley graph of the image on the
    generator images; each non-tree edge gives a Schreier generator of the
    kernel whose phi-value is phi(rep_g) + phi(x) - phi(rep_{g h(x)}).
    """
    if not h.surjective and not is_surjective(h):
        raise NotSurjective("div_phi_G needs an epimorphism")
    k = h.target.k
    ident = tuple(range(k))
    weight = {ident: 0}
    queue = deque([ident])
    gens = [(tuple(x), phi[i]) for i, x in enumerate(h.images)]
    d = 0
    tree_edges = set()
    while queue:
        a = queue.popleft()
        for gi, (x, w) in enumerate(gens):
            b = tuple(a[i] for i in x)
            if b not in weight:
                weight[b] = weight[a] + w
                tree_edges.add((a, gi))
                queue.append(b)
    for a in weight:
        for gi, (x, w) in enumerate(gens):
            if (a, gi) in tree_edges:
                continue
            b = tuple(a[i] for i in x)
            d = math.gcd(d, weight[a] + w - weight[b])
    return d
