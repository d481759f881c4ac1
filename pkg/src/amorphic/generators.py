"""Desk-scale corpus constructors: net (slope-grouping) schemes on n^2
points, cyclotomic schemes over small prime-power fields, binary Hamming
schemes, and the one-class scheme."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import AssociationScheme, LabelMatrix, validate_scheme
from .errors import FieldUnsupported, LimitExceeded, NotSymmetric

__all__ = [
    "SmallField",
    "SlopeGrouping",
    "CyclotomicSpec",
    "gen_net_scheme",
    "gen_cyclotomic",
    "gen_hamming_binary",
    "gen_complete",
    "SUPPORTED_FIELD_ORDERS",
]

# irreducible polynomial coefficients, lowest degree first, for each
# supported prime power; prime fields need none
_IRREDUCIBLE = {
    4: (1, 1, 1),        # x^2 + x + 1 over GF(2)
    8: (1, 1, 0, 1),     # x^3 + x + 1
    9: (1, 0, 1),        # x^2 + 1 over GF(3)
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
    25: (2, 0, 1),       # x^2 + 2 over GF(5)
    27: (1, 2, 0, 1),    # x^3 + 2x + 1 over GF(3)
}

_PRIMES = {2, 3, 5, 7, 11, 13}
SUPPORTED_FIELD_ORDERS = frozenset({2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27})


def _char_of(n: int) -> tuple[int, int]:
    for p in (2, 3, 5, 7, 11, 13):
        e = 0
        m = n
        while m % p == 0:
            m //= p
            e += 1
        if m == 1 and e >= 1:
            return p, e
    raise FieldUnsupported(f"order {n} is not a supported prime power")


class SmallField:
    """GF(n) via full addition/multiplication tables.

    Elements are integers 0..n-1 encoding base-p digit vectors (so 0 and 1
    are the additive and multiplicative identities).  The field axioms are
    verified on the tables at construction.
    """

    def __init__(self, n: int):
        if n not in SUPPORTED_FIELD_ORDERS:
            raise FieldUnsupported(f"no construction table for order {n}")
        self.order = n
        self.p, self.e = _char_of(n)
        self.modulus = _IRREDUCIBLE.get(n)

        idx = np.arange(n)
        if self.e == 1:
            self.add = (idx[:, None] + idx[None, :]) % n
            self.mul = (idx[:, None] * idx[None, :]) % n
        else:
            digits = np.array([self._digits(x) for x in range(n)])
            self.add = np.array([[self._undigits((digits[a] + digits[b]) % self.p)
                                  for b in range(n)] for a in range(n)])
            self.mul = np.array([[self._polymul(a, b) for b in range(n)]
                                 for a in range(n)])
        self.neg = np.array([int(np.nonzero(self.add[a] == 0)[0][0]) for a in range(n)])
        self._check_axioms()

    def _digits(self, x: int):
        out = []
        for _ in range(self.e):
            out.append(x % self.p)
            x //= self.p
        return np.array(out)

    def _undigits(self, ds) -> int:
        return int(sum(int(c) * self.p ** i for i, c in enumerate(ds)))

    def _polymul(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = np.convolve(da, db) % self.p
        mod = np.array(self.modulus)
        # reduce by the monic modulus, highest degree first
        for deg in range(len(prod) - 1, self.e - 1, -1):
            c = prod[deg]
            if c:
                prod[deg - self.e:deg + 1] = (prod[deg - self.e:deg + 1] - c * mod) % self.p
        return self._undigits(prod[: self.e])

    def _check_axioms(self):
        n, add, mul = self.order, self.add, self.mul
        idx = np.arange(n)
        assert np.array_equal(add, add.T) and np.array_equal(mul, mul.T)
        assert np.array_equal(add[0], idx)
        assert np.array_equal(mul[1], idx)
        assert np.array_equal(mul[0], np.zeros(n, dtype=add.dtype))
        # (a+b)+c == a+(b+c), (a*b)*c == a*(b*c), (a+b)*c == a*c + b*c
        assert np.array_equal(add[add[:, :, None], idx[None, None, :]],
                              add[idx[:, None, None], add[None, :, :]])
        assert np.array_equal(mul[mul[:, :, None], idx[None, None, :]],
                              mul[idx[:, None, None], mul[None, :, :]])
        assert np.array_equal(mul[add[:, :, None], idx[None, None, :]],
                              add[mul[:, None, :], mul[None, :, :]])
        # every nonzero element has a multiplicative inverse
        for a in range(1, n):
            assert 1 in mul[a]

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(np.nonzero(self.mul[a] == 1)[0][0])

    def multiplicative_generator(self) -> int:
        n = self.order
        if n == 2:
            return 1
        for g in range(2, n):
            x, order = g, 1
            while x != 1:
                x = int(self.mul[x, g])
                order += 1
            if order == n - 1:
                return g
        raise FieldUnsupported(f"no generator found for order {n}")  # unreachable


@lru_cache(maxsize=None)
def _field(n: int) -> SmallField:
    return SmallField(n)


@dataclass(frozen=True)
class SlopeGrouping:
    """Partition of the n+1 parallel classes of the affine plane AG(2, n).

    Slopes are named by field-element index, with the vertical direction
    (infinity) last, at index n.
    """

    n: int
    groups: tuple[tuple[int, ...], ...]

    @classmethod
    def from_groups(cls, n: int, groups) -> "SlopeGrouping":
        norm = tuple(sorted(tuple(sorted(set(g))) for g in groups if len(g)))
        flat = sorted(i for g in norm for i in g)
        if flat != list(range(n + 1)):
            raise ValueError(f"groups {groups} do not partition the {n + 1} slopes")
        return cls(n=n, groups=norm)

    @classmethod
    def singletons(cls, n: int) -> "SlopeGrouping":
        return cls.from_groups(n, [[i] for i in range(n + 1)])

    @property
    def d(self) -> int:
        return len(self.groups)


@dataclass(frozen=True)
class CyclotomicSpec:
    q: int
    d: int
    generator: int | None = None


def gen_net_scheme(n: int, grouping: SlopeGrouping) -> AssociationScheme:
    """Points are the affine plane over GF(n); two points fall in class i
    when the slope of their connecting line lies in slope group i."""
    F = _field(n)
    if grouping.n != n:
        raise ValueError(f"grouping is for n={grouping.n}, field has order {n}")
    v = n * n
    group_of = np.empty(n + 1, dtype=np.int64)
    for gi, g in enumerate(grouping.groups):
        for s in g:
            group_of[s] = gi

    labels = np.zeros((v, v), dtype=np.int64)
    for p1 in range(v):
        x1, y1 = divmod(p1, n)
        for p2 in range(p1 + 1, v):
            x2, y2 = divmod(p2, n)
            if x1 == x2:
                slope = n  # vertical
            else:
                slope = int(F.mul[F.sub(y2, y1), F.inv(F.sub(x2, x1))])
            labels[p1, p2] = labels[p2, p1] = group_of[slope] + 1
    return validate_scheme(LabelMatrix(v=v, d=grouping.d, labels=labels))


def gen_cyclotomic(spec: CyclotomicSpec) -> AssociationScheme:
    """Points are GF(q); x ~ y in class i when x - y lies in the i-th coset
    of the index-d subgroup of the multiplicative group.

    Symmetry needs -1 inside the subgroup: q even, or (q-1)/d even.
    """
    q, d = spec.q, spec.d
    F = _field(q)
    if d < 1 or (q - 1) % d != 0:
        raise ValueError(f"d={d} must divide q-1={q - 1}")
    g = spec.generator if spec.generator is not None else F.multiplicative_generator()

    dlog = np.full(q, -1, dtype=np.int64)
    x, e = 1, 0
    while dlog[x] < 0:
        dlog[x] = e
        x = int(F.mul[x, g])
        e += 1
    if e != q - 1:
        raise ValueError(f"{g} does not generate the multiplicative group of GF({q})")

    minus_one = int(F.neg[1])
    if dlog[minus_one] % d != 0:
        raise NotSymmetric(
            f"-1 lies outside the index-{d} subgroup of GF({q})*; "
            "the cosets would give directed relations")

    labels = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a + 1, q):
            diff = F.sub(a, b)
            labels[a, b] = labels[b, a] = int(dlog[diff]) % d + 1
    return validate_scheme(LabelMatrix(v=q, d=d, labels=labels))


def gen_hamming_binary(m: int) -> AssociationScheme:
    """H(m, 2): points are binary m-tuples, class = Hamming distance."""
    if not 1 <= m <= 10:
        raise LimitExceeded(f"m must be in 1..10, got {m}")
    v = 1 << m
    pts = np.arange(v)
    xor = pts[:, None] ^ pts[None, :]
    labels = np.zeros((v, v), dtype=np.int64)
    for bit in range(m):
        labels += (xor >> bit) & 1
    return validate_scheme(LabelMatrix(v=v, d=m, labels=labels))


def gen_complete(v: int) -> AssociationScheme:
    """The 1-class scheme K_v."""
    if v < 2:
        raise ValueError(f"need v >= 2, got {v}")
    labels = np.ones((v, v), dtype=np.int64) - np.eye(v, dtype=np.int64)
    return validate_scheme(LabelMatrix(v=v, d=1, labels=labels))
