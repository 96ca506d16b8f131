"""Exact root-system data and Weyl groups for the simple series A-G.

Vectors live in the dual Cartan space and are stored as tuples of Fractions
(plain ints where integral) holding coordinates in the fundamental-weight
basis, so coordinate j of x is the simple-coroot pairing <x, alpha_j^vee>.
Geometry enters through the Gram matrix of that basis, with the invariant
form normalized so the highest root theta has squared length 2.  In this
normalization theta is its own coroot, which keeps the translation-lattice
bookkeeping downstream integral.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GroupTooLarge, InvalidType
from .linalg import (
    identity_matrix,
    mat_fractions,
    mat_inverse,
    mat_mul,
    mat_transpose,
    mat_vec,
)

WEYL_GROUP_CAP = 10**6

_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True)
class SimpleType:
    """A simple series letter with a rank, e.g. A2 or G2."""

    series: str
    rank: int

    def __post_init__(self):
        lo_hi = _RANK_RANGE.get(self.series)
        if lo_hi is None:
            raise InvalidType(f"unknown series {self.series!r}")
        lo, hi = lo_hi
        if self.rank < lo or (hi is not None and self.rank > hi):
            raise InvalidType(f"rank {self.rank} is invalid for series {self.series}")

    @classmethod
    def parse(cls, text):
        text = str(text).strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise InvalidType(f"cannot parse algebra spec {text!r}")
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self):
        return f"{self.series}{self.rank}"


def _cartan_matrix(series, n):
    """Integer Cartan matrix with entries a[i][j] = <alpha_j, alpha_i^vee>."""
    a = [[2 * int(i == j) for j in range(n)] for i in range(n)]

    def link(i, j, low=-1, high=-1):
        a[i][j] = low
        a[j][i] = high

    if series in "ABCEF":
        chain = n - 1
    else:
        chain = n - 2 if series == "D" else 0
    if series == "E":
        chain = n - 2
    for i in range(chain):
        link(i, i + 1)
    if series == "B":
        # last simple root is short
        a[n - 2][n - 1] = -1
        a[n - 1][n - 2] = -2
    elif series == "C":
        # last simple root is long
        a[n - 2][n - 1] = -2
        a[n - 1][n - 2] = -1
    elif series == "D":
        link(n - 3, n - 1)
    elif series == "E":
        link(n - 4, n - 1)
    elif series == "F":
        # roots 1,2 long and 3,4 short
        a[1][2] = -1
        a[2][1] = -2
    elif series == "G":
        # first root long, second short
        a[0][1] = -1
        a[1][0] = -3
    return tuple(tuple(row) for row in a)


class WeylElement:
    """A finite Weyl group element: reduced word, integer matrix, length.

    The matrix acts on fundamental-weight coordinates.  Equality and hashing
    look only at the matrix, so the same element built from different
    reduced words compares equal.
    """

    __slots__ = ("word", "matrix", "length")

    def __init__(self, word, matrix, length):
        self.word = tuple(word)
        self.matrix = tuple(tuple(row) for row in matrix)
        self.length = length

    @property
    def sign(self):
        return -1 if self.length % 2 else 1

    def act(self, x):
        return mat_vec(self.matrix, x)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        if not self.word:
            return "WeylElement(id)"
        return "WeylElement(%s)" % "*".join(f"s{i + 1}" for i in self.word)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Immutable root-system data for one simple type.

    Built once per type through build_root_datum and shared; comparison is
    by identity, which lets caches key on it cheaply.
    """

    simple_type: SimpleType
    rank: int
    cartan: tuple
    simple_roots: tuple          # weight coordinates, integer entries
    positive_roots: tuple        # weight coordinates, by height then lex
    positive_root_coords: tuple  # same roots in the simple-root basis
    fundamental_weights: tuple
    rho: tuple
    theta: tuple
    theta_coroot: tuple
    dual_coxeter: int
    gram: tuple                  # Gram matrix of the fundamental-weight basis
    root_lengths: tuple          # (alpha|alpha) per positive root
    _root_set: frozenset = field(repr=False, default=frozenset())
    _root_index: dict = field(repr=False, default_factory=dict)

    def form(self, x, y):
        """Invariant bilinear form (x|y), exact."""
        g = self.gram
        n = self.rank
        return sum(x[i] * sum(g[i][j] * y[j] for j in range(n)) for i in range(n))

    def norm_sq(self, x):
        return self.form(x, x)

    def coroot_pairing(self, root, x):
        """<root^vee, x> = 2 (root|x) / (root|root)."""
        return 2 * self.form(root, x) / self.norm_sq(root)

    def alcove_level(self, x):
        """(theta|x), the affine wall coordinate of x."""
        row = self.theta_pairing_row
        return sum(row[i] * x[i] for i in range(self.rank))

    @functools.cached_property
    def theta_pairing_row(self):
        """Integer row with (theta|x) = sum row[i] * x[i]; the comarks."""
        row = mat_vec(self.gram, self.theta)
        assert all(Fraction(v).denominator == 1 for v in row)
        return tuple(int(v) for v in row)

    def is_dominant(self, x):
        return all(c >= 0 for c in x)

    def is_strictly_dominant(self, x):
        return all(c > 0 for c in x)

    def is_dominant_integral(self, x):
        return all(Fraction(c).denominator == 1 and c >= 0 for c in x)

    def is_positive_root(self, x):
        return tuple(x) in self._root_set

    def is_root(self, x):
        x = tuple(x)
        return x in self._root_set or tuple(-c for c in x) in self._root_set

    def root_index(self, x):
        return self._root_index[tuple(x)]

    def root_coords(self, x):
        """Coordinates of x in the simple-root basis."""
        return mat_vec(self._cartan_inv, x)

    @functools.cached_property
    def _cartan_inv(self):
        return mat_inverse(self.cartan)

    @functools.cached_property
    def num_positive_roots(self):
        return len(self.positive_roots)

    @functools.cached_property
    def simple_reflections(self):
        """Integer matrices of the simple reflections on weight coordinates."""
        mats = []
        n = self.rank
        for i in range(n):
            alpha = self.simple_roots[i]
            m = [[int(r == c) for c in range(n)] for r in range(n)]
            for r in range(n):
                m[r][i] -= alpha[r]
            mats.append(tuple(tuple(row) for row in m))
        return tuple(mats)

    def reflect_simple(self, i, x):
        """s_i(x) = x - <x, alpha_i^vee> alpha_i, done without a matrix."""
        coef = x[i]
        alpha = self.simple_roots[i]
        return tuple(x[j] - coef * alpha[j] for j in range(self.rank))


def _positive_root_closure(cartan):
    """All positive roots in simple-root coordinates, by the string criterion.

    Starting from the simple roots, beta + alpha_i is a root exactly when
    p - <beta, alpha_i^vee> > 0, where p is the length of the alpha_i-string
    below beta.  Processing by height keeps every needed root available.
    """
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    by_height = {1: list(simple)}
    height = 1
    while by_height.get(height):
        nxt = []
        for beta in by_height[height]:
            for i in range(n):
                pairing = sum(cartan[i][j] * beta[j] for j in range(n))
                p = 0
                lower = beta
                while True:
                    lower = tuple(lower[j] - simple[i][j] for j in range(n))
                    if lower in roots:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    cand = tuple(beta[j] + simple[i][j] for j in range(n))
                    if cand not in roots:
                        roots.add(cand)
                        nxt.append(cand)
        height += 1
        if nxt:
            by_height[height] = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


@functools.lru_cache(maxsize=None)
def _build(series, rank):
    cartan = _cartan_matrix(series, rank)
    n = rank

    # relative squared lengths from the symmetry d_i a_ij = d_j a_ji,
    # scaled so the long roots get d = 1
    d = [Fraction(0)] * n
    d[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(n):
            if i != j and cartan[i][j] != 0 and d[j] == 0:
                d[j] = d[i] * Fraction(cartan[i][j], cartan[j][i])
                todo.append(j)
    top = max(d)
    d = [x / top for x in d]

    root_gram = tuple(tuple(d[i] * cartan[i][j] for j in range(n)) for i in range(n))
    root_coords = _positive_root_closure(cartan)
    # weight coordinates m = C r for root coordinates r
    weight_of = lambda r: tuple(sum(cartan[i][j] * r[j] for j in range(n)) for i in range(n))
    positive = tuple(weight_of(r) for r in root_coords)
    theta_coords = root_coords[-1]
    theta = positive[-1]

    cartan_inv = mat_inverse(cartan)
    gram = mat_mul(mat_mul(mat_transpose(cartan_inv), mat_fractions(root_gram)), cartan_inv)

    def form(x, y):
        return sum(x[i] * sum(gram[i][j] * y[j] for j in range(n)) for i in range(n))

    theta_sq = form(theta, theta)
    if theta_sq != 2:
        scale = Fraction(2) / theta_sq
        gram = tuple(tuple(scale * v for v in row) for row in gram)
        theta_sq = form(theta, theta)
    assert theta_sq == 2
    theta_coroot = tuple(2 * c / theta_sq for c in theta)

    rho = (1,) * n
    hv = 1 + 2 * form(rho, theta) / theta_sq
    assert hv.denominator == 1
    root_lengths = tuple(form(b, b) for b in positive)

    datum = RootDatum(
        simple_type=SimpleType(series, rank),
        rank=n,
        cartan=cartan,
        simple_roots=tuple(weight_of(tuple(int(i == j) for j in range(n))) for i in range(n)),
        positive_roots=positive,
        positive_root_coords=tuple(root_coords),
        fundamental_weights=tuple(tuple(int(i == j) for j in range(n)) for i in range(n)),
        rho=rho,
        theta=theta,
        theta_coroot=theta_coroot,
        dual_coxeter=int(hv),
        gram=gram,
        root_lengths=root_lengths,
        _root_set=frozenset(positive),
        _root_index={b: i for i, b in enumerate(positive)},
    )
    # the stored Cartan matrix must be reproducible from the geometry
    for i in range(n):
        for j in range(n):
            assert datum.coroot_pairing(datum.simple_roots[i], datum.simple_roots[j]) == cartan[i][j]
    assert all(c == theta_coords[i] for i, c in enumerate(datum.root_coords(theta)))
    return datum


def build_root_datum(simple_type):
    """Root datum for a simple type given as SimpleType or a string like "B2"."""
    if isinstance(simple_type, str):
        simple_type = SimpleType.parse(simple_type)
    return _build(simple_type.series, simple_type.rank)


def identity_element(datum):
    return WeylElement((), identity_matrix(datum.rank), 0)


def simple_reflection(datum, i):
    return WeylElement((i,), datum.simple_reflections[i], 1)


def chamber_element(datum, x):
    """The w with w^{-1}(x) dominant, with the reduced word that found it.

    Repeatedly reflects the first strictly negative coordinate, so points on
    chamber walls pick the minimal-length representative deterministically.
    Returns (w, w^{-1}(x)).
    """
    n = datum.rank
    y = tuple(x)
    word = []
    while True:
        i = next((j for j in range(n) if y[j] < 0), None)
        if i is None:
            break
        y = datum.reflect_simple(i, y)
        word.append(i)
    matrix = identity_matrix(n)
    for i in word:
        matrix = mat_mul(matrix, datum.simple_reflections[i])
    return WeylElement(tuple(word), matrix, len(word)), y


def dominant_representative(datum, x):
    """The dominant chamber representative of x."""
    return chamber_element(datum, x)[1]


def element_from_matrix(datum, matrix):
    """Canonical WeylElement (reduced word, true length) with this matrix."""
    w, _ = chamber_element(datum, mat_vec(matrix, datum.rho))
    assert w.matrix == tuple(tuple(row) for row in matrix)
    return w


def compose(datum, w1, w2):
    """The element acting as x -> w1(w2(x))."""
    return element_from_matrix(datum, mat_mul(w1.matrix, w2.matrix))


def inverse(datum, w):
    return element_from_matrix(datum, mat_inverse_int(w.matrix))


def mat_inverse_int(matrix):
    inv = mat_inverse(matrix)
    return tuple(tuple(int(v) for v in row) for row in inv)


def inversion_count(datum, w):
    """Number of positive roots sent negative by w; equals the length."""
    return sum(1 for beta in datum.positive_roots if not datum.is_positive_root(w.act(beta)))


@functools.lru_cache(maxsize=None)
def _weyl_group_cached(datum, cap):
    identity = identity_element(datum)
    seen = {identity.matrix: identity}
    order = [identity]
    frontier = [identity]
    length = 0
    gens = datum.simple_reflections
    while frontier:
        length += 1
        nxt = []
        for w in frontier:
            for i, g in enumerate(gens):
                m = mat_mul(g, w.matrix)
                if m not in seen:
                    elem = WeylElement((i,) + w.word, m, length)
                    seen[m] = elem
                    nxt.append(elem)
                    if len(seen) > cap:
                        raise GroupTooLarge(
                            f"Weyl group of {datum.simple_type} exceeds cap {cap}"
                        )
        frontier = nxt
        order.extend(nxt)
    return tuple(order)


def weyl_group(datum, cap=WEYL_GROUP_CAP):
    """The full Weyl group, enumerated breadth first from the identity.

    Elements come out sorted by length; raises GroupTooLarge past the cap.
    """
    return _weyl_group_cached(datum, cap)


def longest_element(datum):
    """w0, found as the chamber element of -rho (no full enumeration needed)."""
    w, dom = chamber_element(datum, tuple(-c for c in datum.rho))
    assert dom == datum.rho
    return w


def weyl_orbit(datum, x):
    """The Weyl orbit of x as a set of coordinate tuples."""
    x = tuple(x)
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            for i in range(datum.rank):
                z = datum.reflect_simple(i, y)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return seen
