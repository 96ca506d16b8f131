"""Level-k fusion coefficients computed two independent ways.

The production path is a finite character sum over the regular torsion
points tau = mu/(k + h^vee):

    N(lam, lam')^c = pref * sum_s char(cbar)(s) D(s)^2 char(lam)(s) char(lam')(s)

with cbar = -w0(c) and pref = (-1)^{#positive roots} / (|W| * |M*/(qM)|).
The sum runs over all regular coset representatives of M*/(qM); dividing by
|W| folds the free Weyl action on them, and the root-count sign makes the
weight D(s)^2 * pref a positive measure at the real points s.  Both choices
are pinned by the integer cross-check below, not by convention taste.

The cross-check path (Kac-Walton) decomposes the classical tensor product
and folds each component into the level alcove with signs under the
rho-shifted affine Weyl action at level k + h^vee, discarding wall hits.
It is integer-exact end to end, so any disagreement with the rounded
character sum signals a convention bug.
"""

from __future__ import annotations

import functools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .characters import (
    character_matrix,
    denominator_values,
    freudenthal_weights,
    torsion_points,
    weyl_dim,
)
from .errors import IdentityViolated, NotInAlcove, ResidualTooLarge
from .linalg import vec_add, vec_sub
from .rootdata import longest_element, weyl_group

ROUNDING_TOLERANCE = 1e-6


def level_alcove(datum, k):
    """All dominant integral weights with (theta|lam) <= k, in lex order."""
    assert k >= 0
    comarks = datum.theta_pairing_row
    n = datum.rank
    out = []

    def rec(prefix, budget):
        i = len(prefix)
        if i == n:
            out.append(tuple(prefix))
            return
        for m in range(budget // comarks[i] + 1):
            rec(prefix + [m], budget - m * comarks[i])

    rec([], k)
    return tuple(sorted(out))


@dataclass(frozen=True)
class AlcoveWeight:
    """A dominant integral weight together with a level it fits in."""

    lam: tuple
    level: int

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))

    def validate(self, datum):
        if not datum.is_dominant_integral(self.lam):
            raise NotInAlcove(f"{self.lam} is not dominant integral")
        if datum.alcove_level(self.lam) > self.level:
            raise NotInAlcove(f"{self.lam} exceeds level {self.level}")
        return self


def _check_alcove(datum, lam, k):
    AlcoveWeight(tuple(lam), k).validate(datum)
    return tuple(lam)


def classical_tensor(datum, lam, mu):
    """Tensor product multiplicities by weight-system folding.

    Iterates over the weight system of the smaller factor, pushing each
    translated weight through the chamber symmetrization.  The dimension
    identity is asserted exactly.
    """
    from .characters import monomial_to_character

    lam, mu = tuple(lam), tuple(mu)
    if weyl_dim(datum, mu) > weyl_dim(datum, lam):
        lam, mu = mu, lam
    out = {}
    for nu, mult in freudenthal_weights(datum, mu).items():
        sign, c = monomial_to_character(datum, vec_add(lam, nu))
        if sign:
            out[c] = out.get(c, 0) + sign * mult
    out = {c: m for c, m in sorted(out.items()) if m != 0}
    assert all(m > 0 for m in out.values())
    total = sum(m * weyl_dim(datum, c) for c, m in out.items())
    assert total == weyl_dim(datum, lam) * weyl_dim(datum, mu)
    return out


def _affine_reduce_shifted(datum, x, q):
    """Fold x (an integer rho-shifted weight) into the level-q open alcove.

    Returns (sign, representative) for regular orbits and None when the
    orbit lies on a wall, meaning some coordinate vanishes or the theta
    level hits q.  Integer arithmetic throughout.
    """
    n = datum.rank
    x = list(int(c) for c in x)
    sign = 1
    while True:
        i = next((j for j in range(n) if x[j] < 0), None)
        if i is not None:
            coef = x[i]
            alpha = datum.simple_roots[i]
            for j in range(n):
                x[j] -= coef * alpha[j]
            sign = -sign
            continue
        level = datum.alcove_level(x)
        if level > q:
            shift = level - q
            theta = datum.theta
            for j in range(n):
                x[j] -= shift * theta[j]
            sign = -sign
            continue
        break
    if any(c == 0 for c in x) or datum.alcove_level(x) == q:
        return None
    return sign, tuple(x)


def kac_walton_full(datum, lam, mu, k):
    """All level-k fusion coefficients of lam x mu by alcove folding."""
    lam = _check_alcove(datum, lam, k)
    mu = _check_alcove(datum, mu, k)
    q = k + datum.dual_coxeter
    out = {}
    for nu, mult in classical_tensor(datum, lam, mu).items():
        folded = _affine_reduce_shifted(datum, vec_add(nu, datum.rho), q)
        if folded is None:
            continue
        sign, y = folded
        c = vec_sub(y, datum.rho)
        out[c] = out.get(c, 0) + sign * mult
    out = {c: m for c, m in sorted(out.items()) if m != 0}
    assert all(m > 0 for m in out.values())
    assert all(datum.alcove_level(c) <= k for c in out)
    return out


def kac_walton(datum, lam, mu, nu, k):
    """One fusion coefficient from the folding path."""
    nu = _check_alcove(datum, nu, k)
    return kac_walton_full(datum, lam, mu, k).get(tuple(nu), 0)


@functools.lru_cache(maxsize=None)
def _verlinde_context(datum, k):
    weights = level_alcove(datum, k)
    index = {w: i for i, w in enumerate(weights)}
    w0 = longest_element(datum)
    bar = tuple(index[tuple(-c for c in w0.act(w))] for w in weights)
    ts = torsion_points(datum, k)
    taus = ts.regular_points
    X = character_matrix(datum, weights, taus)
    D = denominator_values(datum, taus)
    sign = (-1) ** len(datum.positive_roots)
    pref = sign / (len(weyl_group(datum)) * ts.index)
    measure = pref * D * D
    # D^2 at a real point is (+-)|D|^2; the root-count sign turns it positive
    assert float(np.max(np.abs(measure.imag))) < 1e-9
    measure = measure.real
    assert float(np.min(measure)) > 0
    return weights, index, bar, X, measure


def verlinde_row(datum, lam, mu, k):
    """Fusion coefficients of lam x mu against every alcove weight.

    Returns (row, residual) where row maps c to the rounded integer and
    residual is the worst rounding or imaginary defect seen.
    """
    weights, index, bar, X, measure = _verlinde_context(datum, k)
    lam = _check_alcove(datum, lam, k)
    mu = _check_alcove(datum, mu, k)
    prod = X[index[lam]] * X[index[mu]] * measure
    vals = X[list(bar)] @ prod
    resid = 0.0
    row = {}
    for c, v in zip(weights, vals):
        n = round(v.real)
        resid = max(resid, abs(v.imag), abs(v.real - n))
        if n:
            row[c] = n
    if resid > ROUNDING_TOLERANCE:
        raise ResidualTooLarge(
            f"{datum.simple_type} level {k}, {lam} x {mu}: residual {resid:.3e}"
        )
    if any(n < 0 for n in row.values()):
        raise ResidualTooLarge(
            f"{datum.simple_type} level {k}, {lam} x {mu}: negative coefficient"
        )
    return row, resid


def verlinde_coefficient(datum, lam, mu, nu, k):
    """One fusion coefficient from the torsion character sum."""
    nu = _check_alcove(datum, nu, k)
    row, _ = verlinde_row(datum, lam, mu, k)
    return row.get(tuple(nu), 0)


@dataclass(eq=False)
class FusionTable:
    """Structure constants of the level-k fusion ring over the alcove."""

    algebra: object
    level: int
    weights: tuple
    coefficients: dict
    max_residual: float = 0.0
    _matrices: dict = field(default_factory=dict, repr=False)

    def coefficient(self, lam, mu, nu):
        return self.coefficients.get((tuple(lam), tuple(mu), tuple(nu)), 0)

    def nonzero_entries(self):
        return sorted(self.coefficients.items())

    @property
    def unit(self):
        return self.weights[0]

    def bar(self, lam):
        w0 = longest_element(_datum_of(self))
        return tuple(-c for c in w0.act(tuple(lam)))

    def matrix(self, lam):
        """Fusion matrix N_lam with rows mu and columns nu."""
        lam = tuple(lam)
        if lam not in self._matrices:
            size = len(self.weights)
            idx = {w: i for i, w in enumerate(self.weights)}
            m = np.zeros((size, size), dtype=np.int64)
            for (a, b, c), n in self.coefficients.items():
                if a == lam:
                    m[idx[b], idx[c]] = n
            self._matrices[lam] = m
        return self._matrices[lam]

    def verify(self, max_assoc_checks=20000):
        """Unit, commutativity, conjugation symmetry, associativity; exact."""
        idx = {w: i for i, w in enumerate(self.weights)}
        zero = (0,) * len(self.weights[0])
        for lam in self.weights:
            for nu in self.weights:
                want = 1 if nu == lam else 0
                if self.coefficient(zero, lam, nu) != want:
                    raise IdentityViolated(f"unit axiom fails at {lam}, {nu}")
        for (a, b, c), n in self.coefficients.items():
            if self.coefficient(b, a, c) != n:
                raise IdentityViolated(f"commutativity fails at {(a, b, c)}")
            if self.coefficient(a, self.bar(c), self.bar(b)) != n:
                raise IdentityViolated(f"conjugation symmetry fails at {(a, b, c)}")
        pairs = [(a, b) for a in self.weights for b in self.weights]
        if len(pairs) * len(self.weights) > max_assoc_checks:
            step = max(1, len(pairs) * len(self.weights) // max_assoc_checks)
            pairs = pairs[::step]
        for a, b in pairs:
            lhs = self.matrix(a) @ self.matrix(b)
            rhs = sum(self.coefficient(a, b, c) * self.matrix(c) for c in self.weights)
            if not np.array_equal(lhs, rhs):
                raise IdentityViolated(f"associativity fails at {a} x {b}")
        return True


def _datum_of(table):
    from .rootdata import build_root_datum

    return build_root_datum(table.algebra)


def fusion_table(datum, k, threads=1, check=True):
    """The full level-k fusion table from the torsion character sum.

    Raises ResidualTooLarge if any entry fails to round cleanly; with
    check=True the ring axioms are verified before returning.
    """
    weights = level_alcove(datum, k)
    pairs = [(a, b) for i, a in enumerate(weights) for b in weights[i:]]

    def job(pair):
        a, b = pair
        return pair, verlinde_row(datum, a, b, k)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = dict(pool.map(job, pairs))
    else:
        results = dict(map(job, pairs))

    coeffs = {}
    max_resid = 0.0
    for a, b in pairs:
        row, resid = results[(a, b)]
        max_resid = max(max_resid, resid)
        for c, n in row.items():
            coeffs[(a, b, c)] = n
            if a != b:
                coeffs[(b, a, c)] = n
    table = FusionTable(
        algebra=datum.simple_type,
        level=k,
        weights=weights,
        coefficients=coeffs,
        max_residual=max_resid,
    )
    if check:
        table.verify()
    return table
