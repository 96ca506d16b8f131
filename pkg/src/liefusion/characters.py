"""Weight systems, Weyl characters at rational torus points, torsion sets.

A torus point is a rational vector tau; the group element behind it is
s = exp(2*pi*i*tau), and a weight mu evaluates on it as

    e_tau(mu) = exp(2*pi*i*(mu|tau)).

Pairings stay exact rationals all the way; only the final exponential is
floating complex.  tau is regular when no root pairs integrally with it,
which is exactly where the Weyl denominator does not vanish.
"""

from __future__ import annotations

import cmath
import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .alcove import lattice_m
from .errors import NotDominant, RegularityError
from .linalg import common_denominator, vec_add, vec_sub
from .rootdata import (
    chamber_element,
    dominant_representative,
    weyl_group,
    weyl_orbit,
)

_TWO_PI = 2.0 * cmath.pi


@dataclass(frozen=True)
class TorusPoint:
    """Rational point tau of the Cartan space, standing for exp(2*pi*i*tau)."""

    datum: object
    tau: tuple

    def pairing(self, x):
        return self.datum.form(x, self.tau)

    def evaluate(self, x):
        """exp(2*pi*i*(x|tau)), unit modulus."""
        t = self.pairing(x)
        t -= int(t)  # reduce the angle exactly before going to floats
        return cmath.exp(1j * _TWO_PI * float(t))

    @property
    def is_regular(self):
        return is_regular_tau(self.datum, self.tau)


def as_tau(datum, point):
    if isinstance(point, TorusPoint):
        return point.tau
    return tuple(Fraction(c) for c in point)


def is_regular_tau(datum, tau):
    """No root pairs integrally with tau (exact test)."""
    tau = as_tau(datum, tau)
    return all(Fraction(datum.form(beta, tau)).denominator != 1
               for beta in datum.positive_roots)


def unit_phase(datum, x, tau):
    t = datum.form(x, tau)
    t -= int(t)
    return cmath.exp(1j * _TWO_PI * float(t))


def weyl_dim(datum, lam):
    """dim V(lam) = prod over positive roots of (lam+rho|a)/(rho|a)."""
    if not datum.is_dominant_integral(lam):
        raise NotDominant(f"{lam} is not dominant integral")
    num = Fraction(1)
    shifted = vec_add(lam, datum.rho)
    for beta in datum.positive_roots:
        num *= Fraction(datum.form(shifted, beta)) / datum.form(datum.rho, beta)
    assert num.denominator == 1
    return int(num)


class WeightSystem:
    """The full multiset of weights of an irreducible highest-weight module."""

    __slots__ = ("highest", "entries", "dominant_entries")

    def __init__(self, highest, dominant_entries):
        self.highest = tuple(highest)
        self.dominant_entries = dict(dominant_entries)
        self.entries = {}

    def multiplicity(self, mu):
        return self.entries.get(tuple(mu), 0)

    @property
    def total(self):
        return sum(self.entries.values())

    def items(self):
        return sorted(self.entries.items())


@functools.lru_cache(maxsize=None)
def freudenthal_weights(datum, lam):
    """Weight multiplicities of V(lam) by the Freudenthal recursion.

    Candidates are the dominant integral mu with lam - mu a nonnegative
    root combination (every such mu is a weight); all arithmetic is exact
    and the multiset total is checked against the Weyl dimension.
    """
    lam = tuple(lam)
    if not datum.is_dominant_integral(lam):
        raise NotDominant(f"{lam} is not dominant integral")
    n = datum.rank

    lowest = dominant_representative(datum, tuple(-c for c in lam))
    cap = datum.root_coords(vec_sub(lam, tuple(-c for c in lowest)))
    cap = [int(c) for c in cap]
    assert all(c >= 0 for c in cap)

    dominants = []
    for steps in itertools.product(*(range(c + 1) for c in cap)):
        mu = lam
        for i, k in enumerate(steps):
            if k:
                mu = tuple(mu[j] - k * datum.simple_roots[i][j] for j in range(n))
        if datum.is_dominant(mu):
            dominants.append(mu)
    # closest to lam first, so the recursion sees higher weights already done
    dominants.sort(key=lambda mu: (sum(datum.root_coords(vec_sub(lam, mu))), mu))
    assert dominants[0] == lam

    rho = datum.rho
    top_norm = datum.norm_sq(vec_add(lam, rho))
    mult = {lam: 1}
    for mu in dominants[1:]:
        acc = Fraction(0)
        for beta in datum.positive_roots:
            j = 1
            while True:
                nu = tuple(mu[i] + j * beta[i] for i in range(n))
                m2 = mult.get(dominant_representative(datum, nu), 0)
                if m2 == 0:
                    break  # weight strings along beta are unbroken
                acc += m2 * Fraction(datum.form(nu, beta))
                j += 1
        denom = top_norm - datum.norm_sq(vec_add(mu, rho))
        assert denom != 0
        value = 2 * acc / denom
        assert value.denominator == 1 and value > 0
        mult[mu] = int(value)

    system = WeightSystem(lam, mult)
    for mu, m in mult.items():
        for nu in weyl_orbit(datum, mu):
            system.entries[nu] = m
    assert system.total == weyl_dim(datum, lam)
    return system


def weyl_denominator(datum, tau):
    """D(tau) = sum over W of sign(w) exp(2*pi*i*(w(rho)|tau)).

    Vanishes exactly on the singular points.
    """
    tau = as_tau(datum, tau)
    return sum(w.sign * unit_phase(datum, w.act(datum.rho), tau)
               for w in weyl_group(datum))


def char_value(datum, lam, tau):
    """Character of V(lam) at exp(2*pi*i*tau).

    Regular tau goes through the Weyl quotient; singular tau falls back to
    the weight-multiset sum, so dimensions (tau = 0) come out exactly.
    """
    lam = tuple(lam)
    if not datum.is_dominant_integral(lam):
        raise NotDominant(f"{lam} is not dominant integral")
    tau = as_tau(datum, tau)
    if is_regular_tau(datum, tau):
        shifted = vec_add(lam, datum.rho)
        num = sum(w.sign * unit_phase(datum, w.act(shifted), tau)
                  for w in weyl_group(datum))
        den = weyl_denominator(datum, tau)
        return num / den
    system = freudenthal_weights(datum, lam)
    return sum(m * unit_phase(datum, mu, tau) for mu, m in system.items())


@dataclass(frozen=True, eq=False)
class TorsionSet:
    """Level-k torsion data: tau = mu/(k + h^vee) for mu running over M*/(qM)."""

    datum: object
    level: int
    modulus: int
    reps: tuple
    regular_reps: tuple
    index: int

    @property
    def points(self):
        return tuple(tuple(Fraction(c, self.modulus) for c in mu) for mu in self.reps)

    @property
    def regular_points(self):
        return tuple(tuple(Fraction(c, self.modulus) for c in mu)
                     for mu in self.regular_reps)


@functools.lru_cache(maxsize=None)
def torsion_points(datum, k):
    """Coset representatives of M*/((k+h^vee) M) and their regular subset."""
    assert k >= 0
    q = k + datum.dual_coxeter
    lattice = lattice_m(datum)
    reps = lattice.coset_representatives(q)
    index = q ** datum.rank * lattice.index_dual_over_m
    assert len(reps) == index
    regular = tuple(
        mu for mu in reps
        if all((Fraction(datum.form(beta, mu)) / q).denominator != 1
               for beta in datum.positive_roots)
    )
    assert regular, "every level has regular torsion points"
    return TorsionSet(datum=datum, level=k, modulus=q, reps=reps,
                      regular_reps=regular, index=index)


def monomial_to_character(datum, mu):
    """Weyl-symmetrize a single monomial against the denominator.

    Returns (0, None) when mu + rho is singular, otherwise (sign, lam) with
    sign the parity of the chamber element and lam = w^{-1}(mu+rho) - rho
    dominant, so that the symmetrized monomial equals sign * char(lam).
    """
    shifted = vec_add(tuple(mu), datum.rho)
    w, dom = chamber_element(datum, shifted)
    if any(c == 0 for c in dom):
        return 0, None
    lam = vec_sub(dom, datum.rho)
    assert datum.is_dominant_integral(lam)
    return w.sign, tuple(lam)


def decompose_tcharacter(datum, f):
    """Expand a formal weight sum into irreducible characters.

    f maps weights to integer coefficients; the result maps dominant
    weights to the (possibly negative) multiplicity of char(lam) in the
    Weyl induction of f.
    """
    out = {}
    for mu, coeff in f.items():
        if coeff == 0:
            continue
        sign, lam = monomial_to_character(datum, mu)
        if sign == 0:
            continue
        out[lam] = out.get(lam, 0) + sign * coeff
    return {lam: c for lam, c in sorted(out.items()) if c != 0}


def evaluate_tcharacter(datum, f, tau):
    tau = as_tau(datum, tau)
    return sum(c * unit_phase(datum, mu, tau) for mu, c in sorted(f.items()))


def weyl_induction_value(datum, f, tau):
    """Value at tau of sum over W of w(f / prod(1 - e^{-alpha})); tau regular.

    The w-translate is evaluated by moving w onto the weights, since
    e(mu) at w^{-1}(tau) equals e(w(mu)) at tau.
    """
    tau = as_tau(datum, tau)
    if not is_regular_tau(datum, tau):
        raise RegularityError(f"tau = {tau} is singular")
    items = sorted(f.items())
    total = 0j
    for w in weyl_group(datum):
        num = sum(c * unit_phase(datum, w.act(mu), tau) for mu, c in items)
        den = 1.0 + 0j
        for beta in datum.positive_roots:
            den *= 1.0 - unit_phase(datum, tuple(-v for v in w.act(beta)), tau)
        total += num / den
    return total


# ---------------------------------------------------------------------------
# vectorized evaluation used by the fusion and localization sweeps


def phase_matrix(datum, xs, taus):
    """Matrix exp(2*pi*i*(x_i|tau_j)) from exact integer arithmetic.

    Both families are lifted to a common denominator and the pairings are
    computed as integers, so the only floating step is the final exp.  Falls
    back to Python bignums if the int64 bound could overflow.
    """
    xs = [tuple(Fraction(c) for c in x) for x in xs]
    taus = [tuple(Fraction(c) for c in t) for t in taus]
    if not xs or not taus:
        return np.zeros((len(xs), len(taus)), dtype=complex)
    xden = common_denominator(xs)
    tden = common_denominator(taus)
    gden = common_denominator(datum.gram)
    X = np.array([[int(c * xden) for c in x] for x in xs], dtype=object)
    T = np.array([[int(c * tden) for c in t] for t in taus], dtype=object)
    G = np.array([[int(v * gden) for v in row] for row in datum.gram], dtype=object)
    D = xden * tden * gden
    bound = (max(1, int(np.max(np.abs(X)))) * max(1, int(np.max(np.abs(G))))
             * max(1, int(np.max(np.abs(T)))) * datum.rank * datum.rank)
    if bound < 2**62 and D < 2**62:
        E = (X.astype(np.int64) @ G.astype(np.int64) @ T.astype(np.int64).T) % D
        return np.exp((2j * np.pi / D) * E.astype(np.float64))
    E = (X @ G @ T.T) % D
    return np.exp((2j * np.pi / D) * E.astype(np.float64))


def denominator_values(datum, taus):
    """Weyl denominator at many points at once."""
    group = weyl_group(datum)
    xs = [w.act(datum.rho) for w in group]
    signs = np.array([w.sign for w in group])
    P = phase_matrix(datum, xs, taus)
    return signs @ P


def character_matrix(datum, lams, taus):
    """Rows of character values char(lam_i)(tau_j); every tau must be regular."""
    group = weyl_group(datum)
    signs = np.array([w.sign for w in group])
    xs = []
    for lam in lams:
        shifted = vec_add(tuple(lam), datum.rho)
        xs.extend(w.act(shifted) for w in group)
    num = phase_matrix(datum, xs, taus).reshape(len(lams), len(group), len(taus))
    num = np.einsum("w,lwt->lt", signs, num)
    den = denominator_values(datum, taus)
    if np.min(np.abs(den)) < 1e-9:
        bad = int(np.argmin(np.abs(den)))
        raise RegularityError(f"singular torus point at index {bad}")
    return num / den[None, :]
