"""Affine Weyl combinatorics: translation lattice, alcove reduction, and
the action of lattice translations on real affine roots.

The affine Weyl group here is W acting together with translations by M,
the lattice generated by the Weyl orbit of theta^vee.  Its reflection
hyperplanes are exactly {x : (alpha|x) = n} for roots alpha and integers n,
and the fundamental alcove is

    C = {x : (alpha_i|x) >= 0 for all simple roots, (theta|x) <= 1}.

A real affine root n*delta + alpha is evaluated on a Cartan point x as
n + (alpha|x), i.e. with delta set to 1; the translation R_t acts on points
as x -> x + t and on roots as n*delta + alpha -> (n - (alpha|t))*delta + alpha.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ImaginaryRoot, OnBoundary
from .linalg import (
    identity_matrix,
    mat_det,
    mat_fractions,
    mat_inverse,
    mat_mul,
    mat_transpose,
    mat_vec,
    smith_normal_form,
    vec_add,
    vec_is_integral,
    vec_is_zero,
    vec_sub,
)
from .rootdata import WeylElement, element_from_matrix, weyl_orbit

_MAX_REDUCE_STEPS = 100000


@dataclass(frozen=True)
class AffineWeylElement:
    """An affine Weyl group element acting as x -> finite(x) + translation."""

    finite: WeylElement
    translation: tuple

    def apply(self, x):
        return vec_add(self.finite.act(x), self.translation)

    @property
    def is_identity(self):
        return self.finite.length == 0 and vec_is_zero(self.translation)


@dataclass(frozen=True, eq=False)
class LatticeM:
    """The translation lattice M = Z-span of W(theta^vee) and its dual M*.

    Both bases are stored in fundamental-weight coordinates; basis entries
    are integers because theta^vee is an integral weight vector.
    """

    basis: tuple
    dual_basis: tuple
    index_dual_over_m: int
    _basis_inv: tuple
    _dual_inv: tuple

    def coords(self, x):
        """Exact coordinates of x in the M basis."""
        return mat_vec(self._basis_inv, x)

    def dual_coords(self, x):
        return mat_vec(self._dual_inv, x)

    def contains(self, x):
        return vec_is_integral(self.coords(x))

    def dual_contains(self, x):
        return vec_is_integral(self.dual_coords(x))

    def coset_representatives(self, q):
        """Representatives of M*/(q M), enumerated deterministically.

        Uses the Smith form of the matrix expressing the q M basis in
        M* coordinates; the count is q^rank * |M*/M|.
        """
        n = len(self.basis)
        c = mat_mul(self._dual_inv, tuple(tuple(q * v for v in col) for col in _columns(self.basis)))
        u, d, _ = smith_normal_form(_int_matrix(c))
        u_inv = _int_matrix(mat_inverse(u))
        diag = [int(d[i][i]) for i in range(n)]
        reps = []
        idx = [0] * n
        while True:
            x = mat_vec(u_inv, tuple(idx))
            reps.append(_from_columns(self.dual_basis, x))
            j = n - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < diag[j]:
                    break
                idx[j] = 0
                j -= 1
            if j < 0:
                break
        return tuple(reps)


def _columns(vecs):
    """Matrix whose columns are the given vectors."""
    return mat_transpose(tuple(vecs))


def _int_matrix(m):
    out = []
    for row in m:
        assert all(Fraction(v).denominator == 1 for v in row)
        out.append(tuple(int(v) for v in row))
    return tuple(out)


def _from_columns(vecs, coeffs):
    n = len(vecs[0])
    return tuple(sum(coeffs[j] * vecs[j][i] for j in range(len(vecs))) for i in range(n))


@functools.lru_cache(maxsize=None)
def lattice_m(datum):
    """Build M from the orbit of theta^vee and solve for the dual basis."""
    orbit = sorted(weyl_orbit(datum, tuple(int(c) for c in datum.theta_coroot)))
    mat = [[int(v[i]) for v in orbit] for i in range(datum.rank)]
    u, d, _ = smith_normal_form(mat)
    u_inv = _int_matrix(mat_inverse(u))
    basis = []
    for i in range(datum.rank):
        di = int(d[i][i])
        assert di != 0, "orbit of theta^vee must span the Cartan space"
        basis.append(tuple(di * u_inv[r][i] for r in range(datum.rank)))
    basis = tuple(basis)

    # dual basis solves (dual_j | basis_i) = delta_ij through the Gram matrix
    gram_b = mat_mul(mat_fractions(datum.gram), _columns(basis))
    dual_cols = mat_inverse(mat_transpose(gram_b))
    dual_basis = tuple(tuple(col) for col in mat_transpose(dual_cols))

    basis_inv = mat_inverse(_columns(basis))
    dual_inv = mat_inverse(_columns(dual_basis))
    index = abs(mat_det(mat_mul(dual_inv, mat_fractions(_columns(basis)))))
    assert index.denominator == 1 and index > 0
    return LatticeM(
        basis=basis,
        dual_basis=dual_basis,
        index_dual_over_m=int(index),
        _basis_inv=basis_inv,
        _dual_inv=dual_inv,
    )


def in_closed_alcove(datum, x):
    return datum.is_dominant(x) and datum.alcove_level(x) <= 1


def in_open_alcove(datum, x):
    return datum.is_strictly_dominant(x) and datum.alcove_level(x) < 1


def star_norm(datum, x):
    """max |(alpha|x)| over positive roots; at most 1 exactly on W(closed C)."""
    return max(abs(datum.form(beta, x)) for beta in datum.positive_roots)


def in_star_interior(datum, x):
    return star_norm(datum, x) < 1


def alcove_reduce(datum, x):
    """Map x into the closed fundamental alcove by the affine Weyl group.

    Returns (c, sigma) with sigma = (w, t) acting as y -> w(y) + t and
    c = sigma(x).  Only strict wall violations trigger reflections, so
    points already on walls of the closed alcove keep the minimal-length
    finite part; interior points reduce to (x, identity).
    """
    n = datum.rank
    x = tuple(Fraction(c) for c in x)
    y = x
    fmat = identity_matrix(n)
    ftrans = (Fraction(0),) * n
    theta = datum.theta
    for _ in range(_MAX_REDUCE_STEPS):
        i = next((j for j in range(n) if y[j] < 0), None)
        if i is not None:
            y = datum.reflect_simple(i, y)
            refl = datum.simple_reflections[i]
            fmat = mat_mul(refl, fmat)
            ftrans = mat_vec(refl, ftrans)
            continue
        level = datum.alcove_level(y)
        if level > 1:
            # affine reflection in the wall (theta|x) = 1
            y = vec_sub(y, tuple((level - 1) * c for c in theta))
            row = datum.theta_pairing_row
            refl = tuple(
                tuple(int(r == c) - theta[r] * row[c] for c in range(n))
                for r in range(n)
            )
            fmat = mat_mul(refl, fmat)
            ftrans = vec_add(mat_vec(refl, ftrans), tuple(Fraction(c) for c in theta))
            continue
        break
    else:
        raise AssertionError("alcove reduction did not terminate")
    sigma = AffineWeylElement(element_from_matrix(datum, fmat), ftrans)
    assert sigma.apply(x) == y
    return y, sigma


def tile_translate(datum, x):
    """The M-translate of x landing in the Weyl star W(closed alcove).

    Returns (t, y) with y = x + t.  The representative is unique when y is
    interior, meaning |(alpha|y)| < 1 for every root; otherwise the input
    sits over a tile boundary and OnBoundary is raised.
    """
    c, sigma = alcove_reduce(datum, x)
    w_inv = mat_inverse(sigma.finite.matrix)
    t = mat_vec(w_inv, sigma.translation)
    y = vec_add(tuple(Fraction(v) for v in x), t)
    if star_norm(datum, y) >= 1:
        raise OnBoundary(f"translate of {x} lies on the boundary of the Weyl star")
    assert lattice_m(datum).contains(t)
    return t, y


@dataclass(frozen=True)
class AffineRoot:
    """A real or imaginary affine root n*delta + alpha.

    alpha is a finite root in weight coordinates, or the zero vector for
    the imaginary roots n*delta.
    """

    n: int
    alpha: tuple

    @property
    def is_imaginary(self):
        return all(c == 0 for c in self.alpha)

    def __repr__(self):
        return f"AffineRoot({self.n}*delta + {self.alpha})"


def affine_root_is_positive(datum, gamma):
    if gamma.n != 0:
        return gamma.n > 0
    if gamma.is_imaginary:
        raise ImaginaryRoot("the zero affine root has no sign")
    return datum.is_positive_root(gamma.alpha)


def affine_root_value(datum, gamma, x):
    """Evaluation n + (alpha|x) with delta set to 1."""
    return gamma.n + datum.form(gamma.alpha, x)


def translate_affine_root(datum, gamma, t):
    """R_t(n*delta + alpha) = (n - (alpha|t))*delta + alpha.

    The pairing (alpha|t) is an exact integer for t in M.  The sign of the
    result agrees with the sign of gamma evaluated at R_{-t}(c0) for any
    interior alcove point c0; both definitions are asserted equal.
    """
    if gamma.is_imaginary:
        raise ImaginaryRoot("imaginary roots are fixed by translations")
    shift = datum.form(gamma.alpha, t)
    assert Fraction(shift).denominator == 1, "M must pair integrally with roots"
    out = AffineRoot(gamma.n - int(shift), gamma.alpha)
    # cross-check the two sign definitions on a fixed interior sample point
    c0 = _interior_sample(datum)
    sample = affine_root_value(datum, gamma, vec_sub(c0, tuple(Fraction(v) for v in t)))
    assert (sample > 0) == affine_root_is_positive(datum, out)
    return out


@functools.lru_cache(maxsize=None)
def _interior_sample(datum):
    # rho / ((theta|rho) + 1) = rho / h^vee sits strictly inside the alcove
    level = datum.alcove_level(datum.rho)
    scale = Fraction(1, int(level) + 1)
    point = tuple(scale * c for c in datum.rho)
    assert in_open_alcove(datum, point)
    return point


def translation_flipped_roots(datum, t):
    """All positive real affine roots sent negative by R_t.

    Only n with 0 <= n <= max |(alpha|t)| can flip, so the enumeration is
    finite and exact.  The count is the affine length of the translation,
    which is even.
    """
    flipped = []
    bound = 0
    shifts = {}
    for beta in datum.positive_roots:
        s = datum.form(beta, t)
        assert Fraction(s).denominator == 1
        shifts[beta] = int(s)
        bound = max(bound, abs(int(s)))
    for beta in datum.positive_roots:
        neg = tuple(-c for c in beta)
        for n in range(0, bound + 1):
            gamma = AffineRoot(n, beta)
            if n - shifts[beta] < 0:
                flipped.append(gamma)
            if n >= 1:
                gamma = AffineRoot(n, neg)
                if n + shifts[beta] < 0 or (n + shifts[beta] == 0):
                    flipped.append(gamma)
    return tuple(flipped)
