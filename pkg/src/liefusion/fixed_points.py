"""Torus fixed points of an orbit product and of its alcove-folded twin.

For interior alcove points a = lam/k and b = lam'/k, the torus fixed points
of both spaces are labeled by pairs (u, v) of Weyl elements.  The product
side sees the moment image q = u(a) + v(b); the folded side sees its unique
translate c = q + t landing inside the Weyl star, with t in the lattice M.
Each record carries the tangent-line sign data on the half-dimensional
slices at both points:

    s_u(beta) = sign (beta|u(a)),   s_v(beta) = sign (beta|v(b)),
    s_w(beta) = sign (beta|q),      eps_q = s_u * s_v * s_w,

and eps_p flips eps_q exactly on the set S = {beta > 0 : |(beta|q)| > 1}.
The pairing in the flip criterion is the invariant form, which is what the
affine-root criterion below reproduces; for long roots it coincides with
the coroot pairing, and only the form version stays consistent with the
affine criterion on the short roots of B and G types.

Sign convention: eps refers to the torus weight on the holomorphic tangent
line, pinned end to end by the requirement that the fixed-point sums in
the localization module reproduce products of characters.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .alcove import (
    in_open_alcove,
    in_star_interior,
    lattice_m,
    tile_translate,
    translate_affine_root,
    translation_flipped_roots,
    AffineRoot,
)
from .errors import DegenerateConfiguration, IdentityViolated
from .fusion import _check_alcove
from .linalg import vec_add, vec_scale
from .rootdata import chamber_element, compose, inverse, weyl_group


@dataclass(frozen=True)
class OrbitPair:
    """Interior alcove points a = lam/k and b = lam'/k at a fixed level."""

    lam: tuple
    lam2: tuple
    level: int
    a: tuple
    b: tuple


def orbit_pair(datum, lam, lam2, k):
    lam = _check_alcove(datum, lam, k)
    lam2 = _check_alcove(datum, lam2, k)
    a = tuple(Fraction(c, k) for c in lam)
    b = tuple(Fraction(c, k) for c in lam2)
    return OrbitPair(lam=lam, lam2=lam2, level=k, a=a, b=b)


def genericity_check(datum, lam, lam2, k):
    """Check that every fixed-point image avoids every affine wall.

    Requires a and b strictly inside the alcove and (beta|u(a)+v(b))
    nonintegral for every root and every pair (u, v).  Returns the
    validated OrbitPair; raises DegenerateConfiguration naming the wall.
    """
    pair = orbit_pair(datum, lam, lam2, k)
    for name, x in (("a", pair.a), ("b", pair.b)):
        if not in_open_alcove(datum, x):
            raise DegenerateConfiguration(
                f"{name} = {x} is not interior to the fundamental alcove"
            )
    group = weyl_group(datum)
    roots = datum.positive_roots
    images_a = [u.act(pair.a) for u in group]
    images_b = [v.act(pair.b) for v in group]
    fa = [[datum.form(beta, ua) for beta in roots] for ua in images_a]
    fb = [[datum.form(beta, vb) for beta in roots] for vb in images_b]
    for iu, u in enumerate(group):
        for iv, v in enumerate(group):
            for ib, beta in enumerate(roots):
                val = fa[iu][ib] + fb[iv][ib]
                if Fraction(val).denominator == 1:
                    raise DegenerateConfiguration(
                        f"(u, v) = ({u!r}, {v!r}): image pairs integrally "
                        f"({beta}|u(a)+v(b)) = {val}"
                    )
    return pair


@dataclass(frozen=True)
class FixedPointRecord:
    """One (u, v) fixed point with its translation and sign bookkeeping."""

    u: object
    v: object
    level: int
    q_image: tuple
    t: tuple
    c: tuple
    w: object           # chamber element of q_image
    c_chamber: object   # chamber element of c; identity exactly on alcove records
    flips: tuple        # per positive root: True when the tangent sign differs
    eps_q: tuple
    eps_p: tuple

    @property
    def in_fundamental_alcove(self):
        return self.c_chamber.length == 0

    def flip_set(self, datum):
        return frozenset(beta for beta, f in zip(datum.positive_roots, self.flips) if f)


def make_record(datum, pair, u, v):
    """Build the fixed-point record for one (u, v); the image must be generic."""
    ua = u.act(pair.a)
    vb = v.act(pair.b)
    q = vec_add(ua, vb)
    pairings = [datum.form(beta, q) for beta in datum.positive_roots]
    for beta, val in zip(datum.positive_roots, pairings):
        if Fraction(val).denominator == 1:
            raise DegenerateConfiguration(
                f"(u, v) = ({u!r}, {v!r}): ({beta}|u(a)+v(b)) = {val} is integral"
            )
    t, c = tile_translate(datum, q)
    assert in_star_interior(datum, c) and c == vec_add(q, t)
    w_q, _ = chamber_element(datum, q)
    sigma_c, _ = chamber_element(datum, c)
    s_u = [1 if datum.form(beta, ua) > 0 else -1 for beta in datum.positive_roots]
    s_v = [1 if datum.form(beta, vb) > 0 else -1 for beta in datum.positive_roots]
    s_w = [1 if val > 0 else -1 for val in pairings]
    flips = tuple(abs(val) > 1 for val in pairings)
    eps_q = tuple(a * b * c_ for a, b, c_ in zip(s_u, s_v, s_w))
    eps_p = tuple(e * (-1 if f else 1) for e, f in zip(eps_q, flips))
    return FixedPointRecord(
        u=u, v=v, level=pair.level, q_image=q, t=t, c=c,
        w=w_q, c_chamber=sigma_c, flips=flips, eps_q=eps_q, eps_p=eps_p,
    )


def enumerate_fixed_points(datum, pair):
    """All |W|^2 records for a generic pair, in group enumeration order.

    Exactly |W| of them fold into the interior of the fundamental alcove.
    """
    group = weyl_group(datum)
    records = tuple(make_record(datum, pair, u, v) for u in group for v in group)
    interior = [r for r in records if r.in_fundamental_alcove]
    assert len(interior) == len(group)
    return records


def sign_flip_set_finite(datum, record):
    """S = {beta > 0 : |(beta|q)| > 1}, by exact rational pairings."""
    return frozenset(
        beta for beta in datum.positive_roots
        if abs(datum.form(beta, record.q_image)) > 1
    )


def chamber_normalized_translation(datum, record):
    """The translation seen from the fundamental-alcove partner of the record.

    Conjugating the record by the chamber element of c moves c into the
    fundamental alcove and t to sigma_c^{-1}(t); all root-positivity
    statements about R_t live there.  Fundamental-alcove records are their
    own partners, so this is the identity on them.
    """
    sigma_inv = inverse(datum, record.c_chamber)
    return sigma_inv, sigma_inv.act(record.t)


def sign_flip_set_affine(datum, record):
    """S' from the affine criterion: R_t(delta+beta) or R_t(delta-beta) < 0.

    The criterion is evaluated on the chamber-normalized translation and
    the answer is carried back through sigma_c, which is a no-op exactly on
    fundamental-alcove records.  Agrees with the finite criterion on every
    record.
    """
    from .alcove import affine_root_is_positive

    sigma_inv, t_f = chamber_normalized_translation(datum, record)
    out = []
    for beta in datum.positive_roots:
        image = sigma_inv.act(beta)
        base = image if datum.is_positive_root(image) else tuple(-c for c in image)
        plus = translate_affine_root(datum, AffineRoot(1, base), t_f)
        minus = translate_affine_root(datum, AffineRoot(1, tuple(-c for c in base)), t_f)
        if not affine_root_is_positive(datum, plus) or not affine_root_is_positive(datum, minus):
            out.append(beta)
    return frozenset(out)


def epsilon_signs(datum, record):
    """Tangent sign maps (eps_q, eps_p) keyed by positive root.

    Asserts the signed-multiset identity behind the two denominator
    factorizations: {w(beta)} + {eps_q(beta) beta} matches
    {u(beta)} + {v(beta)} over the positive roots, exactly.
    """
    roots = datum.positive_roots
    lhs = Counter()
    rhs = Counter()
    for i, beta in enumerate(roots):
        lhs[tuple(record.w.act(beta))] += 1
        lhs[vec_scale(record.eps_q[i], beta)] += 1
        rhs[tuple(record.u.act(beta))] += 1
        rhs[tuple(record.v.act(beta))] += 1
    assert lhs == rhs, "denominator multiset identity failed"
    eps_q = dict(zip(roots, record.eps_q))
    eps_p = dict(zip(roots, record.eps_p))
    return eps_q, eps_p


@dataclass(frozen=True)
class SignReport:
    """Verified translation data for one record."""

    finite_flip_set: frozenset
    affine_flip_set: frozenset
    affine_flipped: tuple
    finite_part_sum: tuple
    scaled_translation: tuple
    flip_count: int
    relative_length: int
    parity: int


def translation_parity_report(datum, record):
    """Check the root-sum and parity identities for the translation part.

    Enumerates every positive real affine root sent negative by the
    translation.  Exact assertions, raising IdentityViolated on failure:

    * the finite parts of the flipped roots sum to h^vee * t (this and the
      even flip count hold for the raw t of any record);
    * on the chamber-normalized translation, nothing flips at delta level
      two or higher, the affine flip set matches the finite one, and
      (-1)^(|w| + #S) = +1 for the chamber-relative w.
    """
    t = record.t
    flipped = translation_flipped_roots(datum, t)
    n = datum.rank
    finite_sum = tuple(sum(Fraction(g.alpha[i]) for g in flipped) for i in range(n))
    h_t = vec_scale(datum.dual_coxeter, t)
    if finite_sum != tuple(Fraction(c) for c in h_t):
        raise IdentityViolated(
            f"finite-part sum {finite_sum} != h^vee t {h_t} for record {record}"
        )
    if len(flipped) % 2:
        raise IdentityViolated(f"odd flip count {len(flipped)} for record {record}")
    _, t_f = chamber_normalized_translation(datum, record)
    flipped_f = translation_flipped_roots(datum, t_f)
    if any(g.n >= 2 for g in flipped_f):
        raise IdentityViolated(f"unexpected flip at level >= 2 for record {record}")
    s_fin = sign_flip_set_finite(datum, record)
    s_aff = sign_flip_set_affine(datum, record)
    if s_fin != s_aff:
        raise IdentityViolated(
            f"flip-set criteria disagree: finite {sorted(s_fin)} vs "
            f"affine {sorted(s_aff)} for record {record}"
        )
    w_rel = compose(datum, inverse(datum, record.c_chamber), record.w)
    parity = (-1) ** (w_rel.length + len(s_fin))
    if parity != 1:
        raise IdentityViolated(
            f"parity (-1)^(|w|+#S) = {parity} for record {record}"
        )
    return SignReport(
        finite_flip_set=s_fin,
        affine_flip_set=s_aff,
        affine_flipped=flipped,
        finite_part_sum=finite_sum,
        scaled_translation=tuple(Fraction(c) for c in h_t),
        flip_count=len(flipped),
        relative_length=w_rel.length,
        parity=parity,
    )


def generic_pairs(datum, k):
    """All (lam, lam') from the level-k alcove passing the genericity check."""
    from .fusion import level_alcove

    out = []
    for lam in level_alcove(datum, k):
        for lam2 in level_alcove(datum, k):
            try:
                out.append(genericity_check(datum, lam, lam2, k))
            except DegenerateConfiguration:
                continue
    return out
