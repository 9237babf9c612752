"""Degree 2 and 4 number fields: signatures, quadratic subfields,
RM types, and the rank-4 special points with their symplectic checks.

Real numbers of degree 4 are handled as (minimal polynomial, isolating
interval) pairs with interval refinement as the comparison engine; every
nonvanishing statement is certified by an interval that excludes zero,
and every vanishing statement is certified by exact algebra (gcd
computations over Q[y]/(p)).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    InvalidInputError,
    NotTotallyRealError,
    SquarefreeRequiredError,
    WrongSignatureError,
)
from .intervals import Box, Interval, eval_poly_interval, sqrt_interval
from .polyutil import (
    Poly,
    RealRoot,
    is_squarefree,
    isolate_roots,
    padd,
    pdeg,
    pdivmod,
    peval,
    pmul,
    pneg,
    pnormalize,
    primitive_int,
    pscale,
    psub,
)

# -- number fields -------------------------------------------------------


@dataclass(frozen=True)
class NumberField:
    """Q[x]/(minpoly) with minpoly primitive, irreducible, degree 1, 2, 4.

    Degree 1 (minpoly x - r) stands for Q itself; it is allowed so the
    rational base field can appear in RM-type computations.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def poly(self) -> Poly:
        return pnormalize(self.coeffs)


def number_field(coeffs) -> NumberField:
    """Validated NumberField: normalizes to primitive with positive
    leading coefficient and certifies irreducibility over Q exactly."""
    p = primitive_int(pnormalize(coeffs))
    deg = len(p) - 1
    if deg not in (1, 2, 4):
        raise InvalidInputError(f"supported degrees are 1, 2, 4; got {deg}")
    if deg == 2 and _quadratic_reducible(p):
        raise InvalidInputError(f"{p} is reducible over Q")
    if deg == 4 and _quartic_reducible(p):
        raise InvalidInputError(f"{p} is reducible over Q")
    return NumberField(p)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
    return sorted(out)


def _rational_roots(p: tuple[int, ...]) -> list[Fraction]:
    """All rational roots of an integer polynomial, exactly."""
    poly = pnormalize(p)
    roots = set()
    while poly and poly[0] == 0:
        roots.add(Fraction(0))
        poly = poly[1:]
    if pdeg(poly) >= 1:
        c0, cn = int(poly[0]), int(poly[-1])
        for u in _divisors(c0):
            for v in _divisors(cn):
                for cand in (Fraction(u, v), Fraction(-u, v)):
                    if peval(poly, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _quadratic_reducible(p: tuple[int, ...]) -> bool:
    c0, c1, c2 = p
    disc = c1 * c1 - 4 * c2 * c0
    return disc >= 0 and math.isqrt(disc) ** 2 == disc


def _quartic_reducible(p: tuple[int, ...]) -> bool:
    if p[0] == 0 or _rational_roots(p):
        return True
    # monicize: P(y) = c4^3 p(y/c4) is monic integer, same reducibility
    c0, c1, c2, c3, c4 = p
    d3, d2, d1, d0 = c3, c2 * c4, c1 * c4 * c4, c0 * c4**3
    for g in _divisors(d0):
        for gg in (g, -g):
            j = d0 // gg
            # (y^2 + f y + gg)(y^2 + i y + j): f + i = d3, f i = d2 - gg - j
            disc = d3 * d3 - 4 * (d2 - gg - j)
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s != disc or (d3 + s) % 2:
                continue
            f = (d3 + s) // 2
            i = (d3 - s) // 2
            if f * j + gg * i == d1:
                return True
    return False


# -- real embeddings ------------------------------------------------------


@dataclass
class EmbeddingSet:
    """Sturm-certified isolating intervals for the real embeddings."""

    poly: tuple[int, ...]
    real_roots: list[RealRoot]

    @property
    def signature(self) -> tuple[int, int]:
        deg = len(self.poly) - 1
        r1 = len(self.real_roots)
        return r1, (deg - r1) // 2

    @property
    def complex_pairs(self) -> int:
        return self.signature[1]

    def separate(self) -> None:
        """Refine until the isolating intervals are pairwise disjoint."""
        changed = True
        while changed:
            changed = False
            for a, b in itertools.combinations(self.real_roots, 2):
                if not (a.hi < b.lo or b.hi < a.lo):
                    a.refine()
                    b.refine()
                    changed = True


def isolate_real_roots(p) -> EmbeddingSet:
    """Isolate all real roots of a squarefree integer polynomial."""
    coeffs = pnormalize(p)
    if not is_squarefree(coeffs):
        raise SquarefreeRequiredError("polynomial must be squarefree")
    ints = primitive_int(coeffs)
    intervals = isolate_roots(pnormalize(ints))
    roots = [RealRoot(pnormalize(ints), lo, hi) for lo, hi in intervals]
    emb = EmbeddingSet(ints, roots)
    emb.separate()
    return emb


# -- quadratic subfields --------------------------------------------------


def quad_field_radicand(E: NumberField) -> int:
    """Squarefree d with E = Q(sqrt(d)) for a real quadratic E."""
    from .exact import squarefree_split

    c0, c1, c2 = E.poly()
    disc = int(c1 * c1 - 4 * c2 * c0)
    if disc <= 0:
        raise NotTotallyRealError("quadratic field is not real")
    return squarefree_split(disc)[1]


def _poly_xgcd(a: Poly, b: Poly):
    r0, r1 = pnormalize(a), pnormalize(b)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, rem = pdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    return r0, s0, t0


def _kinv(a: Poly, p: Poly) -> Poly:
    g, s, _ = _poly_xgcd(a, p)
    assert pdeg(g) == 0, "inverse exists only modulo an irreducible polynomial"
    return pdivmod(pscale(s, 1 / g[0]), p)[1]


def _kmul(a: Poly, b: Poly, p: Poly) -> Poly:
    return pdivmod(pmul(a, b), p)[1]


def subfield_embed(E: NumberField, F: NumberField) -> Optional[tuple[Fraction, ...]]:
    """Coordinates of sqrt(d_E) in the power basis of F, or None.

    Solved by factoring F's minimal polynomial over Q(sqrt(d_E)): the
    Galois-conjugate quadratic factors reduce to a rational root problem,
    and the factorization linearizes sqrt(d_E) as an element of F.  The
    result s satisfies s(alpha)^2 = d_E, verified by exact squaring, and
    is sign-normalized to a positive leading coefficient.
    """
    if E.degree != 2 or F.degree != 4:
        raise InvalidInputError(
            f"need a quadratic subfield of a quartic field, got degrees "
            f"{E.degree} and {F.degree}"
        )
    d = quad_field_radicand(E)
    m = pscale(F.poly(), Fraction(1, F.poly()[-1]))  # monic quartic
    m0, m1, m2, m3 = m[0], m[1], m[2], m[3]
    u0 = m3 / 2
    # factor m = (x^2 + u x + v)(x^2 + conj(u) x + conj(v)) over Q(sqrt(d)).
    # Case u rational (w = 0): v0 is forced and v1^2 = (v0^2 - m0)/d.
    v0r = (m2 - u0 * u0) / 2
    if 2 * u0 * v0r == m1:
        v1sq = (v0r * v0r - m0) / d
        if v1sq > 0:
            num, den = v1sq.numerator, v1sq.denominator
            rn, rd = math.isqrt(num), math.isqrt(den)
            if rn * rn == num and rd * rd == den:
                v1 = Fraction(rn, rd)
                s = _kmul(pneg((v0r, u0, Fraction(1))),
                          _kinv((v1,), m), m)
                square = _kmul(s, s, m)
                if square == (Fraction(d),):
                    lead = next(c for c in reversed(s) if c != 0)
                    if lead < 0:
                        s = pneg(s)
                    out = list(s) + [Fraction(0)] * (4 - len(s))
                    return tuple(out[:4])
    # Case u = u0 + w sqrt(d) with rational w != 0:
    #   v0 = (m2 - u0^2 + w^2 d)/2
    #   v1 = (u0 v0 - m1/2) / (w d)
    #   v0^2 - v1^2 d = m0
    A = (m2 - u0 * u0) / 2
    B = Fraction(d, 2)
    v0_poly: Poly = (A, Fraction(0), B)  # v0 as polynomial in w
    num_poly = psub(pscale(v0_poly, u0), (m1 / 2,))  # u0 v0 - m1/2
    lhs = pmul(psub(pmul(v0_poly, v0_poly), (m0,)), (Fraction(0), Fraction(0), Fraction(d)))
    weq = psub(lhs, pmul(num_poly, num_poly))
    weq = pnormalize(weq)
    assert weq, "degenerate factorization equation"
    for w in _rational_roots(primitive_int(weq)):
        if w == 0:
            continue
        v0 = peval(v0_poly, w)
        v1 = (u0 * v0 - m1 / 2) / (w * d)
        # verify the factorization exactly
        if (
            2 * u0 == m3
            and 2 * v0 + u0 * u0 - w * w * d == m2
            and 2 * (u0 * v0 - w * v1 * d) == m1
            and v0 * v0 - v1 * v1 * d == m0
        ):
            lin: Poly = (v1, Fraction(w))  # w x + v1
            if pdeg(pnormalize(lin)) < 0:
                continue
            s = _kmul(pneg((v0, u0, Fraction(1))), _kinv(lin, m), m)
            square = _kmul(s, s, m)
            assert square == (Fraction(d),), "exact squaring check failed"
            lead = next(c for c in reversed(s) if c != 0)
            if lead < 0:
                s = pneg(s)
            out = list(s) + [Fraction(0)] * (4 - len(s))
            return tuple(out[:4])
    return None


# -- RM types -------------------------------------------------------------


@dataclass(frozen=True)
class RMType:
    """One real embedding of F chosen over each real embedding of E.

    base_count is the number of E-embeddings; chosen[i] is the index (into
    the sorted F-roots) picked over the i-th E-embedding; fibers[i] lists
    all F-root indices lying over it.
    """

    base_count: int
    chosen: tuple[int, ...]
    fibers: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        assert len(self.chosen) == self.base_count == len(self.fibers)
        for c, fib in zip(self.chosen, self.fibers):
            assert c in fib


def _rm_fibers(F: NumberField, E: NumberField, emb_f: EmbeddingSet,
               sqrt_coords) -> list[list[int]]:
    """F-root indices over each E-embedding, embeddings matched by the
    certified sign of the embedded sqrt(d_E)."""
    if E.degree == 1:
        return [list(range(len(emb_f.real_roots)))]
    signs = [root.sign_of_value(sqrt_coords) for root in emb_f.real_roots]
    assert signs.count(1) == 2 and signs.count(-1) == 2
    c0, c1, c2 = E.poly()
    emb_e = isolate_real_roots(E.poly())
    fibers = []
    for e_root in emb_e.real_roots:
        # sign of the sqrt(d_E) image under this E-embedding
        e_sign = e_root.sign_of_value((c1, 2 * c2))
        fibers.append([i for i, s in enumerate(signs) if s == e_sign])
    return fibers


def enumerate_rm_types(F: NumberField, E: NumberField) -> list[RMType]:
    """All 2^(deg E) RM types for a totally real quadratic extension F/E."""
    if F.degree != 2 * E.degree:
        raise InvalidInputError(
            f"[F:E] must be 2, got degrees {F.degree} over {E.degree}"
        )
    emb_f = isolate_real_roots(F.poly())
    if emb_f.signature[1] != 0:
        raise NotTotallyRealError(f"F has signature {emb_f.signature}")
    sqrt_coords = None
    if E.degree == 2:
        emb_e = isolate_real_roots(E.poly())
        if emb_e.signature[1] != 0:
            raise NotTotallyRealError(f"E has signature {emb_e.signature}")
        sqrt_coords = subfield_embed(E, F)
        if sqrt_coords is None:
            raise InvalidInputError("E does not embed into F")
    fibers = _rm_fibers(F, E, emb_f, sqrt_coords)
    assert all(len(f) == 2 for f in fibers)
    out = []
    for chosen in itertools.product(*fibers):
        out.append(
            RMType(len(fibers), tuple(chosen), tuple(tuple(f) for f in fibers))
        )
    return out


# -- Hilbert special points ----------------------------------------------


@dataclass
class HilbertLilac:
    """Power-basis lattice of F with the decomposition induced by an RM
    type: F_x is spanned by the chosen embedding coordinates, F_y by the
    others.  Projection data (index sets) is exact; certificates are
    interval-refined.

    Both summands are stable under multiplication by all of F (diagonal
    in the embedding basis), which is what distinguishes these points;
    only the base-field stability is asserted by the verifier."""

    field: NumberField
    base: NumberField
    rm_type: RMType
    sqrt_coords: Optional[tuple[Fraction, ...]]
    embeddings: EmbeddingSet
    x_embeddings: tuple[int, ...]
    y_embeddings: tuple[int, ...]


def _interval_det(rows: list[list[Interval]]) -> Interval:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = Interval.point(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _interval_det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


def _vandermonde_rows(emb: EmbeddingSet) -> list[list[Interval]]:
    n = len(emb.real_roots)
    rows = []
    for root in emb.real_roots:
        iv = root.interval()
        row = [Interval.point(1)]
        for _ in range(n - 1):
            row.append(row[-1] * iv)
        rows.append(row)
    return rows


def certify_direct_sum(emb: EmbeddingSet, max_rounds: int = 200) -> bool:
    """Refine until the embedding basis-change determinant excludes 0."""
    for _ in range(max_rounds):
        det = _interval_det(_vandermonde_rows(emb))
        if det.excludes_zero():
            return True
        for root in emb.real_roots:
            root.refine()
    raise AssertionError("determinant sign did not resolve")


def hilbert_special_point(F: NumberField, E: NumberField, t: RMType) -> HilbertLilac:
    """The special point attached to an RM type, with certified
    direct-sum and stability data."""
    emb_f = isolate_real_roots(F.poly())
    if emb_f.signature[1] != 0:
        raise NotTotallyRealError(f"F has signature {emb_f.signature}")
    sqrt_coords = subfield_embed(E, F) if E.degree == 2 else None
    x_idx = tuple(sorted(t.chosen))
    y_idx = tuple(i for i in range(len(emb_f.real_roots)) if i not in x_idx)
    lilac = HilbertLilac(F, E, t, sqrt_coords, emb_f, x_idx, y_idx)
    ok = verify_hilbert_lilac(lilac)
    assert ok["direct_sum"] and ok["stable"]
    return lilac


def verify_hilbert_lilac(lilac: HilbertLilac) -> dict:
    """Certify the two invariants of the decomposition.

    direct_sum: the embedding matrix is nonsingular (interval determinant
    refined until it excludes zero).  stable: multiplication by sqrt(d_E)
    is diagonal in the embedding basis with the chosen coordinates
    carrying one embedding over each base embedding (so both projections
    commute with it); checked through the exact square identity and the
    certified sign pattern of the embedded sqrt(d_E).
    """
    out = {"direct_sum": certify_direct_sum(lilac.embeddings)}
    if lilac.base.degree == 1:
        out["sign_pattern"] = None
        out["stable"] = len(lilac.x_embeddings) == 1
        return out
    d = quad_field_radicand(lilac.base)
    s = lilac.sqrt_coords
    assert s is not None
    m = pscale(lilac.field.poly(), Fraction(1, lilac.field.poly()[-1]))
    assert _kmul(s, s, m) == (Fraction(d),)
    signs = [root.sign_of_value(s) for root in lilac.embeddings.real_roots]
    out["sign_pattern"] = tuple(signs)
    chosen_signs = sorted(signs[i] for i in lilac.x_embeddings)
    other_signs = sorted(signs[i] for i in lilac.y_embeddings)
    out["stable"] = chosen_signs == [-1, 1] and other_signs == [-1, 1]
    return out


# -- Siegel special points ------------------------------------------------


class ComplexPairEnclosure:
    """Certified box around the complex root gamma (positive imaginary
    part) of a signature-(2,1) quartic, computed from the exact symmetric
    relations between the roots: the real part from the coefficient sum,
    the modulus from the product."""

    def __init__(self, poly: tuple[int, ...], b1: RealRoot, b2: RealRoot):
        self.poly = poly
        self.b1 = b1
        self.b2 = b2
        self.bits = 64
        c = poly
        self._sum = Fraction(-c[3], c[4])
        self._prod = Fraction(c[0], c[4])
        while not (
            self.b1.interval().excludes_zero()
            and self.b2.interval().excludes_zero()
        ):
            self.b1.refine()
            self.b2.refine()

    def refine(self) -> None:
        self.b1.refine()
        self.b2.refine()
        self.bits += 16

    def box(self) -> Box:
        i1, i2 = self.b1.interval(), self.b2.interval()
        x0 = (Interval.point(self._sum) - i1 - i2) * Interval.point(Fraction(1, 2))
        mod2 = Interval.point(self._prod) * (i1 * i2).inverse()
        y2 = mod2 - x0 * x0
        while y2.lo <= 0:
            self.refine()
            i1, i2 = self.b1.interval(), self.b2.interval()
            x0 = (Interval.point(self._sum) - i1 - i2) * Interval.point(Fraction(1, 2))
            mod2 = Interval.point(self._prod) * (i1 * i2).inverse()
            y2 = mod2 - x0 * x0
        y0 = sqrt_interval(y2, self.bits)
        return Box(x0, y0)


@dataclass
class SiegelPoint:
    """Rank-4 special point of a signature-(2,1) quartic: two real
    embedding lines, the complex-pair plane, and the positive-imaginary
    eigenline inside its complexification."""

    field: NumberField
    embeddings: EmbeddingSet
    gamma: ComplexPairEnclosure
    dims: tuple[int, int, int]
    psi: Optional[tuple[tuple[int, ...], ...]] = None


def siegel_special_point(K: NumberField) -> SiegelPoint:
    if K.degree != 4:
        raise WrongSignatureError(f"need a quartic field, got degree {K.degree}")
    emb = isolate_real_roots(K.poly())
    if emb.signature != (2, 1):
        raise WrongSignatureError(
            f"signature {emb.signature} != (2, 1); no special point"
        )
    ints = primitive_int(K.poly())
    gamma = ComplexPairEnclosure(ints, emb.real_roots[0], emb.real_roots[1])
    return SiegelPoint(K, emb, gamma, (1, 1, 2))


def _cofactor_vectors(poly: tuple[int, ...]) -> list[Poly]:
    """U_k(t) = coefficient of x^k in poly(x)/(x - t); the vector
    (U_0(t), ..., U_3(t)) spans the embedding eigenline for root t."""
    c = [Fraction(x) for x in poly]
    n = len(c) - 1
    out = []
    for k in range(n):
        out.append(tuple(c[j] for j in range(k + 1, n + 1)))
    return out


def alternating_matrix(entries) -> tuple[tuple[int, ...], ...]:
    """4x4 alternating matrix from (psi01, psi02, psi03, psi12, psi13, psi23)."""
    a, b, c, d, e, f = entries
    return (
        (0, a, b, c),
        (-a, 0, d, e),
        (-b, -d, 0, f),
        (-c, -e, -f, 0),
    )


def pfaffian(psi) -> int:
    return psi[0][1] * psi[2][3] - psi[0][2] * psi[1][3] + psi[0][3] * psi[1][2]


def _check_alternating(psi) -> None:
    for i in range(4):
        for j in range(4):
            if not isinstance(psi[i][j], int):
                raise InvalidInputError("psi must be integral")
            if psi[i][j] != -psi[j][i]:
                raise InvalidInputError("psi must be alternating")
    if any(psi[i][i] != 0 for i in range(4)):
        raise InvalidInputError("psi must have zero diagonal")


def _pairing_khat(psi, poly, m: Poly) -> list[Poly]:
    """B(s, y) = sum_kl psi[k][l] U_k(s) U_l(y) as a polynomial in s with
    coefficients in K = Q[y]/(m); returns ascending K-coefficients."""
    U = _cofactor_vectors(poly)
    # w_k = sum_l psi[k][l] U_l(y) mod m
    w = []
    for k in range(4):
        acc: Poly = ()
        for l in range(4):
            if psi[k][l]:
                acc = padd_scaled(acc, U[l], psi[k][l])
        w.append(pdivmod(acc, m)[1] if acc else ())
    # coefficient of s^j: sum_k [s^j] U_k(s) * w_k
    coeffs = []
    for j in range(4):
        acc = ()
        for k in range(4):
            uk = U[k]
            if j < len(uk) and uk[j] != 0 and w[k]:
                acc = padd_scaled(acc, w[k], uk[j])
        coeffs.append(acc)
    return coeffs


def padd_scaled(a: Poly, b: Poly, s) -> Poly:
    return padd(a, pscale(b, Fraction(s)))


def _kpoly_gcd(khat: list[Poly], m: Poly) -> list[Poly]:
    """Monic gcd of (m viewed in K[s]) and B^(s); coefficients in K."""
    a = [(Fraction(c),) if c else () for c in m]
    b = list(khat)
    a = _kpoly_norm(a)
    b = _kpoly_norm(b)
    while b:
        b_monic = _kpoly_monic(b, m)
        a = _kpoly_mod(a, b_monic, m)
        a, b = b_monic, a
    return a


def _kpoly_norm(p: list[Poly]) -> list[Poly]:
    out = [pnormalize(c) for c in p]
    while out and not out[-1]:
        out.pop()
    return out


def _kpoly_monic(p: list[Poly], m: Poly) -> list[Poly]:
    inv = _kinv(p[-1], m)
    return _kpoly_norm([_kmul(c, inv, m) if c else () for c in p])


def _kpoly_mod(a: list[Poly], b: list[Poly], m: Poly) -> list[Poly]:
    """a mod b with b monic, over K = Q[y]/(m)."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and _kpoly_norm(a):
        a = _kpoly_norm(a)
        if len(a) - 1 < db:
            break
        lead = a[-1]
        if not lead:
            a.pop()
            continue
        k = len(a) - 1 - db
        for i in range(len(b)):
            if b[i]:
                term = _kmul(lead, b[i], m)
                a[k + i] = psub(a[k + i] if a[k + i] else (), term)
        a.pop()
    return _kpoly_norm(a)


@dataclass
class PsiVerification:
    accepted: bool
    reason: str
    vanishing_roots: Optional[tuple[int, ...]] = None
    witness: Optional[dict] = None


def verify_psi(point: SiegelPoint, psi, max_rounds: int = 120) -> PsiVerification:
    """Certified isotropy check of both distinguished summands.

    Nondegeneracy is the Pfaffian; nonvanishing of a pairing is certified
    by an interval excluding zero; vanishing is certified exactly: the
    gcd of the field polynomial with the pairing polynomial over
    Q[y]/(field) pins the set of roots where the pairing vanishes, and
    interval elimination identifies that set.
    """
    _check_alternating(psi)
    if pfaffian(psi) == 0:
        return PsiVerification(False, "degenerate")
    ints = primitive_int(point.field.poly())
    m = pscale(pnormalize(ints), Fraction(1, ints[-1]))
    khat = _kpoly_norm(_pairing_khat(psi, ints, m))
    if not khat:
        # pairing vanishes identically on all embedding lines
        return PsiVerification(True, "pairing identically zero",
                               vanishing_roots=(0, 1, 2, 3))
    g = _kpoly_gcd(khat, m)
    degg = len(g) - 1
    if degg == 0:
        w = _pairing_witness(point, psi)
        return PsiVerification(False, "no embedding line pairs to zero", witness=w)
    if degg == 4:
        return PsiVerification(True, "pairing vanishes on all lines",
                               vanishing_roots=(0, 1, 2, 3))
    vanishing = _classify_gcd_roots(point, g, degg, max_rounds)
    # the pairing of the complex eigenline with itself vanishes by
    # antisymmetry, so index 2 is always present; the real conditions
    # are the two real embedding lines
    accepted = 0 in vanishing and 1 in vanishing
    if accepted:
        return PsiVerification(True, "both summands isotropic",
                               vanishing_roots=tuple(sorted(vanishing)))
    w = _pairing_witness(point, psi)
    return PsiVerification(False, "a summand fails isotropy",
                           vanishing_roots=tuple(sorted(vanishing)), witness=w)


def _root_boxes(point: SiegelPoint) -> list[Box]:
    b1, b2 = point.embeddings.real_roots
    g = point.gamma.box()
    return [
        Box(b1.interval(), Interval.point(0)),
        Box(b2.interval(), Interval.point(0)),
        g,
        g.conjugate(),
    ]


def _classify_gcd_roots(point: SiegelPoint, g: list[Poly], degg: int,
                        max_rounds: int) -> set[int]:
    """Indices (0: beta1, 1: beta2, 2: gamma, 3: conj gamma) of the roots
    of the gcd, found by interval elimination of the nonroots."""
    for _ in range(max_rounds):
        boxes = _root_boxes(point)
        gb = point.gamma.box()
        coeff_boxes = [eval_poly_interval(c, gb) if c else Box.point(0) for c in g]
        alive = set()
        for idx, rho in enumerate(boxes):
            val = Box.point(0)
            for cb in reversed(coeff_boxes):
                val = val * rho + cb
            if not val.excludes_zero():
                alive.add(idx)
        if len(alive) == degg:
            return alive
        point.embeddings.real_roots[0].refine()
        point.embeddings.real_roots[1].refine()
        point.gamma.refine()
    raise AssertionError("gcd root classification did not resolve")


def _pairing_witness(point: SiegelPoint, psi) -> dict:
    """Interval enclosures of the two pairing numbers (diagnostic)."""
    ints = primitive_int(point.field.poly())
    U = _cofactor_vectors(ints)
    b1, b2 = point.embeddings.real_roots
    gb = point.gamma.box()
    u1 = [eval_poly_interval(u, Box(b1.interval(), Interval.point(0))) for u in U]
    u2 = [eval_poly_interval(u, Box(b2.interval(), Interval.point(0))) for u in U]
    w = [eval_poly_interval(u, gb) for u in U]
    out = {}
    for name, vec in (("x_plus_F", u1), ("y_plus_Fbar", u2)):
        val = Box.point(0)
        for k in range(4):
            for l in range(4):
                if psi[k][l]:
                    val = val + psi[k][l] * (vec[k] * w[l])
        out[name] = (
            (str(val.re.lo), str(val.re.hi)),
            (str(val.im.lo), str(val.im.hi)),
            val.excludes_zero(),
        )
    return out


def find_compatible_symplectic(point: SiegelPoint, height_bound: int,
                               budget: int = 2_000_000):
    """Deterministic search over integral alternating matrices with
    entries bounded by height_bound; returns the first nondegenerate psi
    making both summands isotropic, or None.

    A certified float prefilter rejects the bulk; survivors get the full
    exact verification.
    """
    from .errors import BudgetExceededError

    b1, b2 = point.embeddings.real_roots
    b1.refine_below(Fraction(1, 1 << 90))
    b2.refine_below(Fraction(1, 1 << 90))
    while point.gamma.bits < 90:
        point.gamma.refine()
    ints = primitive_int(point.field.poly())
    U = _cofactor_vectors(ints)
    gb = point.gamma.box()
    u1 = [eval_poly_interval(u, Box(b1.interval(), Interval.point(0))) for u in U]
    u2 = [eval_poly_interval(u, Box(b2.interval(), Interval.point(0))) for u in U]
    w = [eval_poly_interval(u, gb) for u in U]
    pairs = [(k, l) for k in range(4) for l in range(k + 1, 4)]

    def plucker(vec):
        out = []
        for k, l in pairs:
            out.append(vec[k] * w[l] - vec[l] * w[k])
        return out

    m1 = plucker(u1)
    m2 = plucker(u2)

    def centers_and_tol(ms):
        cs = [complex(float(b.re.mid()), float(b.im.mid())) for b in ms]
        hw = sum(float(b.re.width()) + float(b.im.width()) for b in ms)
        scale = max(abs(c) for c in cs) + 1.0
        tol = height_bound * (hw + 1e-12 * scale) * 4 + 1e-12
        return cs, tol

    c1, tol1 = centers_and_tol(m1)
    c2, tol2 = centers_and_tol(m2)

    checked = 0
    rng = range(-height_bound, height_bound + 1)
    for entries in itertools.product(rng, repeat=6):
        checked += 1
        if checked > budget:
            raise BudgetExceededError("symplectic search budget exhausted")
        a, b, c, d, e, f = entries
        if a * f - b * e + c * d == 0:
            continue  # degenerate (pfaffian of the upper entries)
        v1 = (
            a * c1[0] + b * c1[1] + c * c1[2]
            + d * c1[3] + e * c1[4] + f * c1[5]
        )
        if abs(v1) > tol1:
            continue
        v2 = (
            a * c2[0] + b * c2[1] + c * c2[2]
            + d * c2[3] + e * c2[4] + f * c2[5]
        )
        if abs(v2) > tol2:
            continue
        psi = alternating_matrix(entries)
        res = verify_psi(point, psi)
        if res.accepted:
            point.psi = psi
            return psi
    return None
