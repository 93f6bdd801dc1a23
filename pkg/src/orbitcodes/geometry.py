"""Projective points, homogeneous plane curves, and point enumeration.

Points of P^1 and P^2 are stored normalized: the first nonzero coordinate
is scaled to 1, so equality is plain coordinate equality and the tuple of
canonical encodings gives a total order (the "canonical point order" used
for evaluation sets and generator-matrix columns).

Curves are homogeneous polynomials kept as {exponent tuple: coefficient}
maps.  P^1 is represented by the degenerate curve with no terms: every
point lies on it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gf import FieldElement, FieldSpec, embedding, frobenius

Poly = dict  # {tuple[int, ...]: FieldElement}, homogeneous in use


# ---------------------------------------------------------------------------
# polynomial helpers


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        s = out[e] + c if e in out else c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = ca * cb
            if e in out:
                c = out[e] + c
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def poly_pow(a: Poly, n: int, nvars: int, field: FieldSpec) -> Poly:
    out: Poly = {(0,) * nvars: field.one()}
    base = dict(a)
    while n:
        if n & 1:
            out = poly_mul(out, base)
        n >>= 1
        if n:
            base = poly_mul(base, base)
    return out


def poly_scale(a: Poly, c: FieldElement) -> Poly:
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def poly_eval(a: Poly, coords: tuple[FieldElement, ...]) -> FieldElement:
    field = coords[0].spec
    acc = field.zero()
    for exps, c in a.items():
        term = c
        for x, e in zip(coords, exps):
            if e:
                term = term * x**e
        acc = acc + term
    return acc


def poly_degree(a: Poly) -> int:
    """Common total degree; raises if the polynomial is not homogeneous."""
    degs = {sum(e) for e in a}
    if len(degs) != 1:
        raise ValueError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
    return degs.pop()


def substitute_linear(a: Poly, rows: tuple[tuple[FieldElement, ...], ...], field: FieldSpec) -> Poly:
    """Compose with a linear change of coordinates: variable i becomes the
    linear form rows[i].  Returns the polynomial p(M x)."""
    n = len(rows)
    forms = []
    for row in rows:
        form = {}
        for j, c in enumerate(row):
            if c:
                e = tuple(1 if t == j else 0 for t in range(n))
                form[e] = c
        forms.append(form)
    out: Poly = {}
    for exps, c in a.items():
        term: Poly = {(0,) * n: c}
        for i, e in enumerate(exps):
            if e:
                term = poly_mul(term, poly_pow(forms[i], e, n, field))
        out = poly_add(out, term)
    return out


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^1 or P^2, normalized so the first nonzero coordinate is 1."""

    coords: tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.coords) not in (2, 3):
            raise ValueError("only P^1 and P^2 points are supported")
        spec = self.coords[0].spec
        if any(c.spec != spec for c in self.coords):
            raise ValueError("point coordinates must share one field")
        pivot = next((c for c in self.coords if c), None)
        if pivot is None:
            raise ValueError("projective point cannot be all zeros")
        if pivot != spec.one():
            inv = pivot.inv()
            object.__setattr__(self, "coords", tuple(c * inv for c in self.coords))

    @property
    def spec(self) -> FieldSpec:
        return self.coords[0].spec

    @property
    def key(self) -> tuple[int, ...]:
        """Canonical encoding tuple; the total order on points."""
        return tuple(c.enc for c in self.coords)

    def __lt__(self, other: ProjPoint) -> bool:
        return self.key < other.key

    def dehomogenized(self) -> tuple[FieldElement, ...]:
        """Representative scaled so the last coordinate is 1 (the affine
        chart used for evaluation); raises if the point is at infinity."""
        last = self.coords[-1]
        if not last:
            raise ValueError(f"point {self.key} lies on the hyperplane at infinity")
        inv = last.inv()
        return tuple(c * inv for c in self.coords)

    def frobenius_image(self, sub_order: int) -> ProjPoint:
        return ProjPoint(tuple(frobenius(c, sub_order) for c in self.coords))

    def __repr__(self):
        return "(" + ":".join(str(c.enc) for c in self.coords) + ")"


def point(field: FieldSpec, *encs: int) -> ProjPoint:
    """Convenience constructor from canonical encodings."""
    return ProjPoint(tuple(field.from_enc(e) for e in encs))


def projective_reps(field: FieldSpec, n_coords: int):
    """All normalized points of P^(n_coords-1) over `field`, in canonical order."""
    one = field.one()
    for lead in range(n_coords - 1, -1, -1):
        tail = n_coords - lead - 1
        for rest in itertools.product(range(field.order), repeat=tail):
            coords = (field.zero(),) * lead + (one,) + tuple(field.from_enc(r) for r in rest)
            yield ProjPoint(coords)


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class PlaneCurve:
    """A homogeneous plane curve (or the whole of P^1 when terms is empty).

    `terms` is a canonically ordered tuple of (exponent tuple, coefficient)
    pairs with nonzero coefficients, all of one total degree.
    """

    n_coords: int
    field: FieldSpec
    terms: tuple[tuple[tuple[int, ...], FieldElement], ...]

    def __post_init__(self):
        if self.n_coords not in (2, 3):
            raise ValueError("ambient space must be P^1 or P^2")
        if self.n_coords == 2 and self.terms:
            raise ValueError("P^1 instances use the empty curve (every point lies on it)")
        if self.n_coords == 3 and not self.terms:
            raise ValueError("a plane curve needs at least one term")
        if self.terms:
            degs = set()
            for exps, c in self.terms:
                if len(exps) != self.n_coords:
                    raise ValueError("exponent tuple arity mismatch")
                if not c or c.spec != self.field:
                    raise ValueError("curve coefficients must be nonzero elements of the curve field")
                degs.add(sum(exps))
            if len(degs) != 1:
                raise ValueError("curve polynomial must be homogeneous")
        canon = tuple(sorted(self.terms, key=lambda t: t[0]))
        object.__setattr__(self, "terms", canon)

    @property
    def degree(self) -> int:
        return sum(self.terms[0][0]) if self.terms else 0

    def poly(self) -> Poly:
        return {e: c for e, c in self.terms}

    def coefficients_over(self, field: FieldSpec) -> Poly:
        """The defining polynomial with coefficients pushed into `field`
        through the canonical embedding."""
        if field == self.field:
            return self.poly()
        emb = embedding(self.field, field)
        return {e: emb.apply(c) for e, c in self.terms}

    def contains(self, pt: ProjPoint) -> bool:
        """True iff the defining polynomial vanishes at pt (always true on P^1)."""
        if len(pt.coords) != self.n_coords:
            raise ValueError("point/curve dimension mismatch")
        if not self.terms:
            return True
        poly = self.coefficients_over(pt.spec)
        return not poly_eval(poly, pt.coords)

    def rational_points(self, field: FieldSpec) -> tuple[ProjPoint, ...]:
        """All points over `field`, canonical order, no duplicates.

        Brute force over the (at most a few thousand) points of the ambient
        projective space.
        """
        if field != self.field:
            embedding(self.field, field)  # raises PreconditionError if incompatible
        return tuple(p for p in projective_reps(field, self.n_coords) if self.contains(p))

    def line_section_points(self, field: FieldSpec) -> tuple[ProjPoint, ...]:
        """Rational points with last coordinate zero, canonical order."""
        if self.n_coords != 3:
            raise ValueError("line sections are only defined for plane curves")
        return tuple(p for p in self.rational_points(field) if not p.coords[-1])


def plane_curve(field: FieldSpec, coeffs: Poly) -> PlaneCurve:
    terms = tuple((e, c) for e, c in coeffs.items() if c)
    return PlaneCurve(3, field, terms)


def projective_line(field: FieldSpec) -> PlaneCurve:
    return PlaneCurve(2, field, ())


def fermat_curve(q: int, field: FieldSpec) -> PlaneCurve:
    """X^(q+1) + Y^(q+1) + Z^(q+1) = 0, the Hermitian curve when the field
    is GF(q^2)."""
    one = field.one()
    d = q + 1
    return plane_curve(field, {(d, 0, 0): one, (0, d, 0): one, (0, 0, d): one})


def trace_fermat_curve(q: int, field: FieldSpec) -> PlaneCurve:
    """The homogenized curve (x^(q^2)+x)^(q+1) + (y^(q^2)+y)^(q+1) + 1 = 0.

    Degree q^3 + q^2; its affine chart Z=1 recovers the defining equation
    in the subfield traces x^(q^2)+x and y^(q^2)+y.
    """
    one = field.one()
    d = q**3 + q**2
    qq = q * q

    def trace_block(var: int) -> Poly:
        # (V^(q^2) + V Z^(q^2-1))^(q+1) for V = X or Y
        base: Poly = {}
        e_hi = [0, 0, 0]
        e_hi[var] = qq
        base[tuple(e_hi)] = one
        e_lo = [0, 0, qq - 1]
        e_lo[var] = 1
        base[tuple(e_lo)] = one
        return poly_pow(base, q + 1, 3, field)

    f = poly_add(trace_block(0), trace_block(1))
    f = poly_add(f, {(0, 0, d): one})
    return plane_curve(field, f)
