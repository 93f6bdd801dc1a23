"""Projective-linear maps modulo scalars, group closure, and orbits.

Maps are invertible 2x2 or 3x3 matrices with the first nonzero entry (in
row-major order) scaled to 1, so set membership and equality are exact.
Groups are stored as their full element sets, produced by breadth-first
closure from generators; every group in this package has at most a few
hundred elements, which keeps intersection and orbit computations trivial.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError
from .gf import FieldElement, FieldSpec, root_of_unity
from .geometry import (
    PlaneCurve,
    Poly,
    ProjPoint,
    poly_scale,
    substitute_linear,
    trace_fermat_curve,
)

CLOSURE_CAP = 10000

FAMILIES = ("fermat", "projline", "bf")


@dataclass(frozen=True)
class ProjMap:
    """An element of PGL(2) or PGL(3): a matrix up to scalars, normalized."""

    rows: tuple[tuple[FieldElement, ...], ...]
    field: FieldSpec

    def __post_init__(self):
        n = len(self.rows)
        if n not in (2, 3) or any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square, 2x2 or 3x3")
        if any(c.spec != self.field for r in self.rows for c in r):
            raise ValueError("matrix entries must live in the declared field")
        if not self.det():
            raise ValueError("projective map must be invertible")
        pivot = next(c for r in self.rows for c in r if c)
        if pivot != self.field.one():
            inv = pivot.inv()
            object.__setattr__(
                self, "rows", tuple(tuple(c * inv for c in r) for r in self.rows)
            )

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def key(self) -> tuple[int, ...]:
        """Row-major canonical encodings of the normalized matrix."""
        return tuple(c.enc for r in self.rows for c in r)

    def det(self) -> FieldElement:
        r = self.rows
        if len(r) == 2:
            return r[0][0] * r[1][1] - r[0][1] * r[1][0]
        return (
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        )

    def __matmul__(self, other: ProjMap) -> ProjMap:
        if self.field != other.field or self.n != other.n:
            raise ValueError("cannot compose maps over different spaces")
        zero = self.field.zero()
        rows = tuple(
            tuple(
                sum((self.rows[i][t] * other.rows[t][j] for t in range(self.n)), zero)
                for j in range(self.n)
            )
            for i in range(self.n)
        )
        return ProjMap(rows, self.field)

    def inverse(self) -> ProjMap:
        r = self.rows
        if self.n == 2:
            adj = ((r[1][1], -r[0][1]), (-r[1][0], r[0][0]))
        else:
            def cof(i, j):
                sub = [
                    [r[a][b] for b in range(3) if b != j] for a in range(3) if a != i
                ]
                m = sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
                return m if (i + j) % 2 == 0 else -m

            adj = tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))
        return ProjMap(adj, self.field)

    def apply(self, pt: ProjPoint) -> ProjPoint:
        if len(pt.coords) != self.n:
            raise ValueError("point/map dimension mismatch")
        if pt.spec != self.field:
            raise ValueError("point and map must share a field")
        zero = self.field.zero()
        coords = tuple(
            sum((row[j] * pt.coords[j] for j in range(self.n)), zero)
            for row in self.rows
        )
        return ProjPoint(coords)

    def is_identity(self) -> bool:
        one, zero = self.field.one(), self.field.zero()
        return all(
            self.rows[i][j] == (one if i == j else zero)
            for i in range(self.n)
            for j in range(self.n)
        )

    def preserves_curve(self, curve: PlaneCurve) -> bool:
        """True iff composing the curve equation with this map reproduces it
        up to a nonzero scalar (every map preserves P^1)."""
        if curve.n_coords != self.n:
            raise ValueError("curve/map dimension mismatch")
        if not curve.terms:
            return True
        f: Poly = curve.coefficients_over(self.field)
        g = substitute_linear(f, self.rows, self.field)
        probe = next(iter(f))
        if probe not in g:
            return False
        scale = g[probe] * f[probe].inv()
        return g == poly_scale(f, scale)

    def __repr__(self):
        return f"ProjMap{self.key}"


def identity_map(field: FieldSpec, n: int) -> ProjMap:
    one, zero = field.one(), field.zero()
    return ProjMap(
        tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
        field,
    )


def diagonal_map(field: FieldSpec, *entries: FieldElement) -> ProjMap:
    zero = field.zero()
    n = len(entries)
    return ProjMap(
        tuple(tuple(entries[i] if i == j else zero for j in range(n)) for i in range(n)),
        field,
    )


@dataclass(frozen=True)
class AutGroup:
    """A finite subgroup of PGL, stored as its full element set.

    `elements` is in deterministic insertion order (identity first, then
    breadth-first products of generators); `element_set` backs membership.
    """

    generators: tuple[ProjMap, ...]
    elements: tuple[ProjMap, ...]
    label: str = ""
    element_set: frozenset = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "element_set", frozenset(self.elements))
        if not self.elements or not self.elements[0].is_identity():
            raise ValueError("closure must start with the identity")
        if any(g not in self.element_set for g in self.generators):
            raise ValueError("every generator must appear in the closure")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def field(self) -> FieldSpec:
        return self.elements[0].field

    def __contains__(self, m: ProjMap) -> bool:
        return m in self.element_set

    def orbit(self, pt: ProjPoint) -> tuple[ProjPoint, ...]:
        """The orbit of pt, duplicate-free, in canonical point order."""
        seen = {m.apply(pt) for m in self.elements}
        return tuple(sorted(seen, key=lambda p: p.key))

    def orbit_multiset(self, pt: ProjPoint) -> dict[ProjPoint, int]:
        """Image multiset {g(pt) for g in the group} with multiplicities."""
        out: dict[ProjPoint, int] = {}
        for m in self.elements:
            q = m.apply(pt)
            out[q] = out.get(q, 0) + 1
        return out

    def intersect(self, other: AutGroup) -> AutGroup:
        if self.field != other.field:
            raise ValueError("cannot intersect groups over different fields")
        common = tuple(m for m in self.elements if m in other.element_set)
        gens = tuple(sorted(common, key=lambda m: m.key))
        label = f"{self.label or 'G'} & {other.label or 'H'}"
        return AutGroup(gens, common, label)


def close(generators, cap: int = CLOSURE_CAP, label: str = "") -> AutGroup:
    """Breadth-first closure of a generator list under composition.

    The element order is insertion order: identity, then products explored
    first-in-first-out with generators applied in the given order.  Raises
    when more than `cap` elements appear (the group is too large, or not
    finite as given).
    """
    generators = tuple(generators)
    if not generators:
        raise ValueError("need at least one generator")
    f = generators[0].field
    n = generators[0].n
    if any(g.field != f or g.n != n for g in generators):
        raise ValueError("generators must share one field and dimension")
    if cap < 1:
        raise ValueError("cap must be positive")
    ident = identity_map(f, n)
    elements = [ident]
    seen = {ident}
    idx = 0
    while idx < len(elements):
        m = elements[idx]
        idx += 1
        for g in generators:
            prod = m @ g
            if prod not in seen:
                if len(elements) >= cap:
                    raise PreconditionError(
                        "closure_cap_exceeded",
                        f"group closure exceeded cap {cap}",
                        {"cap": cap},
                    )
                seen.add(prod)
                elements.append(prod)
    group = AutGroup(generators, tuple(elements), label)
    _spot_check_closure(group)
    return group


def _spot_check_closure(group: AutGroup, samples: int = 40):
    """Sample products and inverses to confirm the closure invariants."""
    els = group.elements
    step = max(1, len(els) // samples)
    picks = els[::step]
    for a in picks:
        if a.inverse() not in group.element_set:
            raise AssertionError("closure is not inverse-closed")
        for b in picks:
            if (a @ b) not in group.element_set:
                raise AssertionError("closure is not product-closed")


# ---------------------------------------------------------------------------
# built-in generator families


def builtin_generators(family: str, q: int, spec: FieldSpec):
    """Generator lists (G1, G2) for the named family over `spec`.

    fermat  : coordinate scalings by a primitive (q+1)-th root of unity on
              X and on Y; requires spec = GF(q^2).
    projline: s -> zeta*s and s -> zeta*s + (1-zeta)*t for a primitive
              ((q-1)/2)-th root of unity; requires odd q >= 5 and spec = GF(q).
    bf      : affine maps x -> lambda*x + mu (and symmetrically in y) with
              lambda^(q+1) = 1 and mu^(q^2) + mu = 0; requires spec = GF(q^4).
              Every returned generator is certified against the curve; the
              constructor refuses if certification fails.
    """
    if family == "fermat":
        if q < 2 or spec.order != q * q:
            raise PreconditionError(
                "invalid_family_parameters", f"fermat family needs GF(q^2), got {spec} for q={q}"
            )
        zeta = root_of_unity(spec, q + 1)
        one = spec.one()
        g1 = [diagonal_map(spec, zeta, one, one)]
        g2 = [diagonal_map(spec, one, zeta, one)]
        return g1, g2

    if family == "projline":
        if q % 2 == 0 or q < 5:
            raise PreconditionError(
                "invalid_family_parameters", f"projline family needs odd q >= 5, got q={q}"
            )
        if spec.order != q:
            raise PreconditionError(
                "invalid_family_parameters", f"projline family needs GF(q), got {spec} for q={q}"
            )
        m = (q - 1) // 2
        zeta = root_of_unity(spec, m)
        one, zero = spec.one(), spec.zero()
        g1 = [ProjMap(((zeta, zero), (zero, one)), spec)]
        g2 = [ProjMap(((zeta, one - zeta), (zero, one)), spec)]
        return g1, g2

    if family == "bf":
        if q < 2 or spec.order != q**4:
            raise PreconditionError(
                "invalid_family_parameters", f"bf family needs GF(q^4), got {spec} for q={q}"
            )
        curve = trace_fermat_curve(q, spec)
        zeta = root_of_unity(spec, q + 1)
        shifts = _additive_basis(
            [a for a in spec.elements() if not (a ** (q * q) + a)], spec
        )
        one, zero = spec.one(), spec.zero()

        def x_maps():
            out = [ProjMap(((zeta, zero, zero), (zero, one, zero), (zero, zero, one)), spec)]
            out += [
                ProjMap(((one, zero, c), (zero, one, zero), (zero, zero, one)), spec)
                for c in shifts
            ]
            return out

        def y_maps():
            out = [ProjMap(((one, zero, zero), (zero, zeta, zero), (zero, zero, one)), spec)]
            out += [
                ProjMap(((one, zero, zero), (zero, one, c), (zero, zero, one)), spec)
                for c in shifts
            ]
            return out

        g1, g2 = x_maps(), y_maps()
        for gen in g1 + g2:
            if not gen.preserves_curve(curve):
                raise PreconditionError(
                    "invalid_family_parameters",
                    f"derived bf generator {gen.key} does not preserve the curve",
                )
        return g1, g2

    raise PreconditionError("invalid_family_parameters", f"unknown family {family!r}")


def _additive_basis(values, spec: FieldSpec):
    """Greedy basis of the additive group spanned by `values`, scanning in
    canonical encoding order."""
    basis: list[FieldElement] = []
    span = {spec.zero()}
    for v in sorted(values, key=lambda a: a.enc):
        if v in span or not v:
            continue
        basis.append(v)
        span |= {s + m for s in span for m in _multiples(v, spec)}
    return basis


def _multiples(v: FieldElement, spec: FieldSpec):
    out = []
    acc = spec.zero()
    for _ in range(spec.p):
        acc = acc + v
        out.append(acc)
    return out
