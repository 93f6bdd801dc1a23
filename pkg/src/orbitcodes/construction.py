"""Build evaluation codes from pairs (or families) of curve automorphism
groups: verify the construction conditions, assemble the coincident orbit
divisor and the evaluation set, synthesize a function basis, and produce
the generator matrix.

Pipeline per instance (groups G1, G2, ..., base point Q, evaluation seed Q'):

  1. the groups must share one order and intersect trivially,
  2. the orbit multisets of Q under each group must coincide; the common
     multiset is the divisor D (all multiplicities equal, D = e * D0), and
     D must be stable under the ground-field Frobenius,
  3. the evaluation set S is the orbit of Q' under the group generated by
     all G_i together; Q' must be ground-rational, avoid supp(D), and S
     must be large enough for the designed distance bound to be positive.

The code evaluates the functions of L(m*D) at S; its designed minimum
distance bound is #S - m*|G1|.  With the scale written against D0 (the
support of D taken once), the code is L((m*e) * D0) with bound
#S - (m*e)*|G1|/e, and the size condition on S reads m*e < e*#S/|G1|.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CheckFailure, CheckReport, PreconditionError
from .gf import FieldElement, FieldSpec, embedding, frobenius, make_field, prime_power
from .geometry import (
    PlaneCurve,
    Poly,
    ProjPoint,
    fermat_curve,
    poly_degree,
    poly_eval,
    projective_line,
    trace_fermat_curve,
)
from .autgroup import FAMILIES, AutGroup, builtin_generators, close
from .code_analysis import EvalCode, rank_and_rref


@dataclass(frozen=True)
class Divisor:
    """A finite multiset of curve points with positive multiplicities.

    `field_of_definition` is the smallest field in the coefficient tower
    whose Frobenius leaves the support multiset invariant; `ground_rational`
    records invariance under the instance's ground-field Frobenius.
    """

    support: tuple[tuple[ProjPoint, int], ...]
    field_of_definition: FieldSpec
    ground_rational: bool

    def __post_init__(self):
        if not self.support:
            raise ValueError("divisor must have nonempty support")
        if any(m < 1 for _, m in self.support):
            raise ValueError("multiplicities must be positive")
        canon = tuple(sorted(self.support, key=lambda t: t[0].key))
        object.__setattr__(self, "support", canon)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.support)

    @property
    def e(self) -> int:
        """The common multiplicity (the divisor is e times its support)."""
        mults = {m for _, m in self.support}
        if len(mults) != 1:
            raise ValueError("divisor is not a uniform multiple of its support")
        return mults.pop()

    def points(self) -> tuple[ProjPoint, ...]:
        return tuple(p for p, _ in self.support)

    def multiplicity(self, pt: ProjPoint) -> int:
        for p, m in self.support:
            if p == pt:
                return m
        return 0

    def as_multiset(self) -> dict[ProjPoint, int]:
        return {p: m for p, m in self.support}


@dataclass(frozen=True)
class EvalBasis:
    """Homogeneous forms of one common degree, evaluated in the affine chart
    where the last coordinate is 1 (division by that power of the last
    coordinate is understood)."""

    forms: tuple[Poly, ...]
    degree: int
    n_coords: int

    def __post_init__(self):
        for f in self.forms:
            if not f:
                raise ValueError("basis forms must be nonzero")
            if poly_degree(f) != self.degree:
                raise ValueError("basis forms must share one total degree")
            if any(len(e) != self.n_coords for e in f):
                raise ValueError("basis form arity mismatch")

    def evaluate(self, form: Poly, pt: ProjPoint) -> FieldElement:
        return poly_eval(form, pt.dehomogenized())


@dataclass(frozen=True)
class Instance:
    """Everything the constructor needs: curve, groups, base point Q,
    evaluation seed Q', the ground (code alphabet) and working fields, and
    the divisor scale m.

    Custom instances may carry an explicit function list; built-in families
    synthesize monomial bases.  The quotient-rationality hypothesis on each
    group (its curve quotient being a line) is declared, not computed.
    """

    curve: PlaneCurve
    groups: tuple[AutGroup, ...]
    Q: ProjPoint
    Qprime: ProjPoint
    ground: FieldSpec
    working: FieldSpec
    m: int = 1
    functions: Optional[tuple[Poly, ...]] = None
    condition_a_declared: bool = True
    family: str = "custom"
    q: Optional[int] = None

    def __post_init__(self):
        if len(self.groups) < 2:
            raise ValueError("need at least two groups")
        if self.m < 1:
            raise ValueError("divisor scale m must be >= 1")
        if self.working.p != self.ground.p or self.working.k % self.ground.k != 0:
            raise PreconditionError(
                "no_embedding", f"ground {self.ground} does not embed in working {self.working}"
            )
        if any(g.field != self.working for g in self.groups):
            raise ValueError("groups must act over the working field")
        if self.Q.spec != self.working or self.Qprime.spec != self.working:
            raise ValueError("Q and Q' must have working-field coordinates")
        if not self.curve.contains(self.Q):
            raise ValueError("Q must lie on the curve")
        if not self.curve.contains(self.Qprime):
            raise ValueError("Q' must lie on the curve")

    def joint_group(self) -> AutGroup:
        gens = tuple(g for grp in self.groups for g in grp.generators)
        return close(gens, label="joint")


# ---------------------------------------------------------------------------
# condition checks


def check_condition_b(inst: Instance) -> CheckReport:
    """Groups must share one order and a designated pair must intersect
    trivially (with two groups, the pair is just (G1, G2))."""
    orders = [g.order for g in inst.groups]
    details: dict = {"orders": orders}
    if len(set(orders)) != 1:
        return CheckReport("condition_b", False, {**details, "reason": "group orders differ"})
    pair_results = []
    witness = None
    any_trivial = False
    for i in range(len(inst.groups)):
        for j in range(i + 1, len(inst.groups)):
            inter = inst.groups[i].intersect(inst.groups[j])
            pair_results.append({"pair": [i, j], "intersection_order": inter.order})
            if inter.order == 1:
                any_trivial = True
            elif witness is None:
                nontrivial = next(m for m in inter.elements if not m.is_identity())
                witness = {"pair": [i, j], "element": list(nontrivial.key)}
    details["pairs"] = pair_results
    if len(inst.groups) == 2:
        passed = pair_results[0]["intersection_order"] == 1
    else:
        passed = any_trivial
    return CheckReport("condition_b", passed, details, witness=None if passed else witness)


def build_divisor(inst: Instance) -> Divisor:
    """The common orbit multiset of Q under every group.

    Fails if the multisets disagree (the groups do not cut the same fiber
    through Q) or if the resulting divisor is not stable under the
    ground-field Frobenius.
    """
    reference = inst.groups[0].orbit_multiset(inst.Q)
    for idx, grp in enumerate(inst.groups[1:], start=1):
        other = grp.orbit_multiset(inst.Q)
        if other != reference:
            diff = set(reference) | set(other)
            only_ref = [p.key for p in diff if reference.get(p) != other.get(p)]
            raise CheckFailure(
                CheckReport(
                    "condition_c",
                    False,
                    {
                        "reason": "orbit multisets of Q differ",
                        "groups": [0, idx],
                        "differing_points": [list(k) for k in sorted(only_ref)[:8]],
                    },
                )
            )
    support = tuple(sorted(reference.items(), key=lambda t: t[0].key))
    fod = _field_of_definition(reference, inst.working)
    ground_rational = inst.ground.k % fod.k == 0
    if not ground_rational:
        raise CheckFailure(
            CheckReport(
                "rationality",
                False,
                {
                    "reason": "divisor is not stable under the ground-field Frobenius",
                    "field_of_definition": {"p": fod.p, "k": fod.k},
                    "ground": {"p": inst.ground.p, "k": inst.ground.k},
                },
            )
        )
    return Divisor(support, fod, ground_rational)


def _field_of_definition(multiset: dict[ProjPoint, int], working: FieldSpec) -> FieldSpec:
    """Smallest subfield GF(p^d), d | working.k, whose Frobenius preserves
    the multiset."""
    for d in sorted(x for x in range(1, working.k + 1) if working.k % x == 0):
        sub_order = working.p**d
        image = {p.frobenius_image(sub_order): m for p, m in multiset.items()}
        if image == multiset:
            return make_field(working.p, d)
    raise AssertionError("full-field Frobenius always fixes the multiset (unreachable)")


def check_condition_d(inst: Instance, D: Divisor):
    """Build the evaluation set S (the joint orbit of Q') and check the
    eligibility clauses: Q' ground-rational, Q' outside supp(D), and S
    large enough.

    With two groups the size clause is #S >= |G1|+1 when m = 1 and
    m*|G1| < #S in general; with more groups it asks for one pair (i, j)
    with trivial intersection whose two-group orbit of Q' already has more
    than |G_i| points.  Returns (S, report).
    """
    joint = inst.joint_group()
    S = joint.orbit(inst.Qprime)
    clauses = []
    witness = None

    ground_rational = _point_is_rational(inst.Qprime, inst.ground)
    clauses.append({"clause": "qprime_rational", "passed": ground_rational})

    supp = set(D.points())
    outside = inst.Qprime not in supp
    clauses.append({"clause": "qprime_outside_support", "passed": outside})

    n_groups = len(inst.groups)
    g1 = inst.groups[0].order
    if n_groups == 2:
        if inst.m == 1:
            size_ok = len(S) >= g1 + 1
            size_detail = {
                "clause": "orbit_size",
                "variant": "two_groups_unit_scale",
                "orbit_size": len(S),
                "threshold": g1 + 1,
                "passed": size_ok,
            }
        else:
            size_ok = inst.m * g1 < len(S)
            size_detail = {
                "clause": "orbit_size",
                "variant": "two_groups_scaled",
                "orbit_size": len(S),
                "scaled_degree": inst.m * g1,
                "passed": size_ok,
            }
    else:
        pair = None
        for i in range(n_groups):
            for j in range(i + 1, n_groups):
                if inst.groups[i].intersect(inst.groups[j]).order != 1:
                    continue
                sub = close(
                    inst.groups[i].generators + inst.groups[j].generators,
                    label=f"pair{i}{j}",
                )
                if len(sub.orbit(inst.Qprime)) >= inst.groups[i].order + 1:
                    pair = [i, j]
                    break
            if pair:
                break
        size_ok = pair is not None
        size_detail = {
            "clause": "orbit_size",
            "variant": "many_groups_pair",
            "orbit_size": len(S),
            "designated_pair": pair,
            "passed": size_ok,
        }
    clauses.append(size_detail)

    passed = all(c["passed"] for c in clauses)
    if not passed:
        witness = {"qprime": list(inst.Qprime.key)}
    report = CheckReport(
        "condition_d",
        passed,
        {"clauses": clauses, "orbit_size": len(S), "group_order": g1, "m": inst.m},
        witness=witness,
    )
    return S, report


def _point_is_rational(pt: ProjPoint, ground: FieldSpec) -> bool:
    sub_order = ground.order
    return pt.frobenius_image(sub_order) == pt


def check_curve_preservation(inst: Instance) -> CheckReport:
    """Every element of every group must map the curve onto itself."""
    checked = 0
    for grp in inst.groups:
        for mapel in grp.elements:
            if not mapel.preserves_curve(inst.curve):
                return CheckReport(
                    "curve_preservation",
                    False,
                    {"group": grp.label},
                    witness={"element": list(mapel.key)},
                )
            checked += 1
    return CheckReport("curve_preservation", True, {"elements_checked": checked})


# ---------------------------------------------------------------------------
# basis synthesis and the generator matrix


def build_basis(inst: Instance, D: Divisor) -> EvalBasis:
    """Monomial basis of L(m*D) for the supported divisor shapes.

    Plane curves with D the full line-section divisor get all monomials of
    degree <= m in the affine chart, written as forms X^i Y^j Z^(m-i-j);
    the line gets s^i t^(m'-i) with m' = deg(m*D).  Other shapes must come
    with explicit functions; the code dimension is always the evaluation
    rank, never the nominal count.
    """
    if inst.functions is not None:
        return EvalBasis(inst.functions, poly_degree(inst.functions[0]), inst.curve.n_coords)
    one = inst.working.one()
    if inst.curve.n_coords == 3:
        section = set(inst.curve.line_section_points(inst.working))
        if set(D.points()) != section:
            raise PreconditionError(
                "unsupported_basis",
                "automatic basis needs the divisor supported on the full line section; "
                "supply explicit functions",
            )
        m = inst.m
        forms = []
        for total in range(m + 1):
            for j in range(total + 1):
                i = total - j
                forms.append({(i, j, m - total): one})
        return EvalBasis(tuple(forms), m, 3)
    # P^1: divisor must sit at the single point with last coordinate zero
    infinity = ProjPoint((inst.working.one(), inst.working.zero()))
    if D.points() != (infinity,):
        raise PreconditionError(
            "unsupported_basis",
            "automatic basis on the line needs the divisor supported at (1:0); "
            "supply explicit functions",
        )
    mprime = inst.m * D.degree
    forms = [{(i, mprime - i): one} for i in range(mprime + 1)]
    return EvalBasis(tuple(forms), mprime, 2)


def build_code(inst: Instance) -> EvalCode:
    """Run all checks, then evaluate the basis at S and assemble the code."""
    rep_b = check_condition_b(inst)
    if not rep_b.passed:
        raise CheckFailure(rep_b)
    D = build_divisor(inst)
    S, rep_d = check_condition_d(inst, D)
    if not rep_d.passed:
        raise CheckFailure(rep_d)
    basis = build_basis(inst, D)
    return _assemble_code(inst, D, S, basis)


def _assemble_code(inst: Instance, D: Divisor, S, basis: EvalBasis) -> EvalCode:
    if any(not p.coords[-1] for p in S):
        raise PreconditionError(
            "unsupported_basis",
            "evaluation set touches the hyperplane at infinity; functions are not regular there",
        )
    coerce = _ground_coercion(inst.ground, inst.working)
    rows = []
    for form in basis.forms:
        row = tuple(coerce(basis.evaluate(form, p)) for p in S)
        if not any(row):
            raise CheckFailure(
                CheckReport(
                    "injectivity",
                    False,
                    {"reason": "a basis function vanishes on all of S"},
                )
            )
        rows.append(row)
    rank, _, _ = rank_and_rref(rows)
    bound = len(S) - inst.m * inst.groups[0].order
    return EvalCode(
        field=inst.ground,
        points=tuple(S),
        matrix=tuple(rows),
        rank=rank,
        distance_bound=bound,
    )


def _ground_coercion(ground: FieldSpec, working: FieldSpec):
    """Map working-field values into the ground field, verifying that each
    value is fixed by the ground-field Frobenius before pulling it back."""
    if ground == working:
        return lambda v: v
    emb = embedding(ground, working)

    def coerce(v: FieldElement) -> FieldElement:
        if frobenius(v, ground.order) != v:
            raise CheckFailure(
                CheckReport(
                    "ground_coercion",
                    False,
                    {
                        "reason": "evaluation leaves the ground field",
                        "value": v.enc,
                    },
                )
            )
        return emb.section(v)

    return coerce


# ---------------------------------------------------------------------------
# full pipeline with reports


@dataclass(frozen=True)
class ConstructionResult:
    instance: Instance
    reports: tuple[CheckReport, ...]
    divisor: Optional[Divisor]
    points: tuple[ProjPoint, ...]
    joint_order: int
    code: Optional[EvalCode]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports) and self.code is not None


def run_construction(inst: Instance, strict: bool = True) -> ConstructionResult:
    """Execute every check in order and build the code.

    With strict=True the first failed check raises CheckFailure; otherwise
    the failure is recorded in the reports and later stages are skipped.
    """
    reports: list[CheckReport] = []

    def fail(result: ConstructionResult):
        if strict:
            raise CheckFailure(next(r for r in reports if not r.passed))
        return result

    reports.append(
        CheckReport(
            "condition_a",
            inst.condition_a_declared,
            {"status": "assumed" if inst.family in FAMILIES else "declared"},
        )
    )
    reports.append(check_curve_preservation(inst))
    reports.append(check_condition_b(inst))
    if not all(r.passed for r in reports):
        return fail(ConstructionResult(inst, tuple(reports), None, (), 0, None))

    try:
        D = build_divisor(inst)
        reports.append(
            CheckReport(
                "condition_c",
                True,
                {
                    "degree": D.degree,
                    "support_size": len(D.support),
                    "e": D.e,
                },
            )
        )
        reports.append(
            CheckReport(
                "rationality",
                True,
                {
                    "field_of_definition": {"p": D.field_of_definition.p, "k": D.field_of_definition.k},
                    "ground_rational": D.ground_rational,
                },
            )
        )
    except CheckFailure as exc:
        reports.append(exc.report)
        return fail(ConstructionResult(inst, tuple(reports), None, (), 0, None))

    S, rep_d = check_condition_d(inst, D)
    reports.append(rep_d)
    joint_order = inst.joint_group().order
    if not rep_d.passed:
        return fail(ConstructionResult(inst, tuple(reports), D, S, joint_order, None))

    try:
        basis = build_basis(inst, D)
        code = _assemble_code(inst, D, S, basis)
    except CheckFailure as exc:
        reports.append(exc.report)
        return fail(ConstructionResult(inst, tuple(reports), D, S, joint_order, None))
    return ConstructionResult(inst, tuple(reports), D, tuple(S), joint_order, code)


# ---------------------------------------------------------------------------
# built-in instances


def builtin_instance(family: str, q: int, m: int = 1) -> Instance:
    """Assemble a built-in instance with the deterministic choices of Q and
    Q': the first candidate in canonical point order that satisfies the
    family's shape rule and passes the applicable checks."""
    if family == "fermat":
        p, s = prime_power(q)
        field = make_field(p, 2 * s)
        curve = fermat_curve(q, field)
        g1, g2 = builtin_generators("fermat", q, field)
        G1, G2 = close(g1, label="G1"), close(g2, label="G2")
        Q = curve.line_section_points(field)[0]
        Qprime = _first_valid_qprime(
            curve, field, (G1, G2), Q, m,
            shape=lambda pt: all(pt.coords),
            family=family,
        )
        return Instance(curve, (G1, G2), Q, Qprime, field, field, m, family=family, q=q)

    if family == "projline":
        if q % 2 == 0 or q < 5:
            raise PreconditionError(
                "invalid_family_parameters", f"projline family needs odd q >= 5, got q={q}"
            )
        p, s = prime_power(q)
        field = make_field(p, s)
        curve = projective_line(field)
        g1, g2 = builtin_generators("projline", q, field)
        G1, G2 = close(g1, label="G1"), close(g2, label="G2")
        Q = _first_common_fiber_point(curve, field, (G1, G2))
        Qprime = _first_valid_qprime(
            curve, field, (G1, G2), Q, m, shape=lambda pt: True, family=family
        )
        return Instance(curve, (G1, G2), Q, Qprime, field, field, m, family=family, q=q)

    if family == "bf":
        p, s = prime_power(q)
        field = make_field(p, 4 * s)
        curve = trace_fermat_curve(q, field)
        g1, g2 = builtin_generators("bf", q, field)
        G1, G2 = close(g1, label="G1"), close(g2, label="G2")
        Q = curve.line_section_points(field)[0]
        Qprime = _first_valid_qprime(
            curve, field, (G1, G2), Q, m,
            shape=lambda pt: bool(pt.coords[-1]) and not pt.coords[1],
            family=family,
        )
        return Instance(curve, (G1, G2), Q, Qprime, field, field, m, family=family, q=q)

    raise PreconditionError("invalid_family_parameters", f"unknown family {family!r}")


def _first_common_fiber_point(curve: PlaneCurve, field: FieldSpec, groups) -> ProjPoint:
    """First point whose orbit multisets agree across the groups (the
    candidate base points Q)."""
    for pt in curve.rational_points(field):
        reference = groups[0].orbit_multiset(pt)
        if all(g.orbit_multiset(pt) == reference for g in groups[1:]):
            return pt
    raise PreconditionError("no_valid_q", "no point has coincident orbit multisets")


def _first_valid_qprime(curve, field, groups, Q, m, shape, family) -> ProjPoint:
    """First curve point matching the family's shape rule that passes the
    eligibility clauses for the evaluation seed."""
    candidates = [pt for pt in curve.rational_points(field) if shape(pt)]
    if candidates:
        probe = Instance(
            curve, groups, Q, candidates[0], field, field, m, family=family, q=None
        )
        D = build_divisor(probe)
        supp = set(D.points())
        joint = probe.joint_group()
        g1 = groups[0].order
        for pt in candidates:
            if pt in supp:
                continue
            S = joint.orbit(pt)
            if m * g1 < len(S):
                return pt
    raise PreconditionError(
        "no_valid_qprime",
        f"no valid evaluation seed exists for family {family!r} "
        f"(scanned {len(curve.rational_points(field))} rational points)",
        {"points_scanned": len(curve.rational_points(field)), "family": family},
    )
