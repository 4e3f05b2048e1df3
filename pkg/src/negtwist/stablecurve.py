r"""Stable-curve models and the numerical data of their automorphisms.

A stable curve is modeled by its dual graph (a vertex per irreducible
component, weighted by the genus of the normalization; an edge per node)
together with per-component bookkeeping: the genus again and the list of
*bank incidences* (edge id, end) telling which node preimages lie on the
component.  Each ordinary edge has exactly two banks, numbered so that bank
1 sits on the head vertex and bank 2 on the tail.

An automorphism of the curve of order N induces a graph automorphism.  Its
numerical data consists of the graph action, and for each component orbit
the *dressed total valency* of the first-return map: the total valency of
the induced periodic map on the normalization of a representative, with
each entry tagged by where its points sit —

    **sigma/lambda**    branch point on a non-amphidrome node,
    ((sigma/lambda))    branch point on an amphidrome node,
    sigma/lambda        interior branch point,
    **1**, ((1))        unbranched node preimages (lambda = 1).

Boundary entries are assembled from per-edge bank valencies: one entry per
orbit of the first-return map on the representative's banks, which must
carry a constant valency with lambda * (orbit size) = n.  The counts
(s, s'^(1), s'^(2), t^(1), t^(2)) are derived from the tags, never input.

Dimension bookkeeping: the product of the pointed Teichmuller spaces of the
normalized components has dimension sum_i (3 g_i - 3 + k_i) = 3g - 3 - k,
and the stratum of curves with this automorphism has dimension
sum over component orbits of (3 gbar_i - 3 + s_i + t_i).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import (
    Bank,
    DualGraph,
    GraphAutomorphism,
    OrbitReport,
    apply_bank,
    bank_orbits,
    first_betti,
    orbit_data,
    validate_automorphism,
)
from .valency import (
    Finding,
    PointClass,
    TotalValency,
    ValidationReport,
    Valency,
    validate_total_valency,
)


@dataclass(frozen=True)
class ComponentData:
    """One irreducible component: its vertex, genus, and bank incidences.

    ``incidences`` lists the node preimages on the normalization, as
    (edge id, bank) pairs; the list order is the component's slot order.
    """

    vertex_id: int
    genus: int
    incidences: tuple[Bank, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "incidences", tuple(tuple(b) for b in self.incidences))
        if self.genus < 0:
            raise ValueError("component genus must be nonnegative")

    @property
    def k(self) -> int:
        """Number of marked points on the normalization (= incidence count)."""
        return len(self.incidences)


@dataclass(frozen=True)
class StableCurveModel:
    graph: DualGraph
    components: tuple[ComponentData, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if not self.graph.is_compact:
            raise ValueError("stable-curve models use compact dual graphs")
        if not self.graph.is_connected():
            raise ValueError("stable curves are connected; disconnected model rejected")
        vids = {v.id for v in self.graph.vertices}
        cids = [c.vertex_id for c in self.components]
        if sorted(cids) != sorted(vids):
            raise ValueError("components must match the graph vertices one to one")
        for c in self.components:
            if self.graph.vertex(c.vertex_id).genus_weight != c.genus:
                raise ValueError(
                    f"component {c.vertex_id}: genus {c.genus} disagrees with "
                    f"the graph weight"
                )
        # each edge contributes bank 1 at its head and bank 2 at its tail,
        # each consumed exactly once
        placed: dict[Bank, int] = {}
        for c in self.components:
            for b in c.incidences:
                if b in placed:
                    raise ValueError(f"bank {b} claimed twice")
                placed[b] = c.vertex_id
        for e in self.graph.ordinary_edges():
            for end, vid in ((1, e.head), (2, e.tail)):
                owner = placed.pop((e.id, end), None)
                if owner is None:
                    raise ValueError(f"bank ({e.id}, {end}) is not placed")
                if owner != vid:
                    raise ValueError(
                        f"bank ({e.id}, {end}) placed on component {owner}, "
                        f"but the edge puts it on {vid}"
                    )
        if placed:
            raise ValueError(f"incidences for unknown banks: {sorted(placed)}")
        for c in self.components:
            if c.genus == 0 and c.k < 3:
                raise ValueError(
                    f"component {c.vertex_id} is rational with {c.k} < 3 nodes: "
                    "not stable"
                )

    def component(self, vertex_id: int) -> ComponentData:
        for c in self.components:
            if c.vertex_id == vertex_id:
                return c
        raise KeyError(vertex_id)

    @property
    def k(self) -> int:
        """Number of nodes."""
        return len(self.graph.edges)


@dataclass(frozen=True)
class ComponentAction:
    """First-return data on one component-orbit representative: the order n
    of the return map, the quotient genus, and the interior branch valencies
    (one entry per interior branch-point orbit, lambda >= 2)."""

    vertex_id: int
    n: int
    g_bar: int
    interior_valencies: tuple[Valency, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "interior_valencies", tuple(self.interior_valencies)
        )
        if self.n < 1:
            raise ValueError("return-map order must be >= 1")
        if self.g_bar < 0:
            raise ValueError("quotient genus must be nonnegative")
        for v in self.interior_valencies:
            if v.lam == 1:
                raise ValueError(
                    "interior lambda = 1 markers are not part of the data; "
                    "unbranched points are recorded only at nodes"
                )


@dataclass(frozen=True)
class AutomorphismData:
    """Numerical data of a stable-curve automorphism of order N.

    ``components`` holds one ComponentAction per vertex-orbit representative
    of ``action``; ``bank_valencies`` maps each edge id to the valency
    sigma/lambda seen on bank 1 and bank 2 (co-valencies are derived, never
    stored).
    """

    model: StableCurveModel
    N: int
    action: GraphAutomorphism
    components: tuple[ComponentAction, ...]
    bank_valencies: dict[int, tuple[Valency, Valency]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(
            self,
            "bank_valencies",
            {eid: tuple(pair) for eid, pair in self.bank_valencies.items()},
        )
        if self.N < 1:
            raise ValueError("order N must be positive")
        for eid, pair in self.bank_valencies.items():
            if len(pair) != 2:
                raise ValueError(f"edge {eid}: need exactly two bank valencies")

    def component_action(self, vertex_id: int) -> ComponentAction:
        for ca in self.components:
            if ca.vertex_id == vertex_id:
                return ca
        raise KeyError(vertex_id)

    def bank_valency(self, bank: Bank) -> Valency:
        eid, end = bank
        return self.bank_valencies[eid][end - 1]


@dataclass(frozen=True)
class DTVCounts:
    """Point counts of a dressed total valency, split by tag."""

    s: int          # branch points, lambda >= 2 (interior and boundary)
    s_prime_1: int  # of these, on non-amphidrome nodes (bold)
    s_prime_2: int  # of these, on amphidrome nodes (double bracket)
    t_1: int        # unbranched non-amphidrome node entries (**1**)
    t_2: int        # unbranched amphidrome node entries (((1)))

    @property
    def s_prime(self) -> int:
        return self.s_prime_1 + self.s_prime_2

    @property
    def t(self) -> int:
        return self.t_1 + self.t_2


def dtv_counts(tv: TotalValency) -> DTVCounts:
    s = s1 = s2 = t1 = t2 = 0
    for v in tv.valencies:
        if v.lam > 1:
            s += 1
            if v.point_class is PointClass.boundary_nonamphidrome:
                s1 += 1
            elif v.point_class is PointClass.boundary_amphidrome:
                s2 += 1
        else:
            if v.point_class is PointClass.boundary_nonamphidrome:
                t1 += 1
            elif v.point_class is PointClass.boundary_amphidrome:
                t2 += 1
    return DTVCounts(s, s1, s2, t1, t2)


def _boundary_orbits(
    model: StableCurveModel, action: GraphAutomorphism, rep: int, m: int
) -> list[tuple[Bank, ...]]:
    """Orbits of the first-return map (the m-th iterate of the bank action)
    on the representative component's incidences, in slot order."""
    def ret(b: Bank) -> Bank:
        for _ in range(m):
            b = apply_bank(action, b)
        return b

    comp = model.component(rep)
    seen: set[Bank] = set()
    orbits = []
    for start in comp.incidences:
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        cur = ret(start)
        while cur != start:
            if cur not in comp.incidences:
                raise ValueError(
                    f"first-return map moved bank {start} off component {rep}"
                )
            orbit.append(cur)
            seen.add(cur)
            cur = ret(cur)
        orbits.append(tuple(orbit))
    return orbits


def dressed_total_valency(
    model: StableCurveModel, num: AutomorphismData, rep: int
) -> TotalValency:
    """The dressed total valency of the first-return map on the component
    orbit of ``rep`` (which must be the orbit representative).

    Boundary entries come one per first-return orbit of banks, with the
    stored bank valency (constant on the orbit) and the point class given by
    the edge orbit's amphidrome flag; interior entries are taken from the
    component action.  Entries are ordered: bold, double-bracket, plain
    (each ascending by value), then the **1** entries, then the ((1))
    entries.
    """
    if num.model != model:
        raise ValueError("automorphism data belongs to a different model")
    report = orbit_data(model.graph, num.action)
    vorbit = report.vertex_orbit_of(rep)
    if vorbit.rep != rep:
        raise ValueError(f"vertex {rep} is not its orbit representative ({vorbit.rep})")
    ca = num.component_action(rep)

    boundary: list[Valency] = []
    for orbit in _boundary_orbits(model, num.action, rep, vorbit.m):
        vals = {(num.bank_valency(b).sigma, num.bank_valency(b).lam) for b in orbit}
        if len(vals) != 1:
            raise ValueError(
                f"bank valencies disagree along a first-return orbit at "
                f"component {rep}: {sorted(vals)}"
            )
        (sigma, lam), = vals
        if lam * len(orbit) != ca.n:
            raise ValueError(
                f"component {rep}: boundary orbit of size {len(orbit)} with "
                f"lambda {lam} is inconsistent with return order {ca.n}"
            )
        eorbit = report.edge_orbit_of(orbit[0][0])
        cls = (
            PointClass.boundary_amphidrome
            if eorbit.amphidrome
            else PointClass.boundary_nonamphidrome
        )
        boundary.append(Valency(sigma, lam, cls))

    interior = [
        Valency(v.sigma, v.lam, PointClass.interior_branch)
        for v in ca.interior_valencies
    ]
    ordered = canonical_dressed_order(boundary + interior)
    return TotalValency(model.component(rep).genus, ca.n, ca.g_bar, ordered)


def canonical_dressed_order(valencies) -> tuple[Valency, ...]:
    """Canonical entry order of a dressed total valency: bold, then double
    bracket, then plain (each ascending by value), then the **1** entries,
    then the ((1)) entries."""
    bold = sorted(
        (v for v in valencies
         if v.lam > 1 and v.point_class is PointClass.boundary_nonamphidrome),
        key=lambda v: v.value,
    )
    bracketed = sorted(
        (v for v in valencies
         if v.lam > 1 and v.point_class is PointClass.boundary_amphidrome),
        key=lambda v: v.value,
    )
    plain = sorted(
        (v for v in valencies
         if v.lam > 1 and v.point_class not in
         (PointClass.boundary_nonamphidrome, PointClass.boundary_amphidrome)),
        key=lambda v: v.value,
    )
    ones_bold = [
        v for v in valencies
        if v.lam == 1 and v.point_class is PointClass.boundary_nonamphidrome
    ]
    ones_bracketed = [
        v for v in valencies
        if v.lam == 1 and v.point_class is PointClass.boundary_amphidrome
    ]
    return tuple(bold + bracketed + plain + ones_bold + ones_bracketed)


def total_genus(model: StableCurveModel) -> int:
    """Arithmetic genus: sum of component genera plus the graph's first
    Betti number."""
    return sum(c.genus for c in model.components) + first_betti(model.graph)


def little_teichmuller_dimension(model: StableCurveModel) -> int:
    """dim of the product of pointed Teichmuller spaces of the components:
    3g - 3 - k, verified against the componentwise sum."""
    g = total_genus(model)
    k = model.k
    direct = 3 * g - 3 - k
    componentwise = sum(3 * c.genus - 3 + c.k for c in model.components)
    if direct != componentwise:
        raise ValueError(
            f"dimension bookkeeping broken: 3g-3-k = {direct} but the "
            f"componentwise sum is {componentwise}"
        )
    if direct < 0:
        raise ValueError(f"negative dimension {direct}: model is not stable")
    return direct


def stratum_dimension(num: AutomorphismData) -> int:
    """Dimension of the stratum of curves admitting this automorphism:
    sum over component orbits of (3 gbar_i - 3 + s_i + t_i)."""
    report = orbit_data(num.model.graph, num.action)
    dim = 0
    for vorbit in report.vertex_orbits:
        tv = dressed_total_valency(num.model, num, vorbit.rep)
        counts = dtv_counts(tv)
        term = 3 * tv.g_bar - 3 + counts.s + counts.t
        if term < 0:
            raise ValueError(
                f"component {vorbit.rep}: 3*{tv.g_bar} - 3 + {counts.s} + "
                f"{counts.t} = {term} < 0 (2g_bar - 2 + s + t > 0 is required)"
            )
        dim += term
    return dim


def _is_hyperelliptic_g2(num: AutomorphismData) -> bool:
    if num.model.k != 0 or total_genus(num.model) != 2:
        return False
    if len(num.components) != 1:
        return False
    ca = num.components[0]
    return ca.n == 2 and len(ca.interior_valencies) == 6 and all(
        v.lam == 2 for v in ca.interior_valencies
    )


def validate_numdata(num: AutomorphismData) -> ValidationReport:
    """Full consistency report for numerical automorphism data.

    Covers: validity of the graph action, orbit coverage of the component
    actions, bank-valency transport along orbits, equal valencies on
    amphidrome banks, order bookkeeping m*n | N, per-orbit admissibility of
    the dressed total valencies (genus-aware), and dimension bookkeeping.
    Failures are reported, never raised.
    """
    findings: list[Finding] = []
    model = num.model

    try:
        validate_automorphism(model.graph, num.action)
        findings.append(Finding("action", True, "structure-preserving, stated order"))
    except ValueError as exc:
        findings.append(Finding("action", False, str(exc)))
        return ValidationReport(tuple(findings))

    report = orbit_data(model.graph, num.action)
    reps = [o.rep for o in report.vertex_orbits]
    have = [ca.vertex_id for ca in num.components]
    findings.append(
        Finding(
            "orbit coverage",
            sorted(have) == sorted(reps),
            f"representatives {reps}, component actions {have}",
        )
    )
    if sorted(have) != sorted(reps):
        return ValidationReport(tuple(findings))

    missing = [
        e.id for e in model.graph.ordinary_edges() if e.id not in num.bank_valencies
    ]
    findings.append(
        Finding(
            "bank coverage",
            not missing,
            "every edge carries two bank valencies"
            if not missing
            else f"edges without bank valencies: {missing}",
        )
    )
    if missing:
        return ValidationReport(tuple(findings))

    constant = True
    details = []
    for orbit in bank_orbits(model.graph, num.action):
        vals = {(num.bank_valency(b).sigma, num.bank_valency(b).lam) for b in orbit}
        if len(vals) != 1:
            constant = False
            details.append(f"orbit of {orbit[0]} carries {sorted(vals)}")
    findings.append(
        Finding("bank transport", constant, "; ".join(details) or
                "valencies constant along bank orbits")
    )

    for eorbit in report.edge_orbits:
        if not eorbit.amphidrome:
            continue
        v1, v2 = num.bank_valencies[eorbit.rep]
        findings.append(
            Finding(
                f"amphidrome banks at edge {eorbit.rep}",
                (v1.sigma, v1.lam) == (v2.sigma, v2.lam),
                f"banks {v1.base_text()} / {v2.base_text()}",
            )
        )

    lcm_total = 1
    for vorbit in report.vertex_orbits:
        ca = num.component_action(vorbit.rep)
        ok = num.N % (vorbit.m * ca.n) == 0
        findings.append(
            Finding(
                f"order divisibility at component {vorbit.rep}",
                ok,
                f"m*n = {vorbit.m}*{ca.n} vs N = {num.N}",
            )
        )
        lcm_total = math.lcm(lcm_total, vorbit.m * ca.n)
    findings.append(
        Finding("order is lcm", num.N == lcm_total,
                f"lcm of m*n over orbits = {lcm_total}, N = {num.N}")
    )

    for vorbit in report.vertex_orbits:
        try:
            tv = dressed_total_valency(model, num, vorbit.rep)
        except ValueError as exc:
            findings.append(
                Finding(f"S{vorbit.rep} dressed total valency", False, str(exc))
            )
            continue
        for f in validate_total_valency(tv).findings:
            findings.append(Finding(f"S{vorbit.rep} {f.label}", f.ok, f.detail))

    try:
        dim = little_teichmuller_dimension(model)
        findings.append(Finding("dimension bookkeeping", True, f"3g-3-k = {dim}"))
    except ValueError as exc:
        findings.append(Finding("dimension bookkeeping", False, str(exc)))

    if _is_hyperelliptic_g2(num):
        findings.append(
            Finding(
                "hyperelliptic genus 2",
                True,
                "smooth genus-2 hyperelliptic action: stratum statements "
                "carry the usual hyperelliptic caveat",
            )
        )

    return ValidationReport(tuple(findings))
