"""Desk-scale verification of the reductions.

The forward direction embeds a PIS solution and checks every residual
component family-free; the reverse direction is covered by the structured
search over candidate deletion sets of the canonical shape (one surviving
B-gadget per column, separators untouched) together with the per-pair
witness checks.  A full unrestricted deletion search over the framework is
combinatorially infeasible even at k=2 and is deliberately not attempted.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .errors import InputError, LimitError
from .graph import Graph, VertexSet, connected_components, induced_subgraph
from .minors import Limits, Relation, default_limits, family_contains
from .reductions import (
    Framework,
    PISInstance,
    build_enhanced_framework,
    embed_solution,
    lift_solution,
    normalize_pis,
    witness_subgraph,
)


def solve_pis(inst: PISInstance, limits: Limits | None = None):
    """Brute force over all k! column assignments, lexicographically first.

    Returns the permutation as a tuple p with row i choosing column p[i-1],
    or None.  Brute force is the honest oracle here: the problem has no
    subfactorial algorithm to compare against.
    """
    lim = limits or default_limits()
    if inst.k > lim.pis_k:
        raise LimitError(f"k={inst.k} exceeds the PIS brute-force limit {lim.pis_k}")
    k = inst.k
    for perm in itertools.permutations(range(1, k + 1)):
        cells = [(i, perm[i - 1]) for i in range(1, k + 1)]
        if not any(
            inst.is_edge(c1, c2) for c1, c2 in itertools.combinations(cells, 2)
        ):
            return tuple(perm)
    return None


def _components_family_free(
    fw: Framework, residual_vertices: VertexSet, limits: Limits
) -> tuple[bool, VertexSet | None]:
    """Check every component of the induced residual graph family-free.

    Returns (all_free, offending component vertices or None).
    """
    sub, remap = induced_subgraph(fw.graph, residual_vertices)
    inverse = {new: old for old, new in remap.items()}
    memo: dict[VertexSet, bool] = {}
    for comp in connected_components(sub):
        original = frozenset(inverse[v] for v in comp)
        if original not in memo:
            comp_graph, _ = induced_subgraph(fw.graph, original)
            memo[original] = family_contains(
                fw.family, comp_graph, fw.params.relation, limits
            )
        if memo[original]:
            return False, original
    return True, None


def structured_deletion_search(
    fw: Framework, ell: int, limits: Limits | None = None
) -> VertexSet | None:
    """Search deletion sets of the canonical shape only.

    For each (edge, column) one row survives; all other B-gadgets of that
    column are deleted whole.  Candidates have size exactly ell by
    construction; one is accepted iff the residual graph is family-free
    componentwise.
    """
    lim = limits or default_limits()
    k = fw.instance.k
    m = len(fw.sigma)
    count = k ** (k * m)
    if count > lim.structured_nodes:
        raise LimitError(
            f"{count} structured candidates exceed limit {lim.structured_nodes}"
        )
    if ell != fw.params.ell:
        raise InputError(f"budget {ell} differs from the framework's ell {fw.params.ell}")
    slots = [(e, j) for e in fw.sigma for j in range(1, k + 1)]
    all_vertices = frozenset(range(fw.graph.n))
    for choice in itertools.product(range(1, k + 1), repeat=len(slots)):
        deleted: set[int] = set()
        for (e, j), survivor in zip(slots, choice):
            for i in range(1, k + 1):
                if i != survivor:
                    deleted.update(fw.index.gadget_vertices(e, i, j))
        assert len(deleted) == ell
        ok, _ = _components_family_free(fw, all_vertices - deleted, lim)
        if ok:
            return frozenset(deleted)
    return None


def check_reimitation(fw: Framework, s) -> tuple[bool, str]:
    """Does s have the canonical shape: one survivor per column, J untouched."""
    s = frozenset(s)
    k = fw.instance.k
    for e in fw.sigma:
        j_hit = fw.index.j_vertices(e) & s
        if j_hit:
            name = fw.index.name(min(j_hit))
            return False, f"separator vertex {name} deleted"
        for j in range(1, k + 1):
            survivors = []
            for i in range(1, k + 1):
                gadget = fw.index.gadget_vertices(e, i, j)
                hit = gadget & s
                if not hit:
                    survivors.append(i)
                elif hit != gadget:
                    name = fw.index.name(min(gadget - hit))
                    return False, (
                        f"gadget with {name} only partially deleted"
                    )
            if len(survivors) != 1:
                return False, (
                    f"column j={j} of edge {e} keeps {len(survivors)} gadgets"
                )
    if len(s) != fw.params.ell:
        return False, f"size {len(s)} differs from ell={fw.params.ell}"
    return True, "ok"


@dataclass
class EquivalenceReport:
    case: str
    relation: Relation
    k: int
    m: int
    pis_answer: bool
    pis_witness: tuple | None
    forward_check: str  # "pass" | "fail" | "skipped" | "inconclusive"
    forward_offender: VertexSet | None
    structured_answer: bool | None
    structured_set: VertexSet | None
    witness_checks: list[tuple] = field(default_factory=list)
    witness_failures: int = 0
    refusals: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def outcome(self) -> str:
        if self.refusals:
            return "inconclusive"
        if (
            self.forward_check == "fail"
            or self.witness_failures
            or self.pis_answer != self.structured_answer
        ):
            return "fail"
        return "pass"


def verify_equivalence(
    fam_or_h, inst: PISInstance, rel: Relation, limits: Limits | None = None
) -> EquivalenceReport:
    """Run the full pipeline and aggregate; refusals never count as a pass."""
    lim = limits or default_limits()
    fam = fam_or_h if isinstance(fam_or_h, (list, tuple)) else [fam_or_h]
    inst = normalize_pis(inst)
    if inst.k > lim.verify_k:
        raise LimitError(f"k={inst.k} exceeds the end-to-end limit {lim.verify_k}")
    if inst.m > lim.verify_m:
        raise LimitError(f"m={inst.m} exceeds the end-to-end limit {lim.verify_m}")
    if max(hx.n for hx in fam) > lim.verify_h:
        raise LimitError(f"|V(H)| exceeds the end-to-end limit {lim.verify_h}")
    start = time.monotonic()
    fw, ell = build_enhanced_framework(fam, inst, rel, lim)

    report = EquivalenceReport(
        case=fw.case,
        relation=rel,
        k=inst.k,
        m=inst.m,
        pis_answer=False,
        pis_witness=None,
        forward_check="skipped",
        forward_offender=None,
        structured_answer=None,
        structured_set=None,
    )

    perm = solve_pis(inst, lim)
    report.pis_answer = perm is not None
    report.pis_witness = perm

    if perm is not None:
        s_p = embed_solution(fw, perm)
        try:
            ok, offender = _components_family_free(
                fw, frozenset(range(fw.graph.n)) - s_p, lim
            )
            report.forward_check = "pass" if ok else "fail"
            report.forward_offender = offender
        except LimitError as exc:
            report.forward_check = "inconclusive"
            report.refusals.append(f"forward: {exc}")

    try:
        found = structured_deletion_search(fw, ell, lim)
        report.structured_answer = found is not None
        report.structured_set = found
        if found is not None:
            _, consistent = lift_solution(fw, found)
            if not consistent:
                report.witness_failures += 1
                report.witness_checks.append(("lift", None, None, None, "fail"))
    except LimitError as exc:
        report.refusals.append(f"structured: {exc}")

    k = inst.k
    try:
        for e in fw.sigma:
            for i in range(1, k + 1):
                for i2 in range(1, k + 1):
                    if i == i2:
                        continue
                    for j in range(1, k + 1):
                        verts = witness_subgraph(fw, e, i, i2, j)
                        sub, _ = induced_subgraph(fw.graph, verts)
                        ok = family_contains(fw.family, sub, rel, lim)
                        report.witness_checks.append(
                            (e, i, i2, j, "pass" if ok else "fail")
                        )
                        if not ok:
                            report.witness_failures += 1
    except LimitError as exc:
        report.refusals.append(f"witness: {exc}")

    report.seconds = time.monotonic() - start
    return report


def report_text(report: EquivalenceReport) -> str:
    lines = [
        f"case={report.case} relation={report.relation.value} "
        f"k={report.k} m={report.m}",
        f"pis_answer={'yes' if report.pis_answer else 'no'}"
        + (f" perm={','.join(map(str, report.pis_witness))}" if report.pis_witness else ""),
        f"forward_check={report.forward_check}",
        f"structured_answer="
        + ("unknown" if report.structured_answer is None else ("yes" if report.structured_answer else "no")),
        f"witness_checks={len(report.witness_checks) - report.witness_failures}"
        f"/{len(report.witness_checks)}",
    ]
    for refusal in report.refusals:
        lines.append(f"refusal={refusal}")
    lines.append(f"result={report.outcome}")
    lines.append(f"seconds={report.seconds:.2f}")
    return "\n".join(lines) + "\n"


def random_pis_instance(
    k: int,
    seed: int,
    cross_probability: float = 0.3,
    max_edges: int | None = None,
    max_attempts: int = 64,
) -> PISInstance:
    """Seeded normalized instance; cross-row pairs appear independently.

    When max_edges is given, re-draws with derived seeds until the total
    (row cliques included) fits; refuses after max_attempts.
    """
    row_pairs = k * (k - 1) // 2 * k
    if max_edges is not None and row_pairs > max_edges:
        raise InputError(
            f"row cliques alone need {row_pairs} edges, above max_edges={max_edges}"
        )
    cells = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1)]
    for attempt in range(max_attempts):
        rng = random.Random(seed + attempt * 7919)
        pairs = []
        for c1, c2 in itertools.combinations(cells, 2):
            if c1[0] == c2[0]:
                continue
            if rng.random() < cross_probability:
                pairs.append((c1, c2))
        inst = normalize_pis(PISInstance.make(k, pairs))
        if max_edges is None or inst.m <= max_edges:
            return inst
    raise LimitError(
        f"could not draw an instance with at most {max_edges} edges in {max_attempts} tries"
    )


def planted_yes_instance(
    k: int, seed: int, cross_probability: float = 0.3, max_edges: int | None = None
) -> tuple[PISInstance, tuple]:
    """Random normalized instance guaranteed solvable: a planted permutation's
    cells are kept pairwise non-adjacent."""
    rng = random.Random(seed)
    perm = list(range(1, k + 1))
    rng.shuffle(perm)
    planted = {(i, perm[i - 1]) for i in range(1, k + 1)}
    cells = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1)]
    pairs = []
    for c1, c2 in itertools.combinations(cells, 2):
        if c1[0] == c2[0]:
            continue
        if c1 in planted and c2 in planted:
            continue
        if rng.random() < cross_probability:
            pairs.append((c1, c2))
    inst = normalize_pis(PISInstance.make(k, pairs))
    if max_edges is not None and inst.m > max_edges:
        keep = sorted(p for p in pairs)[: max(0, max_edges - (inst.m - len(pairs)))]
        inst = normalize_pis(PISInstance.make(k, keep))
    return inst, tuple(perm)
