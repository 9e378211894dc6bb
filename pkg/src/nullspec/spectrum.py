"""Spectrum of premonoform classes, supports, and the classification check.

The spectrum of a finite universe is the set of premonoform objects up to
the relation "generates the same nullity class".  Supports of objects and
generated classes, the closed / extension-closed structure on the spectrum,
the bijection between nullity-class traces and closed extension-closed
subsets, and the lattice of classes are all computed here.

All statements are relative to a finite verification window: the universe
of objects of length <= B, with extensions quantified over an enumeration
universe (length <= 2B by default) so that every extension of two length-B
objects is covered.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .category import CatObject, Universe, subobjects
from .closures import IsoSet, MembershipMemo, in_nullity_closure, quot_closure
from .errors import ConfigError
from .predicates import is_premonoform
from .closures import nullity_equivalent


@dataclass(frozen=True)
class SpecPoint:
    """An equivalence class of premonoform objects."""

    class_id: str
    representatives: tuple[CatObject, ...]

    @property
    def canonical(self) -> CatObject:
        return self.representatives[0]


@dataclass(frozen=True)
class SpecSet:
    """A subset of the spectrum, by point ids, with its computed flags."""

    ids: frozenset
    closed: bool | None = None
    extension_closed: bool | None = None

    def labels(self) -> list[str]:
        return sorted(self.ids)


@dataclass(frozen=True)
class ClassTrace:
    """A nullity class seen through the verification window.

    ``trace`` is the set of universe objects (by iso key) in the class;
    ``support`` its spectrum footprint; ``generated_by`` a smallest
    generator subset found for it (None for supp-inverse traces);
    ``is_nullity`` records the quotient/extension closure check.
    """

    trace: frozenset
    support: frozenset
    label: str
    generated_by: tuple[str, ...] | None = None
    is_nullity: bool = True

    def sort_key(self):
        return (len(self.trace), sorted(json.dumps(k) for k in self.trace))


class Spectrum:
    """The spectrum of a universe, with memoized support computations."""

    def __init__(self, universe: Universe, memo: MembershipMemo | None = None):
        self.universe = universe
        self.backend = universe.backend
        self.memo = memo if memo is not None else MembershipMemo()
        self.points = self._compute_points()
        self.by_id = {pt.class_id: pt for pt in self.points}
        self.all_ids = frozenset(self.by_id)
        self._supp_cache: dict = {}
        self._ext_triples_cache: dict = {}

    # -- construction ---------------------------------------------------------

    def _compute_points(self) -> tuple[SpecPoint, ...]:
        premono = [M for M in self.universe.nonzero_objects() if is_premonoform(M)]
        groups: list[list[CatObject]] = []
        for M in premono:
            placed = False
            for grp in groups:
                if nullity_equivalent(M, grp[0], self.memo):
                    grp.append(M)
                    placed = True
                    break
            if not placed:
                groups.append([M])
        # Well-definedness guard: every pair in a class must be equivalent.
        for grp in groups:
            for x, y in combinations(grp, 2):
                if not nullity_equivalent(x, y, self.memo):
                    raise AssertionError(
                        f"spectrum classes are not well defined: {x.name} vs {y.name}")
        points = []
        for grp in groups:
            reps = tuple(sorted(grp, key=lambda o: o.sort_key()))
            points.append(SpecPoint(reps[0].name, reps))
        points.sort(key=lambda pt: pt.canonical.sort_key())
        if len({pt.class_id for pt in points}) != len(points):
            raise AssertionError("spectrum point ids collide")
        return tuple(points)

    # -- supports ---------------------------------------------------------------

    def supp(self, M: CatObject) -> frozenset:
        """Points whose classes lie inside the class generated by M."""
        if M.is_zero:
            return frozenset()
        key = M.iso_key
        if key not in self._supp_cache:
            gen = IsoSet.of([M])
            ids = frozenset(pt.class_id for pt in self.points
                            if in_nullity_closure(pt.canonical, gen, self.memo))
            self._supp_cache[key] = ids
        return self._supp_cache[key]

    def supp_generated(self, S: IsoSet) -> frozenset:
        """Support of the nullity class generated by S."""
        return frozenset(pt.class_id for pt in self.points
                         if in_nullity_closure(pt.canonical, S, self.memo))

    # -- closed / extension closed subsets -----------------------------------------

    def is_closed(self, ids: frozenset) -> bool:
        return all(self.supp(self.by_id[i].canonical) <= ids for i in ids)

    def _extension_triples(self, enum_universe: Universe):
        """(supp sub, supp quotient, supp middle) for every subobject entry
        of every object in the enumeration universe."""
        cache_key = id(enum_universe)
        if cache_key not in self._ext_triples_cache:
            triples = []
            for X in enum_universe.objects:
                sx = self.supp(X)
                for e in subobjects(X):
                    triples.append((self.supp(e.sub), self.supp(e.quotient), sx, X))
            self._ext_triples_cache[cache_key] = triples
        return self._ext_triples_cache[cache_key]

    def is_extension_closed(self, ids: frozenset, enum_universe: Universe) -> bool:
        for ssub, squot, smid, _ in self._extension_triples(enum_universe):
            if ssub <= ids and squot <= ids and not smid <= ids:
                return False
        return True

    def extension_closed_witness(self, ids: frozenset, enum_universe: Universe):
        for ssub, squot, smid, X in self._extension_triples(enum_universe):
            if ssub <= ids and squot <= ids and not smid <= ids:
                return X
        return None

    def all_subsets(self) -> list[frozenset]:
        ids = sorted(self.all_ids)
        out = []
        for r in range(len(ids) + 1):
            for combo in combinations(ids, r):
                out.append(frozenset(combo))
        return out

    def closed_subsets(self) -> list[frozenset]:
        return [s for s in self.all_subsets() if self.is_closed(s)]

    def closed_ext_closed_subsets(self, enum_universe: Universe) -> list[SpecSet]:
        out = []
        for s in self.all_subsets():
            closed = self.is_closed(s)
            if not closed:
                continue
            ext = self.is_extension_closed(s, enum_universe)
            if ext:
                out.append(SpecSet(s, closed=True, extension_closed=True))
        out.sort(key=lambda ss: (len(ss.ids), ss.labels()))
        return out

    # -- traces -----------------------------------------------------------------------

    def trace_of_generators(self, S: IsoSet, label: str | None = None) -> ClassTrace:
        members = [M for M in self.universe.objects
                   if M.is_zero or in_nullity_closure(M, S, self.memo)]
        trace = frozenset(M.iso_key for M in members)
        support = frozenset().union(*(self.supp(M) for M in members)) if members else frozenset()
        gen_names = tuple(sorted(m.name for m in S.members))
        return ClassTrace(
            trace=trace,
            support=support,
            label=label or ("<" + (",".join(gen_names) if gen_names else "0") + ">"),
            generated_by=gen_names,
        )

    def supp_inverse(self, ids: frozenset) -> ClassTrace:
        """Universe objects whose support is contained in the given subset,
        with a closure check recorded in ``is_nullity``."""
        members = [M for M in self.universe.objects if self.supp(M) <= ids]
        trace = frozenset(M.iso_key for M in members)
        support = frozenset().union(*(self.supp(M) for M in members)) if members else frozenset()
        ok = self._trace_is_closed(trace)
        return ClassTrace(
            trace=trace,
            support=support,
            label="supp^-1{" + ",".join(sorted(ids)) + "}",
            generated_by=None,
            is_nullity=ok,
        )

    def _trace_is_closed(self, trace: frozenset) -> bool:
        """Quotient- and extension-stability of a trace within the universe."""
        for M in self.universe.objects:
            if M.iso_key in trace:
                for e in subobjects(M):
                    if e.quotient.iso_key not in trace:
                        return False
        for X in self.universe.objects:
            if X.iso_key in trace:
                continue
            for e in subobjects(X):
                if e.sub.iso_key in trace and e.quotient.iso_key in trace:
                    return False
        return True


# -- verification reports ------------------------------------------------------------


def verify_topology(spec: Spectrum, enum_universe: Universe | None = None) -> dict:
    """Closure of the closed-set family under unions/intersections, plus the
    support-criterion and closed-support checks, exhaustively."""
    violations = []
    closed = spec.closed_subsets()
    closed_set = set(closed)
    if frozenset() not in closed_set:
        violations.append("empty set is not closed")
    if spec.all_ids not in closed_set:
        violations.append("full spectrum is not closed")
    for a, b in combinations(closed, 2):
        if a | b not in closed_set:
            violations.append(f"union of {sorted(a)} and {sorted(b)} is not closed")
        if a & b not in closed_set:
            violations.append(f"intersection of {sorted(a)} and {sorted(b)} is not closed")
    for M in spec.universe.objects:
        if not spec.is_closed(spec.supp(M)):
            violations.append(f"support of {M.name} is not closed")
    # Criterion: a subset is closed iff every point of it lies in some
    # object support contained in the subset.
    supports = [spec.supp(M) for M in spec.universe.nonzero_objects()]
    for s in spec.all_subsets():
        criterion = all(any(i in supp and supp <= s for supp in supports) for i in s)
        if criterion != spec.is_closed(s):
            violations.append(f"support criterion mismatch on {sorted(s)}")
    return {
        "closed_count": len(closed),
        "closed_sets": [sorted(s) for s in sorted(closed, key=lambda x: (len(x), sorted(x)))],
        "violations": violations,
    }


def _generator_subsets(universe: Universe) -> list[IsoSet]:
    indec = list(universe.indecomposables)
    out = []
    for r in range(len(indec) + 1):
        for combo in combinations(indec, r):
            out.append(IsoSet.of(combo))
    return out


def verify_bijection(spec: Spectrum, enum_universe: Universe,
                     generator_subsets: list[IsoSet] | None = None) -> dict:
    """Exhaustive check of the classification bijection over the window.

    (i) every generated class has closed, extension-closed support and its
    trace equals the trace of the support preimage; (ii) every closed and
    extension-closed subset round-trips through supp-inverse and its trace
    is quotient/extension stable; (iii) the two families correspond
    bijectively with matching inclusion order; (iv) distinct traces have
    distinct supports.
    """
    violations = []
    if generator_subsets is None:
        generator_subsets = _generator_subsets(spec.universe)

    traces: dict[frozenset, ClassTrace] = {}
    for S in generator_subsets:
        tr = spec.trace_of_generators(S)
        phi = spec.supp_generated(S)
        if phi != tr.support:
            violations.append(f"support union mismatch for generators {tr.label}")
        if not spec.is_closed(phi):
            violations.append(f"supp of generated class {tr.label} is not closed")
        if not spec.is_extension_closed(phi, enum_universe):
            violations.append(f"supp of generated class {tr.label} is not extension closed")
        inv = spec.supp_inverse(phi)
        if inv.trace != tr.trace:
            violations.append(
                f"membership-by-support mismatch for {tr.label}: class trace and "
                f"supp-inverse trace differ")
        prev = traces.get(tr.trace)
        if prev is None or (tr.generated_by is not None and prev.generated_by is not None
                            and len(tr.generated_by) < len(prev.generated_by)):
            traces[tr.trace] = tr

    subsets = spec.closed_ext_closed_subsets(enum_universe)
    for ss in subsets:
        inv = spec.supp_inverse(ss.ids)
        if inv.support != ss.ids:
            violations.append(f"supp of supp-inverse of {ss.labels()} differs")
        if not inv.is_nullity:
            violations.append(f"supp-inverse of {ss.labels()} is not closed in the window")
        if inv.trace not in traces:
            violations.append(f"supp-inverse of {ss.labels()} is not a generated class trace")

    trace_list = sorted(traces.values(), key=lambda t: t.sort_key())
    support_map = {}
    for tr in trace_list:
        if tr.support in support_map:
            violations.append(
                f"distinct classes {support_map[tr.support].label} and {tr.label} "
                f"share a support")
        support_map[tr.support] = tr
    subset_ids = {ss.ids for ss in subsets}
    for tr in trace_list:
        if tr.support not in subset_ids:
            violations.append(f"support of {tr.label} is not closed+extension closed")
    if len(trace_list) != len(subsets):
        violations.append(
            f"family sizes differ: {len(trace_list)} classes vs {len(subsets)} subsets")
    for t1 in trace_list:
        for t2 in trace_list:
            if (t1.trace <= t2.trace) != (t1.support <= t2.support):
                violations.append(
                    f"order mismatch between {t1.label} and {t2.label}")
    return {
        "classes": len(trace_list),
        "subsets": len(subsets),
        "class_labels": [t.label for t in trace_list],
        "subset_labels": [ss.labels() for ss in subsets],
        "violations": violations,
        "traces": trace_list,
        "spec_sets": subsets,
    }


# -- lattice ------------------------------------------------------------------------


@dataclass
class Lattice:
    """The lattice of nullity-class traces under inclusion."""

    nodes: tuple[ClassTrace, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    distributive: bool = field(init=False)
    pentagon: tuple[int, ...] | None = field(init=False)

    def __post_init__(self):
        self.distributive = self._check_distributive()
        self.pentagon = self._find_pentagon()

    def _check_distributive(self) -> bool:
        n = len(self.nodes)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    lhs = self.meet[a][self.join[b][c]]
                    rhs = self.join[self.meet[a][b]][self.meet[a][c]]
                    if lhs != rhs:
                        return False
        return True

    def _find_pentagon(self) -> tuple[int, ...] | None:
        n = len(self.nodes)
        lt = lambda i, j: i != j and self.leq[i][j]
        incomp = lambda i, j: not self.leq[i][j] and not self.leq[j][i]
        for y1 in range(n):
            for y2 in range(n):
                if not lt(y1, y2):
                    continue
                for x in range(n):
                    if not (incomp(x, y1) and incomp(x, y2)):
                        continue
                    o = self.meet[x][y1]
                    i = self.join[x][y1]
                    if self.meet[x][y2] == o and self.join[x][y2] == i:
                        return (o, x, y1, y2, i)
        return None

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges (lower, upper)."""
        n = len(self.nodes)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                if any(k != i and k != j and self.leq[i][k] and self.leq[k][j]
                       for k in range(n)):
                    continue
                out.append((i, j))
        return out


def nullity_lattice(spec: Spectrum, enum_universe: Universe,
                    generator_subsets: list[IsoSet] | None = None) -> Lattice:
    report = verify_bijection(spec, enum_universe, generator_subsets)
    if report["violations"]:
        raise ConfigError("bijection verification failed; lattice not built: "
                          + "; ".join(report["violations"][:3]))
    nodes = tuple(report["traces"])
    n = len(nodes)
    leq = tuple(tuple(nodes[i].trace <= nodes[j].trace for j in range(n)) for i in range(n))

    def unique_bound(i, j, lower: bool) -> int:
        if lower:
            cands = [k for k in range(n) if leq[k][i] and leq[k][j]]
            best = [m for m in cands if all(leq[k][m] for k in cands)]
        else:
            cands = [k for k in range(n) if leq[i][k] and leq[j][k]]
            best = [m for m in cands if all(leq[m][k] for k in cands)]
        if len(best) != 1:
            raise AssertionError("trace family is not a lattice")
        return best[0]

    meet = tuple(tuple(unique_bound(i, j, True) for j in range(n)) for i in range(n))
    join = tuple(tuple(unique_bound(i, j, False) for j in range(n)) for i in range(n))
    return Lattice(nodes, leq, meet, join)


# -- DOT emission ---------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace('"', r'\"').replace("\n", r"\n") + '"'


def lattice_dot(lattice: Lattice) -> str:
    lines = ["digraph nullity_lattice {", "  rankdir=BT;", "  node [shape=box];"]
    for i, node in enumerate(lattice.nodes):
        supp = "{" + ",".join(sorted(node.support)) + "}"
        lines.append(f"  n{i} [label={_quote(node.label + chr(10) + 'supp=' + supp)}];")
    for i, j in lattice.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def closed_sets_dot(spec: Spectrum, sets: list[frozenset]) -> str:
    ordered = sorted(sets, key=lambda s: (len(s), sorted(s)))
    lines = ["digraph closed_sets {", "  rankdir=BT;", "  node [shape=ellipse];"]
    names = ["{" + ",".join(sorted(s)) + "}" for s in ordered]
    for i, name in enumerate(names):
        lines.append(f"  c{i} [label={_quote(name)}];")
    n = len(ordered)
    for i in range(n):
        for j in range(n):
            if i == j or not ordered[i] < ordered[j]:
                continue
            if any(k != i and k != j and ordered[i] < ordered[k] < ordered[j] for k in range(n)):
                continue
            lines.append(f"  c{i} -> c{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
