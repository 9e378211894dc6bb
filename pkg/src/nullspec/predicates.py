"""Object-level predicates and their hierarchy.

All predicates quantify over fully enumerated finite hom sets: "every
endomorphism is zero or injective" is not a linear condition, so checking a
basis is not enough.  Enumeration caps make blowups an explicit error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .category import CatObject, Universe, homs, subobjects
from .errors import ZeroObjectError


def _require_nonzero(M: CatObject):
    if M.is_zero:
        raise ZeroObjectError("predicate is undefined on the zero object")


def is_simple(M: CatObject) -> bool:
    """No subobject other than 0 and M."""
    _require_nonzero(M)
    return len(subobjects(M)) == 2


def is_indecomposable(M: CatObject) -> bool:
    """No idempotent endomorphism other than 0 and the identity."""
    _require_nonzero(M)
    be = M.backend
    ident = be.identity_morphism(M)
    for f in homs(M, M):
        if be.is_zero_morphism(f) or f.data == ident.data:
            continue
        if be.compose(f, f).data == f.data:
            return False
    return True


def is_uniform(M: CatObject) -> bool:
    """Any two nonzero subobjects intersect nontrivially."""
    _require_nonzero(M)
    be = M.backend
    nonzero = [e for e in subobjects(M) if e.sub.length > 0]
    for i, a in enumerate(nonzero):
        for b in nonzero[i + 1:]:
            if be.witness_intersection_is_zero(M, a, b):
                return False
    return True


def is_premonoform(M: CatObject) -> bool:
    """Every endomorphism is either zero or monic."""
    _require_nonzero(M)
    be = M.backend
    for f in homs(M, M):
        if not be.is_zero_morphism(f) and not be.is_monic(f):
            return False
    return True


def is_monoform(M: CatObject) -> bool:
    """For every subobject N <= M, every map N -> M is either zero or monic."""
    _require_nonzero(M)
    be = M.backend
    entries = sorted(subobjects(M), key=lambda e: -e.sub.length)
    for e in entries:
        if e.sub.length == 0:
            continue
        for f in homs(e.sub, M):
            if not be.is_zero_morphism(f) and not be.is_monic(f):
                return False
    return True


@dataclass(frozen=True)
class ClassReport:
    object: CatObject
    simple: bool
    indecomposable: bool
    uniform: bool
    premonoform: bool
    monoform: bool

    def hierarchy_violations(self) -> list[str]:
        """Implications that every report must satisfy."""
        out = []
        if self.simple and not self.monoform:
            out.append("simple without monoform")
        if self.monoform and not self.premonoform:
            out.append("monoform without premonoform")
        if self.premonoform and not self.indecomposable:
            out.append("premonoform without indecomposable")
        if self.uniform and not self.indecomposable:
            out.append("uniform without indecomposable")
        return out

    def to_json(self) -> dict:
        return {
            "object": self.object.name,
            "length": self.object.length,
            "simple": self.simple,
            "indecomposable": self.indecomposable,
            "uniform": self.uniform,
            "premonoform": self.premonoform,
            "monoform": self.monoform,
        }


def classify(M: CatObject) -> ClassReport:
    return ClassReport(
        object=M,
        simple=is_simple(M),
        indecomposable=is_indecomposable(M),
        uniform=is_uniform(M),
        premonoform=is_premonoform(M),
        monoform=is_monoform(M),
    )


def classify_all(u: Universe, workers: int = 1, strict: bool = True) -> list[ClassReport]:
    """One report per nonzero universe object, in universe order.

    Worker count never changes the result; reports are merged in input
    order and all computations are pure.  With strict=True a hierarchy
    violation raises; the CLI uses strict=False and reports it instead.
    """
    objs = u.nonzero_objects()
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(classify, objs))
    else:
        reports = [classify(M) for M in objs]
    if strict:
        bad = [(r.object.name, v) for r in reports for v in r.hierarchy_violations()]
        if bad:
            raise AssertionError(f"predicate hierarchy violated: {bad}")
    return reports
