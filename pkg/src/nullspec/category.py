"""The backend contract: objects, morphisms, subobjects, universes.

Every concrete category (module backends, abelian p-groups) implements
``Backend``; the predicate, closure and spectrum layers are written against
this interface only.  All objects have finite length, so the noetherian
hypotheses of the underlying theory hold automatically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

from .errors import BackendMismatch

DEFAULT_HOM_SCAN_CAP = 2 ** 16
DEFAULT_GROUP_ORDER_CAP = 256
DEFAULT_CANDIDATE_CAP = 2 ** 20


@dataclass(frozen=True)
class Caps:
    """Enumeration guards; exceeding one raises, never silently truncates."""

    subspace_enum: int = 2 ** 16
    hom_scan: int = DEFAULT_HOM_SCAN_CAP
    group_order: int = DEFAULT_GROUP_ORDER_CAP
    universe_candidates: int = DEFAULT_CANDIDATE_CAP


class CatObject:
    """An object of a finite abelian category.

    ``payload`` is backend-specific and hashable; ``length`` is the
    composition length (0 iff the zero object).  ``iso_key`` is a canonical
    complete isomorphism invariant: equal keys iff isomorphic objects.
    """

    __slots__ = ("backend", "payload", "length", "_iso_key")

    def __init__(self, backend: "Backend", payload: Any, length: int):
        self.backend = backend
        self.payload = payload
        self.length = length
        self._iso_key = None

    @property
    def iso_key(self) -> tuple:
        if self._iso_key is None:
            self._iso_key = self.backend.iso_key(self)
        return self._iso_key

    @property
    def is_zero(self) -> bool:
        return self.length == 0

    @property
    def name(self) -> str:
        return self.backend.describe(self)

    def sort_key(self) -> tuple:
        return (self.length, json.dumps(self.iso_key))

    def __eq__(self, other):
        return (isinstance(other, CatObject) and self.backend is other.backend
                and self.payload == other.payload)

    def __hash__(self):
        return hash((id(self.backend), self.payload))

    def __repr__(self):
        return f"CatObject({self.name})"


class Morphism:
    """An arrow between two objects of the same backend."""

    __slots__ = ("backend", "source", "target", "data")

    def __init__(self, backend: "Backend", source: CatObject, target: CatObject, data: Any):
        self.backend = backend
        self.source = source
        self.target = target
        self.data = data

    def __eq__(self, other):
        return (isinstance(other, Morphism) and self.backend is other.backend
                and self.source == other.source and self.target == other.target
                and self.data == other.data)

    def __hash__(self):
        return hash((id(self.backend), self.source.payload, self.target.payload, self.data))

    def __repr__(self):
        return f"Morphism({self.source.name} -> {self.target.name})"


@dataclass(frozen=True)
class SubobjectEntry:
    """A concrete subobject with its quotient: a short exact sequence.

    embed is monic, proj is epi, proj o embed = 0 and lengths add up; the
    ``witness`` field carries the backend-level presentation (a subspace,
    or an element set) used for intersections.
    """

    sub: CatObject
    embed: Morphism
    quotient: CatObject
    proj: Morphism
    witness: Any = field(compare=False, default=None)


@dataclass
class Universe:
    """All iso classes of objects with length <= bound, closed under
    subquotients, with the indecomposable ones flagged."""

    backend: "Backend"
    bound: int
    objects: tuple[CatObject, ...]
    indecomposables: tuple[CatObject, ...]

    def __post_init__(self):
        self._by_key = {obj.iso_key: obj for obj in self.objects}
        if len(self._by_key) != len(self.objects):
            raise ValueError("universe contains isomorphic duplicates")

    @property
    def zero(self) -> CatObject:
        return self.backend.zero_object()

    def nonzero_objects(self) -> list[CatObject]:
        return [m for m in self.objects if not m.is_zero]

    def find(self, obj: CatObject) -> CatObject | None:
        """The universe member isomorphic to obj, if any."""
        return self._by_key.get(obj.iso_key)

    def contains_iso(self, obj: CatObject) -> bool:
        return obj.iso_key in self._by_key


class Backend:
    """Abstract category backend.  Immutable after construction; all
    operations are pure and memo tables are populated idempotently."""

    p: int
    caps: Caps

    # -- identity ---------------------------------------------------------
    def fingerprint(self) -> str:
        raise NotImplementedError

    # -- objects ----------------------------------------------------------
    def zero_object(self) -> CatObject:
        raise NotImplementedError

    def iso_key(self, M: CatObject) -> tuple:
        raise NotImplementedError

    def describe(self, M: CatObject) -> str:
        raise NotImplementedError

    def serialize(self, M: CatObject) -> dict:
        """Canonical JSON form of the payload (stable field order)."""
        raise NotImplementedError

    # -- morphisms ---------------------------------------------------------
    def identity_morphism(self, M: CatObject) -> Morphism:
        raise NotImplementedError

    def zero_morphism(self, M: CatObject, N: CatObject) -> Morphism:
        raise NotImplementedError

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        """f followed by g (f: A -> B, g: B -> C)."""
        raise NotImplementedError

    def is_zero_morphism(self, f: Morphism) -> bool:
        raise NotImplementedError

    def is_monic(self, f: Morphism) -> bool:
        raise NotImplementedError

    def is_epi(self, f: Morphism) -> bool:
        raise NotImplementedError

    # -- hom sets ----------------------------------------------------------
    def homs(self, M: CatObject, N: CatObject) -> Iterator[Morphism]:
        """Full enumeration of the finite hom set, capped."""
        raise NotImplementedError

    def hom_count(self, M: CatObject, N: CatObject) -> int:
        raise NotImplementedError

    # -- exactness ---------------------------------------------------------
    def kernel(self, f: Morphism) -> SubobjectEntry:
        """Kernel as a subobject entry of the source."""
        raise NotImplementedError

    def image(self, f: Morphism) -> SubobjectEntry:
        """Image as a subobject entry of the target."""
        raise NotImplementedError

    def cokernel(self, f: Morphism) -> CatObject:
        raise NotImplementedError

    def subobjects(self, M: CatObject) -> tuple[SubobjectEntry, ...]:
        """All subobjects up to equality (not iso), with quotients, in a
        deterministic order; includes 0 and M."""
        raise NotImplementedError

    def witness_intersection_is_zero(self, M: CatObject, a: SubobjectEntry, b: SubobjectEntry) -> bool:
        raise NotImplementedError

    # -- sums and isomorphism ------------------------------------------------
    def direct_sum(self, M: CatObject, N: CatObject) -> CatObject:
        raise NotImplementedError

    def direct_sum_with_maps(self, M: CatObject, N: CatObject):
        """(M+N, inj_M, inj_N, proj_M, proj_N)."""
        raise NotImplementedError

    def is_isomorphic(self, M: CatObject, N: CatObject) -> bool:
        self.check_same(M, N)
        return M.iso_key == N.iso_key

    # -- universe ------------------------------------------------------------
    def generate_universe(self, bound: int) -> Universe:
        raise NotImplementedError

    # -- shared helpers --------------------------------------------------------
    def check_same(self, *objs: CatObject):
        for o in objs:
            if o.backend is not self:
                raise BackendMismatch("object belongs to a different backend")

    def check_same_morphism(self, *fs: Morphism):
        for f in fs:
            if f.backend is not self:
                raise BackendMismatch("morphism belongs to a different backend")


# Module-level dispatchers: the higher layers use these so they stay
# backend-agnostic.

def hom_basis(M: CatObject, N: CatObject) -> list[Morphism]:
    """Basis of Hom(M, N) as an F_p space (vector-space backends only)."""
    M.backend.check_same(M, N)
    return M.backend.hom_basis(M, N)


def homs(M: CatObject, N: CatObject) -> Iterator[Morphism]:
    M.backend.check_same(M, N)
    return M.backend.homs(M, N)


def kernel(f: Morphism) -> SubobjectEntry:
    return f.backend.kernel(f)


def image(f: Morphism) -> SubobjectEntry:
    return f.backend.image(f)


def cokernel(f: Morphism) -> CatObject:
    return f.backend.cokernel(f)


def subobjects(M: CatObject) -> tuple[SubobjectEntry, ...]:
    return M.backend.subobjects(M)


def direct_sum(M: CatObject, N: CatObject) -> CatObject:
    M.backend.check_same(M, N)
    return M.backend.direct_sum(M, N)


def is_isomorphic(M: CatObject, N: CatObject) -> bool:
    return M.backend.is_isomorphic(M, N)


def compose(f: Morphism, g: Morphism) -> Morphism:
    return f.backend.compose(f, g)


def proper_nonzero_entries(M: CatObject) -> list[SubobjectEntry]:
    return [e for e in subobjects(M) if 0 < e.sub.length < M.length]


def nonzero_entries(M: CatObject) -> list[SubobjectEntry]:
    return [e for e in subobjects(M) if e.sub.length > 0]


def sort_objects(objs: Iterable[CatObject]) -> list[CatObject]:
    return sorted(objs, key=lambda o: o.sort_key())
