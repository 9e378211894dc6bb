"""Closure operators and membership in generated nullity/Serre classes.

The generated nullity class of a collection S is the extension closure of
the quotient closure of S.  Membership of B is decided recursively: B is in
the extension closure of Q iff B is zero, B is isomorphic to a member of Q,
or some nonzero subobject U of B is isomorphic to a member of Q with B/U
again in the closure.  The recursion always descends to strictly smaller
length, and decisions are memoized per (iso class, generator fingerprint).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .category import CatObject, subobjects, sort_objects
from .errors import ZeroObjectError


@dataclass(frozen=True)
class IsoSet:
    """A set of nonzero objects up to isomorphism, canonically ordered.

    The zero object is never listed: it belongs to every closure by
    convention and the base cases handle it.
    """

    members: tuple[CatObject, ...]

    @classmethod
    def of(cls, objects) -> "IsoSet":
        seen = {}
        for o in objects:
            if o.length > 0:
                seen.setdefault(o.iso_key, o)
        return cls(tuple(sort_objects(seen.values())))

    @property
    def fingerprint(self) -> tuple:
        return tuple(o.iso_key for o in self.members)

    def contains(self, obj: CatObject) -> bool:
        key = obj.iso_key
        return any(m.iso_key == key for m in self.members)

    def keys(self) -> frozenset:
        return frozenset(o.iso_key for o in self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


@dataclass
class MembershipMemo:
    """Memo tables for the closure recursion.

    Entries are immutable once written and independent of insertion order,
    so concurrent duplicate computation is benign.
    """

    ext: dict = field(default_factory=dict)
    quot: dict = field(default_factory=dict)
    sub: dict = field(default_factory=dict)

    def stats(self) -> dict:
        return {"ext": len(self.ext), "quot": len(self.quot), "sub": len(self.sub)}


def quot_closure(S: IsoSet, memo: MembershipMemo | None = None) -> IsoSet:
    """All quotients of members of S, up to iso (one step suffices: a
    quotient of a quotient is a quotient)."""
    if memo is not None and S.fingerprint in memo.quot:
        return memo.quot[S.fingerprint]
    out = list(S.members)
    for M in S.members:
        for e in subobjects(M):
            if e.quotient.length > 0:
                out.append(e.quotient)
    result = IsoSet.of(out)
    if memo is not None:
        memo.quot[S.fingerprint] = result
    return result


def sub_closure(S: IsoSet, memo: MembershipMemo | None = None) -> IsoSet:
    """All subobjects of members of S, up to iso."""
    if memo is not None and S.fingerprint in memo.sub:
        return memo.sub[S.fingerprint]
    out = list(S.members)
    for M in S.members:
        for e in subobjects(M):
            if e.sub.length > 0:
                out.append(e.sub)
    result = IsoSet.of(out)
    if memo is not None:
        memo.sub[S.fingerprint] = result
    return result


def in_ext_closure(B: CatObject, Q: IsoSet, memo: MembershipMemo | None = None) -> bool:
    """Membership of B in the extension closure of Q."""
    if B.length == 0:
        return True
    if Q.contains(B):
        return True
    if memo is None:
        memo = MembershipMemo()
    key = (B.iso_key, Q.fingerprint)
    cached = memo.ext.get(key)
    if cached is not None:
        return cached
    result = False
    for e in subobjects(B):
        if e.sub.length == 0:
            continue
        if Q.contains(e.sub) and in_ext_closure(e.quotient, Q, memo):
            result = True
            break
    memo.ext[key] = result
    return result


def in_nullity_closure(B: CatObject, S: IsoSet, memo: MembershipMemo | None = None) -> bool:
    """Membership of B in the smallest nullity class containing S."""
    return in_ext_closure(B, quot_closure(S, memo), memo)


def in_serre_closure(B: CatObject, S: IsoSet, memo: MembershipMemo | None = None) -> bool:
    """Membership of B in the Serre subcategory generated by S."""
    return in_ext_closure(B, quot_closure(sub_closure(S, memo), memo), memo)


def nullity_equivalent(A: CatObject, B: CatObject, memo: MembershipMemo | None = None) -> bool:
    """A and B generate the same nullity class.

    Decided by mutual membership in the generated classes: minimality of
    the generated class makes that equivalent to class equality.
    """
    if A.is_zero or B.is_zero:
        raise ZeroObjectError("nullity equivalence is undefined on the zero object")
    return (in_nullity_closure(A, IsoSet.of([B]), memo)
            and in_nullity_closure(B, IsoSet.of([A]), memo))


def nontrivial_quotients(M: CatObject) -> IsoSet:
    """Quotients M/N over nonzero subobjects N, excluding 0."""
    out = []
    for e in subobjects(M):
        if e.sub.length > 0 and e.quotient.length > 0:
            out.append(e.quotient)
    return IsoSet.of(out)
