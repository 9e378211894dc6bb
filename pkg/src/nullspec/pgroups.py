"""Backend B: finite abelian p-groups by brute-force element enumeration.

A group is carried by its type, a descending tuple of exponents
(k_1, ..., k_r) meaning the direct sum of Z/p^{k_i}; elements are residue
tuples.  Subgroups are enumerated as literal element sets and re-expressed
in canonical type, which keeps everything auditable at desk scale.
"""

from __future__ import annotations

from itertools import product

from .category import Backend, Caps, CatObject, Morphism, SubobjectEntry, Universe, sort_objects
from .errors import ConfigError, EnumerationCapExceeded
from .linalg import is_prime


class AbGroupBackend(Backend):
    """Category of finite abelian p-groups (one prime per backend)."""

    def __init__(self, p: int, caps: Caps = Caps()):
        if not is_prime(p):
            raise ConfigError(f"{p} is not prime")
        self.p = p
        self.caps = caps
        self._elements_cache: dict[tuple, list] = {}
        self._sub_cache: dict[tuple, tuple] = {}

    def fingerprint(self) -> str:
        return f"abgrp:p={self.p}"

    # -- objects -----------------------------------------------------------

    def group(self, exponents) -> CatObject:
        gtype = tuple(sorted((int(k) for k in exponents), reverse=True))
        if any(k < 1 for k in gtype):
            raise ConfigError("exponents must be >= 1")
        length = sum(gtype)
        if self.p ** length > self.caps.group_order:
            raise EnumerationCapExceeded(
                f"group order {self.p}^{length} exceeds cap {self.caps.group_order}")
        return CatObject(self, gtype, length)

    def zero_object(self) -> CatObject:
        return CatObject(self, (), 0)

    def iso_key(self, M: CatObject) -> tuple:
        return ("ab", self.p, M.payload)

    def describe(self, M: CatObject) -> str:
        if not M.payload:
            return "0"
        return " x ".join(f"Z/{self.p ** k}" for k in M.payload)

    def serialize(self, M: CatObject) -> dict:
        return {"backend": "abgrp", "p": self.p, "type": list(M.payload)}

    # -- element arithmetic ---------------------------------------------------

    def moduli(self, gtype: tuple) -> tuple:
        return tuple(self.p ** k for k in gtype)

    def elements(self, M: CatObject) -> list[tuple]:
        gtype = M.payload
        if gtype not in self._elements_cache:
            mods = self.moduli(gtype)
            self._elements_cache[gtype] = sorted(product(*(range(m) for m in mods)))
        return self._elements_cache[gtype]

    def add(self, gtype: tuple, x: tuple, y: tuple) -> tuple:
        mods = self.moduli(gtype)
        return tuple((a + b) % m for a, b, m in zip(x, y, mods))

    def smul(self, gtype: tuple, c: int, x: tuple) -> tuple:
        mods = self.moduli(gtype)
        return tuple((c * a) % m for a, m in zip(x, mods))

    def zero_element(self, gtype: tuple) -> tuple:
        return (0,) * len(gtype)

    def generators(self, gtype: tuple) -> list[tuple]:
        r = len(gtype)
        return [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]

    def order_exp(self, gtype: tuple, x: tuple) -> int:
        """Smallest e with p^e * x = 0."""
        e = 0
        while any(x):
            x = self.smul(gtype, self.p, x)
            e += 1
        return e

    def span(self, gtype: tuple, base: frozenset, g: tuple) -> frozenset:
        """Subgroup generated by a subgroup `base` and one extra element.

        In an abelian group this is the union of the cosets base + i*g.
        """
        out = set(base)
        cur = g
        while any(cur):
            out.update(self.add(gtype, h, cur) for h in base)
            cur = self.add(gtype, cur, g)
        return frozenset(out)

    # -- morphisms ---------------------------------------------------------------
    # Morphism data: tuple of images of the source's canonical generators.

    def _make_morphism(self, M: CatObject, N: CatObject, images: tuple) -> Morphism:
        return Morphism(self, M, N, tuple(images))

    def apply(self, f: Morphism, x: tuple) -> tuple:
        tt = f.target.payload
        out = self.zero_element(tt)
        for c, img in zip(x, f.data):
            if c:
                out = self.add(tt, out, self.smul(tt, c, img))
        return out

    def identity_morphism(self, M: CatObject) -> Morphism:
        return self._make_morphism(M, M, tuple(self.generators(M.payload)))

    def zero_morphism(self, M: CatObject, N: CatObject) -> Morphism:
        z = self.zero_element(N.payload)
        return self._make_morphism(M, N, tuple(z for _ in M.payload))

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        if f.target != g.source:
            raise ConfigError("morphisms are not composable")
        return self._make_morphism(f.source, g.target,
                                   tuple(self.apply(g, img) for img in f.data))

    def is_zero_morphism(self, f: Morphism) -> bool:
        z = self.zero_element(f.target.payload)
        return all(img == z for img in f.data)

    def image_set(self, f: Morphism) -> frozenset:
        tt = f.target.payload
        out = frozenset([self.zero_element(tt)])
        for img in f.data:
            out = self.span(tt, out, img)
        return out

    def kernel_set(self, f: Morphism) -> frozenset:
        z = self.zero_element(f.target.payload)
        return frozenset(x for x in self.elements(f.source) if self.apply(f, x) == z)

    def is_monic(self, f: Morphism) -> bool:
        return len(self.kernel_set(f)) == 1

    def is_epi(self, f: Morphism) -> bool:
        return len(self.image_set(f)) == self.p ** f.target.length

    # -- hom sets ------------------------------------------------------------------

    def _images_of_order_dividing(self, N: CatObject, k: int) -> list[tuple]:
        pk = self.p ** k
        return [x for x in self.elements(N) if self.smul(N.payload, pk, x) == self.zero_element(N.payload)]

    def hom_count(self, M: CatObject, N: CatObject) -> int:
        count = 1
        for k in M.payload:
            count *= self.p ** sum(min(k, l) for l in N.payload)
        return count

    def homs(self, M: CatObject, N: CatObject):
        count = self.hom_count(M, N)
        if count > self.caps.hom_scan:
            raise EnumerationCapExceeded(
                f"hom scan Hom({M.name}, {N.name}) has {count} elements, cap {self.caps.hom_scan}")
        choices = [self._images_of_order_dividing(N, k) for k in M.payload]
        for images in product(*choices):
            yield self._make_morphism(M, N, tuple(images))

    def hom_generators(self, M: CatObject, N: CatObject) -> list[Morphism]:
        """Generators of the hom group: for each source generator and each
        target generator, the map e_i -> p^max(l_j - k_i, 0) * f_j."""
        out = []
        z = self.zero_element(N.payload)
        for i, k in enumerate(M.payload):
            for j, l in enumerate(N.payload):
                img = list(z)
                img[j] = (self.p ** max(l - k, 0)) % (self.p ** l)
                images = [z] * len(M.payload)
                images[i] = tuple(img)
                out.append(self._make_morphism(M, N, tuple(images)))
        return out

    # -- subgroups and quotients -------------------------------------------------------

    def _type_of_set(self, gtype: tuple, elems: frozenset) -> tuple:
        """Canonical type of a subgroup from its order statistics."""
        if len(elems) == 1:
            return ()
        max_e = max(gtype) if gtype else 0
        logs = [0]
        for j in range(1, max_e + 1):
            pj = self.p ** j
            cnt = sum(1 for x in elems if not any(self.smul(gtype, pj, x)))
            e = 0
            while self.p ** e < cnt:
                e += 1
            if self.p ** e != cnt:
                raise AssertionError("subgroup order statistics are not p-powers")
            logs.append(e)
        parts_ge = [logs[j] - logs[j - 1] for j in range(1, max_e + 1)]
        out = []
        for j in range(max_e, 0, -1):
            above = parts_ge[j] if j < max_e else 0
            out.extend([j] * (parts_ge[j - 1] - above))
        return tuple(sorted(out, reverse=True))

    def _decompose_set(self, gtype: tuple, elems: frozenset) -> tuple[tuple, list[tuple]]:
        """(canonical type, generators realizing it) for a subgroup given as
        an element set.  Generators are found by depth-first search with
        backtracking; the span-size test certifies directness."""
        sub_type = self._type_of_set(gtype, elems)
        ordered = sorted(elems)
        by_exp: dict[int, list[tuple]] = {}
        for x in ordered:
            by_exp.setdefault(self.order_exp(gtype, x), []).append(x)

        def dfs(idx: int, span: frozenset, chosen: list):
            if idx == len(sub_type):
                return chosen
            k = sub_type[idx]
            for x in by_exp.get(k, ()):
                new = self.span(gtype, span, x)
                if len(new) == len(span) * self.p ** k:
                    res = dfs(idx + 1, new, chosen + [x])
                    if res is not None:
                        return res
            return None

        gens = dfs(0, frozenset([self.zero_element(gtype)]), [])
        if gens is None:
            raise AssertionError("failed to split a subgroup into cyclic summands")
        return sub_type, gens

    def entry_from_subgroup(self, M: CatObject, elems: frozenset) -> SubobjectEntry:
        gtype = M.payload
        sub_type, gens = self._decompose_set(gtype, elems)
        sub = self.group(sub_type) if sub_type else self.zero_object()
        embed = self._make_morphism(sub, M, tuple(gens))

        # Quotient: coset representatives, then a canonical presentation.
        rep_of: dict[tuple, tuple] = {}
        for x in self.elements(M):
            if x in rep_of:
                continue
            coset = sorted(self.add(gtype, x, h) for h in elems)
            rep = coset[0]
            for y in coset:
                rep_of[y] = rep

        def qadd(a: tuple, b: tuple) -> tuple:
            return rep_of[self.add(gtype, a, b)]

        reps = frozenset(rep_of.values())
        zero_rep = rep_of[self.zero_element(gtype)]
        quot_type, quot_gens = self._decompose_reps(gtype, reps, qadd, zero_rep)
        quot = self.group(quot_type) if quot_type else self.zero_object()

        # Coordinates of every coset with respect to the chosen generators.
        coords: dict[tuple, tuple] = {}
        for cs in product(*(range(self.p ** k) for k in quot_type)):
            el = rep_of[self.zero_element(gtype)]
            for c, g in zip(cs, quot_gens):
                for _ in range(c):
                    el = qadd(el, g)
            coords.setdefault(el, cs)
        if len(coords) != len(reps):
            raise AssertionError("quotient coordinates are not a bijection")

        proj = self._make_morphism(M, quot, tuple(
            coords[rep_of[g]] for g in self.generators(gtype)))
        return SubobjectEntry(sub, embed, quot, proj, witness=elems)

    def _decompose_reps(self, gtype: tuple, reps: frozenset, qadd,
                        zero_rep: tuple) -> tuple[tuple, list[tuple]]:
        """Decompose the coset group (elements `reps`, addition `qadd`)."""
        n = len(reps)
        if n == 1:
            return (), []

        def q_smul(c: int, x: tuple) -> tuple:
            out = zero_rep
            for _ in range(c):
                out = qadd(out, x)
            return out

        def order_exp(x: tuple) -> int:
            e = 0
            while x != zero_rep:
                x = q_smul(self.p, x)
                e += 1
            return e

        max_e = max(gtype)
        logs = [0]
        for j in range(1, max_e + 1):
            cnt = sum(1 for x in reps if order_exp(x) <= j)
            e = 0
            while self.p ** e < cnt:
                e += 1
            if self.p ** e != cnt:
                raise AssertionError("coset group order statistics are not p-powers")
            logs.append(e)
        parts_ge = [logs[j] - logs[j - 1] for j in range(1, max_e + 1)]
        quot_type = []
        for j in range(max_e, 0, -1):
            above = parts_ge[j] if j < max_e else 0
            quot_type.extend([j] * (parts_ge[j - 1] - above))
        quot_type = tuple(sorted(quot_type, reverse=True))

        by_exp: dict[int, list[tuple]] = {}
        for x in sorted(reps):
            by_exp.setdefault(order_exp(x), []).append(x)

        def qspan(base: frozenset, g: tuple) -> frozenset:
            out = set(base)
            cur = g
            while cur != zero_rep:
                out.update(qadd(h, cur) for h in base)
                cur = qadd(cur, g)
            return frozenset(out)

        def dfs(idx: int, span: frozenset, chosen: list):
            if idx == len(quot_type):
                return chosen
            k = quot_type[idx]
            for x in by_exp.get(k, ()):
                new = qspan(span, x)
                if len(new) == len(span) * self.p ** k:
                    res = dfs(idx + 1, new, chosen + [x])
                    if res is not None:
                        return res
            return None

        gens = dfs(0, frozenset([zero_rep]), [])
        if gens is None:
            raise AssertionError("failed to split a quotient into cyclic summands")
        return quot_type, gens

    def subgroup_sets(self, M: CatObject) -> list[frozenset]:
        """All subgroups of M as element sets, by closing generator subsets."""
        zero = self.zero_element(M.payload)
        trivial = frozenset([zero])
        found = {trivial}
        work = [trivial]
        elems = self.elements(M)
        while work:
            h = work.pop()
            for g in elems:
                if g in h:
                    continue
                new = self.span(M.payload, h, g)
                if new not in found:
                    found.add(new)
                    work.append(new)
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def subobjects(self, M: CatObject) -> tuple[SubobjectEntry, ...]:
        if M.payload not in self._sub_cache:
            entries = [self.entry_from_subgroup(M, s) for s in self.subgroup_sets(M)]
            entries.sort(key=lambda e: (e.sub.length, sorted(e.witness)))
            self._sub_cache[M.payload] = tuple(entries)
        return self._sub_cache[M.payload]

    def witness_intersection_is_zero(self, M, a: SubobjectEntry, b: SubobjectEntry) -> bool:
        return len(a.witness & b.witness) == 1

    def kernel(self, f: Morphism) -> SubobjectEntry:
        return self.entry_from_subgroup(f.source, self.kernel_set(f))

    def image(self, f: Morphism) -> SubobjectEntry:
        return self.entry_from_subgroup(f.target, self.image_set(f))

    def cokernel(self, f: Morphism) -> CatObject:
        return self.image(f).quotient

    # -- sums ---------------------------------------------------------------------

    def direct_sum_with_maps(self, M: CatObject, N: CatObject):
        self.check_same(M, N)
        merged = sorted(
            [(k, 0, i) for i, k in enumerate(M.payload)] +
            [(k, 1, i) for i, k in enumerate(N.payload)],
            key=lambda t: (-t[0], t[1], t[2]))
        S = self.group([k for k, _, _ in merged]) if merged else self.zero_object()
        r = len(merged)
        pos = {(side, i): slot for slot, (_, side, i) in enumerate(merged)}

        def unit(slot):
            return tuple(1 if j == slot else 0 for j in range(r))

        inj_m = self._make_morphism(M, S, tuple(unit(pos[(0, i)]) for i in range(len(M.payload))))
        inj_n = self._make_morphism(N, S, tuple(unit(pos[(1, i)]) for i in range(len(N.payload))))
        zm = self.zero_element(M.payload)
        zn = self.zero_element(N.payload)
        proj_m_images = []
        proj_n_images = []
        for k, side, i in merged:
            gm = list(zm)
            gn = list(zn)
            if side == 0:
                gm[i] = 1
            else:
                gn[i] = 1
            proj_m_images.append(tuple(gm))
            proj_n_images.append(tuple(gn))
        proj_m = self._make_morphism(S, M, tuple(proj_m_images))
        proj_n = self._make_morphism(S, N, tuple(proj_n_images))
        return S, inj_m, inj_n, proj_m, proj_n

    def direct_sum(self, M: CatObject, N: CatObject) -> CatObject:
        return self.direct_sum_with_maps(M, N)[0]

    # -- universe ------------------------------------------------------------------

    def generate_universe(self, bound: int) -> Universe:
        if bound < 0:
            raise ConfigError("bound must be >= 0")
        if self.p ** bound > self.caps.group_order:
            raise EnumerationCapExceeded(
                f"universe bound {bound} gives order {self.p}^{bound} over cap {self.caps.group_order}")
        objects = [self.zero_object()]
        for total in range(1, bound + 1):
            for part in _partitions(total):
                objects.append(self.group(part))
        objects = sort_objects(objects)
        indec = tuple(o for o in objects if len(o.payload) == 1)
        return Universe(self, bound, tuple(objects), indec)


def _partitions(n: int, max_part: int | None = None):
    """Partitions of n as descending tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest
