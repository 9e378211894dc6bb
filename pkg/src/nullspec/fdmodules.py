"""Backend A: modules over a finite-dimensional F_p-algebra.

The algebra is given by structure constants on a fixed basis; builders are
provided for path algebras of acyclic quivers and for the three-dimensional
commutative local algebra k[x,y] with x^2 = xy = yx = y^2 = 0.

Modules are carried as one action matrix per algebra basis element, acting
on row vectors from the right, so action(u*v) = action(u) * action(v).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from itertools import product

from . import linalg
from .category import Backend, Caps, CatObject, Morphism, SubobjectEntry, Universe, sort_objects
from .errors import ConfigError, EnumerationCapExceeded
from .linalg import Matrix, Subspace, is_prime


@dataclass(frozen=True)
class QuiverPreset:
    """An acyclic quiver: vertices 1..n and a list of (source, target) arrows."""

    name: str
    vertices: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for s, t in self.arrows:
            if not (1 <= s <= self.vertices and 1 <= t <= self.vertices):
                raise ConfigError(f"arrow ({s},{t}) out of vertex range")
        if self._has_cycle():
            raise ConfigError(f"quiver {self.name} has a cycle")

    def _has_cycle(self) -> bool:
        out = {v: [] for v in range(1, self.vertices + 1)}
        indeg = {v: 0 for v in out}
        for s, t in self.arrows:
            out[s].append(t)
            indeg[t] += 1
        queue = [v for v in out if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen != self.vertices

    @property
    def is_linear(self) -> bool:
        """True for the A_n orientation n -> n-1 -> ... -> 1."""
        expected = tuple((v + 1, v) for v in range(1, self.vertices))
        return self.arrows == expected

    @classmethod
    def linear(cls, n: int) -> "QuiverPreset":
        if n < 1:
            raise ConfigError("need at least one vertex")
        return cls(f"A{n}", n, tuple((v + 1, v) for v in range(1, n)))

    @classmethod
    def from_text(cls, text: str, name: str = "custom") -> "QuiverPreset":
        """Parse a small text config: first line = vertex count, then one
        's t' arrow per line.  Blank lines and '#' comments are skipped."""
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ConfigError("empty quiver config")
        vertices = int(lines[0])
        arrows = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ConfigError(f"bad arrow line: {ln!r}")
            arrows.append((int(parts[0]), int(parts[1])))
        return cls(name, vertices, tuple(arrows))


@dataclass(frozen=True)
class _Path:
    source: int
    target: int
    arrows: tuple[int, ...]  # indices into preset.arrows

    @property
    def length(self) -> int:
        return len(self.arrows)


class Algebra:
    """A finite-dimensional algebra over F_p by structure constants.

    table[i][j] is the coefficient vector of basis_i * basis_j; the unit is a
    coefficient vector.  Associativity and the unit law are checked on all
    basis pairs/triples at construction time.
    """

    def __init__(self, p: int, table: tuple, unit: tuple, labels: tuple[str, ...],
                 label: str, kind: tuple, extra: dict | None = None):
        if not is_prime(p):
            raise ConfigError(f"{p} is not prime")
        self.p = p
        self.dim = len(table)
        self.table = table
        self.unit = unit
        self.labels = labels
        self.label = label
        self.kind = kind
        self.extra = extra or {}
        self._validate()

    def multiply(self, u: tuple, v: tuple) -> tuple:
        p = self.p
        out = [0] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                coeffs = self.table[i][j]
                ab = a * b
                for k, c in enumerate(coeffs):
                    if c:
                        out[k] = (out[k] + ab * c) % p
        return tuple(out)

    def basis_vector(self, i: int) -> tuple:
        return tuple(1 if j == i else 0 for j in range(self.dim))

    def _validate(self):
        d = self.dim
        for i in range(d):
            ei = self.basis_vector(i)
            if self.multiply(self.unit, ei) != ei or self.multiply(ei, self.unit) != ei:
                raise ConfigError("unit law fails")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    lhs = self.multiply(self.table[i][j], self.basis_vector(k))
                    rhs = self.multiply(self.basis_vector(i), self.table[j][k])
                    if lhs != rhs:
                        raise ConfigError(f"associativity fails on basis triple ({i},{j},{k})")


def path_algebra(preset: QuiverPreset, p: int) -> Algebra:
    """Path algebra of an acyclic quiver: basis = paths (vertex idempotents
    included), product = concatenation-or-zero, unit = sum of idempotents."""
    paths = [_Path(v, v, ()) for v in range(1, preset.vertices + 1)]
    frontier = list(paths)
    while frontier:
        new = []
        for pth in frontier:
            for ai, (s, t) in enumerate(preset.arrows):
                if s == pth.target:
                    new.append(_Path(pth.source, t, pth.arrows + (ai,)))
        paths.extend(new)
        frontier = new
    paths.sort(key=lambda q: (q.length, q.source, q.target, q.arrows))
    index = {q: i for i, q in enumerate(paths)}
    dim = len(paths)

    def concat(a: _Path, b: _Path):
        if a.target != b.source:
            return None
        return _Path(a.source, b.target, a.arrows + b.arrows)

    table = tuple(
        tuple(
            tuple(1 if (concat(a, b) is not None and k == index[concat(a, b)]) else 0
                  for k in range(dim))
            for b in paths)
        for a in paths)
    unit = tuple(1 if q.length == 0 else 0 for q in paths)

    def path_label(q: _Path) -> str:
        if q.length == 0:
            return f"e{q.source}"
        return f"p{q.source}->{q.target}"

    labels = tuple(path_label(q) for q in paths)
    extra = {
        "preset": preset,
        "paths": paths,
        "idempotent_index": {v: index[_Path(v, v, ())] for v in range(1, preset.vertices + 1)},
        "path_index": {(q.source, q.target): index[q] for q in paths},
        "arrow_index": {ai: index[_Path(s, t, (ai,))] for ai, (s, t) in enumerate(preset.arrows)},
    }
    return Algebra(p, table, unit, labels, f"path:{preset.name}/F{p}", ("path", preset.name), extra)


def local_algebra_443(p: int) -> Algebra:
    """The commutative local algebra with basis {1, x, y} and all products
    of x, y equal to zero."""
    dim = 3

    def prod(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return None

    table = tuple(
        tuple(
            tuple(1 if prod(i, j) == k else 0 for k in range(dim))
            for j in range(dim))
        for i in range(dim))
    unit = (1, 0, 0)
    return Algebra(p, table, unit, ("1", "x", "y"), f"local443/F{p}", ("local443",),
                   {"generators": (1, 2)})


@dataclass(frozen=True)
class FdModule:
    """Module payload: one action matrix per algebra basis element."""

    dim: int
    actions: tuple[Matrix, ...]


class FdBackend(Backend):
    """Category of finite-dimensional right modules over a fixed algebra."""

    def __init__(self, algebra: Algebra, caps: Caps = Caps()):
        self.algebra = algebra
        self.p = algebra.p
        self.caps = caps
        self._hom_basis_cache: dict = {}
        self._sub_cache: dict = {}
        self._key_cache: dict = {}
        self._gl_cache: dict[int, list] = {}
        self._names: dict = {}
        if algebra.kind[0] == "local443":
            self._names[self.regular_module().iso_key] = "R"
            self._names[self.simple_module().iso_key] = "S"

    # -- construction -------------------------------------------------------

    def fingerprint(self) -> str:
        return f"fdmod:{self.algebra.label}"

    def make_module(self, actions: tuple[Matrix, ...], check: bool = True) -> CatObject:
        dim = actions[0].rows if actions else 0
        payload = FdModule(dim, tuple(actions))
        if check:
            self._check_module(payload)
        return CatObject(self, payload, dim)

    def _check_module(self, mod: FdModule):
        alg = self.algebra
        n = mod.dim
        for a in mod.actions:
            if a.rows != n or a.cols != n or a.p != self.p:
                raise ConfigError("action matrix shape mismatch")
        unit_action = _combine(mod.actions, alg.unit, n, self.p)
        if unit_action != Matrix.identity(n, self.p):
            raise ConfigError("unit does not act as the identity")
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = mod.actions[i].mul(mod.actions[j])
                rhs = _combine(mod.actions, alg.table[i][j], n, self.p)
                if lhs != rhs:
                    raise ConfigError(f"action incompatible with structure constants at ({i},{j})")

    def zero_object(self) -> CatObject:
        acts = tuple(Matrix.zeros(0, 0, self.p) for _ in range(self.algebra.dim))
        return CatObject(self, FdModule(0, acts), 0)

    def rep_to_module(self, preset: QuiverPreset, dims: tuple[int, ...],
                      arrow_mats: dict[int, Matrix] | list[Matrix], check: bool = False) -> CatObject:
        """Module of the path algebra from a quiver representation: per-vertex
        dimensions plus one d_source x d_target matrix per arrow."""
        alg = self.algebra
        if alg.kind[0] != "path" or alg.extra["preset"] != preset:
            raise ConfigError("algebra was not built from this quiver preset")
        if len(dims) != preset.vertices:
            raise ConfigError("dimension vector length mismatch")
        if isinstance(arrow_mats, (list, tuple)):
            arrow_mats = dict(enumerate(arrow_mats))
        total = sum(dims)
        offset = [0] * (preset.vertices + 1)
        for v in range(1, preset.vertices + 1):
            offset[v] = offset[v - 1] + dims[v - 1]

        def block(mat: Matrix, s: int, t: int) -> Matrix:
            rows = [[0] * total for _ in range(total)]
            for i in range(dims[s - 1]):
                for j in range(dims[t - 1]):
                    rows[offset[s - 1] + i][offset[t - 1] + j] = mat[i, j]
            return Matrix.from_rows(rows, self.p, cols=total)

        arrow_actions = {}
        for ai, (s, t) in enumerate(preset.arrows):
            mat = arrow_mats.get(ai, Matrix.zeros(dims[s - 1], dims[t - 1], self.p))
            if mat.rows != dims[s - 1] or mat.cols != dims[t - 1]:
                raise ConfigError(f"arrow {ai} matrix shape mismatch")
            arrow_actions[ai] = block(mat, s, t)

        actions = []
        for q in alg.extra["paths"]:
            if q.length == 0:
                rows = [[0] * total for _ in range(total)]
                for i in range(offset[q.source - 1], offset[q.source]):
                    rows[i][i] = 1
                actions.append(Matrix.from_rows(rows, self.p, cols=total))
            else:
                m = arrow_actions[q.arrows[0]]
                for ai in q.arrows[1:]:
                    m = m.mul(arrow_actions[ai])
                actions.append(m)
        return self.make_module(tuple(actions), check=check)

    def regular_module(self) -> CatObject:
        """The algebra acting on itself by right multiplication."""
        alg = self.algebra
        acts = []
        for b in range(alg.dim):
            rows = [list(alg.multiply(alg.basis_vector(i), alg.basis_vector(b)))
                    for i in range(alg.dim)]
            acts.append(Matrix.from_rows(rows, self.p, cols=alg.dim))
        return self.make_module(tuple(acts))

    def simple_module(self) -> CatObject:
        """For the local algebra: the unique simple (generators act by 0)."""
        if self.algebra.kind[0] != "local443":
            raise ConfigError("simple_module is only predefined for the local algebra")
        acts = [Matrix.identity(1, self.p)] + [Matrix.zeros(1, 1, self.p)] * (self.algebra.dim - 1)
        return self.make_module(tuple(acts))

    # -- morphisms ------------------------------------------------------------

    def identity_morphism(self, M: CatObject) -> Morphism:
        return Morphism(self, M, M, Matrix.identity(M.length, self.p))

    def zero_morphism(self, M: CatObject, N: CatObject) -> Morphism:
        return Morphism(self, M, N, Matrix.zeros(M.length, N.length, self.p))

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        if f.target != g.source:
            raise ConfigError("morphisms are not composable")
        return Morphism(self, f.source, g.target, f.data.mul(g.data))

    def is_zero_morphism(self, f: Morphism) -> bool:
        return f.data.is_zero

    def is_monic(self, f: Morphism) -> bool:
        return linalg.rank(f.data) == f.source.length

    def is_epi(self, f: Morphism) -> bool:
        return linalg.rank(f.data) == f.target.length

    def hom_basis(self, M: CatObject, N: CatObject) -> list[Morphism]:
        key = (M.payload, N.payload)
        if key not in self._hom_basis_cache:
            pairs = [(M.payload.actions[i], N.payload.actions[i]) for i in range(self.algebra.dim)]
            mats = linalg.solve_commutant(pairs, (M.length, N.length), self.p)
            self._hom_basis_cache[key] = tuple(Morphism(self, M, N, m) for m in mats)
        return list(self._hom_basis_cache[key])

    def hom_count(self, M: CatObject, N: CatObject) -> int:
        return self.p ** len(self.hom_basis(M, N))

    def homs(self, M: CatObject, N: CatObject):
        basis = self.hom_basis(M, N)
        count = self.p ** len(basis)
        if count > self.caps.hom_scan:
            raise EnumerationCapExceeded(
                f"hom scan Hom({M.name}, {N.name}) has {count} elements, cap {self.caps.hom_scan}")
        zero = Matrix.zeros(M.length, N.length, self.p)
        for coeffs in product(range(self.p), repeat=len(basis)):
            m = zero
            for c, b in zip(coeffs, basis):
                if c:
                    m = m.add(b.data.scale(c))
            yield Morphism(self, M, N, m)

    # -- exact structure -------------------------------------------------------

    def _entry_from_subspace(self, M: CatObject, space: Subspace) -> SubobjectEntry:
        p = self.p
        n = M.length
        k = space.dim
        basis = space.basis
        pivots = space.pivots()
        pivot_set = set(pivots)
        nonpivots = [j for j in range(n) if j not in pivot_set]
        m = len(nonpivots)

        # Sub coordinates: a vector of the subspace has its basis coefficients
        # at the pivot columns.
        select = Matrix.from_rows(
            [[1 if pivots[j] == i else 0 for j in range(k)] for i in range(n)], p, cols=k)
        sub_actions = tuple(basis.mul(a).mul(select) for a in M.payload.actions)
        sub = CatObject(self, FdModule(k, sub_actions), k)
        embed = Morphism(self, sub, M, basis)

        # Quotient coordinates: reduce mod the subspace, read non-pivot columns.
        proj_rows = []
        for i in range(n):
            e_i = tuple(1 if t == i else 0 for t in range(n))
            red = space.reduce(e_i)
            proj_rows.append([red[j] for j in nonpivots])
        proj_mat = Matrix.from_rows(proj_rows, p, cols=m)
        lift = Matrix.from_rows(
            [[1 if t == nonpivots[i] else 0 for t in range(n)] for i in range(m)], p, cols=n)
        quot_actions = tuple(lift.mul(a).mul(proj_mat) for a in M.payload.actions)
        quot = CatObject(self, FdModule(m, quot_actions), m)
        proj = Morphism(self, M, quot, proj_mat)
        return SubobjectEntry(sub, embed, quot, proj, witness=space)

    def kernel(self, f: Morphism) -> SubobjectEntry:
        space = linalg.row_kernel(f.data) if f.source.length else Subspace.zero(0, self.p)
        return self._entry_from_subspace(f.source, space)

    def image(self, f: Morphism) -> SubobjectEntry:
        space = Subspace.from_matrix(f.data)
        return self._entry_from_subspace(f.target, space)

    def cokernel(self, f: Morphism) -> CatObject:
        return self.image(f).quotient

    def subobjects(self, M: CatObject) -> tuple[SubobjectEntry, ...]:
        if M.payload not in self._sub_cache:
            spaces = linalg.enumerate_subspaces(M.length, self.p, self.caps.subspace_enum)
            entries = []
            for sp in spaces:
                if self._is_stable(M, sp):
                    entries.append(self._entry_from_subspace(M, sp))
            self._sub_cache[M.payload] = tuple(entries)
        return self._sub_cache[M.payload]

    def _is_stable(self, M: CatObject, space: Subspace) -> bool:
        for a in M.payload.actions:
            if a.is_zero:
                continue
            for i in range(space.dim):
                if not space.contains(a.apply_row(space.basis.row(i))):
                    return False
        return True

    def witness_intersection_is_zero(self, M, a: SubobjectEntry, b: SubobjectEntry) -> bool:
        return a.witness.intersect(b.witness).is_zero

    # -- sums and isomorphism ----------------------------------------------------

    def direct_sum_with_maps(self, M: CatObject, N: CatObject):
        self.check_same(M, N)
        p = self.p
        nm, nn = M.length, N.length
        total = nm + nn
        acts = []
        for am, an in zip(M.payload.actions, N.payload.actions):
            rows = [[0] * total for _ in range(total)]
            for i in range(nm):
                for j in range(nm):
                    rows[i][j] = am[i, j]
            for i in range(nn):
                for j in range(nn):
                    rows[nm + i][nm + j] = an[i, j]
            acts.append(Matrix.from_rows(rows, p, cols=total))
        S = CatObject(self, FdModule(total, tuple(acts)), total)
        inj_m = Morphism(self, M, S, Matrix.from_rows(
            [[1 if j == i else 0 for j in range(total)] for i in range(nm)], p, cols=total))
        inj_n = Morphism(self, N, S, Matrix.from_rows(
            [[1 if j == nm + i else 0 for j in range(total)] for i in range(nn)], p, cols=total))
        proj_m = Morphism(self, S, M, Matrix.from_rows(
            [[1 if j == i else 0 for j in range(nm)] for i in range(total)], p, cols=nm))
        proj_n = Morphism(self, S, N, Matrix.from_rows(
            [[1 if i == nm + j else 0 for j in range(nn)] for i in range(total)], p, cols=nn))
        return S, inj_m, inj_n, proj_m, proj_n

    def direct_sum(self, M: CatObject, N: CatObject) -> CatObject:
        return self.direct_sum_with_maps(M, N)[0]

    # -- canonical isomorphism keys ------------------------------------------------

    def iso_key(self, M: CatObject) -> tuple:
        if M.payload not in self._key_cache:
            if self.algebra.kind[0] == "path" and self.algebra.extra["preset"].is_linear:
                key = self._interval_key(M)
            else:
                key = self._gl_canonical_key(M)
            self._key_cache[M.payload] = key
        return self._key_cache[M.payload]

    def _interval_key(self, M: CatObject) -> tuple:
        """Complete invariant for linear A_n quivers: the multiset of interval
        summands, recovered from ranks of the path actions by inclusion-
        exclusion (no decomposition is ever computed)."""
        preset = self.algebra.extra["preset"]
        n = preset.vertices
        path_index = self.algebra.extra["path_index"]

        def r(i: int, j: int) -> int:
            if i < 1 or j > n or i > j:
                return 0
            return linalg.rank(M.payload.actions[path_index[(j, i)]])

        mults = []
        total = 0
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                mu = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)
                if mu < 0:
                    raise AssertionError("negative interval multiplicity; rank data inconsistent")
                if mu:
                    mults.append((i, j, mu))
                    total += mu * (j - i + 1)
        if total != M.length:
            raise AssertionError("interval multiplicities do not account for the dimension")
        return ("An", n, tuple(mults))

    def _gl_elements(self, n: int) -> list:
        if n not in self._gl_cache:
            count = self.p ** (n * n)
            if count > self.caps.universe_candidates:
                raise EnumerationCapExceeded(
                    f"GL({n}, F_{self.p}) scan needs {count} candidates")
            out = []
            for entries in product(range(self.p), repeat=n * n):
                m = Matrix(n, n, entries, self.p)
                if linalg.rank(m) == n:
                    out.append((m, linalg.inverse(m)))
            self._gl_cache[n] = out
        return self._gl_cache[n]

    def _gl_canonical_key(self, M: CatObject) -> tuple:
        """Complete invariant for a generic algebra: the minimum, over all
        basis changes, of the concatenated conjugated action matrices."""
        n = M.length
        if n == 0:
            return ("gl", self.algebra.label, 0, ())
        best = None
        for t, tinv in self._gl_elements(n):
            cand = tuple(x for a in M.payload.actions for x in t.mul(a).mul(tinv).entries)
            if best is None or cand < best:
                best = cand
        return ("gl", self.algebra.label, n, best)

    # -- names and serialization ---------------------------------------------------

    def describe(self, M: CatObject) -> str:
        if M.length == 0:
            return "0"
        key = M.iso_key
        if key[0] == "An":
            parts = []
            for i, j, mu in key[2]:
                token = f"S{i}" if i == j else f"M[{i},{j}]"
                parts.extend([token] * mu)
            return "+".join(parts)
        if key in self._names:
            return self._names[key]
        digest = hashlib.sha1(json.dumps(key).encode()).hexdigest()[:6]
        return f"M{M.length}#{digest}"

    def serialize(self, M: CatObject) -> dict:
        return {
            "backend": "fdmod",
            "algebra": self.algebra.label,
            "p": self.p,
            "dim": M.length,
            "actions": [list(a.entries) for a in M.payload.actions],
        }

    # -- universe -----------------------------------------------------------------

    def generate_universe(self, bound: int, mode: str = "auto") -> Universe:
        if bound < 0:
            raise ConfigError("bound must be >= 0")
        kind = self.algebra.kind[0]
        if kind == "path":
            if mode == "intervals":
                if not self.algebra.extra["preset"].is_linear:
                    raise ConfigError("interval mode requires a linear quiver")
                objs = self._interval_universe_objects(bound)
            else:
                objs = self._quiver_universe_objects(bound)
        elif kind == "local443":
            objs = self._local_universe_objects(bound)
        else:
            raise ConfigError(f"no universe strategy for algebra kind {kind!r}")
        objects = sort_objects(objs.values())
        indec = [m for m in objects if m.length > 0 and self._is_indecomposable_for_universe(m)]
        return Universe(self, bound, tuple(objects), tuple(indec))

    def _quiver_universe_objects(self, bound: int) -> dict:
        preset = self.algebra.extra["preset"]
        p = self.p
        found: dict = {}
        for dims in _dim_vectors(preset.vertices, bound):
            shapes = [(dims[s - 1], dims[t - 1]) for s, t in preset.arrows]
            candidates = 1
            for r_, c_ in shapes:
                candidates *= p ** (r_ * c_)
            if candidates > self.caps.universe_candidates:
                raise EnumerationCapExceeded(
                    f"universe enumeration at dims {dims} needs {candidates} candidates")
            per_arrow = [
                [Matrix(r_, c_, entries, p) for entries in product(range(p), repeat=r_ * c_)]
                for r_, c_ in shapes
            ]
            for combo in product(*per_arrow):
                mod = self.rep_to_module(preset, dims, list(combo))
                found.setdefault(mod.iso_key, mod)
        return found

    def _interval_universe_objects(self, bound: int) -> dict:
        preset = self.algebra.extra["preset"]
        intervals = [(i, j) for i in range(1, preset.vertices + 1)
                     for j in range(i, preset.vertices + 1)]
        lengths = [j - i + 1 for i, j in intervals]
        found: dict = {}

        def rec(idx: int, remaining: int, chosen: list):
            if idx == len(intervals):
                mod = self._sum_of_intervals(chosen)
                found.setdefault(mod.iso_key, mod)
                return
            max_count = remaining // lengths[idx]
            for c in range(max_count + 1):
                rec(idx + 1, remaining - c * lengths[idx], chosen + [intervals[idx]] * c)

        rec(0, bound, [])
        return found

    def interval_module(self, i: int, j: int) -> CatObject:
        preset = self.algebra.extra["preset"]
        dims = tuple(1 if i <= v <= j else 0 for v in range(1, preset.vertices + 1))
        mats = {}
        for ai, (s, t) in enumerate(preset.arrows):
            if i <= t and s <= j:
                mats[ai] = Matrix.identity(1, self.p)
        return self.rep_to_module(preset, dims, mats)

    def _sum_of_intervals(self, intervals: list[tuple[int, int]]) -> CatObject:
        total = self.zero_object()
        for i, j in intervals:
            total = self.direct_sum(total, self.interval_module(i, j))
        return total

    def _local_universe_objects(self, bound: int) -> dict:
        p = self.p
        found: dict = {self.zero_object().iso_key: self.zero_object()}
        for n in range(1, bound + 1):
            count = p ** (n * n)
            if count > self.caps.universe_candidates:
                raise EnumerationCapExceeded(
                    f"generator-matrix enumeration at dim {n} needs {count} candidates")
            zero = Matrix.zeros(n, n, p)
            square_zero = [Matrix(n, n, e, p) for e in product(range(p), repeat=n * n)]
            square_zero = [m for m in square_zero if m.mul(m) == zero]
            ident = Matrix.identity(n, p)
            for x in square_zero:
                for y in square_zero:
                    if x.mul(y) == zero and y.mul(x) == zero:
                        mod = self.make_module((ident, x, y), check=False)
                        found.setdefault(mod.iso_key, mod)
        return found

    def _is_indecomposable_for_universe(self, M: CatObject) -> bool:
        key = M.iso_key
        if key[0] == "An":
            return sum(mu for _, _, mu in key[2]) == 1
        ident = Matrix.identity(M.length, self.p)
        for f in self.homs(M, M):
            m = f.data
            if m.is_zero or m == ident:
                continue
            if m.mul(m) == m:
                return False
        return True


def _combine(actions: tuple[Matrix, ...], coeffs: tuple, n: int, p: int) -> Matrix:
    out = Matrix.zeros(n, n, p)
    for c, a in zip(coeffs, actions):
        if c:
            out = out.add(a.scale(c))
    return out


def _dim_vectors(vertices: int, bound: int):
    """All dimension vectors with total <= bound, in lexicographic order."""
    def rec(prefix, remaining, left):
        if left == 0:
            yield tuple(prefix)
            return
        for d in range(remaining + 1):
            yield from rec(prefix + [d], remaining - d, left - 1)

    yield from rec([], bound, vertices)
