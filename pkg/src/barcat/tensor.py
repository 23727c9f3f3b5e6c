"""Sparse exact tensors and (anti)linear maps over cyclotomic scalars.

A SparseTensor holds an element of V1 (x) ... (x) Vk as a map from
multi-indices to nonzero scalars.  A LinearMap is a sparse matrix between
tensor products of named spaces; an `antilinear` flag makes application
conjugate input coefficients first.  Composition parity is the XOR of
parities.  Basis order is declaration order; pivot choice in elimination
is always lowest-index-first, for deterministic output.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cyclo import CycloScalar, rat


class ParityMismatch(TypeError):
    pass


class NotInvertible(ArithmeticError):
    pass


@dataclass(frozen=True)
class Space:
    name: str
    labels: tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"Space({self.name}, dim={self.dim})"


def space(name: str, labels) -> Space:
    labels = tuple(str(x) for x in labels)
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate basis labels in space {name}")
    return Space(name, labels)


def _dims(spaces) -> tuple[int, ...]:
    return tuple(s.dim for s in spaces)


def _acc(d: dict, k, v: CycloScalar):
    cur = d.get(k)
    if cur is None:
        if not v.is_zero:
            d[k] = v
    else:
        s = cur + v
        if s.is_zero:
            del d[k]
        else:
            d[k] = s


class SparseTensor:
    """Element of a tensor product of spaces; no zero entries stored."""

    __slots__ = ("spaces", "entries")

    def __init__(self, spaces, entries=None, _clean=True):
        self.spaces = tuple(spaces)
        if entries is None:
            entries = {}
        if _clean:
            entries = {k: v for k, v in entries.items() if not v.is_zero}
        self.entries = entries

    @staticmethod
    def basis(spaces, key) -> "SparseTensor":
        return SparseTensor(spaces, {tuple(key): rat(1)}, _clean=False)

    @property
    def arity(self) -> int:
        return len(self.spaces)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        assert self.spaces == other.spaces
        out = dict(self.entries)
        for k, v in other.entries.items():
            _acc(out, k, v)
        return SparseTensor(self.spaces, out, _clean=False)

    def __sub__(self, other: "SparseTensor") -> "SparseTensor":
        assert self.spaces == other.spaces
        out = dict(self.entries)
        for k, v in other.entries.items():
            _acc(out, k, -v)
        return SparseTensor(self.spaces, out, _clean=False)

    def __neg__(self):
        return SparseTensor(self.spaces,
                            {k: -v for k, v in self.entries.items()},
                            _clean=False)

    def scale(self, c: CycloScalar) -> "SparseTensor":
        if c.is_zero:
            return SparseTensor(self.spaces, {})
        return SparseTensor(self.spaces,
                            {k: c * v for k, v in self.entries.items()})

    def tensor(self, other: "SparseTensor") -> "SparseTensor":
        out = {}
        for k1, v1 in self.entries.items():
            for k2, v2 in other.entries.items():
                out[k1 + k2] = v1 * v2
        return SparseTensor(self.spaces + other.spaces, out)

    def conjugate(self) -> "SparseTensor":
        return SparseTensor(self.spaces,
                            {k: v.conjugate() for k, v in self.entries.items()},
                            _clean=False)

    def permuted(self, order) -> "SparseTensor":
        """Reorder slots: output slot i is input slot order[i]."""
        order = tuple(order)
        sp = tuple(self.spaces[j] for j in order)
        out = {tuple(k[j] for j in order): v for k, v in self.entries.items()}
        return SparseTensor(sp, out, _clean=False)

    def with_spaces(self, spaces) -> "SparseTensor":
        spaces = tuple(spaces)
        assert _dims(spaces) == _dims(self.spaces)
        return SparseTensor(spaces, self.entries, _clean=False)

    def __eq__(self, other):
        return (isinstance(other, SparseTensor)
                and _dims(self.spaces) == _dims(other.spaces)
                and self.entries == other.entries)

    def __hash__(self):
        raise TypeError("SparseTensor is unhashable")

    def __repr__(self):
        items = sorted(self.entries.items())[:8]
        body = ", ".join(f"{k}: {v}" for k, v in items)
        more = "" if len(self.entries) <= 8 else f", ... ({len(self.entries)})"
        return f"SparseTensor[{'x'.join(s.name for s in self.spaces)}]{{{body}{more}}}"


class LinearMap:
    """Sparse matrix between tensor products, optionally antilinear.

    Application: y = M . conj(x) when antilinear, else y = M . x.
    """

    __slots__ = ("dom", "cod", "ent", "antilinear", "_cols")

    def __init__(self, dom, cod, ent=None, antilinear=False, _clean=True):
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        if ent is None:
            ent = {}
        if _clean:
            ent = {k: v for k, v in ent.items() if not v.is_zero}
        self.ent = ent
        self.antilinear = antilinear
        self._cols = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def identity(spaces, antilinear=False) -> "LinearMap":
        spaces = tuple(spaces)
        ent = {}

        def rec(prefix, rest):
            if not rest:
                ent[(prefix, prefix)] = rat(1)
                return
            for i in range(rest[0].dim):
                rec(prefix + (i,), rest[1:])

        rec((), spaces)
        return LinearMap(spaces, spaces, ent, antilinear, _clean=False)

    @staticmethod
    def zero(dom, cod, antilinear=False) -> "LinearMap":
        return LinearMap(dom, cod, {}, antilinear, _clean=False)

    @staticmethod
    def from_columns(dom, cod, colfn, antilinear=False) -> "LinearMap":
        """colfn(key) -> SparseTensor over cod, for each domain basis key."""
        dom, cod = tuple(dom), tuple(cod)
        ent = {}
        for key in _iter_keys(dom):
            img = colfn(key)
            if img is None:
                continue
            for r, v in img.entries.items():
                if not v.is_zero:
                    ent[(r, key)] = v
        return LinearMap(dom, cod, ent, antilinear, _clean=False)

    # -- structure ----------------------------------------------------------

    def columns(self):
        if self._cols is None:
            cols: dict = {}
            for (r, c), v in self.ent.items():
                cols.setdefault(c, []).append((r, v))
            self._cols = cols
        return self._cols

    def column(self, key) -> SparseTensor:
        return SparseTensor(self.cod, dict(self.columns().get(tuple(key), ())),
                            _clean=False)

    @property
    def is_zero(self) -> bool:
        return not self.ent

    # -- algebra ------------------------------------------------------------

    def apply(self, t: SparseTensor) -> SparseTensor:
        assert _dims(t.spaces) == _dims(self.dom), \
            f"apply: {_dims(t.spaces)} vs dom {_dims(self.dom)}"
        cols = self.columns()
        out: dict = {}
        conj = self.antilinear
        for c, v in t.entries.items():
            lst = cols.get(c)
            if not lst:
                continue
            vv = v.conjugate() if conj else v
            for r, m in lst:
                _acc(out, r, m * vv)
        return SparseTensor(self.cod, out, _clean=False)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        assert _dims(other.cod) == _dims(self.dom), \
            f"compose: {_dims(other.cod)} vs {_dims(self.dom)}"
        cols = self.columns()
        out: dict = {}
        conj = self.antilinear
        for (r_o, c_o), v in other.ent.items():
            lst = cols.get(r_o)
            if not lst:
                continue
            vv = v.conjugate() if conj else v
            for r_s, m in lst:
                _acc(out, (r_s, c_o), m * vv)
        return LinearMap(other.dom, self.cod, out,
                         self.antilinear != other.antilinear, _clean=False)

    def __matmul__(self, other):
        return self.compose(other)

    def tensor(self, other: "LinearMap") -> "LinearMap":
        if self.antilinear != other.antilinear:
            raise ParityMismatch(
                "cannot tensor maps of different linearity parity")
        out = {}
        for (r1, c1), v1 in self.ent.items():
            for (r2, c2), v2 in other.ent.items():
                out[(r1 + r2, c1 + c2)] = v1 * v2
        return LinearMap(self.dom + other.dom, self.cod + other.cod, out,
                         self.antilinear, _clean=False)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if self.antilinear != other.antilinear:
            raise ParityMismatch("cannot add maps of different parity")
        assert _dims(self.dom) == _dims(other.dom)
        assert _dims(self.cod) == _dims(other.cod)
        out = dict(self.ent)
        for k, v in other.ent.items():
            _acc(out, k, v)
        return LinearMap(self.dom, self.cod, out, self.antilinear, _clean=False)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + other.scale(rat(-1))

    def scale(self, c: CycloScalar) -> "LinearMap":
        return LinearMap(self.dom, self.cod,
                         {k: c * v for k, v in self.ent.items()},
                         self.antilinear)

    def conj_entries(self, dom=None, cod=None) -> "LinearMap":
        """Entrywise conjugate; used to form the bar of a morphism."""
        return LinearMap(dom or self.dom, cod or self.cod,
                         {k: v.conjugate() for k, v in self.ent.items()},
                         self.antilinear, _clean=False)

    def with_spaces(self, dom=None, cod=None) -> "LinearMap":
        dom = tuple(dom) if dom is not None else self.dom
        cod = tuple(cod) if cod is not None else self.cod
        assert _dims(dom) == _dims(self.dom) and _dims(cod) == _dims(self.cod)
        return LinearMap(dom, cod, self.ent, self.antilinear, _clean=False)

    def transpose(self) -> "LinearMap":
        return LinearMap(self.cod, self.dom,
                         {(c, r): v for (r, c), v in self.ent.items()},
                         self.antilinear, _clean=False)

    def flip_parity(self) -> "LinearMap":
        return LinearMap(self.dom, self.cod, self.ent,
                         not self.antilinear, _clean=False)

    def inverse(self) -> "LinearMap":
        """Exact inverse (square maps), lowest-index pivoting."""
        n = 1
        for s in self.dom:
            n *= s.dim
        m = 1
        for s in self.cod:
            m *= s.dim
        if n != m:
            raise NotInvertible("non-square map")
        dkeys = list(_iter_keys(self.dom))
        ckeys = list(_iter_keys(self.cod))
        dpos = {k: i for i, k in enumerate(dkeys)}
        cpos = {k: i for i, k in enumerate(ckeys)}
        # rows of [M | I] indexed by codomain basis
        rows = [dict() for _ in range(n)]
        for (r, c), v in self.ent.items():
            rows[cpos[r]][dpos[c]] = v
        aug = [{n + i: rat(1)} for i in range(n)]
        for i in range(n):
            rows[i].update(aug[i])
        rows = _rref(rows, n)
        ent = {}
        for row in rows:
            piv = min(k for k in row if k < n) if any(k < n for k in row) else None
            if piv is None:
                raise NotInvertible("singular map")
            for k, v in row.items():
                if k >= n:
                    ent[(dkeys[piv], ckeys[k - n])] = v
        if len({min(k for k in row if k < n) for row in rows if row}) != n:
            raise NotInvertible("singular map")
        # inverse of an antilinear map is antilinear with conjugated solve
        if self.antilinear:
            ent = {k: v.conjugate() for k, v in ent.items()}
        return LinearMap(self.cod, self.dom, ent, self.antilinear)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, LinearMap)
                and self.antilinear == other.antilinear
                and _dims(self.dom) == _dims(other.dom)
                and _dims(self.cod) == _dims(other.cod)
                and self.ent == other.ent)

    def __hash__(self):
        raise TypeError("LinearMap is unhashable")

    def __repr__(self):
        tag = "antilinear " if self.antilinear else ""
        return (f"{tag}LinearMap({'x'.join(s.name for s in self.dom)} -> "
                f"{'x'.join(s.name for s in self.cod)}, nnz={len(self.ent)})")


def _iter_keys(spaces):
    dims = _dims(spaces)
    if not dims:
        yield ()
        return
    total = 1
    for d in dims:
        total *= d
    for flat in range(total):
        key = []
        rem = flat
        for d in reversed(dims):
            key.append(rem % d)
            rem //= d
        yield tuple(reversed(key))


def tensor_product(a, b):
    """Kronecker product with index concatenation (tensors or maps)."""
    if isinstance(a, SparseTensor) and isinstance(b, SparseTensor):
        return a.tensor(b)
    if isinstance(a, LinearMap) and isinstance(b, LinearMap):
        return a.tensor(b)
    raise TypeError("tensor_product needs two tensors or two maps")


# ---------------------------------------------------------------------------
# exact elimination
# ---------------------------------------------------------------------------

def _rref(rows: list[dict], pivot_limit: int | None = None) -> list[dict]:
    """Reduced row echelon form of sparse rows; pivots chosen lowest-index
    first.  Columns >= pivot_limit are never used as pivots (augmented)."""
    done: list[dict] = []
    pivots: dict[int, dict] = {}
    for row in rows:
        row = dict(row)
        while True:
            live = [k for k in row if pivot_limit is None or k < pivot_limit]
            if not live:
                break
            j = min(live)
            if j in pivots:
                c = row[j]
                prow = pivots[j]
                for k, v in prow.items():
                    _acc(row, k, -(c * v))
            else:
                inv = row[j].inv()
                row = {k: inv * v for k, v in row.items()}
                pivots[j] = row
                break
        # fully reduced to zero (or only-augmented) rows are dropped
    # back-substitute for reduced form
    for j in sorted(pivots, reverse=True):
        prow = pivots[j]
        for j2 in sorted(pivots):
            if j2 >= j:
                break
            row2 = pivots[j2]
            c = row2.get(j)
            if c is not None:
                for k, v in prow.items():
                    _acc(row2, k, -(c * v))
    done = [pivots[j] for j in sorted(pivots)]
    return done


def rank(vectors: list[SparseTensor]) -> int:
    rows = [_flatten(v) for v in vectors]
    return len(_rref(rows))


def _strides(spaces):
    dims = _dims(spaces)
    strides = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    return strides


def _flatten(t: SparseTensor) -> dict:
    st = _strides(t.spaces)
    return {sum(i * s for i, s in zip(k, st)): v for k, v in t.entries.items()}


def solve_exact(columns: list[SparseTensor], target: SparseTensor):
    """Solve sum_j x_j * columns[j] = target exactly.

    Returns the coefficient list, or None if inconsistent.  The system may
    be overdetermined; with independent columns the solution is unique.
    """
    ncols = len(columns)
    rows_by_eq: dict[int, dict] = {}
    for j, col in enumerate(columns):
        for flat, v in _flatten(col).items():
            rows_by_eq.setdefault(flat, {})[j] = v
    for flat, v in _flatten(target).items():
        rows_by_eq.setdefault(flat, {})[ncols] = v
    red = _rref(list(rows_by_eq.values()), pivot_limit=None)
    sol = [rat(0)] * ncols
    for row in red:
        piv = min(row)
        if piv == ncols:
            return None  # 0 = nonzero: inconsistent
        rhs = row.get(ncols, rat(0))
        others = [k for k in row if k not in (piv, ncols)]
        if others:
            # non-pivot unknowns are set to zero; consistency is re-checked
            pass
        sol[piv] = rhs
    # verify (also catches under-determined inconsistencies)
    acc: dict = {}
    for j, col in enumerate(columns):
        if not sol[j].is_zero:
            for k, v in col.entries.items():
                _acc(acc, k, sol[j] * v)
    if acc != target.entries:
        return None
    return sol


def subspace_quotient(vectors: list[SparseTensor], spaces=None):
    """Quotient of the ambient space by span(vectors), exactly.

    Returns (dim, projection, section): projection kills every input
    vector and projection . section = id on the quotient.
    """
    if not vectors:
        if spaces is None:
            raise ValueError("empty relation list needs explicit spaces")
        spaces = tuple(spaces)
    else:
        spaces = vectors[0].spaces
    for v in vectors:
        assert v.spaces == spaces
    st = _strides(spaces)
    n = 1
    for s in spaces:
        n *= s.dim
    rows = _rref([_flatten(v) for v in vectors])
    pivots = [min(r) for r in rows]
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    keys = list(_iter_keys(spaces))
    qlabels = tuple("q" + "_".join(str(i) for i in keys[j]) for j in free)
    qspace = Space(f"({'x'.join(s.name for s in spaces)})/~", qlabels)
    fpos = {j: i for i, j in enumerate(free)}
    proj_ent = {}
    for i, j in enumerate(free):
        proj_ent[((i,), keys[j])] = rat(1)
    for row, piv in zip(rows, pivots):
        for k, v in row.items():
            if k != piv:
                proj_ent[((fpos[k],), keys[piv])] = -v
    projection = LinearMap(spaces, (qspace,), proj_ent)
    section = LinearMap((qspace,), spaces,
                        {(keys[j], (i,)): rat(1) for i, j in enumerate(free)})
    return len(free), projection, section
