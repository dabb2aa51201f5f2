"""Chain complex of a flock F(G, k): boundaries, degeneracies, homology, cocycles.

A degree-n chain is an integer combination of (n+2)-tuples.  With
P(x, y, z) = x y^-1 z the boundary of (x_0, ..., x_{n+1}) is

    (x_1, ..., x_{n+1})
    + sum_{i=1..n} (-1)^i [ (P(x_j, x_i, x_{i+1}) k^(i-j) for j < i, x_{i+1}, ..., x_{n+1})
                           + (x_0, ..., x_{i-1}, P(x_{i-1}, x_i, x_j) k^(j-i) for j > i) ]
    + (-1)^(n+1) (x_0, ..., x_n)

with  d_0(x_0, x_1) = x_1 - x_0  and  d_{-1} = 0.  Since k^2 = e, powers of k
are reduced mod 2.  Every routine here evaluates that formula on whole arrays
of tuples at once (see :func:`boundary_terms`).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from ._check import PASS, Check, first_failure
from .errors import ArityMismatch, FlockError, SizeBudgetExceeded
from .ternary import FlockSpec

#: Largest |X|^(n+2) for which matrices are built.
DEFAULT_CELL_BUDGET = 2_000_000


# --------------------------------------------------------------- data types

class Chain(dict):
    """Sparse integer combination of equal-length tuples; zero terms are dropped."""

    def __init__(self, degree: int, terms=None):
        super().__init__()
        self.degree = degree
        for tup, c in (terms or {}).items():
            self.add(tup, c)

    def add(self, tup, coeff: int = 1) -> None:
        tup = tuple(int(x) for x in tup)
        if len(tup) != self.degree + 2:
            raise ArityMismatch(f"degree {self.degree} chain needs {self.degree + 2}-tuples", tup)
        v = self.get(tup, 0) + int(coeff)
        if v:
            self[tup] = v
        else:
            self.pop(tup, None)

    def __add__(self, other: Chain) -> Chain:
        out = Chain(self.degree, self)
        for tup, c in other.items():
            out.add(tup, c)
        return out

    def scaled(self, c: int) -> Chain:
        return Chain(self.degree, {t: c * v for t, v in self.items()})

    def is_zero(self) -> bool:
        return not self

    def __repr__(self) -> str:
        return f"Chain({self.degree}, {dict(self)})"


@dataclass(frozen=True, eq=False)
class CochainTable:
    """Dense cochain ``values[x_0, ..., x_{a-1}]``; modulus 0 means integer values."""

    values: np.ndarray
    modulus: int = 0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64)
        if v.ndim < 1 or len(set(v.shape)) != 1:
            raise FlockError("cochain table must be a cube")
        if self.modulus < 0:
            raise FlockError("modulus must be >= 0")
        if self.modulus:
            v = v % self.modulus
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def arity(self) -> int:
        return int(self.values.ndim)

    @property
    def order(self) -> int:
        return int(self.values.shape[0])

    @property
    def degree(self) -> int:
        return self.arity - 2

    def __call__(self, *xs) -> int:
        return int(self.values[tuple(xs)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, CochainTable) and self.modulus == other.modulus
                and np.array_equal(self.values, other.values))

    __hash__ = None

    @classmethod
    def zeros(cls, order: int, arity: int, modulus: int = 0) -> CochainTable:
        return cls(np.zeros((order,) * arity, dtype=np.int64), modulus)


# ------------------------------------------------------------ boundary core

def _ops(spec: FlockSpec):
    g = spec.group
    t, inv, k = g.table, g.inverse, spec.b

    def p(x, y, z, kpow):
        out = t[t[x, inv[y]], z]
        return t[out, k] if kpow % 2 else out

    return p


def boundary_terms(spec: FlockSpec, coords: list) -> list[tuple[int, list]]:
    """Signed faces of the boundary of the tuple(s) ``coords``.

    ``coords`` holds n+2 equally shaped integer arrays (or ints); the result is
    a list of (sign, face) with each face a list of n+1 arrays.
    """
    m = len(coords) - 2
    if m < -1:
        raise ArityMismatch("chains have at least one coordinate")
    if m == -1:
        return []
    if m == 0:
        return [(1, [coords[1]]), (-1, [coords[0]])]
    p = _ops(spec)
    x = coords
    terms = [(1, list(x[1:]))]
    for i in range(1, m + 1):
        s = -1 if i % 2 else 1
        left = [p(x[j], x[i], x[i + 1], i - j) for j in range(i)] + list(x[i + 1:])
        right = list(x[:i]) + [p(x[i - 1], x[i], x[j], j - i) for j in range(i + 1, m + 2)]
        terms.append((s, left))
        terms.append((s, right))
    terms.append((-1 if (m + 1) % 2 else 1, list(x[:m + 1])))
    return terms


def boundary(spec: FlockSpec, n: int, tup) -> Chain:
    tup = tuple(int(v) for v in tup)
    if len(tup) != n + 2:
        raise ArityMismatch(f"degree {n} needs a {n + 2}-tuple, got {len(tup)}", tup)
    out = Chain(n - 1)
    if n == -1:
        return out
    for s, face in boundary_terms(spec, list(tup)):
        out.add(tuple(int(v) for v in face), s)
    return out


def boundary_of_chain(spec: FlockSpec, ch: Chain) -> Chain:
    out = Chain(ch.degree - 1)
    for tup, c in ch.items():
        for face, v in boundary(spec, ch.degree, tup).items():
            out.add(face, c * v)
    return out


def _degenerate_mask(spec: FlockSpec, coords: list) -> np.ndarray | bool:
    if len(coords) < 3:
        return False
    p = _ops(spec)
    mask = False
    for j in range(len(coords) - 2):
        a, b, c = coords[j:j + 3]
        mask = mask | (c == p(b, a, b, 1))
    return mask


def is_degenerate(spec: FlockSpec, tup) -> bool:
    """True iff three consecutive coordinates read (a, b, b a^-1 b k)."""
    return bool(_degenerate_mask(spec, [int(v) for v in tup]))


def _all_tuples(n_elems: int, length: int) -> list[np.ndarray]:
    idx = np.arange(n_elems ** length, dtype=np.int64)
    return list(np.unravel_index(idx, (n_elems,) * length))


def _encode(face: list, n_elems: int) -> np.ndarray:
    code = np.zeros_like(np.asarray(face[0]))
    for c in face:
        code = code * n_elems + c
    return code


def degenerate_indices(spec: FlockSpec, n: int) -> np.ndarray:
    """Mixed-radix codes of the degenerate (n+2)-tuples."""
    if n < 1:
        return np.empty(0, dtype=np.int64)
    coords = _all_tuples(spec.order, n + 2)
    return np.flatnonzero(_degenerate_mask(spec, coords))


def boundary_matrix(spec: FlockSpec, n: int, normalized: bool = False, *,
                    budget: int = DEFAULT_CELL_BUDGET) -> sparse.csr_matrix:
    """Matrix of d_n : C_n -> C_{n-1} (rows: (n+1)-tuples, columns: (n+2)-tuples).

    Tuples are indexed by their mixed-radix code.  With ``normalized`` only
    non-degenerate tuples are kept on both sides, in increasing code order.
    """
    q = spec.order
    cols = q ** (n + 2)
    if cols > budget:
        raise SizeBudgetExceeded(f"{q}^{n + 2} = {cols} cells exceeds budget {budget}", cols)
    rows = q ** (n + 1) if n >= 0 else 1
    if n == -1:
        return sparse.csr_matrix((1, q), dtype=np.int64)
    coords = _all_tuples(q, n + 2)
    col_idx = np.arange(cols, dtype=np.int64)
    data, r_all, c_all = [], [], []
    for s, face in boundary_terms(spec, coords):
        r_all.append(_encode(face, q))
        c_all.append(col_idx)
        data.append(np.full(cols, s, dtype=np.int64))
    mat = sparse.coo_matrix((np.concatenate(data), (np.concatenate(r_all), np.concatenate(c_all))),
                            shape=(rows, cols)).tocsr()
    mat.sum_duplicates()
    if normalized:
        keep_c = np.setdiff1d(col_idx, degenerate_indices(spec, n))
        keep_r = np.setdiff1d(np.arange(rows), degenerate_indices(spec, n - 1))
        mat = mat[keep_r][:, keep_c]
    mat.eliminate_zeros()
    return mat


# --------------------------------------------------------- Smith normal form

@dataclass(frozen=True)
class SmithForm:
    divisors: tuple[int, ...]        # nonzero diagonal entries d_1 | d_2 | ...
    rank: int
    left: np.ndarray | None = None   # U with U A V = D
    right: np.ndarray | None = None


def _as_object(a) -> np.ndarray:
    if sparse.issparse(a):
        a = a.toarray()
    return np.array(a, dtype=object)


def smith_normal_form(matrix, transforms: bool = False) -> SmithForm:
    """Elementary divisors of an integer matrix by exact elimination.

    Works on Python integers so entries never overflow; pivots are always the
    smallest nonzero entry still to be cleared.
    """
    a = _as_object(matrix)
    if a.ndim != 2:
        raise FlockError("matrix must be two-dimensional")
    m, n = a.shape
    u = np.identity(m, dtype=object) if transforms else None
    v = np.identity(n, dtype=object) if transforms else None
    if not transforms:
        a = a[np.any(a != 0, axis=1)]
        a = a[:, np.any(a != 0, axis=0)] if a.size else a
        m, n = a.shape
    diag = []
    t = 0
    while t < min(m, n):
        block = a[t:, t:]
        nz = np.argwhere(block != 0)
        if nz.size == 0:
            break
        absvals = np.abs(block[nz[:, 0], nz[:, 1]].astype(object))
        i, j = nz[int(np.argmin(absvals))] + t
        _swap(a, u, v, t, i, j)
        while True:
            piv = a[t, t]
            col = a[t + 1:, t]
            if np.any(col != 0):
                q = np.array([x // piv for x in col], dtype=object)
                a[t + 1:] -= np.outer(q, a[t])
                if u is not None:
                    u[t + 1:] -= np.outer(q, u[t])
            row = a[t, t + 1:]
            if np.any(row != 0):
                q = np.array([x // piv for x in row], dtype=object)
                a[:, t + 1:] -= np.outer(a[:, t], q)
                if v is not None:
                    v[:, t + 1:] -= np.outer(v[:, t], q)
            rest = np.concatenate([a[t + 1:, t], a[t, t + 1:]])
            if np.any(rest != 0):
                cand = np.argwhere(a[t:, t:] != 0)
                cand = cand[(cand[:, 0] == 0) | (cand[:, 1] == 0)]
                absvals = np.abs(a[t:, t:][cand[:, 0], cand[:, 1]].astype(object))
                i, j = cand[int(np.argmin(absvals))] + t
                _swap(a, u, v, t, i, j)
                continue
            sub = a[t + 1:, t + 1:]
            bad = np.argwhere(np.vectorize(lambda x, p=piv: x % p != 0, otypes=[bool])(sub)) \
                if sub.size else np.empty((0, 2))
            if len(bad):
                r = bad[0][0] + t + 1
                a[t] += a[r]
                if u is not None:
                    u[t] += u[r]
                continue
            break
        if a[t, t] < 0:
            a[t] = -a[t]
            if u is not None:
                u[t] = -u[t]
        diag.append(int(a[t, t]))
        t += 1
    return SmithForm(tuple(diag), len(diag), u, v)


def _swap(a, u, v, t, i, j):
    if i != t:
        a[[t, i]] = a[[i, t]]
        if u is not None:
            u[[t, i]] = u[[i, t]]
    if j != t:
        a[:, [t, j]] = a[:, [j, t]]
        if v is not None:
            v[:, [t, j]] = v[:, [j, t]]


def matrix_rank(matrix) -> int:
    """Rank over the rationals (equal to the Smith rank)."""
    return smith_normal_form(matrix).rank


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    betti: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = [f"Z^{self.betti}"] if self.betti else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def chain_rank(spec: FlockSpec, n: int, normalized: bool) -> int:
    total = spec.order ** (n + 2)
    if normalized:
        total -= len(degenerate_indices(spec, n))
    return total


def homology_groups(spec: FlockSpec, n: int, normalized: bool = False, *,
                    budget: int = DEFAULT_CELL_BUDGET) -> HomologyGroup:
    """H_n = ker d_n / im d_{n+1}."""
    dim = chain_rank(spec, n, normalized)
    rank_n = smith_normal_form(boundary_matrix(spec, n, normalized, budget=budget)).rank if n >= 0 else 0
    snf = smith_normal_form(boundary_matrix(spec, n + 1, normalized, budget=budget))
    torsion = tuple(d for d in snf.divisors if d > 1)
    return HomologyGroup(n, dim - rank_n - snf.rank, torsion)


# ---------------------------------------------------------------- cocycles

def _grid(n: int, k: int) -> list[np.ndarray]:
    out = []
    for i in range(k):
        shape = [1] * k
        shape[i] = n
        out.append(np.arange(n).reshape(shape))
    return [np.broadcast_to(a, (n,) * k) for a in out]


def _require(spec: FlockSpec, f: CochainTable, arity: int) -> None:
    if f.arity != arity:
        raise ArityMismatch(f"expected a cochain of arity {arity}, got {f.arity}")
    if f.order != spec.order:
        raise ArityMismatch(f"cochain order {f.order} differs from flock order {spec.order}")


def _reduce(vals: np.ndarray, p: int) -> np.ndarray:
    return vals % p if p else vals


def check_1cocycle(spec: FlockSpec, f: CochainTable) -> Check:
    """Conditions (1) f(a, b, b a^-1 b k) = 0 and (2) the six-term identity.

    Witness: (condition, a, b[, c, d]) with condition "1" or "2".
    """
    _require(spec, f, 3)
    p, P, v = f.modulus, _ops(spec), f.values
    a, b = _grid(spec.order, 2)
    bad = _reduce(v[a, b, P(b, a, b, 1)], p) != 0
    if bad.any():
        return first_failure(bad, ("1",))
    a, b, c, d = _grid(spec.order, 4)
    abck = P(a, b, c, 1)
    bcdk = P(b, c, d, 1)
    total = (v[b, c, d] - v[a, abck, P(a, b, d, 0)] - v[abck, c, d]
             + v[a, b, bcdk] + v[P(a, c, d, 0), bcdk, d] - v[a, b, c])
    bad = _reduce(total, p) != 0
    if bad.any():
        return first_failure(bad, ("2",))
    return PASS


def check_2cocycle(spec: FlockSpec, phi: CochainTable) -> Check:
    """Both degenerate-slot vanishing patterns and the eight-term identity.

    Witness: ("1a", a, b, c) for phi(a, b, b a^-1 b k, c), ("1b", a, b, c) for
    phi(c, a, b, b a^-1 b k), or ("2", a, b, c, d, e).
    """
    _require(spec, phi, 4)
    p, P, v = phi.modulus, _ops(spec), phi.values
    a, b, c = _grid(spec.order, 3)
    deg = P(b, a, b, 1)
    for tag, vals in (("1a", v[a, b, deg, c]), ("1b", v[c, a, b, deg])):
        bad = _reduce(vals, p) != 0
        if bad.any():
            return first_failure(bad, (tag,))
    a, b, c, d, e = _grid(spec.order, 5)
    total = (v[b, c, d, e]
             - v[a, P(a, b, c, 1), P(a, b, d, 0), P(a, b, e, 1)]
             - v[P(a, b, c, 1), c, d, e]
             + v[a, b, P(b, c, d, 1), P(b, c, e, 0)]
             + v[P(a, c, d, 0), P(b, c, d, 1), d, e]
             - v[a, b, c, P(c, d, e, 1)]
             - v[P(a, d, e, 1), P(b, d, e, 0), P(c, d, e, 1), e]
             + v[a, b, c, d])
    bad = _reduce(total, p) != 0
    if bad.any():
        return first_failure(bad, ("2",))
    return PASS


def coboundary(spec: FlockSpec, f: CochainTable) -> CochainTable:
    """(delta f)(x) = f(d x) on every tuple one longer than f's arity."""
    if f.order != spec.order:
        raise ArityMismatch("cochain order differs from flock order")
    coords = _grid(spec.order, f.arity + 1)
    out = np.zeros((spec.order,) * (f.arity + 1), dtype=np.int64)
    for s, face in boundary_terms(spec, coords):
        out += s * f.values[tuple(face)]
    return CochainTable(out, f.modulus)


def is_normalized(spec: FlockSpec, f: CochainTable) -> bool:
    """True iff f vanishes on every degenerate tuple."""
    codes = degenerate_indices(spec, f.degree)
    return not np.any(_reduce(f.values.ravel()[codes], f.modulus))


# ------------------------------------------------------ cocycle space mod p

def _cocycle1_equations(spec: FlockSpec) -> tuple[np.ndarray, np.ndarray]:
    """Rows of (unknown codes, coefficients) for conditions (1) and (2)."""
    n = spec.order
    P = _ops(spec)

    def code(x, y, z):
        return (np.asarray(x) * n + y) * n + z

    a, b = (g.ravel() for g in _grid(n, 2))
    cond1 = code(a, b, P(b, a, b, 1))
    a, b, c, d = (g.ravel() for g in _grid(n, 4))
    abck, bcdk = P(a, b, c, 1), P(b, c, d, 1)
    cols = np.stack([code(b, c, d), code(a, abck, P(a, b, d, 0)), code(abck, c, d),
                     code(a, b, bcdk), code(P(a, c, d, 0), bcdk, d), code(a, b, c)], axis=1)
    coef = np.array([1, -1, -1, 1, 1, -1], dtype=np.int64)
    return cond1, (cols, coef)


def _mod_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # elimination runs on float64 integers: BLAS is exact while sums stay below 2^53
    return np.mod(a @ b, p)


def _rref_block(rows: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of a small block over GF(p)."""
    rows = rows % p
    out, piv = [], []
    inv = [0] + [pow(x, p - 2, p) for x in range(1, p)]
    while len(rows):
        rows = rows[np.any(rows, axis=1)]
        if not len(rows):
            break
        c = int(np.flatnonzero(np.any(rows, axis=0))[0])
        k = int(np.flatnonzero(rows[:, c])[0])
        r = (rows[k] * inv[int(rows[k, c])]) % p
        rows = np.delete(rows, k, axis=0)
        rows = (rows - np.outer(rows[:, c], r)) % p
        out = [(o - o[c] * r) % p for o in out]
        out.append(r)
        piv.append(c)
    width = rows.shape[1]
    return (np.array(out) if out else np.zeros((0, width))), piv


def _rref_add(basis: np.ndarray, pivots: list[int], rows: np.ndarray, p: int) -> np.ndarray:
    """Extend a reduced row echelon basis over GF(p) by ``rows``; ``pivots`` is updated in place."""
    rows = np.mod(np.asarray(rows, dtype=np.float64), p)
    if len(pivots):
        rows = (rows - _mod_matmul(rows[:, pivots], basis, p)) % p
    new, new_piv = _rref_block(rows, p)
    if not new_piv:
        return basis
    if len(pivots):
        basis = (basis - _mod_matmul(basis[:, new_piv], new, p)) % p
    pivots.extend(new_piv)
    return np.vstack([basis, new])


def _nullspace_mod_p(matrix_rows, n_unknowns: int, p: int, batch: int = 128) -> np.ndarray:
    basis = np.zeros((0, n_unknowns))
    pivots: list[int] = []
    for start in range(0, len(matrix_rows), batch):
        basis = _rref_add(basis, pivots, matrix_rows[start:start + batch], p)
        if len(pivots) == n_unknowns:
            break
    pivot_set = set(pivots)
    free = [c for c in range(n_unknowns) if c not in pivot_set]
    out = np.zeros((len(free), n_unknowns), dtype=np.int64)
    for k, fcol in enumerate(free):
        out[k, fcol] = 1
        if pivots:
            out[k, pivots] = np.mod(-basis[:, fcol], p)
    return out


def cocycle_space_1(spec: FlockSpec, p: int, *, budget: int = 5000) -> list[CochainTable]:
    """Basis of the 1-cocycles with values in Z/p, one free unknown per vector."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise FlockError(f"modulus {p} is not prime")
    n = spec.order
    unknowns = n ** 3
    if unknowns > budget:
        raise SizeBudgetExceeded(f"{unknowns} unknowns exceeds budget {budget}", unknowns)
    cond1, (cols, coef) = _cocycle1_equations(spec)
    zero_cols = np.unique(cond1)
    live = np.setdiff1d(np.arange(unknowns), zero_cols)
    pos = -np.ones(unknowns, dtype=np.int64)
    pos[live] = np.arange(len(live))
    # condition (1) kills those unknowns outright; drop them from condition (2)
    rows = np.zeros((cols.shape[0], len(live)), dtype=np.int8)
    for j in range(cols.shape[1]):
        mask = pos[cols[:, j]] >= 0
        np.add.at(rows, (np.flatnonzero(mask), pos[cols[mask, j]]), coef[j])
    rows %= p
    seen: set[bytes] = set()
    keep = []
    for i, r in enumerate(rows):
        key = r.tobytes()
        if r.any() and key not in seen:
            seen.add(key)
            keep.append(i)
    rows = rows[keep]
    null = _nullspace_mod_p(rows, len(live), p)
    out = []
    for vec in null:
        full = np.zeros(unknowns, dtype=np.int64)
        full[live] = vec
        out.append(CochainTable(full.reshape(n, n, n), p))
    return out


def rank_mod_p(rows: np.ndarray, p: int) -> int:
    return len(_rref_add(np.zeros((0, rows.shape[1])), [], rows, p))


def in_span_mod_p(basis: list[CochainTable], f: CochainTable) -> bool:
    """True iff f is a GF(p)-combination of ``basis``."""
    if not basis:
        return not np.any(f.values)
    p = basis[0].modulus
    mat = np.stack([b.values.ravel() for b in basis])
    return rank_mod_p(np.vstack([mat, f.values.ravel()[None, :]]), p) == rank_mod_p(mat, p)


def evaluate_on_chain(f: CochainTable, ch: Chain) -> int:
    if ch and ch.degree + 2 != f.arity:
        raise ArityMismatch(f"chain of degree {ch.degree} against a cochain of arity {f.arity}")
    total = 0
    for tup, c in ch.items():
        total += c * int(f.values[tup])
    return total % f.modulus if f.modulus else total
