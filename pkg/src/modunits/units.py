"""Brute-force construction of unit groups of a group algebra.

enumerate_units walks every augmentation-1 coefficient vector and keeps the
invertible ones; that set is the group of normalized units, the independent
oracle everything else is checked against.  filter_unitary carves out the
units fixed into inverses by the classical involution.  as_abstract_group
turns a unit set into a Cayley-table group so the nilpotency machinery from
``groups`` applies to it.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import groups as gr
from ._gflinalg import batch_invertible_mask
from .algebra import AlgebraElement, GroupAlgebra
from .errors import BudgetExceeded, EngelInconclusive, NotAUnit

ENUMERATION_CAP = 2**20
ABSTRACT_GROUP_CAP = 4096
_CHUNK = 1 << 14
_EXHAUSTIVE_CHECK_CAP = 1 << 12
_SAMPLE_PAIRS = 10_000


def _lex_sorted(vectors: np.ndarray) -> np.ndarray:
    if vectors.shape[0] <= 1:
        return vectors
    order = np.lexsort(vectors[:, ::-1].T)
    return vectors[order]


class UnitGroup:
    """An explicit finite set of units, stored lexicographically sorted.

    Closure under multiplication and inverses is verified at construction:
    exhaustively up to 2^12 members, by seeded sampling above that.
    """

    def __init__(self, algebra: GroupAlgebra, vectors: np.ndarray,
                 verify: bool = True, seed: int = 0):
        vectors = np.ascontiguousarray(np.asarray(vectors, dtype=np.int64) % algebra.p)
        self.algebra = algebra
        self.vectors = _lex_sorted(vectors)
        self.vectors.setflags(write=False)
        self._vt = None  # cached float transpose for batched products
        n = algebra.dim
        p = algebra.p
        # mixed-radix codes (most significant first) preserve lexicographic order
        if n * np.log2(p) < 62:
            w = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
            self._weights = w
            self._codes = self.vectors @ w
            if self.vectors.shape[0] > 1 and not (np.diff(self._codes) > 0).all():
                raise ValueError("unit set contains duplicates")
        else:
            self._weights = None
            self._codes = None
            self._byte_index = {self.vectors[i].tobytes(): i
                                for i in range(self.vectors.shape[0])}
            if len(self._byte_index) != self.vectors.shape[0]:
                raise ValueError("unit set contains duplicates")
        one = np.zeros(n, dtype=np.int64)
        one[algebra.group.identity] = 1
        pos = self.position_of_vector(one)
        if pos < 0:
            raise ValueError("unit set does not contain 1")
        self.one_position = pos
        if verify:
            self.verify_closure(seed)

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def element(self, i: int) -> AlgebraElement:
        return AlgebraElement(self.algebra, self.vectors[i].copy())

    def __iter__(self) -> Iterator[AlgebraElement]:
        for i in range(len(self)):
            yield self.element(i)

    def position_of_vector(self, vec: np.ndarray) -> int:
        pos = self.positions_of(np.asarray(vec, dtype=np.int64)[None, :])
        return int(pos[0])

    def index_of(self, u: AlgebraElement) -> int:
        """Position of an element, or -1 when absent."""
        return self.position_of_vector(u.coeffs)

    def __contains__(self, u: AlgebraElement) -> bool:
        return self.index_of(u) >= 0

    def positions_of(self, mat: np.ndarray) -> np.ndarray:
        """Batch lookup; -1 marks vectors that are not members."""
        mat = np.asarray(mat, dtype=np.int64) % self.algebra.p
        if len(self) == 0:
            return np.full(mat.shape[0], -1, dtype=np.int64)
        if self._weights is not None:
            codes = mat @ self._weights
            idx = np.searchsorted(self._codes, codes)
            idx[idx >= len(self)] = 0
            ok = self._codes[idx] == codes
            return np.where(ok, idx, -1)
        out = np.empty(mat.shape[0], dtype=np.int64)
        for i in range(mat.shape[0]):
            out[i] = self._byte_index.get(np.ascontiguousarray(mat[i]).tobytes(), -1)
        return out

    def _float_t(self) -> np.ndarray:
        if self._vt is None:
            self._vt = self.vectors.T.astype(np.float64)
        return self._vt

    def _products_of(self, i: int) -> np.ndarray:
        """All products element(i) * element(j), as a (m, n) residue matrix.

        Entries of the float matmul are bounded by dim * (p-1)^2, far below
        2^53, so the computation is exact.
        """
        alg = self.algebra
        M = self.vectors[i][alg.div].astype(np.float64)
        prods = M @ self._float_t()
        return (prods % alg.p).astype(np.int64).T

    def _right_products_of(self, i: int) -> np.ndarray:
        """All products element(j) * element(i), same layout as _products_of."""
        alg = self.algebra
        G = alg.group
        rmat = self.vectors[i][G.mul[G.inv]].T.astype(np.float64)
        prods = rmat @ self._float_t()
        return (prods % alg.p).astype(np.int64).T

    def inverse_position(self, i: int) -> int:
        u = self.element(i)
        inv = u.involution() if u.is_unitary() else u.try_inverse()
        if inv is None or not (u * inv).is_one() or not (inv * u).is_one():
            raise NotAUnit(f"member {i} has no inverse")
        return self.index_of(inv)

    def verify_closure(self, seed: int = 0) -> None:
        m = len(self)
        if m <= _EXHAUSTIVE_CHECK_CAP:
            for i in range(m):
                if (self.positions_of(self._products_of(i)) < 0).any():
                    raise ValueError("unit set not closed under multiplication")
            for i in range(m):
                if self.inverse_position(i) < 0:
                    raise ValueError("unit set not closed under inverses")
        else:
            rng = np.random.default_rng(seed)
            ii = rng.integers(0, m, size=_SAMPLE_PAIRS)
            jj = rng.integers(0, m, size=_SAMPLE_PAIRS)
            for i, j in zip(ii, jj):
                prod = self.element(int(i)) * self.element(int(j))
                if self.index_of(prod) < 0:
                    raise ValueError("unit set not closed under multiplication")
            for i in rng.integers(0, m, size=1000):
                if self.inverse_position(int(i)) < 0:
                    raise ValueError("unit set not closed under inverses")


# ---------------------------------------------------------------------------
# enumeration

def _candidate_vectors(p: int, n: int, identity: int, lo: int, hi: int) -> np.ndarray:
    """Aug-1 candidates lo..hi: free digits on non-identity slots, identity fixed."""
    idx = np.arange(lo, hi, dtype=np.int64)
    vec = np.zeros((hi - lo, n), dtype=np.int64)
    t = idx
    for j in range(n):
        if j == identity:
            continue
        vec[:, j] = t % p
        t = t // p
    vec[:, identity] = (1 - vec.sum(axis=1)) % p
    return vec


def _unit_chunk(args) -> np.ndarray:
    div, p, identity, lo, hi = args
    n = div.shape[0]
    vec = _candidate_vectors(p, n, identity, lo, hi)
    mats = vec[:, div]
    return vec[batch_invertible_mask(mats, p)]


def enumerate_units(algebra: GroupAlgebra, cap: int = ENUMERATION_CAP,
                    workers: int = 1, seed: int = 0) -> UnitGroup:
    """All normalized units, by exhaustive scan of the aug-1 coefficient vectors.

    Candidates are split into fixed-size chunks whose union is merged in
    canonical order, so the result is identical for any worker count.
    Raises BudgetExceeded (carrying the required count) when p^(dim-1) > cap.
    """
    n = algebra.dim
    p = algebra.p
    required = p ** (n - 1)
    if required > cap:
        raise BudgetExceeded(
            f"enumeration needs {required} candidates, cap is {cap}", required)
    tasks = [(algebra.div, p, algebra.group.identity, lo, min(lo + _CHUNK, required))
             for lo in range(0, required, _CHUNK)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_unit_chunk, tasks))
    else:
        parts = [_unit_chunk(t) for t in tasks]
    vectors = np.concatenate(parts, axis=0)
    return UnitGroup(algebra, vectors, seed=seed)


def filter_unitary(V: UnitGroup, seed: int = 0) -> UnitGroup:
    """The members with involution * u = 1; forms a subgroup of V."""
    alg = V.algebra
    n = alg.dim
    p = alg.p
    vec = V.vectors
    star = vec[:, alg.group.inv]
    prod = np.zeros_like(vec)
    mul = alg.group.mul
    for g in range(n):
        prod[:, mul[g]] += star[:, g, None] * vec
    prod %= p
    one = np.zeros(n, dtype=np.int64)
    one[alg.group.identity] = 1
    mask = (prod == one).all(axis=1) & (vec.sum(axis=1) % p == 1)
    return UnitGroup(alg, vec[mask], seed=seed)


def closure_subgroup(units: Iterable[AlgebraElement], cap: int = ABSTRACT_GROUP_CAP,
                     seed: int = 0) -> UnitGroup:
    """Multiplicative closure of the given units (inverses included)."""
    units = list(units)
    if not units:
        raise ValueError("need at least one generating unit")
    alg = units[0].algebra
    gens: list[AlgebraElement] = []
    for u in units:
        if u.augmentation() != 1:
            raise NotAUnit(f"generator {u.to_text()} is not normalized")
        inv = u.try_inverse()
        if inv is None:
            raise NotAUnit(f"generator {u.to_text()} is not a unit")
        gens.append(u)
        gens.append(inv)
    one = alg.one()
    seen = {one.coeffs.tobytes(): one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                key = y.coeffs.tobytes()
                if key not in seen:
                    if len(seen) >= cap:
                        raise BudgetExceeded(
                            f"closure exceeds cap {cap}", len(seen) + 1)
                    seen[key] = y
                    nxt.append(y)
        frontier = nxt
    vectors = np.stack([u.coeffs for u in seen.values()])
    return UnitGroup(alg, vectors, seed=seed)


def as_abstract_group(U: UnitGroup, cap: int = ABSTRACT_GROUP_CAP) -> gr.FiniteGroup:
    """Cayley-table view of a unit group, for the group-theoretic machinery."""
    m = len(U)
    if m > cap:
        raise BudgetExceeded(f"abstract group needs {m} elements, cap is {cap}", m)
    table = np.empty((m, m), dtype=np.int32)
    for i in range(m):
        pos = U.positions_of(U._products_of(i))
        if (pos < 0).any():
            raise ValueError("unit set is not closed; cannot build a group table")
        table[i] = pos
    labels = [U.element(i).to_text() for i in range(m)]
    name = f"V<{U.algebra.group.name},p={U.algebra.p},{m}>"
    return gr.FiniteGroup(name, table, identity=U.one_position, labels=labels)


# ---------------------------------------------------------------------------
# Engel machinery

@dataclass(frozen=True)
class EngelOutcome:
    """Result of iterating z <- (z, y): either z hit 1, or the orbit cycled."""

    stabilizes: bool
    steps: int

    @property
    def nontrivial(self) -> bool:
        return not self.stabilizes


def engel_test(x: AlgebraElement, y: AlgebraElement, n_max: int = 256) -> EngelOutcome:
    """Iterate the left-normed commutator of two units.

    Returns StabilizesAtOne-style outcome with the first n such that
    (x, y, n) = 1, or a nontrivial outcome when a non-identity state repeats
    (the orbit is then periodic and can never reach 1).  Raises
    EngelInconclusive when n_max is hit first.
    """
    if x.is_one():
        return EngelOutcome(True, 0)
    y_inv = y.try_inverse()
    if y_inv is None:
        raise NotAUnit("y is not a unit")
    z = x
    visited = {z.coeffs.tobytes()}
    for n in range(1, n_max + 1):
        z_inv = z.try_inverse()
        if z_inv is None:
            raise NotAUnit("commutator chain left the unit group")
        z = z_inv * y_inv * z * y
        if z.is_one():
            return EngelOutcome(True, n)
        key = z.coeffs.tobytes()
        if key in visited:
            return EngelOutcome(False, n)
        visited.add(key)
    raise EngelInconclusive(f"no verdict after {n_max} steps")


def find_non_engel_pair(U: UnitGroup, budget: int = 400, seed: int = 0,
                        n_max: int = 256) -> tuple[AlgebraElement, AlgebraElement] | None:
    """Seeded random search for a pair witnessing non-nilpotency.

    None means the search found nothing within its budget; it is not a proof
    that every pair is Engel.
    """
    rng = random.Random(seed)
    m = len(U)
    for _ in range(budget):
        x = U.element(rng.randrange(m))
        y = U.element(rng.randrange(m))
        try:
            outcome = engel_test(x, y, n_max=n_max)
        except EngelInconclusive:
            continue
        if outcome.nontrivial:
            return x, y
    return None
