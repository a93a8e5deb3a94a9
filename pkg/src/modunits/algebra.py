"""Exact arithmetic in the group algebra of a finite group over GF(p).

An element is a dense vector of residues indexed by group-element index.
The classical involution sends a group element to its inverse; a unit is
*unitary* when its involution is its inverse.  Only prime fields are
supported.
"""

from __future__ import annotations

import numpy as np

from . import groups as gr
from ._gflinalg import solve_mod_p
from .errors import ContextMismatch, NotAUnit, NotPrime, OrderMismatch


class GroupAlgebra:
    """Context object: the group, the characteristic, and cached index tables."""

    __slots__ = ("group", "p", "div", "_one_vec")

    def __init__(self, group: gr.FiniteGroup, p: int):
        if not gr.is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.group = group
        self.p = int(p)
        # div[k, h] = the g with g*h = k; column h of a regular matrix reads a[div[:, h]]
        div = group.mul[:, group.inv]
        div.setflags(write=False)
        self.div = div
        one = np.zeros(group.order, dtype=np.int64)
        one[group.identity] = 1
        one.setflags(write=False)
        self._one_vec = one

    @property
    def dim(self) -> int:
        return self.group.order

    @property
    def is_modular(self) -> bool:
        """Whether p divides the group order (tracked, not enforced)."""
        return self.group.order % self.p == 0

    def __repr__(self):
        return f"GroupAlgebra(GF({self.p})[{self.group.name}])"

    def compatible(self, other: "GroupAlgebra") -> bool:
        return self is other or (self.group is other.group and self.p == other.p)

    def from_coeffs(self, coeffs) -> "AlgebraElement":
        vec = np.asarray(coeffs, dtype=np.int64) % self.p
        if vec.shape != (self.dim,):
            raise ValueError(f"coefficient vector must have length {self.dim}")
        return AlgebraElement(self, vec)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, np.zeros(self.dim, dtype=np.int64))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self._one_vec.copy())

    def embed(self, g: int) -> "AlgebraElement":
        """The basis element for one group element."""
        if not 0 <= g < self.dim:
            raise ValueError(f"element index {g} out of range")
        vec = np.zeros(self.dim, dtype=np.int64)
        vec[g] = 1
        return AlgebraElement(self, vec)

    def hat(self, c: int) -> "AlgebraElement":
        """Sum of all powers of c; requires |c| = p.

        When c is also central this element is central with square zero,
        which is what the witness constructions rely on.
        """
        if gr.element_order(self.group, c) != self.p:
            raise OrderMismatch(
                f"hat needs an element of order {self.p}, "
                f"got order {gr.element_order(self.group, c)}")
        vec = np.zeros(self.dim, dtype=np.int64)
        x = self.group.identity
        for _ in range(self.p):
            vec[x] += 1
            x = int(self.group.mul[x, c])
        return AlgebraElement(self, vec % self.p)

    def random_element(self, rng) -> "AlgebraElement":
        return AlgebraElement(self, rng.integers(0, self.p, size=self.dim).astype(np.int64))


class AlgebraElement:
    """Immutable dense element of a GroupAlgebra."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: GroupAlgebra, coeffs: np.ndarray):
        coeffs = np.asarray(coeffs, dtype=np.int64)
        coeffs.setflags(write=False)
        self.algebra = algebra
        self.coeffs = coeffs

    def _check(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement) or not self.algebra.compatible(other.algebra):
            raise ContextMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, (self.coeffs + other.coeffs) % self.algebra.p)

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, (self.coeffs - other.coeffs) % self.algebra.p)

    def __neg__(self):
        return AlgebraElement(self.algebra, (-self.coeffs) % self.algebra.p)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return AlgebraElement(self.algebra, (self.coeffs * int(other)) % self.algebra.p)
        self._check(other)
        alg = self.algebra
        out = np.zeros(alg.dim, dtype=np.int64)
        mul = alg.group.mul
        b = other.coeffs
        for g in np.nonzero(self.coeffs)[0]:
            # a row of the Cayley table is a permutation, so indices are unique
            out[mul[g]] += int(self.coeffs[g]) * b
        return AlgebraElement(alg, out % alg.p)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            inv = self.try_inverse()
            if inv is None:
                raise NotAUnit("negative power of a non-unit")
            return inv ** (-k)
        acc = self.algebra.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra.compatible(other.algebra) and bool(
            (self.coeffs == other.coeffs).all())

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        return f"<{self.to_text()} in {self.algebra!r}>"

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def is_one(self) -> bool:
        return bool((self.coeffs == self.algebra._one_vec).all())

    def augmentation(self) -> int:
        """Coefficient sum mod p; a ring homomorphism onto GF(p)."""
        return int(self.coeffs.sum() % self.algebra.p)

    def involution(self) -> "AlgebraElement":
        """Coefficient at g moves to g^-1."""
        return AlgebraElement(self.algebra, self.coeffs[self.algebra.group.inv])

    star = involution

    def support(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.nonzero(self.coeffs)[0])

    def regular_matrix(self) -> np.ndarray:
        """Left-multiplication matrix over GF(p): column h is self * e_h."""
        return self.coeffs[self.algebra.div]

    def try_inverse(self) -> "AlgebraElement | None":
        """Two-sided inverse, or None when the element is not a unit."""
        alg = self.algebra
        sol = solve_mod_p(self.regular_matrix(), alg._one_vec, alg.p)
        if sol is None:
            return None
        b = AlgebraElement(alg, sol % alg.p)
        if not (self * b).is_one() or not (b * self).is_one():  # defensive recheck
            return None
        return b

    def is_unitary(self) -> bool:
        """Augmentation 1 and involution * self = 1."""
        return self.augmentation() == 1 and (self.involution() * self).is_one()

    def to_text(self) -> str:
        """Canonical form: nonzero terms 'coef*label' joined with ' + '."""
        labels = self.algebra.group.labels
        terms = [f"{int(self.coeffs[i])}*{labels[i]}" for i in np.nonzero(self.coeffs)[0]]
        return " + ".join(terms) if terms else "0"
