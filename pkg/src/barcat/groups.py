"""Finite groups as explicit multiplication tables.

Convention: the product x*y means "x then y" (composition acting on the
right); all coset machinery depends on fixing this order globally.
"""
from __future__ import annotations

from itertools import product


class NotAGroup(ValueError):
    pass


class FiniteGroup:
    def __init__(self, elements, table, name="G", check=True):
        self.elements = list(elements)
        self.table = [list(r) for r in table]
        self.name = name
        self.index = {e: i for i, e in enumerate(self.elements)}
        if check:
            self._validate()
        self.e = self._identity()
        self.inv = self._inverses()

    def _validate(self):
        n = len(self.elements)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise NotAGroup("table shape mismatch")
        for r in self.table:
            for x in r:
                if not 0 <= x < n:
                    raise NotAGroup("table entry out of range")
        for i, j, k in product(range(n), repeat=3):
            if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                raise NotAGroup(f"not associative at {(i, j, k)}")

    def _identity(self) -> int:
        n = len(self.elements)
        for i in range(n):
            if all(self.table[i][j] == j == self.table[j][i] for j in range(n)):
                return i
        raise NotAGroup("no identity element")

    def _inverses(self) -> list[int]:
        n = len(self.elements)
        inv = [-1] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == self.e and self.table[j][i] == self.e:
                    inv[i] = j
                    break
            if inv[i] < 0:
                raise NotAGroup(f"no inverse for element {i}")
        return inv

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def label(self, i: int) -> str:
        return str(self.elements[i])

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(n) for j in range(n))

    def subgroup_closure(self, gens) -> list[int]:
        seen = {self.e}
        frontier = [self.e]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (self.mul(x, g), self.mul(g, x)):
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
        return sorted(seen)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        els = list(range(n))
        table = [[(i + j) % n for j in els] for i in els]
        return FiniteGroup(els, table, name=f"Z{n}", check=False)

    @staticmethod
    def direct_power(g: "FiniteGroup", k: int) -> "FiniteGroup":
        els = list(product(range(g.order), repeat=k))
        pos = {e: i for i, e in enumerate(els)}
        table = [[pos[tuple(g.mul(a[m], b[m]) for m in range(k))]
                  for b in els] for a in els]
        labels = ["".join(g.label(x) for x in e) for e in els]
        return FiniteGroup(labels, table, name=f"{g.name}^{k}", check=False)

    @staticmethod
    def symmetric(n: int) -> "FiniteGroup":
        """S_n on tuples; product is "apply left, then right"."""
        import itertools
        perms = sorted(itertools.permutations(range(n)))
        pos = {p: i for i, p in enumerate(perms)}
        # (p*q)(x) = q(p(x)): left-to-right composition
        table = [[pos[tuple(q[p[x]] for x in range(n))] for q in perms]
                 for p in perms]
        labels = ["".join(str(x + 1) for x in p) for p in perms]
        return FiniteGroup(labels, table, name=f"S{n}", check=False)
