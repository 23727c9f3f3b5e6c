"""The coset representative category: M-graded right G-modules for a
subgroup G of a finite group X with chosen representatives M.

All structure comes from the unique factorisation x = u s (u in G,
s in M): the cochain tau and binary operation st = tau(s,t)(s.t), the
matched-pair actions su = (s |> u)(s <| u), and left/right inverses
t^L . t = e = t . t^R.  The associator, bar structure and the algebra
A_bowtie with its star are built from these tables and every law is
checked exactly.
"""
from __future__ import annotations

from .cyclo import CycloScalar, rat
from .groups import FiniteGroup
from .report import VerificationReport, map_witness
from .tensor import LinearMap, Space, SparseTensor, _acc, _iter_keys


class NotSubgroup(ValueError):
    pass


class BadRepresentatives(ValueError):
    pass


class NoUniqueRightInverse(ValueError):
    pass


class CosetData:
    def __init__(self, X: FiniteGroup, G: list[int], M: list[int]):
        self.X = X
        self.G = list(G)          # element indices in X
        self.M = list(M)
        self.gpos = {g: i for i, g in enumerate(self.G)}
        self.mpos = {m: i for i, m in enumerate(self.M)}
        nM, nG = len(self.M), len(self.G)
        self.fact = {}
        for x in range(X.order):
            hits = [(self.gpos[u], self.mpos[s])
                    for u in self.G for s in self.M if X.mul(u, s) == x]
            if len(hits) != 1:
                raise BadRepresentatives(
                    f"element {X.label(x)} has {len(hits)} factorisations")
            self.fact[x] = hits[0]
        self.tau = [[0] * nM for _ in range(nM)]
        self.dot = [[0] * nM for _ in range(nM)]
        for s in range(nM):
            for t in range(nM):
                u, m = self.fact[X.mul(self.M[s], self.M[t])]
                self.tau[s][t] = u
                self.dot[s][t] = m
        self.act_g = [[0] * nG for _ in range(nM)]   # s |> u
        self.act_m = [[0] * nG for _ in range(nM)]   # s <| u
        for s in range(nM):
            for u in range(nG):
                g, m = self.fact[X.mul(self.M[s], self.G[u])]
                self.act_g[s][u] = g
                self.act_m[s][u] = m
        self.e_m = self.mpos[X.e]
        self.L = [0] * nM
        self.R = [0] * nM
        for t in range(nM):
            lefts = [s for s in range(nM) if self.dot[s][t] == self.e_m]
            rights = [s for s in range(nM) if self.dot[t][s] == self.e_m]
            if len(lefts) != 1 or len(rights) != 1:
                raise NoUniqueRightInverse(
                    f"representative {t}: {len(lefts)} left / "
                    f"{len(rights)} right inverses")
            self.L[t] = lefts[0]
            self.R[t] = rights[0]

    def g_mul(self, *us) -> int:
        out = self.X.e
        for u in us:
            out = self.X.mul(out, self.G[u])
        return self.gpos[out]

    def g_inv(self, u: int) -> int:
        return self.gpos[self.X.inv[self.G[u]]]

    @property
    def e_g(self) -> int:
        return self.gpos[self.X.e]

    def check_factorisation_identities(self, rep: VerificationReport):
        nM = len(self.M)

        def _tables():
            for s in range(nM):
                for t in range(nM):
                    lhs = self.X.mul(self.M[s], self.M[t])
                    rhs = self.X.mul(self.G[self.tau[s][t]],
                                     self.M[self.dot[s][t]])
                    if lhs != rhs:
                        return False, {"index": [s, t], "table": "tau/dot"}
            for s in range(nM):
                for u in range(len(self.G)):
                    lhs = self.X.mul(self.M[s], self.G[u])
                    rhs = self.X.mul(self.G[self.act_g[s][u]],
                                     self.M[self.act_m[s][u]])
                    if lhs != rhs:
                        return False, {"index": [s, u], "table": "actions"}
            return True
        rep.timed("coset.tables", "st = tau(s,t)(s.t) and su = (s|>u)(s<|u)",
                  _tables)

        def _id1():
            for a in range(nM):
                lhs = self.L[a]
                rhs = self.act_m[self.R[a]][self.g_inv(self.tau[a][self.R[a]])]
                if lhs != rhs:
                    return False, {"index": [a]}
            return True
        rep.timed("coset.left_from_right", "a^L = a^R <| tau(a, a^R)^{-1}",
                  _id1)

        def _id2():
            for a in range(nM):
                lhs = self.act_g[self.R[a]][self.g_inv(self.tau[a][self.R[a]])]
                rhs = self.g_inv(self.tau[self.L[a]][a])
                if lhs != rhs:
                    return False, {"index": [a]}
            return True
        rep.timed("coset.right_act_tau",
                  "a^R |> tau(a, a^R)^{-1} = tau(a^L, a)^{-1}", _id2)

        def _lr_inverse():
            for a in range(nM):
                if self.dot[self.L[a]][a] != self.e_m or \
                        self.dot[a][self.R[a]] != self.e_m:
                    return False, {"index": [a]}
                if self.R[self.L[a]] != a or self.L[self.R[a]] != a:
                    return False, {"index": [a], "law": "(a^L)^R = a"}
            return True
        rep.timed("coset.lr_inverses",
                  "a^L . a = e = a . a^R with (a^L)^R = a", _lr_inverse)


def build_coset_data(X: FiniteGroup, G_elements, M=None) -> CosetData:
    G = sorted(set(G_elements))
    gset = set(G)
    if X.e not in gset:
        raise NotSubgroup("identity not in the subgroup")
    for a in G:
        for b in G:
            if X.mul(a, b) not in gset:
                raise NotSubgroup("subset not closed under multiplication")
        if X.inv[a] not in gset:
            raise NotSubgroup("subset not closed under inverses")
    if M is None:
        cosets = {}
        for x in range(X.order):
            key = frozenset(X.mul(u, x) for u in G)
            cosets.setdefault(key, []).append(x)
        M = []
        for elems in cosets.values():
            M.append(X.e if X.e in elems else min(elems, key=X.label))
        M.sort(key=X.label)
    else:
        M = list(M)
        if X.e not in M:
            raise BadRepresentatives("identity must be a representative")
    return CosetData(X, G, M)


class GradedModule:
    """Graded right module on a flat tuple of spaces; grades live on the
    multi-index basis keys, the action is one LinearMap per element of G."""

    def __init__(self, data: CosetData, spaces, grades: dict, action: dict,
                 name="V"):
        self.data = data
        self.spaces = tuple(spaces)
        self.grades = grades            # key tuple -> M position
        self.action = action            # G position -> LinearMap
        self.name = name

    @property
    def dim(self) -> int:
        d = 1
        for s in self.spaces:
            d *= s.dim
        return d

    def validate(self) -> bool:
        d = self.data
        if self.action[d.e_g] != LinearMap.identity(self.spaces):
            return False
        for u in range(len(d.G)):
            for v in range(len(d.G)):
                if self.action[v] @ self.action[u] != \
                        self.action[d.g_mul(u, v)]:
                    return False
            for (r, c), val in self.action[u].ent.items():
                if self.grades[r] != d.act_m[self.grades[c]][u]:
                    return False
        return True


class CosetBarCategory:
    def __init__(self, data: CosetData):
        self.data = data
        one = Space("1", ("1",))
        ident = {u: LinearMap((one,), (one,), {((0,), (0,)): rat(1)})
                 for u in range(len(data.G))}
        self._unit = GradedModule(data, (one,), {(0,): data.e_m}, ident,
                                  name="1")
        self._bar: dict = {}
        self._tensor: dict = {}

    # -- objects -----------------------------------------------------------------

    def unit(self):
        return self._unit

    def obj_name(self, X):
        return X.name

    def dim(self, X):
        return X.dim

    def identity(self, X) -> LinearMap:
        return LinearMap.identity(X.spaces)

    def tensor_map(self, f, g):
        return f.tensor(g)

    def one_dim(self, grade: int, char: dict | None = None,
                name=None) -> GradedModule:
        d = self.data
        if char is None:
            char = {u: rat(1) for u in range(len(d.G))}
        for u in range(len(d.G)):
            if d.act_m[grade][u] != grade:
                raise BadRepresentatives(
                    f"grade {grade} is not G-stable; no 1-dim object")
        nm = name or f"L{grade}"
        sp = Space(nm, (nm.lower(),))
        act = {u: LinearMap((sp,), (sp,), {((0,), (0,)): char[u]})
               for u in range(len(d.G))}
        return GradedModule(d, (sp,), {(0,): grade}, act, name=nm)

    def characters(self) -> list[dict]:
        """All 1-dim characters of G (brute force; fine for small G)."""
        d = self.data
        nG = len(d.G)
        orders = []
        for u in range(nG):
            o, cur = 1, u
            while cur != d.e_g:
                cur = d.g_mul(cur, u)
                o += 1
            orders.append(o)
        import itertools
        out = []
        cand_lists = [[CycloScalar.zeta(orders[u], p)
                       for p in range(orders[u])] for u in range(nG)]
        for combo in itertools.product(*cand_lists):
            ok = True
            for a in range(nG):
                for b in range(nG):
                    if combo[d.g_mul(a, b)] != combo[a] * combo[b]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append({u: combo[u] for u in range(nG)})
        return out

    def tensor(self, V: GradedModule, W: GradedModule) -> GradedModule:
        key = (id(V), id(W))
        got = self._tensor.get(key)
        if got is not None:
            return got
        d = self.data
        spaces = V.spaces + W.spaces
        grades = {}
        for kv in _iter_keys(V.spaces):
            for kw in _iter_keys(W.spaces):
                grades[kv + kw] = d.dot[V.grades[kv]][W.grades[kw]]
        action = {}
        for u in range(len(d.G)):
            ent = {}
            Wu = W.action[u]
            for (rj, cj), vw in Wu.ent.items():
                Vu = V.action[d.act_g[W.grades[cj]][u]]
                for (ri, ci), vv in Vu.ent.items():
                    ent[(ri + rj, ci + cj)] = vv * vw
            action[u] = LinearMap(spaces, spaces, ent)
        out = GradedModule(d, spaces, grades, action,
                           name=f"({V.name}(x){W.name})")
        self._tensor[key] = out
        return out

    def bar(self, V: GradedModule) -> GradedModule:
        got = self._bar.get(id(V))
        if got is not None:
            return got
        d = self.data
        spaces = tuple(Space("~" + s.name, tuple("~" + x for x in s.labels))
                       for s in V.spaces)
        grades = {k: d.R[g] for k, g in V.grades.items()}
        action = {}
        for u in range(len(d.G)):
            ent = {}
            for k in _iter_keys(V.spaces):
                tw = d.act_g[d.R[V.grades[k]]][u]
                for r, val in V.action[tw].column(k).entries.items():
                    ent[(r, k)] = val.conjugate()
            action[u] = LinearMap(spaces, spaces, ent)
        out = GradedModule(d, spaces, grades, action, name="~" + V.name)
        self._bar[id(V)] = out
        return out

    def bar_morphism(self, f: LinearMap) -> LinearMap:
        bs = lambda s: Space("~" + s.name, tuple("~" + x for x in s.labels))
        return f.conj_entries(dom=tuple(bs(s) for s in f.dom),
                              cod=tuple(bs(s) for s in f.cod))

    def bb(self, V: GradedModule) -> LinearMap:
        d = self.data
        bbar = self.bar(self.bar(V))
        ent = {}
        for k in _iter_keys(V.spaces):
            g = V.grades[k]
            tw = d.g_inv(d.tau[d.L[g]][g])
            for r, val in V.action[tw].column(k).entries.items():
                ent[(r, k)] = val
        return LinearMap(V.spaces, bbar.spaces, ent)

    def bb_inv(self, V: GradedModule) -> LinearMap:
        m = self.bb(V)
        return m.inverse().with_spaces(dom=self.bar(self.bar(V)).spaces,
                                       cod=V.spaces)

    def star_unit(self) -> LinearMap:
        return LinearMap(self._unit.spaces, self.bar(self._unit).spaces,
                         {((0,), (0,)): rat(1)})

    def l_map(self, X) -> LinearMap:
        T = self.tensor(X, self._unit)
        ent = {(k + (0,), k): rat(1) for k in _iter_keys(X.spaces)}
        return LinearMap(X.spaces, T.spaces, ent)

    def r_map(self, X) -> LinearMap:
        T = self.tensor(self._unit, X)
        ent = {((0,) + k, k): rat(1) for k in _iter_keys(X.spaces)}
        return LinearMap(X.spaces, T.spaces, ent)

    def upsilon_inv_form(self, X, Y, form: int) -> LinearMap:
        """Upsilon^{-1}_{X,Y}: bar Y (x) bar X -> bar(X (x) Y).  The input
        slots are v-bar (v in Y) and w-bar (w in X)."""
        d = self.data
        bY, bX = self.bar(Y), self.bar(X)
        bXY = self.bar(self.tensor(X, Y))
        ent = {}
        for kv in _iter_keys(Y.spaces):
            sv = Y.grades[kv]
            for kw in _iter_keys(X.spaces):
                tw = X.grades[kw]
                u0 = d.tau[d.R[sv]][d.R[tw]]
                if form == 2:
                    winner = d.g_mul(d.g_inv(d.tau[sv][d.R[sv]]),
                                     d.act_g[sv][u0])
                else:
                    winner = d.g_inv(
                        d.tau[d.act_m[sv][u0]][d.dot[d.R[sv]][d.R[tw]]])
                wcol = X.action[winner].column(kw)
                vcol = Y.action[u0].column(kv)
                for rw, cw in wcol.entries.items():
                    for rv, cv in vcol.entries.items():
                        _acc(ent, (rw + rv, kv + kw), (cw * cv).conjugate())
        return LinearMap(bY.spaces + bX.spaces, bXY.spaces, ent)

    def upsilon_inv(self, X, Y) -> LinearMap:
        return self.upsilon_inv_form(X, Y, form=2)

    def upsilon(self, X, Y) -> LinearMap:
        inv = self.upsilon_inv(X, Y)
        return inv.inverse().with_spaces(dom=inv.cod, cod=inv.dom)

    def phi_map(self, X, Y, Z, inverse=False) -> LinearMap:
        d = self.data
        sp = X.spaces + Y.spaces + Z.spaces
        ent = {}
        for kj in _iter_keys(Y.spaces):
            for kk in _iter_keys(Z.spaces):
                tw = d.tau[Y.grades[kj]][Z.grades[kk]]
                if inverse:
                    tw = d.g_inv(tw)
                for (ri, ci), v in X.action[tw].ent.items():
                    ent[(ri + kj + kk, ci + kj + kk)] = v
        return LinearMap(sp, sp, ent)

    def phi_inv_map(self, X, Y, Z) -> LinearMap:
        return self.phi_map(X, Y, Z, inverse=True)

    def xi_reference(self, X, Y) -> LinearMap:
        return LinearMap.identity(self.tensor(X, Y).spaces)

    def is_morphism(self, f: LinearMap, X, Y) -> bool:
        for u in range(len(self.data.G)):
            if f @ X.action[u] != Y.action[u] @ f:
                return False
        for (r, c), v in f.ent.items():
            if Y.grades[r] != X.grades[c]:
                return False
        return True

    def test_morphisms(self, objects) -> list:
        out = []
        for X in objects:
            out.append((self.identity(X), X, X))
            out.append((self.identity(X).scale(CycloScalar.zeta(4)), X, X))
        return out


# ---------------------------------------------------------------------------
# the algebra A_bowtie and the object C(M)
# ---------------------------------------------------------------------------

class BowtieAlgebra:
    """Basis delta_s (x) u for s in M, u in G; grade a solves
    s . a = s <| u; right action, product, unit, counit and star as
    dictated by the factorisation tables."""

    def __init__(self, cat: CosetBarCategory):
        self.cat = cat
        d = cat.data
        self.d = d
        nM, nG = len(d.M), len(d.G)
        self.basis = [(s, u) for s in range(nM) for u in range(nG)]
        self.pos = {b: i for i, b in enumerate(self.basis)}
        sp = Space("Abow", tuple(f"d{s}|{u}" for s, u in self.basis))
        grades = {}
        for i, (s, u) in enumerate(self.basis):
            sols = [a for a in range(nM) if d.dot[s][a] == d.act_m[s][u]]
            if len(sols) != 1:
                raise NoUniqueRightInverse(
                    f"grade of basis element {(s, u)} not unique")
            grades[(i,)] = sols[0]
        action = {}
        for v in range(nG):
            ent = {}
            for i, (s, u) in enumerate(self.basis):
                a = grades[(i,)]
                av = d.act_g[a][v]
                tgt = (d.act_m[s][av], d.g_mul(d.g_inv(av), u, v))
                ent[((self.pos[tgt],), (i,))] = rat(1)
            action[v] = LinearMap((sp,), (sp,), ent)
        self.obj = GradedModule(d, (sp,), grades, action, name="Abow")

    def mu_map(self) -> LinearMap:
        d = self.d
        A = self.obj
        ent = {}
        for i, (s, u) in enumerate(self.basis):
            a = A.grades[(i,)]
            for j, (t, v) in enumerate(self.basis):
                if t != d.act_m[s][u]:
                    continue
                b = A.grades[(j,)]
                tau_ab = d.tau[a][b]
                tgt = (d.act_m[s][tau_ab],
                       d.g_mul(d.g_inv(tau_ab), u, v))
                ent[((self.pos[tgt],), (i, j))] = rat(1)
        XX = self.cat.tensor(A, A)
        return LinearMap(XX.spaces, A.spaces, ent)

    def unit_map(self) -> LinearMap:
        d = self.d
        one = self.cat.unit()
        ent = {}
        for s in range(len(d.M)):
            ent[((self.pos[(s, d.e_g)],), (0,))] = rat(1)
        return LinearMap(one.spaces, self.obj.spaces, ent)

    def counit_map(self) -> LinearMap:
        d = self.d
        one = self.cat.unit()
        ent = {}
        for i, (s, u) in enumerate(self.basis):
            if s == d.e_m:
                ent[((0,), (i,))] = rat(1)
        return LinearMap(self.obj.spaces, one.spaces, ent)

    def star_map(self) -> LinearMap:
        """*(delta_s (x) u) = bar((delta_{s<|u} (x) u^{-1} tau(a, a^R))
        <| tau(a, a^R)^{-1})."""
        d = self.d
        A = self.obj
        bar = self.cat.bar(A)
        ent = {}
        for i, (s, u) in enumerate(self.basis):
            a = A.grades[(i,)]
            taa = d.tau[a][d.R[a]]
            mid = (d.act_m[s][u], d.g_mul(d.g_inv(u), taa))
            col = A.action[d.g_inv(taa)].column((self.pos[mid],))
            for r, v in col.entries.items():
                _acc(ent, (r, (i,)), v.conjugate())
        return LinearMap(A.spaces, bar.spaces, ent)


def c_of_m(cat: CosetBarCategory) -> GradedModule:
    d = cat.data
    nM = len(d.M)
    sp = Space("C(M)", tuple(f"d{d.X.label(d.M[s])}" for s in range(nM)))
    grades = {(s,): s for s in range(nM)}
    action = {u: LinearMap((sp,), (sp,),
                           {((d.act_m[s][u],), (s,)): rat(1)
                            for s in range(nM)})
              for u in range(len(d.G))}
    return GradedModule(d, (sp,), grades, action, name="C(M)")


def c_of_m_star(cat: CosetBarCategory, V: GradedModule) -> LinearMap:
    d = cat.data
    bar = cat.bar(V)
    ent = {((d.L[s],), (s,)): rat(1) for s in range(len(d.M))}
    return LinearMap(V.spaces, bar.spaces, ent)


def c_of_m_inner(cat: CosetBarCategory, V: GradedModule) -> LinearMap:
    """<delta_t, bar(delta_s)>_r = delta_{s,t}: V (x) bar V -> 1."""
    one = cat.unit()
    ent = {}
    for s in range(len(cat.data.M)):
        ent[((0,), (s, s))] = rat(1)
    return LinearMap(V.spaces + cat.bar(V).spaces, one.spaces, ent)


def bowtie_action_on(cat: CosetBarCategory, V: GradedModule,
                     A: BowtieAlgebra) -> LinearMap:
    """v <| (delta_s (x) u) = delta_{<v>,s} v <| u."""
    d = cat.data
    ent = {}
    for k in _iter_keys(V.spaces):
        s = V.grades[k]
        for u in range(len(d.G)):
            i = A.pos[(s, u)]
            for r, val in V.action[u].column(k).entries.items():
                _acc(ent, (r, k + (i,)), val)
    dom = cat.tensor(V, A.obj).spaces
    return LinearMap(dom, V.spaces, ent)
