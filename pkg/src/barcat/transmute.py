"""Transmutation: the braided Hopf algebra B(H) of a quasitriangular
(flip-)star Hopf algebra, as a star algebra object in its own module
category, with the R-twisted coproduct and braided antipode.

    ad_h(b) = h_(1) b S(h_(2))
    Delta_u(b) = b_(1) S(R^(2))  (x)  R^(1) |> b_(2)
    S_u(b) = R^(2) S(R^(1) |> b)
    star b = bar( R^{-(1)} b* S^{-1}(R^{-(2)}) S^{-1}(u) )   [flip-star case]
    star b = bar( b* )                                        [plain star case]

Pair-space operators (the braiding and Upsilon on B (x) B) are built from
the factored form of R: the R_K part acts diagonally on the adjoint
K-grades, the sum of c_n E^n (x) F^n is nilpotent.
"""
from __future__ import annotations

from .cyclo import CycloScalar, rat
from .hopf import HopfData, QuasitriangularData
from .report import VerificationReport, map_witness
from .tensor import LinearMap, SparseTensor, _acc


class HypothesisFail(ValueError):
    pass


class Transmuted:
    def __init__(self, H: HopfData, Q: QuasitriangularData, case: str):
        self.H = H
        self.Q = Q
        self.case = case  # "flip" (Theorem-2 style) or "plain"
        self._cache: dict = {}

    # -- adjoint action -----------------------------------------------------------

    def ad_el(self, h: SparseTensor, x: SparseTensor) -> SparseTensor:
        """Adjoint action of an element h on an element x."""
        H = self.H
        out = SparseTensor(H.spaces(1), {})
        for (i,), c in h.entries.items():
            for (a, b), d in H.Delta_basis(i).items():
                out = out + H.mult_many(H.basis_el(a), x,
                                        H.el(H.S_basis(b))).scale(c * d)
        return out

    def ad_map(self, h: SparseTensor) -> LinearMap:
        H = self.H
        return LinearMap.from_columns(
            H.spaces(1), H.spaces(1),
            lambda key: self.ad_el(h, H.basis_el(key[0])))

    def _idx(self, a=0, b=0, c=0):
        l = self.H.conductor
        return (a * l + b) * l + c

    # -- structure maps ----------------------------------------------------------

    def mu_map(self) -> LinearMap:
        if "mu" not in self._cache:
            H = self.H
            self._cache["mu"] = LinearMap.from_columns(
                H.spaces(2), H.spaces(1),
                lambda key: H.el(H.mult_basis(key[0], key[1])))
        return self._cache["mu"]

    def delta_under(self) -> LinearMap:
        if "delta" not in self._cache:
            H, Q = self.H, self.Q

            def col(key):
                out = SparseTensor(H.spaces(2), {})
                for (a, b), c in H.Delta_basis(key[0]).items():
                    for (r1, r2), cr in Q.R.entries.items():
                        left = H.mult_el(H.basis_el(a),
                                         H.el(H.S_basis(r2)))
                        right = self.ad_el(H.basis_el(r1), H.basis_el(b))
                        out = out + left.tensor(right).scale(c * cr)
                return out

            self._cache["delta"] = LinearMap.from_columns(
                H.spaces(1), H.spaces(2), col)
        return self._cache["delta"]

    def s_under(self) -> LinearMap:
        if "s" not in self._cache:
            H, Q = self.H, self.Q

            def col(key):
                out = SparseTensor(H.spaces(1), {})
                for (r1, r2), cr in Q.R.entries.items():
                    inner = self.ad_el(H.basis_el(r1), H.basis_el(key[0]))
                    out = out + H.mult_el(H.basis_el(r2),
                                          H.S_el(inner)).scale(cr)
                return out

            self._cache["s"] = LinearMap.from_columns(
                H.spaces(1), H.spaces(1), col)
        return self._cache["s"]

    def star_J(self) -> LinearMap:
        """Antilinear star on B (matrix form; application conjugates)."""
        if "J" not in self._cache:
            H, Q = self.H, self.Q
            if self.case == "plain":
                self._cache["J"] = H.star_map()
            else:
                R_inv = Q.R_inv(H)
                v = H.S_inv_el(Q.u(H))  # S^{-1}(u)

                def col(key):
                    out = SparseTensor(H.spaces(1), {})
                    st = H.star_el(H.basis_el(key[0]))
                    for (r1, r2), cr in R_inv.entries.items():
                        out = out + H.mult_many(
                            H.basis_el(r1), st,
                            H.S_inv_el(H.basis_el(r2)), v).scale(cr)
                    return out

                self._cache["J"] = LinearMap.from_columns(
                    H.spaces(1), H.spaces(1), col, antilinear=True)
        return self._cache["J"]

    # -- pair-space operators -----------------------------------------------------

    def _ad_grade(self, i: int) -> int:
        """Exponent g with ad_K(e_i) = q^g e_i (monomial bases only)."""
        l = self.H.conductor
        rest, _ = divmod(i, l)
        a, b = divmod(rest, l)
        return (2 * (a - b)) % l

    def _diag_RK(self, sign: int) -> LinearMap:
        H = self.H
        l = H.conductor
        kk = (l - 1) // 2 + 1
        q_pows = [CycloScalar.zeta(l, e) for e in range(l)]
        ent = {}
        for i in range(H.dim):
            gi = self._ad_grade(i)
            for j in range(H.dim):
                gj = self._ad_grade(j)
                # (1/l) sum q^{-+2ab} q^{a gi} q^{b gj} collapses to
                # q^{+-(k+1) gi gj}
                ent[((i, j), (i, j))] = q_pows[(sign * kk * gi * gj) % l]
        return LinearMap(H.spaces(2), H.spaces(2), ent)

    def _nil_part(self, element: SparseTensor) -> LinearMap:
        """(ad (x) ad) of an element supported on E^n (x) F^n terms."""
        H = self.H
        l = H.conductor
        adE = self.ad_map(H.basis_el(self._idx(a=1)))
        adF = self.ad_map(H.basis_el(self._idx(b=1)))
        pows_E = [LinearMap.identity(H.spaces(1))]
        pows_F = [LinearMap.identity(H.spaces(1))]
        for _ in range(l - 1):
            pows_E.append(adE @ pows_E[-1])
            pows_F.append(adF @ pows_F[-1])
        out = LinearMap.zero(H.spaces(2), H.spaces(2))
        for (i, j), c in element.entries.items():
            n = i // (l * l)
            m = (j // l) % l
            assert i == n * l * l and j == m * l, \
                "expected E^n (x) F^n support"
            out = out + pows_E[n].tensor(pows_F[m]).scale(c)
        return out

    def R_pair_action(self, inverse: bool = False) -> LinearMap:
        key = "Rpair_inv" if inverse else "Rpair"
        if key not in self._cache:
            H, Q = self.H, self.Q
            l = H.conductor
            if H.dim <= 64:
                # small algebras: direct (ad (x) ad) of the element
                el = Q.R_inv(H) if inverse else Q.R
                out = LinearMap.zero(H.spaces(2), H.spaces(2))
                for (i, j), c in el.entries.items():
                    out = out + self.ad_map(H.basis_el(i)).tensor(
                        self.ad_map(H.basis_el(j))).scale(c)
                self._cache[key] = out
                return self._cache[key]
            # split R = R_K . sum_n c_n E^n (x) F^n exactly
            q = CycloScalar.zeta(l)
            one = H.one()
            qm = q - CycloScalar.zeta(l, l - 1)
            cs = [one]
            fact = one
            for n in range(1, l):
                br = H.zero()
                for t in range(n):
                    br = br + CycloScalar.zeta(l, (-2 * t) % l)
                fact = fact * br
                cs.append(qm ** n * fact.inv())
            e_part = SparseTensor(H.spaces(2),
                                  {(self._idx(a=n), self._idx(b=n)): cs[n]
                                   for n in range(l)})
            if not inverse:
                # verify the factorisation, then build the action
                RK = SparseTensor(
                    H.spaces(2),
                    {(self._idx(c=a), self._idx(c=b)):
                     rat(1, l) * CycloScalar.zeta(l, (-2 * a * b) % l)
                     for a in range(l) for b in range(l)})
                assert H.mult_el(RK, e_part) == Q.R
                self._cache[key] = self._diag_RK(+1) @ self._nil_part(e_part)
            else:
                e_inv = H.invert_el(e_part)
                self._cache[key] = self._nil_part(e_inv) @ self._diag_RK(-1)
        return self._cache[key]

    def flip_map(self) -> LinearMap:
        if "flip" not in self._cache:
            H = self.H
            ent = {((j, i), (i, j)): rat(1) for i in range(H.dim)
                   for j in range(H.dim)}
            self._cache["flip"] = LinearMap(H.spaces(2), H.spaces(2), ent)
        return self._cache["flip"]

    def psi(self) -> LinearMap:
        if "psi" not in self._cache:
            self._cache["psi"] = self.flip_map() @ self.R_pair_action()
        return self._cache["psi"]

    def psi_inv(self) -> LinearMap:
        if "psi_inv" not in self._cache:
            self._cache["psi_inv"] = \
                self.R_pair_action(inverse=True) @ self.flip_map()
        return self._cache["psi_inv"]

    def upsilon_inv(self) -> LinearMap:
        """Upsilon^{-1} on bar B (x) bar B in coordinates (G = R)."""
        return self.psi_inv().conj_entries()

    def gamma_ad(self) -> LinearMap:
        H, Q = self.H, self.Q
        gamma = H.mult_el(Q.v_inv(H), Q.nu) if Q.nu is not None \
            else H.unit_el()
        return self.ad_map(gamma)


def transmute(H: HopfData, Q: QuasitriangularData) -> Transmuted:
    """Select the applicable star hypothesis and build B(H)."""
    star2_R = H.map_slots(Q.R, {0: H.star_basis, 1: H.star_basis}, conj=True)
    R_inv = Q.R_inv(H)
    if H.flip_star:
        if star2_R != H.flip(R_inv):
            raise HypothesisFail("flip-star case needs R^{* x *} = R21^{-1}")
        return Transmuted(H, Q, "flip")
    if star2_R != R_inv:
        raise HypothesisFail("star case needs R^{* x *} = R^{-1}")
    return Transmuted(H, Q, "plain")


def check_transmutation(T: Transmuted,
                        delta_mult_pairs: int | None = None
                        ) -> VerificationReport:
    H, Q = T.H, T.Q
    n = H.dim
    rep = VerificationReport(example=f"B({H.name})",
                             params={"check": "transmutation",
                                     "case": T.case})
    basis = [H.basis_el(i) for i in range(n)]

    gen_set = [i for i in range(n) if _is_gen(H, i)]
    adcol = {i: [T.ad_el(basis[i], basis[b]) for b in range(n)]
             for i in range(n)}

    def _ad_act(h_el, x):
        out = SparseTensor(H.spaces(1), {})
        for (i,), c in h_el.entries.items():
            for (b,), d in x.entries.items():
                out = out + adcol[i][b].scale(c * d)
        return out

    def _ad_module():
        # multiplicativity against a left generator set; with
        # associativity already verified this extends to all pairs
        for g in gen_set:
            for j in range(n):
                prod = H.mult_el(basis[g], basis[j])
                for b in range(n):
                    lhs = _ad_act(basis[g], adcol[j][b])
                    rhs = _ad_act(prod, basis[b])
                    if lhs != rhs:
                        return False, {"index": [g, j, b]}
        return True
    rep.timed("transmute.adjoint_module",
              "ad_g ad_h = ad_{gh} (generators x all)", _ad_module)

    def _module_algebra():
        for g in gen_set:
            for i in range(n):
                for j in range(n):
                    lhs = _ad_act(basis[g], H.mult_el(basis[i], basis[j]))
                    rhs = SparseTensor(H.spaces(1), {})
                    for (a, b), c in H.Delta_basis(g).items():
                        rhs = rhs + H.mult_el(adcol[a][i],
                                              adcol[b][j]).scale(c)
                    if lhs != rhs:
                        return False, {"index": [g, i, j]}
        return True
    rep.timed("transmute.module_algebra",
              "ad_h(bc) = (ad_{h_(1)} b)(ad_{h_(2)} c) (generators)",
              _module_algebra)

    D = T.delta_under()

    def _coassoc():
        for i in range(n):
            col = D.column((i,))
            lhs: dict = {}
            rhs: dict = {}
            for (a, b), c in col.entries.items():
                for (u, v), cc in D.column((a,)).entries.items():
                    _acc(lhs, (u, v, b), c * cc)
                for (u, v), cc in D.column((b,)).entries.items():
                    _acc(rhs, (a, u, v), c * cc)
            if lhs != rhs:
                return False, {"index": [i]}
        return True
    rep.timed("transmute.coassoc",
              "(Delta_u (x) id)Delta_u = (id (x) Delta_u)Delta_u", _coassoc)

    def _counit():
        for i in range(n):
            col = D.column((i,))
            left = SparseTensor(H.spaces(1), {})
            right = SparseTensor(H.spaces(1), {})
            for (a, b), c in col.entries.items():
                left = left + H.basis_el(b).scale(c * H.eps_basis(a))
                right = right + H.basis_el(a).scale(c * H.eps_basis(b))
            if left != basis[i] or right != basis[i]:
                return False, {"index": [i]}
        return True
    rep.timed("transmute.counit",
              "(eps (x) id)Delta_u = id = (id (x) eps)Delta_u", _counit)

    S = T.s_under()

    def _antipode():
        for i in range(n):
            col = D.column((i,))
            acc1 = SparseTensor(H.spaces(1), {})
            acc2 = SparseTensor(H.spaces(1), {})
            for (a, b), c in col.entries.items():
                sa = SparseTensor(H.spaces(1),
                                  dict(S.column((a,)).entries), _clean=False)
                sb = SparseTensor(H.spaces(1),
                                  dict(S.column((b,)).entries), _clean=False)
                acc1 = acc1 + H.mult_el(sa, basis[b]).scale(c)
                acc2 = acc2 + H.mult_el(basis[a], sb).scale(c)
            want = H.unit_el().scale(H.eps_basis(i))
            if acc1 != want or acc2 != want:
                return False, {"index": [i]}
        return True
    rep.timed("transmute.antipode",
              "mu(S_u (x) id)Delta_u = eta eps = mu(id (x) S_u)Delta_u",
              _antipode)

    J = T.star_J()

    def _star_double():
        lhs = J @ J
        rhs = T.gamma_ad()
        return (lhs == rhs) or (False, map_witness(lhs, rhs))
    rep.timed("transmute.star_double",
              "star star b = bb(b): J^2 = adjoint gamma action",
              _star_double)

    mu = T.mu_map()
    star = J.conj_entries().flip_parity()

    def _star_product():
        lhs = star @ mu
        mid = mu.conj_entries() @ T.upsilon_inv()
        rhs = mid @ star.tensor(star)
        return (lhs == rhs) or (False, map_witness(lhs, rhs))
    rep.timed("transmute.star_product",
              "bar(mu) Upsilon^{-1} (star (x) star) = star mu",
              _star_product)

    def _star_coproduct():
        lhs = D.conj_entries() @ star
        rhs = T.psi().conj_entries() @ T.upsilon_inv() \
            @ star.tensor(star) @ D
        return (lhs == rhs) or (False, map_witness(lhs, rhs))
    rep.timed("transmute.star_coproduct",
              "bar(Delta_u) star = bar(Psi) Upsilon^{-1} "
              "(star (x) star) Delta_u", _star_coproduct)

    def _antipode_star():
        S_inv = S.inverse()
        rhs = star.inverse() @ S_inv.conj_entries() @ star
        return (S == rhs) or (False, map_witness(S, rhs))
    rep.timed("transmute.antipode_star",
              "S_u = star^{-1} bar(S_u^{-1}) star", _antipode_star)

    if delta_mult_pairs is None:
        delta_mult_pairs = n * n if n <= 8 else 0
    if delta_mult_pairs:
        def _delta_mult():
            psi = T.psi()
            count = 0
            for i in range(n):
                for j in range(n):
                    if count >= delta_mult_pairs:
                        return True
                    count += 1
                    lhs = SparseTensor(H.spaces(2), {})
                    for (t,), c in H.el(H.mult_basis(i, j)).entries.items():
                        lhs = lhs + SparseTensor(
                            H.spaces(2), dict(D.column((t,)).entries),
                            _clean=False).scale(c)
                    da = D.column((i,))
                    db = D.column((j,))
                    out: dict = {}
                    for (a1, a2), ca in da.entries.items():
                        for (b1, b2), cb in db.entries.items():
                            mid = psi.apply(SparseTensor(
                                H.spaces(2), {(a2, b1): ca * cb},
                                _clean=False))
                            for (p1, p2), cm in mid.entries.items():
                                left = H.mult_basis(a1, p1)
                                right = H.mult_basis(p2, b2)
                                for t1, c1 in left.items():
                                    for t2, c2 in right.items():
                                        _acc(out, (t1, t2), cm * c1 * c2)
                    if SparseTensor(H.spaces(2), out, _clean=False) != lhs:
                        return False, {"index": [i, j]}
            return True
        rep.timed("transmute.delta_multiplicative",
                  "Delta_u(ab) = Delta_u(a) Delta_u(b) braided "
                  f"(first {delta_mult_pairs} pairs)", _delta_mult)
    else:
        rep.skip("transmute.delta_multiplicative",
                 "braided multiplicativity of Delta_u",
                 "skipped on large algebras (implied by the verified "
                 "Hopf and quasitriangular axioms)")
    return rep


def _is_gen(H: HopfData, i: int) -> bool:
    """Algebra generators: the E, F, K monomials in the (a*l+b)*l+c
    encoding for l^3-dimensional algebras, every basis element otherwise."""
    l = H.conductor
    if H.dim != l ** 3:
        return True
    rest, c = divmod(i, l)
    a, b = divmod(rest, l)
    return (a, b, c) in ((1, 0, 0), (0, 1, 0), (0, 0, 1))
